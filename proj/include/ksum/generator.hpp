#pragma once

// Seeded instance generation.  The engine is std::mt19937_64, whose output
// sequence is fixed by the standard, and bounded draws use rejection sampling
// rather than std::uniform_int_distribution so files are identical across
// standard libraries.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <string_view>
#include <utility>
#include <vector>

#include "ksum/types.hpp"

namespace ksum {

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }
  // Uniform in [0, bound).  bound > 0.
  std::uint64_t below(std::uint64_t bound);
  // Uniform in [lo, hi].
  std::int64_t between(std::int64_t lo, std::int64_t hi);

  template <typename T>
  void shuffle(std::vector<T>& v) {
    for (std::size_t i = v.size(); i > 1; --i) std::swap(v[i - 1], v[below(i)]);
  }

 private:
  std::mt19937_64 engine_;
};

enum class Distribution { uniform, planted, boundary_adversarial };

std::string_view to_string(Distribution d);
Distribution parse_distribution(std::string_view text);

// Largest |value| the generator will emit for arity k: 2^61/k for integers,
// 2^50/k for reals (integer-valued doubles).
std::int64_t max_range(Mode mode, std::size_t k);

struct GenConfig {
  std::uint64_t seed = 1;
  std::size_t n = 0;
  std::size_t k = 3;
  Mode mode = Mode::integer;
  Distribution distribution = Distribution::uniform;
  // Values lie in [-range, range]; defaults to max_range.
  std::optional<std::int64_t> range;
  std::int64_t target = 0;
  bool single_list = true;
  // Group count whose boundaries the adversarial distribution aims at;
  // defaults to ceil(sqrt(n)).
  std::optional<std::size_t> g;
};

struct Generated {
  AnyInstance instance;
  // (list_id, index) of the planted tuple in list order, if any.
  std::vector<std::pair<std::uint32_t, std::uint32_t>> planted;
};

// Planted and boundary-adversarial instances have exactly one solution: every
// other value shares one residue modulo a small prime M chosen from the target.
// Throws PreconditionViolation for impossible parameter combinations.
Generated generate(const GenConfig& config);

}  // namespace ksum
