#pragma once

// Grid benchmarks: every solver x n x g x seed cell generates its instance,
// solves it under a fresh Meter and yields one TispReport.  Rows come back in
// grid order whatever the thread count.
//
// Config (JSON):
//   {
//     "solvers": ["sorted-3sum", {"solver": "self-reduce-3sum", "base": "sorted-3sum"}],
//     "n": [1024, 2048],
//     "g": [1, 8, "sqrt"],          // optional, default ["sqrt"]
//     "h": 1,                       // optional
//     "k": 3, "mode": "int", "distribution": "uniform",
//     "range": 1000000, "target": 0, "single_list": true,
//     "seeds": [1, 2]               // or "seed": 1 with "repetitions": 3
//     "threads": 1, "space_cap": null
//   }
//
// Solvers without a group parameter ignore the g axis and get one cell per
// (n, seed).

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "ksum/generator.hpp"
#include "ksum/registry.hpp"
#include "ksum/report.hpp"

namespace ksum {

struct BenchConfig {
  std::vector<SolveOptions> solvers;
  std::vector<std::uint64_t> ns;
  // nullopt stands for ceil(sqrt(n)).
  std::vector<std::optional<std::uint64_t>> gs{std::nullopt};
  std::optional<std::uint64_t> h;
  std::size_t k = 3;
  Mode mode = Mode::integer;
  Distribution distribution = Distribution::uniform;
  std::optional<std::int64_t> range;
  std::int64_t target = 0;
  bool single_list = true;
  std::vector<std::uint64_t> seeds{1};
  std::size_t threads = 1;
  std::optional<std::uint64_t> space_cap;
};

// Throws ParseError.
BenchConfig parse_bench_config(const nlohmann::json& j);
BenchConfig load_bench_config(const std::string& path);

struct BenchCell {
  std::size_t solver = 0;  // index into BenchConfig::solvers
  std::uint64_t n = 0;
  std::optional<std::uint64_t> g;
  std::uint64_t seed = 0;
};

std::vector<BenchCell> bench_cells(const BenchConfig& config);

// Failed cells carry TispReport::failure and the run continues.
std::vector<TispReport> run_bench(const BenchConfig& config);

std::string bench_csv(const std::vector<TispReport>& rows, bool with_wall_time = true);

}  // namespace ksum
