#include "ksum/generator.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace ksum {

std::uint64_t Rng::below(std::uint64_t bound) {
  if (bound == 0) throw PreconditionViolation("Rng::below: bound must be positive");
  const std::uint64_t threshold = (0 - bound) % bound;
  while (true) {
    const std::uint64_t x = next();
    if (x >= threshold) return x % bound;
  }
}

std::int64_t Rng::between(std::int64_t lo, std::int64_t hi) {
  if (lo > hi) throw PreconditionViolation("Rng::between: empty range");
  const std::uint64_t span = static_cast<std::uint64_t>(hi) - static_cast<std::uint64_t>(lo);
  const std::uint64_t off = span == std::numeric_limits<std::uint64_t>::max() ? next() : below(span + 1);
  return static_cast<std::int64_t>(static_cast<std::uint64_t>(lo) + off);
}

std::string_view to_string(Distribution d) {
  switch (d) {
    case Distribution::uniform:
      return "uniform";
    case Distribution::planted:
      return "planted";
    case Distribution::boundary_adversarial:
      return "boundary-adversarial";
  }
  return "?";
}

Distribution parse_distribution(std::string_view text) {
  if (text == "uniform") return Distribution::uniform;
  if (text == "planted") return Distribution::planted;
  if (text == "boundary-adversarial") return Distribution::boundary_adversarial;
  throw ParseError("unknown distribution '" + std::string(text) +
                   "' (expected uniform, planted or boundary-adversarial)");
}

std::int64_t max_range(Mode mode, std::size_t k) {
  const std::int64_t top = mode == Mode::integer ? std::int64_t{1} << 61 : std::int64_t{1} << 50;
  return top / static_cast<std::int64_t>(std::max<std::size_t>(k, 1));
}

namespace {

std::int64_t floor_div(std::int64_t a, std::int64_t b) {
  std::int64_t q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

std::int64_t ceil_div(std::int64_t a, std::int64_t b) { return -floor_div(-a, b); }

// Every generated value outside the planted tuple is c mod M.
struct Residues {
  std::int64_t m;
  std::int64_t c;

  // A uniformly drawn value in [lo, hi] that is c mod m, if any exists.
  std::optional<std::int64_t> normal(Rng& rng, std::int64_t lo, std::int64_t hi) const {
    if (lo > hi) return std::nullopt;
    const std::int64_t u_lo = ceil_div(lo - c, m);
    const std::int64_t u_hi = floor_div(hi - c, m);
    if (u_lo > u_hi) return std::nullopt;
    return m * rng.between(u_lo, u_hi) + c;
  }
};

bool is_prime(std::int64_t x) {
  if (x < 2) return false;
  for (std::int64_t d = 2; d * d <= x; ++d) {
    if (x % d == 0) return false;
  }
  return true;
}

// M is the smallest prime >= k+2 and c a nonzero residue with j*c != t
// (mod M) for j in [1, k].  The planted tuple is k-1 multiples of M plus a
// value that is t mod M, so a k-tuple mixing j >= 1 normal values with
// planted ones has residue j*c or j*c + t, never t.  At most k residues
// are excluded out of M-1 >= k+1, so c exists.
Residues pick_residues(std::int64_t target, std::size_t k) {
  std::int64_t m = static_cast<std::int64_t>(k) + 2;
  while (!is_prime(m)) ++m;
  const std::int64_t t = ((target % m) + m) % m;
  for (std::int64_t c = 1; c < m; ++c) {
    bool ok = true;
    for (std::int64_t j = 1; j <= static_cast<std::int64_t>(k) && ok; ++j) ok = (j * c) % m != t;
    if (ok) return Residues{m, c};
  }
  throw Error("generate: no admissible residue");
}

struct Slot {
  std::int64_t value;
  int planted;  // position in the planted tuple, or -1
};

struct Storage {
  std::vector<Slot> slots;
};

// Places the planted values at exactly the requested sorted ranks, filling
// the gaps with normal values; nullopt if some gap cannot be filled.
std::optional<Storage> fill_ranked(Rng& rng, const Residues& res, std::size_t n, std::int64_t range,
                                   std::vector<std::pair<std::int64_t, int>> planted,
                                   std::vector<std::size_t> ranks) {
  std::sort(planted.begin(), planted.end());
  std::sort(ranks.begin(), ranks.end());
  for (std::size_t i = 1; i < planted.size(); ++i) {
    if (planted[i].first == planted[i - 1].first) return std::nullopt;
  }
  Storage out;
  std::int64_t lo = -range;
  std::size_t placed = 0;
  for (std::size_t p = 0; p <= planted.size(); ++p) {
    const bool last = p == planted.size();
    const std::size_t upto = last ? n : ranks[p];
    const std::int64_t hi = last ? range : planted[p].first - 1;
    for (; placed < upto; ++placed) {
      auto v = res.normal(rng, lo, hi);
      if (!v) return std::nullopt;
      out.slots.push_back({*v, -1});
    }
    if (!last) {
      out.slots.push_back({planted[p].first, planted[p].second});
      ++placed;
      lo = planted[p].first + 1;
    }
  }
  rng.shuffle(out.slots);
  return out;
}

std::optional<Storage> fill_random(Rng& rng, const Residues& res, std::size_t n, std::int64_t range,
                                   const std::vector<std::pair<std::int64_t, int>>& planted) {
  Storage out;
  for (const auto& [v, tag] : planted) out.slots.push_back({v, tag});
  while (out.slots.size() < n) {
    auto v = res.normal(rng, -range, range);
    if (!v) return std::nullopt;
    out.slots.push_back({*v, -1});
  }
  rng.shuffle(out.slots);
  return out;
}

// Sorted ranks that sit at the first or last position of a group of
// ceil(n/g)+1 consecutive order statistics.
std::vector<std::size_t> boundary_ranks(std::size_t n, std::size_t g) {
  const std::size_t s = (n + g - 1) / g + 1;
  std::vector<std::size_t> out;
  for (std::size_t start = 0; start < n; start += s) {
    out.push_back(start);
    out.push_back(std::min(start + s, n) - 1);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<std::size_t> pick_ranks(Rng& rng, std::size_t n, std::size_t g, std::size_t count) {
  std::vector<std::size_t> pool = boundary_ranks(n, g);
  rng.shuffle(pool);
  if (pool.size() >= count) {
    pool.resize(count);
    return pool;
  }
  // Fewer boundaries than planted items: top up with other ranks.
  std::vector<std::size_t> rest;
  for (std::size_t r = 0; r < n; ++r) {
    if (std::find(pool.begin(), pool.end(), r) == pool.end()) rest.push_back(r);
  }
  rng.shuffle(rest);
  while (pool.size() < count) {
    pool.push_back(rest.back());
    rest.pop_back();
  }
  return pool;
}

template <Numeric V>
AnyInstance assemble(const std::vector<Storage>& stores, std::size_t k, bool single,
                     std::int64_t target) {
  std::vector<std::vector<V>> lists;
  for (const auto& s : stores) {
    std::vector<V> vals;
    vals.reserve(s.slots.size());
    for (const auto& slot : s.slots) vals.push_back(static_cast<V>(slot.value));
    lists.push_back(std::move(vals));
  }
  if (single) return Instance<V>::single_list(std::move(lists[0]), k, static_cast<V>(target));
  return Instance<V>::multi_list(lists, static_cast<V>(target));
}

}  // namespace

Generated generate(const GenConfig& config) {
  const std::size_t n = config.n;
  const std::size_t k = config.k;
  if (k < 2) throw PreconditionViolation("generate: k must be at least 2");
  if (n == 0) throw PreconditionViolation("generate: n must be positive");
  if (n > std::numeric_limits<std::uint32_t>::max()) throw PreconditionViolation("generate: n too large");
  const std::int64_t limit = max_range(config.mode, k);
  const std::int64_t range = config.range.value_or(limit);
  if (range < 0 || range > limit) {
    throw PreconditionViolation("generate: range must lie in [0, " + std::to_string(limit) +
                                "] for this mode and k");
  }
  if (config.target < -limit || config.target > limit) {
    throw PreconditionViolation("generate: target outside the overflow budget");
  }
  const std::size_t lists = config.single_list ? 1 : k;
  Rng rng(config.seed);
  auto build = [&](const std::vector<Storage>& stores) {
    return config.mode == Mode::integer
               ? assemble<std::int64_t>(stores, k, config.single_list, config.target)
               : assemble<double>(stores, k, config.single_list, config.target);
  };

  if (config.distribution == Distribution::uniform) {
    std::vector<Storage> stores(lists);
    for (auto& s : stores) {
      for (std::size_t j = 0; j < n; ++j) s.slots.push_back({rng.between(-range, range), -1});
    }
    return Generated{build(stores), {}};
  }

  if (config.single_list && n < k) throw PreconditionViolation("generate: planting needs n >= k");
  const Residues res = pick_residues(config.target, k);
  const auto kk = static_cast<std::int64_t>(k);
  if (kk * std::abs(config.target) > range) {
    throw PreconditionViolation("generate: planting needs |target| <= range / k");
  }
  if (range < res.m) throw PreconditionViolation("generate: range too small to plant a solution");
  const std::size_t g = config.g.value_or(static_cast<std::size_t>(std::ceil(std::sqrt(static_cast<double>(n)))));
  if (g < 1 || g > n) throw PreconditionViolation("generate: g must lie in [1, n]");

  constexpr int kAttempts = 1000;
  for (int attempt = 0; attempt < kAttempts; ++attempt) {
    // k-1 multiples of M plus the value that completes the target.
    const std::int64_t span = range / (res.m * kk);
    std::vector<std::int64_t> values;
    std::int64_t sum = 0;
    for (std::size_t i = 0; i + 1 < k; ++i) {
      values.push_back(res.m * rng.between(-span, span));
      sum += values.back();
    }
    values.push_back(config.target - sum);

    std::vector<Storage> stores;
    bool ok = true;
    for (std::size_t l = 0; l < lists && ok; ++l) {
      std::vector<std::pair<std::int64_t, int>> mine;
      if (config.single_list) {
        for (std::size_t i = 0; i < k; ++i) mine.emplace_back(values[i], static_cast<int>(i));
      } else {
        mine.emplace_back(values[l], static_cast<int>(l));
      }
      std::optional<Storage> s;
      if (config.distribution == Distribution::planted) {
        s = fill_random(rng, res, n, range, mine);
      } else {
        s = fill_ranked(rng, res, n, range, mine, pick_ranks(rng, n, g, mine.size()));
      }
      if (!s) {
        ok = false;
      } else {
        stores.push_back(std::move(*s));
      }
    }
    if (!ok) continue;

    std::vector<std::pair<std::uint32_t, std::uint32_t>> planted(k);
    for (std::size_t l = 0; l < stores.size(); ++l) {
      for (std::size_t j = 0; j < n; ++j) {
        const int tag = stores[l].slots[j].planted;
        if (tag >= 0) {
          planted[static_cast<std::size_t>(tag)] = {static_cast<std::uint32_t>(config.single_list ? 0 : l),
                                                        static_cast<std::uint32_t>(j)};
        }
      }
    }
    return Generated{build(stores), std::move(planted)};
  }
  throw PreconditionViolation("generate: could not place the planted tuple; widen the range");
}

}  // namespace ksum
