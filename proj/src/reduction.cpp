#include "ksum/reduction.hpp"

#include <algorithm>
#include <string>
#include <utility>

#include "ksum/selection.hpp"

namespace ksum {

bool dominates(const SubproblemTuple& b, const SubproblemTuple& a) {
  if (a.coords.size() != b.coords.size()) return false;
  for (std::size_t i = 0; i < a.coords.size(); ++i) {
    if (!(b.coords[i] > a.coords[i])) return false;
  }
  return true;
}

bool dominates(const SubproblemRecord& b, const SubproblemRecord& a) {
  if (a.groups.size() != b.groups.size()) return false;
  for (std::size_t i = 0; i < a.groups.size(); ++i) {
    if (!(b.groups[i] > a.groups[i])) return false;
  }
  return b.window_first_rank > a.window_last_rank;
}

std::vector<SubproblemTuple> chain_cover(const SubproblemTuple& start, std::uint32_t g) {
  if (start.coords.empty()) throw PreconditionViolation("chain_cover: empty tuple");
  const auto [lo, hi] = std::minmax_element(start.coords.begin(), start.coords.end());
  if (*lo != 1 || *hi > g) {
    throw PreconditionViolation("chain_cover: tuple must lie in [1, g]^k with a coordinate equal to 1");
  }
  std::vector<SubproblemTuple> chain;
  for (std::uint32_t j = 0; j + *hi <= g; ++j) {
    SubproblemTuple t = start;
    for (auto& c : t.coords) c += j;
    chain.push_back(std::move(t));
  }
  return chain;
}

std::vector<SubproblemTuple> chain_starts(std::uint32_t g, std::size_t k) {
  std::vector<SubproblemTuple> out;
  if (g == 0 || k == 0) return out;
  SubproblemTuple t{std::vector<std::uint32_t>(k, 1)};
  while (true) {
    if (std::find(t.coords.begin(), t.coords.end(), 1U) != t.coords.end()) out.push_back(t);
    std::size_t i = k;
    while (i > 0 && t.coords[i - 1] == g) t.coords[--i] = 1;
    if (i == 0) break;
    ++t.coords[i - 1];
  }
  return out;
}

template <Numeric V>
NontrivialCount<V> count_nontrivial_subproblems(std::span<const GroupBoundary<V>> boundaries,
                                                std::size_t g, V target) {
  const std::size_t k = boundaries.size();
  if (k == 0 || g == 0) throw PreconditionViolation("count_nontrivial_subproblems: empty input");
  for (const auto& b : boundaries) {
    if (b.keys.size() != g + 1) {
      throw PreconditionViolation("count_nontrivial_subproblems: need g+1 boundary keys per list");
    }
  }

  auto exact = [&](const std::vector<std::size_t>& at) -> std::optional<Witness<V>> {
    std::vector<Item<V>> items;
    V sum{};
    for (std::size_t i = 0; i < k; ++i) {
      const Item<V>& key = boundaries[i].keys[at[i]];
      for (const auto& prev : items) {
        if (same_source(prev, key)) return std::nullopt;
      }
      items.push_back(key);
      sum += key.value;
    }
    if (sum != target) return std::nullopt;
    return make_witness(std::move(items));
  };

  NontrivialCount<V> out;
  std::vector<std::size_t> x(k, 1);
  std::vector<std::size_t> lower(k);
  std::vector<std::size_t> upper(k);
  while (true) {
    V lo{};
    V hi{};
    for (std::size_t i = 0; i < k; ++i) {
      lower[i] = x[i] - 1;
      upper[i] = x[i];
      lo += boundaries[i].keys[lower[i]].value;
      hi += boundaries[i].keys[upper[i]].value;
    }
    std::optional<Witness<V>> w;
    if (lo == target) w = exact(lower);
    if (!w && hi == target) w = exact(upper);
    if (w) {
      out.boundary_witness = std::move(w);
      return out;
    }
    if (lo > target || hi < target) {
      ++out.trivial;
    } else {
      ++out.nontrivial;
    }

    std::size_t i = k;
    while (i > 0 && x[i - 1] == g) x[--i] = 1;
    if (i == 0) break;
    ++x[i - 1];
  }
  return out;
}

namespace {

template <Numeric V>
std::uint64_t rank_in(std::span<const Item<V>> list, const Item<V>& key) {
  return static_cast<std::uint64_t>(std::count_if(
      list.begin(), list.end(), [&](const Item<V>& x) { return item_compare(x, key) < 0; }));
}

template <Numeric V>
std::size_t validate(const Problem<V>& problem, const ReductionConfig<V>& config,
                     const char* who) {
  std::size_t n = 0;
  for (const auto& l : problem.lists) n = std::max(n, l.size());
  if (config.g < 1 || config.g > std::max<std::size_t>(n, 1)) {
    throw PreconditionViolation(std::string(who) + ": g must lie in [1, n]");
  }
  if (!config.base) throw PreconditionViolation(std::string(who) + ": no base solver");
  return n;
}

// Shared bookkeeping for both reductions: runs the base solver on a
// subproblem and records what the caller asked for.
template <Numeric V>
class BaseRunner {
 public:
  BaseRunner(const Problem<V>& problem, const ReductionConfig<V>& config, Meter& meter,
             ReductionStats* stats)
      : problem_(problem), config_(config), meter_(meter), stats_(stats),
        start_ops_(meter.operations()) {
    sub_.target = problem.target;
    sub_.excluded = problem.excluded;
  }

  ~BaseRunner() {
    if (stats_ != nullptr) {
      stats_->reduction_operations += meter_.operations() - start_ops_ - base_ops_;
      stats_->base_operations += base_ops_;
    }
  }

  void note_next_group() {
    if (stats_ != nullptr) ++stats_->next_group_calls;
  }

  std::optional<Witness<V>> run(const std::vector<const Group<V>*>& groups,
                                const std::vector<std::uint32_t>& coords) {
    sub_.lists.clear();
    for (const auto* g : groups) sub_.lists.push_back(g->items());
    if (stats_ != nullptr) {
      ++stats_->base_calls;
      if (config_.record_subproblem_count) {
        const Group<V>& window = *groups.back();
        const auto last = problem_.lists.back();
        stats_->subproblems.push_back(SubproblemRecord{
            coords, rank_in(last, window.min_key()), rank_in(last, window.max_key())});
      }
    }
    const auto before = meter_.operations();
    auto w = config_.base(sub_, meter_);
    base_ops_ += meter_.operations() - before;
    return w;
  }

 private:
  const Problem<V>& problem_;
  const ReductionConfig<V>& config_;
  Meter& meter_;
  ReductionStats* stats_;
  Problem<V> sub_;
  std::uint64_t start_ops_;
  std::uint64_t base_ops_ = 0;
};

}  // namespace

template <Numeric V>
std::optional<Witness<V>> three_sum_self_reduce(const Problem<V>& problem,
                                                const ReductionConfig<V>& config, Meter& meter,
                                                ReductionStats* stats) {
  if (problem.arity() != 3) throw ArityMismatch("three_sum_self_reduce: arity must be 3");
  const std::size_t n = validate(problem, config, "three_sum_self_reduce");
  const std::size_t g = config.g;
  const std::size_t s = reduction_group_size(n, g);
  const auto a_list = problem.lists[0];
  const auto b_list = problem.lists[1];
  const auto c_list = problem.lists[2];

  BaseRunner<V> runner(problem, config, meter, stats);
  // loop counters and the two window bounds
  Lease state = meter.acquire(4);
  auto next = [&](std::span<const Item<V>> list, const Threshold<V>& after) {
    runner.note_next_group();
    return next_group(list, after, s, meter);
  };

  auto a_after = Threshold<V>::minus_infinity();
  for (std::size_t i = 0; i < g; ++i) {
    Group<V> a = next(a_list, a_after);
    if (a.empty()) break;
    auto b_after = Threshold<V>::minus_infinity();
    for (std::size_t j = 0; j < g; ++j) {
      Group<V> b = next(b_list, b_after);
      if (b.empty()) break;
      meter.add(2);
      const V lowest = problem.target - a.max_key().value - b.max_key().value;
      meter.add(2);
      const V highest = problem.target - a.min_key().value - b.min_key().value;

      Group<V> c = next(c_list, Threshold<V>::at_least(lowest));
      while (!c.empty() && (meter.compare(), c.min_key().value <= highest)) {
        if (auto w = runner.run({&a, &b, &c}, {static_cast<std::uint32_t>(i + 1),
                                               static_cast<std::uint32_t>(j + 1)})) {
          return w;
        }
        const auto c_after = Threshold<V>::after(c.max_key());
        c.reset();
        c = next(c_list, c_after);
      }
      b_after = Threshold<V>::after(b.max_key());
    }
    a_after = Threshold<V>::after(a.max_key());
  }
  return std::nullopt;
}

template <Numeric V>
std::optional<Witness<V>> ksum_self_reduce(const Problem<V>& problem,
                                           const ReductionConfig<V>& config, Meter& meter,
                                           ReductionStats* stats) {
  const std::size_t k = problem.arity();
  if (k < 3) throw ArityMismatch("ksum_self_reduce: arity must be at least 3");
  const std::size_t n = validate(problem, config, "ksum_self_reduce");
  const std::size_t g = config.g;
  const std::size_t s = reduction_group_size(n, g);

  BaseRunner<V> runner(problem, config, meter, stats);
  std::vector<Group<V>> groups(k);
  std::vector<const Group<V>*> views;
  for (auto& grp : groups) views.push_back(&grp);
  std::vector<std::uint32_t> coords(k - 1);
  // one cursor and one partial sum pair per level
  Lease state = meter.acquire(3 * k);

  auto next = [&](std::size_t list, const Threshold<V>& after) {
    runner.note_next_group();
    return next_group(problem.lists[list], after, s, meter);
  };

  auto level = [&](auto&& self, std::size_t d, V max_sum, V min_sum) -> std::optional<Witness<V>> {
    if (d + 1 == k) {
      meter.add(2);
      const V lowest = problem.target - max_sum;
      const V highest = problem.target - min_sum;
      Group<V>& window = groups[d];
      window = next(d, Threshold<V>::at_least(lowest));
      while (!window.empty() && (meter.compare(), window.min_key().value <= highest)) {
        if (auto w = runner.run(views, coords)) return w;
        const auto after = Threshold<V>::after(window.max_key());
        window.reset();
        window = next(d, after);
      }
      window.reset();
      return std::nullopt;
    }
    auto after = Threshold<V>::minus_infinity();
    for (std::size_t i = 0; i < g; ++i) {
      groups[d].reset();
      groups[d] = next(d, after);
      if (groups[d].empty()) break;
      coords[d] = static_cast<std::uint32_t>(i + 1);
      V next_max = groups[d].max_key().value;
      V next_min = groups[d].min_key().value;
      if (d > 0) {
        meter.add(2);
        next_max += max_sum;
        next_min += min_sum;
      }
      if (auto w = self(self, d + 1, next_max, next_min)) return w;
      after = Threshold<V>::after(groups[d].max_key());
    }
    groups[d].reset();
    return std::nullopt;
  };
  return level(level, 0, V{}, V{});
}

#define KSUM_INSTANTIATE_REDUCTION(V)                                                        \
  template NontrivialCount<V> count_nontrivial_subproblems<V>(                              \
      std::span<const GroupBoundary<V>>, std::size_t, V);                                   \
  template std::optional<Witness<V>> three_sum_self_reduce<V>(                              \
      const Problem<V>&, const ReductionConfig<V>&, Meter&, ReductionStats*);               \
  template std::optional<Witness<V>> ksum_self_reduce<V>(const Problem<V>&,                 \
                                                         const ReductionConfig<V>&, Meter&, \
                                                         ReductionStats*);

KSUM_INSTANTIATE_REDUCTION(std::int64_t)
KSUM_INSTANTIATE_REDUCTION(double)

}  // namespace ksum
