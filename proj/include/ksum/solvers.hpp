#pragma once

// Leaf k-SUM algorithms.  Every solver has the shape
//   solve(problem, meter) -> optional<Witness>
// and returns the first witness in its own enumeration order.  Witness items
// appear in list order and never reuse an input element or an excluded one.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>

#include "ksum/meter.hpp"
#include "ksum/types.hpp"

namespace ksum {

template <Numeric V>
using SolveFn = std::function<std::optional<Witness<V>>(const Problem<V>&, Meter&)>;

// Metadata only: echoed into reports and used to route arities.
struct SolverSpec {
  std::string name;
  std::size_t min_arity = 2;
  std::size_t max_arity = 0;  // 0 = unbounded
  std::size_t arity_step = 1;
  std::string time_claim;
  std::string space_claim;

  bool supports(std::size_t k) const noexcept {
    if (k < min_arity) return false;
    if (max_arity != 0 && k > max_arity) return false;
    return (k - min_arity) % arity_step == 0;
  }
};

template <Numeric V>
struct Solver {
  SolverSpec spec;
  SolveFn<V> solve;
};

// Largest subset-sum table meet_in_middle / ksum_via_4sum will build when the
// meter carries no cap of its own.
inline constexpr std::uint64_t kMaxTableRows = std::uint64_t{1} << 24;

// All index k-tuples in lexicographic order (increasing positions for a
// single aliased list).  O(n^k) time, O(k) words.
template <Numeric V>
std::optional<Witness<V>> brute_force(const Problem<V>& problem, Meter& meter);

// k = 2: sorted copies and an inward two-cursor scan.
template <Numeric V>
std::optional<Witness<V>> two_sum(const Problem<V>& problem, Meter& meter);

// k = 3: sorted copies, then a two-cursor scan over B and C for every a.
// O(n^2) time, O(n) words.
template <Numeric V>
std::optional<Witness<V>> sorted_3sum(const Problem<V>& problem, Meter& meter);

// k >= 3: materialized ceil(k/2)- and floor(k/2)-subset sums matched as 2-SUM.
template <Numeric V>
std::optional<Witness<V>> meet_in_middle(const Problem<V>& problem, Meter& meter);

// k = 4: A+B sums ascending and C+D sums descending from two heaps of one
// candidate per row, advanced as in 2-SUM.  O(n^2 log n) time, O(n) words.
template <Numeric V>
std::optional<Witness<V>> schroeppel_shamir_4sum(const Problem<V>& problem, Meter& meter);

// k a multiple of 4: (k/4)-subset sums as four virtual lists fed to the
// heap-based 4-SUM search.  O(n^{k/2} log n) time, O(n^{k/4}) words.
template <Numeric V>
std::optional<Witness<V>> ksum_via_4sum(const Problem<V>& problem, Meter& meter);

// (k+1)-SUM from a k-SUM solver: fix each element x of the last list and ask
// the inner solver for k elements of the other lists summing to target - x,
// with x excluded.
template <Numeric V>
std::optional<Witness<V>> bootstrap(const SolveFn<V>& inner, const Problem<V>& problem,
                                    Meter& meter);

template <Numeric V>
SolveFn<V> make_bootstrap(SolveFn<V> inner) {
  return [inner = std::move(inner)](const Problem<V>& p, Meter& m) { return bootstrap(inner, p, m); };
}

}  // namespace ksum
