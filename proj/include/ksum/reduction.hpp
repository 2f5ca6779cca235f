#pragma once

// Deterministic self-reduction of k-SUM.
//
// Every list is cut into groups of ceil(n/g)+1 consecutive order statistics,
// retrieved one at a time with next_group so only O(n/g) words are live.  For
// each choice of groups in the first k-1 lists a window slides over the last
// list, covering exactly the values that could complete a sum to the target,
// and each window becomes one base-solver call on at most k(ceil(n/g)+1)
// items.  Because non-trivial group tuples form an antichain under strict
// domination, only O(k g^{k-1}) base calls are made.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "ksum/meter.hpp"
#include "ksum/solvers.hpp"
#include "ksum/types.hpp"

namespace ksum {

// k coordinates in [1, g].
struct SubproblemTuple {
  std::vector<std::uint32_t> coords;

  friend bool operator==(const SubproblemTuple&, const SubproblemTuple&) = default;
  friend auto operator<=>(const SubproblemTuple&, const SubproblemTuple&) = default;
};

// b strictly dominates a: every coordinate of b is larger.
bool dominates(const SubproblemTuple& b, const SubproblemTuple& a);

// The diagonal chain t, t+1, ..., t+(g-l) for a start tuple with a 1
// coordinate and largest coordinate l.  Throws PreconditionViolation.
std::vector<SubproblemTuple> chain_cover(const SubproblemTuple& start, std::uint32_t g);

// Every start tuple of chain_cover: the tuples of [g]^k containing a 1.
std::vector<SubproblemTuple> chain_starts(std::uint32_t g, std::size_t k);

template <Numeric V>
struct NontrivialCount {
  std::uint64_t nontrivial = 0;
  std::uint64_t trivial = 0;
  // Set when some tuple's boundary sum hits the target exactly; the count
  // stops at that tuple.
  std::optional<Witness<V>> boundary_witness;
};

// Classifies all g^k group tuples by boundary keys: trivial when the sum of
// lower keys exceeds the target or the sum of upper keys falls below it.
template <Numeric V>
NontrivialCount<V> count_nontrivial_subproblems(std::span<const GroupBoundary<V>> boundaries,
                                                std::size_t g, V target);

template <Numeric V>
struct ReductionConfig {
  std::size_t g = 1;
  SolveFn<V> base;
  bool record_subproblem_count = false;
};

// One base-solver call: group indices (1-based) for lists 0..k-2 and the
// window of the last list as 0-based ranks of its extreme items.
struct SubproblemRecord {
  std::vector<std::uint32_t> groups;
  std::uint64_t window_first_rank = 0;
  std::uint64_t window_last_rank = 0;
};

// A realized subproblem b strictly dominates a: larger group in every list
// and a window entirely above a's.
bool dominates(const SubproblemRecord& b, const SubproblemRecord& a);

struct ReductionStats {
  std::uint64_t base_calls = 0;
  std::uint64_t next_group_calls = 0;
  // Charged operations split between base-solver calls and the reduction's
  // own scanning.
  std::uint64_t base_operations = 0;
  std::uint64_t reduction_operations = 0;
  // Filled only when record_subproblem_count is set.  Window ranks are
  // diagnostics and are not charged to the meter.
  std::vector<SubproblemRecord> subproblems;
};

// Three nested loops over groups of A, groups of B and windows of C starting
// at the first C value >= target - max A' - max B' and continuing while the
// window's minimum is <= target - min A' - min B'.
template <Numeric V>
std::optional<Witness<V>> three_sum_self_reduce(const Problem<V>& problem,
                                                const ReductionConfig<V>& config, Meter& meter,
                                                ReductionStats* stats = nullptr);

// The same scheme for any k >= 3 with k-1 nested group cursors that re-derive
// each list's groups by repeated next_group calls.
template <Numeric V>
std::optional<Witness<V>> ksum_self_reduce(const Problem<V>& problem,
                                           const ReductionConfig<V>& config, Meter& meter,
                                           ReductionStats* stats = nullptr);

// Group size used by both reductions.
inline std::size_t reduction_group_size(std::size_t n, std::size_t g) { return (n + g - 1) / g + 1; }

}  // namespace ksum
