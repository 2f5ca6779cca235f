#pragma once

// Solvers by name, as used by the CLI, the bench harness and the Python
// module, and a one-call solve that produces a TispReport.
//
//   brute-force  two-sum  sorted-3sum  meet-in-middle  schroeppel-shamir
//   ksum-via-4sum  bootstrap  self-reduce-3sum  self-reduce-ksum

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ksum/report.hpp"
#include "ksum/solvers.hpp"
#include "ksum/types.hpp"

namespace ksum {

struct SolveOptions {
  std::string solver = "brute-force";
  // Inner solver for bootstrap and the self-reductions.
  std::optional<std::string> base;
  // Group count of the self-reductions; defaults to ceil(sqrt(n)).
  std::optional<std::uint64_t> g;
  // When > 1, an outer self-reduction with h groups wraps the g-group one.
  std::optional<std::uint64_t> h;
  std::optional<std::uint64_t> space_cap;
};

std::vector<std::string> solver_names();

// Throws PreconditionViolation for unknown names and ArityMismatch when the
// solver cannot handle arity k.
SolverSpec solver_spec(const std::string& name);

template <Numeric V>
struct ConfiguredSolver {
  Solver<V> solver;
  std::uint64_t g = 1;
  std::uint64_t h = 1;
};

template <Numeric V>
ConfiguredSolver<V> make_solver(const SolveOptions& options, std::size_t k, std::uint64_t n);

// Runs the configured solver under a fresh Meter and checks any witness it
// returns.  BudgetExceeded propagates.
template <Numeric V>
TispReport solve_instance(const Instance<V>& inst, const SolveOptions& options);

TispReport solve_instance(const AnyInstance& inst, const SolveOptions& options);

}  // namespace ksum
