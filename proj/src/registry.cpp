#include "ksum/registry.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>

#include "ksum/reduction.hpp"

namespace ksum {

namespace {

const std::vector<SolverSpec>& specs() {
  static const std::vector<SolverSpec> all{
      {"brute-force", 2, 0, 1, "O(n^k)", "O(k)"},
      {"two-sum", 2, 2, 1, "O(n log n)", "O(n)"},
      {"sorted-3sum", 3, 3, 1, "O(n^2)", "O(n)"},
      {"meet-in-middle", 3, 0, 1, "O(n^ceil(k/2) log n)", "O(n^ceil(k/2))"},
      {"schroeppel-shamir", 4, 4, 1, "O(n^2 log n)", "O(n)"},
      {"ksum-via-4sum", 4, 0, 4, "O(n^(k/2) log n)", "O(n^(k/4))"},
      {"bootstrap", 3, 0, 1, "O(n T_base(n))", "S_base(n) + O(1)"},
      {"self-reduce-3sum", 3, 3, 1, "O(g^2 (n + T_base(n/g)))", "O(n/g + S_base(n/g))"},
      {"self-reduce-ksum", 3, 0, 1, "O(g^(k-1) (n + T_base(n/g)))", "O(n/g + S_base(n/g))"},
  };
  return all;
}

std::uint64_t default_g(std::uint64_t n) {
  return std::max<std::uint64_t>(1, static_cast<std::uint64_t>(std::ceil(std::sqrt(static_cast<double>(n)))));
}

void require_supported(const SolverSpec& spec, std::size_t k) {
  if (!spec.supports(k)) {
    throw ArityMismatch("solver '" + spec.name + "' does not support k = " + std::to_string(k));
  }
}

template <Numeric V>
SolveFn<V> leaf(const std::string& name, std::size_t k) {
  require_supported(solver_spec(name), k);
  if (name == "brute-force") return brute_force<V>;
  if (name == "two-sum") return two_sum<V>;
  if (name == "sorted-3sum") return sorted_3sum<V>;
  if (name == "meet-in-middle") return meet_in_middle<V>;
  if (name == "schroeppel-shamir") return schroeppel_shamir_4sum<V>;
  if (name == "ksum-via-4sum") return ksum_via_4sum<V>;
  throw PreconditionViolation("'" + name + "' cannot be used as a leaf solver");
}

std::string default_fixed(std::size_t k) {
  if (k >= 4) return "schroeppel-shamir";
  if (k == 3) return "sorted-3sum";
  return "two-sum";
}

// `base` (or the best fixed-arity solver below k) lifted to arity k by as
// many bootstrap layers as needed.
template <Numeric V>
SolveFn<V> lifted(const std::optional<std::string>& base, std::size_t k) {
  if (k < 3) throw ArityMismatch("bootstrap needs k >= 3");
  const std::string name = base.value_or(default_fixed(k - 1));
  if (name == "bootstrap" || name.rfind("self-reduce", 0) == 0) {
    throw PreconditionViolation("bootstrap base must be a leaf solver, got '" + name + "'");
  }
  const SolverSpec spec = solver_spec(name);
  std::size_t arity = spec.max_arity == spec.min_arity ? spec.min_arity : k - 1;
  while (arity >= spec.min_arity && !spec.supports(arity)) --arity;
  if (arity >= k || !spec.supports(arity)) {
    throw ArityMismatch("cannot bootstrap '" + name + "' to k = " + std::to_string(k));
  }
  SolveFn<V> fn = leaf<V>(name, arity);
  for (std::size_t a = arity; a < k; ++a) fn = make_bootstrap<V>(std::move(fn));
  return fn;
}

template <Numeric V>
SolveFn<V> base_for(const std::optional<std::string>& name, std::size_t k) {
  if (!name) {
    if (k == 3) return sorted_3sum<V>;
    if (k == 4) return schroeppel_shamir_4sum<V>;
    return lifted<V>(std::nullopt, k);
  }
  if (*name == "bootstrap") return lifted<V>(std::nullopt, k);
  if (name->rfind("self-reduce", 0) == 0) {
    throw PreconditionViolation("a self-reduction cannot be its own base");
  }
  return leaf<V>(*name, k);
}

template <Numeric V>
SolveFn<V> reduction(bool three, std::uint64_t g, SolveFn<V> base) {
  return [three, g, base = std::move(base)](const Problem<V>& p, Meter& m) {
    std::size_t n = 0;
    for (const auto& l : p.lists) n = std::max(n, l.size());
    ReductionConfig<V> config{static_cast<std::size_t>(std::clamp<std::uint64_t>(g, 1, std::max<std::size_t>(n, 1))),
                              base, false};
    return three ? three_sum_self_reduce(p, config, m) : ksum_self_reduce(p, config, m);
  };
}

}  // namespace

std::vector<std::string> solver_names() {
  std::vector<std::string> out;
  for (const auto& s : specs()) out.push_back(s.name);
  return out;
}

SolverSpec solver_spec(const std::string& name) {
  for (const auto& s : specs()) {
    if (s.name == name) return s;
  }
  throw PreconditionViolation("unknown solver '" + name + "'");
}

template <Numeric V>
ConfiguredSolver<V> make_solver(const SolveOptions& options, std::size_t k, std::uint64_t n) {
  const SolverSpec spec = solver_spec(options.solver);
  require_supported(spec, k);
  ConfiguredSolver<V> out;
  out.solver.spec = spec;

  const bool reduces = options.solver.rfind("self-reduce", 0) == 0;
  if (!reduces) {
    if (options.solver == "bootstrap") {
      out.solver.solve = lifted<V>(options.base, k);
    } else {
      out.solver.solve = leaf<V>(options.solver, k);
    }
    return out;
  }

  const std::uint64_t g = options.g.value_or(default_g(n));
  const std::uint64_t h = options.h.value_or(1);
  if (g < 1 || g > n) throw PreconditionViolation("g must lie in [1, n]");
  if (h < 1 || h > n) throw PreconditionViolation("h must lie in [1, n]");
  const bool three = options.solver == "self-reduce-3sum";
  SolveFn<V> solve = reduction<V>(three, g, base_for<V>(options.base, k));
  if (h > 1) solve = reduction<V>(three, h, std::move(solve));
  out.solver.solve = std::move(solve);
  out.g = g;
  out.h = h;
  return out;
}

template <Numeric V>
TispReport solve_instance(const Instance<V>& inst, const SolveOptions& options) {
  const auto configured = make_solver<V>(options, inst.k(), inst.n());
  Meter meter(options.space_cap);
  const Problem<V> problem = inst.problem();
  const auto start = std::chrono::steady_clock::now();
  auto witness = configured.solver.solve(problem, meter);
  const std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - start;
  if (witness && !verify_witness(problem, *witness)) {
    throw Error("solver '" + options.solver + "' returned an invalid witness");
  }
  return make_report(inst.n(), configured.g, configured.h, meter, elapsed.count(), witness);
}

TispReport solve_instance(const AnyInstance& inst, const SolveOptions& options) {
  return std::visit([&](const auto& x) { return solve_instance(x, options); }, inst);
}

template ConfiguredSolver<std::int64_t> make_solver<std::int64_t>(const SolveOptions&, std::size_t,
                                                                  std::uint64_t);
template ConfiguredSolver<double> make_solver<double>(const SolveOptions&, std::size_t, std::uint64_t);
template TispReport solve_instance<std::int64_t>(const Instance<std::int64_t>&, const SolveOptions&);
template TispReport solve_instance<double>(const Instance<double>&, const SolveOptions&);

}  // namespace ksum
