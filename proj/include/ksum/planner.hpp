#pragma once

// Parameter selection for the self-reductions: exact exponent arithmetic for
// the k-SUM corollaries and the two-stage 3-SUM recipe, and a numeric check of
// the space-reduction constraints at a concrete n.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <boost/rational.hpp>
#include <nlohmann/json_fwd.hpp>

namespace ksum {

using Rational = boost::rational<std::int64_t>;

std::string to_string(const Rational& r);
Rational parse_rational(const std::string& text);
double to_double(const Rational& r);

enum class SpaceMode { linear, sqrt };

std::string_view to_string(SpaceMode mode);
SpaceMode parse_space_mode(std::string_view text);

struct Plan {
  std::size_t k = 0;
  std::uint64_t n = 0;
  std::uint64_t g = 1;
  std::optional<std::uint64_t> h;
  Rational g_exponent{0};
  std::optional<Rational> h_exponent;
  Rational time_exponent{0};
  Rational space_exponent{0};
  // Bootstrap layers stacked on top of the reduced solver (k not a multiple of 4).
  std::size_t bootstrap_layers = 0;
  std::string provenance;
};

// ceil(n^e) clamped to [1, n].
std::uint64_t power_of_n(std::uint64_t n, const Rational& e);

// Throws PreconditionViolation for k < 4.
Plan plan_ksum(std::size_t k, SpaceMode space, std::uint64_t n);

struct TwoStagePlan {
  Rational eps{0};
  Rational alpha{0};
  Rational stage1_g_exponent{0};
  Rational intermediate_time_exponent{0};
  Rational stage2_g_exponent{0};
  // The two terms whose maximum is the final time exponent.
  Rational balance_term{0};
  Rational gain_term{0};
  Rational time_exponent{0};
  Rational space_exponent{0};
  // For alpha >= 1/2 the time bound is taken at the smaller exponent that
  // balances both terms; space is still reported for the requested alpha.
  std::optional<Rational> effective_alpha;
};

// Throws PreconditionViolation unless 0 < eps < 1 and alpha > 0.
TwoStagePlan plan_3sum_two_stage(const Rational& eps, const Rational& alpha);

// The gain function f of an n^2/f(n) base algorithm.
struct GrowthFn {
  enum class Kind { power, polylog, lg_over_lglg };
  Kind kind = Kind::power;
  double param = 0.0;  // epsilon for power, a for polylog

  static GrowthFn power(double eps) { return {Kind::power, eps}; }
  static GrowthFn polylog(double a) { return {Kind::polylog, a}; }
  static GrowthFn lg_over_lglg() { return {Kind::lg_over_lglg, 0.0}; }

  // Clamped to [1, x].
  double operator()(double x) const;
};

GrowthFn parse_growth(const std::string& text);

// n^p * lg(n)^q * lglg(n)^r, with lg(x) = log2(max(x, 2)) and
// lglg(x) = lg(lg(x)).
struct ParamFn {
  double p = 0.0;
  double q = 0.0;
  double r = 0.0;

  double operator()(double x) const;
};

struct ConstraintReport {
  bool satisfied = false;
  // Each inequality as a ratio oriented so that 1 means it holds with no
  // constant to spare; satisfied when both are at least 1/kHiddenConstant.
  double group_ratio = 0.0;
  double space_ratio = 0.0;
  // log2(ratio * kHiddenConstant): non-negative exactly when satisfied.
  double group_slack = 0.0;
  double space_slack = 0.0;
};

// Allowance for the constants hidden in the Omega/O of both constraints.
inline constexpr double kHiddenConstant = 4.0;

ConstraintReport check_space_reduction_constraints(const GrowthFn& f, const ParamFn& g,
                                                   const ParamFn& h, double n);

void to_json(nlohmann::json& j, const Plan& p);
void to_json(nlohmann::json& j, const TwoStagePlan& p);
void to_json(nlohmann::json& j, const ConstraintReport& r);

// CSV rows k,n,g_exp,time_exp,space_exp,provenance for each k in [k_lo, k_hi].
std::string curve_header();
std::string curve_row(const Plan& p);
std::vector<Plan> curve(std::size_t k_lo, std::size_t k_hi, SpaceMode space, std::uint64_t n);

}  // namespace ksum
