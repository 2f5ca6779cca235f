#include "ksum/planner.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <sstream>

#include <nlohmann/json.hpp>

#include "ksum/error.hpp"

namespace ksum {

std::string to_string(const Rational& r) {
  if (r.denominator() == 1) return std::to_string(r.numerator());
  return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

Rational parse_rational(const std::string& text) {
  auto parse_int = [&](std::string_view part) {
    std::int64_t v = 0;
    auto [ptr, ec] = std::from_chars(part.data(), part.data() + part.size(), v);
    if (ec != std::errc{} || ptr != part.data() + part.size()) {
      throw ParseError("not a rational number: '" + text + "'");
    }
    return v;
  };
  const auto slash = text.find('/');
  const std::string_view view(text);
  if (slash == std::string::npos) return Rational(parse_int(view));
  const auto den = parse_int(view.substr(slash + 1));
  if (den == 0) throw ParseError("zero denominator in '" + text + "'");
  return Rational(parse_int(view.substr(0, slash)), den);
}

double to_double(const Rational& r) {
  return static_cast<double>(r.numerator()) / static_cast<double>(r.denominator());
}

std::string_view to_string(SpaceMode mode) { return mode == SpaceMode::linear ? "linear" : "sqrt"; }

SpaceMode parse_space_mode(std::string_view text) {
  if (text == "linear") return SpaceMode::linear;
  if (text == "sqrt") return SpaceMode::sqrt;
  throw ParseError("unknown space mode '" + std::string(text) + "' (expected linear or sqrt)");
}

std::uint64_t power_of_n(std::uint64_t n, const Rational& e) {
  if (n <= 1) return 1;
  const double v = std::ceil(std::pow(static_cast<double>(n), to_double(e)) - 1e-9);
  if (!(v >= 1.0)) return 1;
  if (v >= static_cast<double>(n)) return n;
  return static_cast<std::uint64_t>(v);
}

Plan plan_ksum(std::size_t k, SpaceMode space, std::uint64_t n) {
  if (k < 4) throw PreconditionViolation("plan_ksum: k must be at least 4");
  if (n == 0) throw PreconditionViolation("plan_ksum: n must be positive");
  const auto kk = static_cast<std::int64_t>(k);
  const std::int64_t k4 = 4 * (kk / 4);

  Plan p;
  p.k = k;
  p.n = n;
  p.bootstrap_layers = static_cast<std::size_t>(kk - k4);
  if (space == SpaceMode::linear) {
    p.g_exponent = Rational(k4 - 4, k4);
    p.space_exponent = Rational(1);
    p.time_exponent = p.bootstrap_layers == 0 ? Rational(kk - 3) + Rational(4, kk)
                                              : Rational(kk - 3) + Rational(4, kk - 3);
  } else {
    p.g_exponent = Rational(k4 - 2, k4);
    p.space_exponent = Rational(1, 2);
    p.time_exponent = Rational(kk - 2) + Rational(2, kk);
  }
  p.g = power_of_n(n, p.g_exponent);
  std::string base = "ksum-via-4sum(" + std::to_string(k4) + ")+self-reduce";
  if (p.bootstrap_layers > 0) {
    base = "bootstrap^" + std::to_string(p.bootstrap_layers) + "(" + base + ")";
  }
  p.provenance = base + (space == SpaceMode::linear ? "[linear]" : "[sqrt]");
  return p;
}

TwoStagePlan plan_3sum_two_stage(const Rational& eps, const Rational& alpha) {
  if (!(eps > 0 && eps < 1)) throw PreconditionViolation("plan_3sum_two_stage: need 0 < eps < 1");
  if (!(alpha > 0)) throw PreconditionViolation("plan_3sum_two_stage: need alpha > 0");
  const Rational half(1, 2);
  const Rational gain = eps / (2 - eps);

  TwoStagePlan p;
  p.eps = eps;
  p.alpha = alpha;
  p.stage1_g_exponent = (1 - eps) / (2 - eps);
  p.intermediate_time_exponent = 2 - gain;

  Rational a = alpha;
  if (alpha >= half) {
    a = gain / (4 + 2 * gain);
    p.effective_alpha = a;
  }
  p.stage2_g_exponent = half + a;
  p.balance_term = 2 - 2 * a;
  p.gain_term = 2 - (half - a) * gain;
  p.time_exponent = std::max(p.balance_term, p.gain_term);
  p.space_exponent = half + alpha;
  return p;
}

namespace {

double lg(double x) { return std::log2(std::max(x, 2.0)); }
double lglg(double x) { return lg(lg(x)); }

}  // namespace

double GrowthFn::operator()(double x) const {
  double v = 1.0;
  switch (kind) {
    case Kind::power:
      v = std::pow(std::max(x, 1.0), param);
      break;
    case Kind::polylog:
      v = std::pow(lg(x), param);
      break;
    case Kind::lg_over_lglg:
      v = lg(x) / lglg(x);
      break;
  }
  return std::clamp(v, 1.0, std::max(x, 1.0));
}

GrowthFn parse_growth(const std::string& text) {
  if (text == "lg/lglg") return GrowthFn::lg_over_lglg();
  const auto colon = text.find(':');
  if (colon != std::string::npos) {
    const std::string kind = text.substr(0, colon);
    double param = 0.0;
    try {
      param = std::stod(text.substr(colon + 1));
    } catch (const std::exception&) {
      throw ParseError("bad growth parameter in '" + text + "'");
    }
    if (kind == "power") return GrowthFn::power(param);
    if (kind == "polylog") return GrowthFn::polylog(param);
  }
  throw PreconditionViolation("unsupported growth form '" + text +
                              "' (expected power:<eps>, polylog:<a> or lg/lglg)");
}

double ParamFn::operator()(double x) const {
  return std::pow(std::max(x, 1.0), p) * std::pow(lg(x), q) * std::pow(lglg(x), r);
}

ConstraintReport check_space_reduction_constraints(const GrowthFn& f, const ParamFn& g,
                                                   const ParamFn& h, double n) {
  if (!(n >= 2.0)) throw PreconditionViolation("check_space_reduction_constraints: need n >= 2");
  auto clamp_n = [](double v, double x) { return std::clamp(v, 1.0, std::max(x, 1.0)); };

  const double gn = clamp_n(g(n), n);
  const double hn = clamp_n(h(n), n);
  const double target_space = n / f(n / gn);

  ConstraintReport r;
  r.group_ratio = gn / std::sqrt(target_space);
  const double g_inner = clamp_n(g(n / hn), n / hn);
  r.space_ratio = target_space / (hn * hn + n / f(n / (hn * g_inner)));
  r.group_slack = std::log2(r.group_ratio * kHiddenConstant);
  r.space_slack = std::log2(r.space_ratio * kHiddenConstant);
  r.satisfied = r.group_slack >= 0.0 && r.space_slack >= 0.0;
  return r;
}

void to_json(nlohmann::json& j, const Plan& p) {
  j = nlohmann::json{{"k", p.k},
                     {"n", p.n},
                     {"g", p.g},
                     {"h", p.h ? nlohmann::json(*p.h) : nlohmann::json(nullptr)},
                     {"g_exponent", to_string(p.g_exponent)},
                     {"h_exponent", p.h_exponent ? nlohmann::json(to_string(*p.h_exponent))
                                                 : nlohmann::json(nullptr)},
                     {"time_exponent", to_string(p.time_exponent)},
                     {"space_exponent", to_string(p.space_exponent)},
                     {"bootstrap_layers", p.bootstrap_layers},
                     {"provenance", p.provenance}};
}

void to_json(nlohmann::json& j, const TwoStagePlan& p) {
  j = nlohmann::json{
      {"eps", to_string(p.eps)},
      {"alpha", to_string(p.alpha)},
      {"stage1_g_exponent", to_string(p.stage1_g_exponent)},
      {"intermediate_time_exponent", to_string(p.intermediate_time_exponent)},
      {"stage2_g_exponent", to_string(p.stage2_g_exponent)},
      {"balance_term", to_string(p.balance_term)},
      {"gain_term", to_string(p.gain_term)},
      {"time_exponent", to_string(p.time_exponent)},
      {"space_exponent", to_string(p.space_exponent)},
      {"effective_alpha",
       p.effective_alpha ? nlohmann::json(to_string(*p.effective_alpha)) : nlohmann::json(nullptr)}};
}

void to_json(nlohmann::json& j, const ConstraintReport& r) {
  j = nlohmann::json{{"satisfied", r.satisfied},     {"group_ratio", r.group_ratio},
                     {"space_ratio", r.space_ratio}, {"group_slack", r.group_slack},
                     {"space_slack", r.space_slack}};
}

std::string curve_header() { return "k,n,g_exp,time_exp,space_exp,provenance"; }

std::string curve_row(const Plan& p) {
  std::ostringstream out;
  out << p.k << ',' << p.n << ',' << to_string(p.g_exponent) << ',' << to_string(p.time_exponent)
      << ',' << to_string(p.space_exponent) << ',' << p.provenance;
  return out.str();
}

std::vector<Plan> curve(std::size_t k_lo, std::size_t k_hi, SpaceMode space, std::uint64_t n) {
  if (k_lo > k_hi) throw PreconditionViolation("curve: empty k range");
  std::vector<Plan> rows;
  for (std::size_t k = k_lo; k <= k_hi; ++k) rows.push_back(plan_ksum(k, space, n));
  return rows;
}

}  // namespace ksum
