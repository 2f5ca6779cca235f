// ksum: generate, solve, verify and benchmark k-SUM instances.
//
// Exit status: 0 ran to completion (the decision is data), 1 verification
// mismatch, 2 input error, 3 space budget exceeded.

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "ksum/bench.hpp"
#include "ksum/generator.hpp"
#include "ksum/instance_io.hpp"
#include "ksum/planner.hpp"
#include "ksum/registry.hpp"

namespace {

constexpr int kMismatch = 1;
constexpr int kInputError = 2;
constexpr int kBudgetAbort = 3;

void emit(const std::string& text, const std::string& out_path) {
  if (out_path.empty() || out_path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(out_path, std::ios::binary);
  if (!out) throw ksum::Error("cannot write '" + out_path + "'");
  out << text;
}

ksum::AnyInstance read_input(const std::string& path) {
  if (path.empty() || path == "-") return ksum::read_instance(std::cin);
  return ksum::load_instance(path);
}

std::size_t instance_n(const ksum::AnyInstance& inst) {
  return std::visit([](const auto& x) { return x.n(); }, inst);
}

// True when the report's witness is a valid solution of the instance.
bool witness_valid(const ksum::AnyInstance& inst, const ksum::ReportWitness& rw) {
  return std::visit(
      [&](const auto& x) {
        using V = std::decay_t<decltype(x.target())>;
        ksum::Witness<V> w;
        for (const auto& it : rw.items) {
          if (!std::holds_alternative<V>(it.value)) return false;
          w.items.push_back(ksum::Item<V>{std::get<V>(it.value), it.list_id, it.index});
        }
        if (!std::holds_alternative<V>(rw.sum_check)) return false;
        w.sum_check = std::get<V>(rw.sum_check);
        return ksum::verify_witness(x.problem(), w);
      },
      inst);
}

bool oracle_decision(const ksum::AnyInstance& inst) {
  ksum::SolveOptions oracle;
  oracle.solver = "brute-force";
  return ksum::solve_instance(inst, oracle).decision;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Deterministic, space-budgeted k-SUM solvers"};
  app.require_subcommand(1);
  // --h is the outer group count, so help is --help only.
  app.set_help_flag("--help", "Print this help message and exit");

  // gen
  ksum::GenConfig gen;
  std::string gen_mode = "int";
  std::string gen_dist = "uniform";
  bool multi_list = false;
  std::optional<std::int64_t> gen_range;
  std::optional<std::size_t> gen_g;
  std::string gen_out;
  auto* gen_cmd = app.add_subcommand("gen", "Write a seeded instance file");
  gen_cmd->add_option("--n", gen.n, "List length")->required();
  gen_cmd->add_option("--k", gen.k, "Arity")->capture_default_str();
  gen_cmd->add_option("--mode", gen_mode, "int or real")->capture_default_str();
  gen_cmd->add_option("--seed", gen.seed, "RNG seed")->capture_default_str();
  gen_cmd->add_option("--target", gen.target, "Target sum")->capture_default_str();
  gen_cmd->add_option("--distribution", gen_dist, "uniform, planted or boundary-adversarial")
      ->capture_default_str();
  gen_cmd->add_option("--range", gen_range, "Values lie in [-range, range]");
  gen_cmd->add_option("--g", gen_g, "Group count targeted by boundary-adversarial");
  gen_cmd->add_flag("--multi-list", multi_list, "k independent lists instead of one");
  gen_cmd->add_option("--out", gen_out, "Output file (default stdout)");

  // solve
  ksum::SolveOptions solve;
  std::string solve_in;
  bool solve_verify = false;
  std::size_t verify_cap = 200;
  std::optional<std::size_t> solve_k;
  std::string solve_mode;
  std::string solve_out;
  auto* solve_cmd = app.add_subcommand("solve", "Solve an instance file and print a JSON report");
  solve_cmd->add_option("file", solve_in, "Instance file (default stdin)");
  solve_cmd->add_option("--solver", solve.solver, "Solver name")->capture_default_str();
  solve_cmd->add_option("--base", solve.base, "Base solver for bootstrap and self-reductions");
  solve_cmd->add_option("--g", solve.g, "Group count (default ceil(sqrt(n)))");
  solve_cmd->add_option("--h", solve.h, "Outer group count");
  solve_cmd->add_option("--space-cap", solve.space_cap, "Hard cap on auxiliary words");
  solve_cmd->add_option("--k", solve_k, "Expected arity");
  solve_cmd->add_option("--mode", solve_mode, "Expected mode");
  solve_cmd->add_flag("--verify", solve_verify, "Cross-check the decision against brute force");
  solve_cmd->add_option("--verify-cap", verify_cap, "Largest n cross-checked by --verify")
      ->capture_default_str();
  solve_cmd->add_option("--out", solve_out, "Output file (default stdout)");

  // verify
  std::string verify_in;
  std::string verify_report;
  ksum::SolveOptions verify;
  verify.solver = "";
  auto* verify_cmd = app.add_subcommand(
      "verify", "Check a solver (or a saved report) against the brute-force oracle");
  verify_cmd->add_option("file", verify_in, "Instance file")->required();
  verify_cmd->add_option("--report", verify_report, "Saved JSON report to check");
  verify_cmd->add_option("--solver", verify.solver, "Solver to run when no report is given");
  verify_cmd->add_option("--base", verify.base, "Base solver");
  verify_cmd->add_option("--g", verify.g, "Group count");
  verify_cmd->add_option("--h", verify.h, "Outer group count");

  // bench
  std::string bench_cfg;
  std::optional<std::size_t> bench_threads;
  bool no_wall_time = false;
  std::string bench_out;
  auto* bench_cmd = app.add_subcommand("bench", "Run a solver x n x g grid and print CSV");
  bench_cmd->add_option("config", bench_cfg, "JSON grid configuration")->required();
  bench_cmd->add_option("--threads", bench_threads, "Worker threads");
  bench_cmd->add_flag("--no-wall-time", no_wall_time, "Drop the wall_time column");
  bench_cmd->add_option("--out", bench_out, "Output file (default stdout)");

  // curve
  std::size_t curve_k_lo = 4;
  std::size_t curve_k_hi = 12;
  std::optional<std::size_t> curve_k;
  std::string curve_space = "linear";
  std::uint64_t curve_n = std::uint64_t{1} << 20;
  std::string curve_eps;
  std::string curve_alpha;
  bool curve_json = false;
  std::string curve_out;
  auto* curve_cmd = app.add_subcommand("curve", "Emit planned exponents as CSV");
  curve_cmd->add_option("--k", curve_k, "A single arity");
  curve_cmd->add_option("--k-min", curve_k_lo, "Smallest arity")->capture_default_str();
  curve_cmd->add_option("--k-max", curve_k_hi, "Largest arity")->capture_default_str();
  curve_cmd->add_option("--space", curve_space, "linear or sqrt")->capture_default_str();
  curve_cmd->add_option("--n", curve_n, "n used to instantiate g")->capture_default_str();
  curve_cmd->add_option("--eps", curve_eps, "Two-stage 3-SUM plan: base gain exponent, e.g. 1/2");
  curve_cmd->add_option("--alpha", curve_alpha, "Two-stage 3-SUM plan: extra space exponent");
  curve_cmd->add_flag("--json", curve_json, "Print plans as JSON");
  curve_cmd->add_option("--out", curve_out, "Output file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kInputError;
  }

  try {
    if (*gen_cmd) {
      gen.mode = ksum::parse_mode(gen_mode);
      gen.distribution = ksum::parse_distribution(gen_dist);
      gen.range = gen_range;
      gen.g = gen_g;
      gen.single_list = !multi_list;
      emit(ksum::to_text(ksum::generate(gen).instance), gen_out);
      return 0;
    }

    if (*solve_cmd) {
      const auto inst = read_input(solve_in);
      const std::size_t k = std::visit([](const auto& x) { return x.k(); }, inst);
      if (solve_k && *solve_k != k) {
        throw ksum::ArityMismatch("file has k = " + std::to_string(k) + ", expected " +
                                  std::to_string(*solve_k));
      }
      if (!solve_mode.empty() && ksum::parse_mode(solve_mode) !=
                                     std::visit([](const auto& x) { return x.mode(); }, inst)) {
        throw ksum::ModeMismatch("file mode differs from --mode " + solve_mode);
      }
      const auto report = ksum::solve_instance(inst, solve);
      emit(ksum::to_json_text(report) + "\n", solve_out);
      if (solve_verify) {
        if (instance_n(inst) > verify_cap) {
          std::cerr << "verify: skipped, n = " << instance_n(inst) << " exceeds --verify-cap "
                    << verify_cap << "\n";
        } else if (oracle_decision(inst) != report.decision) {
          std::cerr << "verify: MISMATCH, " << solve.solver << " says " << std::boolalpha
                    << report.decision << ", brute force disagrees\n";
          return kMismatch;
        }
      }
      return 0;
    }

    if (*verify_cmd) {
      const auto inst = read_input(verify_in);
      ksum::TispReport report;
      std::string who = "report";
      if (!verify_report.empty()) {
        std::ifstream in(verify_report);
        if (!in) throw ksum::ParseError("cannot open '" + verify_report + "'");
        nlohmann::json j;
        try {
          in >> j;
        } catch (const nlohmann::json::exception& e) {
          throw ksum::ParseError(std::string("report is not JSON: ") + e.what());
        }
        report = j.get<ksum::TispReport>();
      } else {
        if (verify.solver.empty()) {
          const std::size_t k = std::visit([](const auto& x) { return x.k(); }, inst);
          verify.solver = k == 3 ? "self-reduce-3sum" : "self-reduce-ksum";
        }
        who = verify.solver;
        report = ksum::solve_instance(inst, verify);
      }
      const bool oracle = oracle_decision(inst);
      const bool witness_ok = report.witness ? witness_valid(inst, *report.witness) : !report.decision;
      const bool match = report.decision == oracle && witness_ok &&
                         report.decision == report.witness.has_value();
      nlohmann::json out{{"checked", who},
                         {"decision", report.decision},
                         {"oracle", oracle},
                         {"witness_valid", witness_ok},
                         {"match", match}};
      std::cout << out.dump() << "\n";
      return match ? 0 : kMismatch;
    }

    if (*bench_cmd) {
      auto config = ksum::load_bench_config(bench_cfg);
      if (bench_threads) config.threads = *bench_threads;
      emit(ksum::bench_csv(ksum::run_bench(config), !no_wall_time), bench_out);
      return 0;
    }

    if (*curve_cmd) {
      if (!curve_eps.empty() || !curve_alpha.empty()) {
        if (curve_eps.empty() || curve_alpha.empty()) {
          throw ksum::PreconditionViolation("--eps and --alpha go together");
        }
        const auto plan = ksum::plan_3sum_two_stage(ksum::parse_rational(curve_eps),
                                                    ksum::parse_rational(curve_alpha));
        emit(nlohmann::json(plan).dump(2) + "\n", curve_out);
        return 0;
      }
      if (curve_k) curve_k_lo = curve_k_hi = *curve_k;
      const auto plans = ksum::curve(curve_k_lo, curve_k_hi, ksum::parse_space_mode(curve_space), curve_n);
      std::ostringstream out;
      if (curve_json) {
        out << nlohmann::json(plans).dump(2) << "\n";
      } else {
        out << ksum::curve_header() << "\n";
        for (const auto& p : plans) out << ksum::curve_row(p) << "\n";
      }
      emit(out.str(), curve_out);
      return 0;
    }
  } catch (const ksum::BudgetExceeded& e) {
    std::cerr << "aborted: " << e.what() << "\n";
    return kBudgetAbort;
  } catch (const ksum::ParseError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kInputError;
  } catch (const ksum::InvalidInstance& e) {
    std::cerr << "invalid instance: " << e.what() << "\n";
    return kInputError;
  } catch (const ksum::PreconditionViolation& e) {
    std::cerr << "invalid arguments: " << e.what() << "\n";
    return kInputError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInputError;
  }
  return 0;
}
