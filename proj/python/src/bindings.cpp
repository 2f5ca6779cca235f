#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <nlohmann/json.hpp>

#include "ksum/bench.hpp"
#include "ksum/generator.hpp"
#include "ksum/instance_io.hpp"
#include "ksum/planner.hpp"
#include "ksum/registry.hpp"
#include "ksum/report.hpp"

namespace py = pybind11;

namespace {

// Python-side handle on an int or real instance.
struct PyInstance {
  ksum::AnyInstance inst;
};

template <typename T>
ksum::AnyInstance build(const std::vector<std::vector<double>>& lists, std::size_t k, bool single,
                        double target) {
  std::vector<std::vector<T>> typed;
  for (const auto& l : lists) {
    std::vector<T> out;
    out.reserve(l.size());
    for (double v : l) {
      if (static_cast<double>(static_cast<T>(v)) != v) throw ksum::ModeMismatch("value is not representable in this mode");
      out.push_back(static_cast<T>(v));
    }
    typed.push_back(std::move(out));
  }
  const T t = static_cast<T>(target);
  if (single) {
    if (typed.size() != 1) throw ksum::PreconditionViolation("a single-list instance takes one list");
    return ksum::Instance<T>::single_list(std::move(typed[0]), k, t);
  }
  return ksum::Instance<T>::multi_list(typed, t);
}

PyInstance make_instance(const std::vector<std::vector<double>>& lists, std::optional<std::size_t> k,
                         double target, const std::string& mode) {
  const bool single = k.has_value();
  if (ksum::parse_mode(mode) == ksum::Mode::integer) {
    return {build<std::int64_t>(lists, k.value_or(lists.size()), single, target)};
  }
  return {build<double>(lists, k.value_or(lists.size()), single, target)};
}

py::list instance_lists(const PyInstance& p) {
  py::list out;
  std::visit(
      [&](const auto& inst) {
        const std::size_t count = inst.single_list() ? 1 : inst.k();
        for (std::size_t i = 0; i < count; ++i) out.append(py::cast(inst.values(i)));
      },
      p.inst);
  return out;
}

ksum::SolveOptions options(const std::string& solver, std::optional<std::string> base,
                           std::optional<std::uint64_t> g, std::optional<std::uint64_t> h,
                           std::optional<std::uint64_t> space_cap) {
  ksum::SolveOptions o;
  o.solver = solver;
  o.base = std::move(base);
  o.g = g;
  o.h = h;
  o.space_cap = space_cap;
  return o;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Deterministic, space-budgeted k-SUM solvers.";

  static py::exception<ksum::Error> error(m, "KsumError", PyExc_RuntimeError);
  static py::exception<ksum::BudgetExceeded> budget(m, "BudgetExceeded", error.ptr());
  static py::exception<ksum::ParseError> parse(m, "ParseError", error.ptr());
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const ksum::BudgetExceeded& e) {
      py::set_error(budget, e.what());
    } catch (const ksum::ParseError& e) {
      py::set_error(parse, e.what());
    } catch (const ksum::PreconditionViolation& e) {
      py::set_error(PyExc_ValueError, e.what());
    } catch (const ksum::Error& e) {
      py::set_error(error, e.what());
    }
  });

  py::class_<PyInstance>(m, "Instance")
      .def(py::init(&make_instance), py::arg("lists"), py::arg("k") = std::nullopt, py::arg("target") = 0.0,
           py::arg("mode") = "int",
           "Multi-list instance from k lists, or single-list when k is given with one list.")
      .def_property_readonly("k", [](const PyInstance& p) { return std::visit([](const auto& i) { return i.k(); }, p.inst); })
      .def_property_readonly("n", [](const PyInstance& p) { return std::visit([](const auto& i) { return i.n(); }, p.inst); })
      .def_property_readonly("mode", [](const PyInstance& p) { return std::visit([](const auto& i) { return std::string(ksum::to_string(i.mode())); }, p.inst); })
      .def_property_readonly("single_list", [](const PyInstance& p) {
        return std::visit([](const auto& i) { return i.single_list(); }, p.inst);
      })
      .def_property_readonly("target", [](const PyInstance& p) {
        return std::visit([](const auto& i) { return py::cast(i.target()); }, p.inst);
      })
      .def_property_readonly("lists", &instance_lists)
      .def("to_text", [](const PyInstance& p) { return ksum::to_text(p.inst); })
      .def("__eq__", [](const PyInstance& a, const PyInstance& b) { return a.inst == b.inst; })
      .def("__repr__", [](const PyInstance& p) {
        return std::visit(
            [](const auto& i) {
              return "Instance(k=" + std::to_string(i.k()) + ", n=" + std::to_string(i.n()) + ")";
            },
            p.inst);
      });

  m.def("parse_instance", [](const std::string& text) { return PyInstance{ksum::parse_instance(text)}; });
  m.def("load_instance", [](const std::string& path) { return PyInstance{ksum::load_instance(path)}; });
  m.def("save_instance", [](const std::string& path, const PyInstance& p) { ksum::save_instance(path, p.inst); });

  m.def(
      "generate",
      [](std::size_t n, std::size_t k, std::uint64_t seed, const std::string& mode, const std::string& distribution,
         std::optional<std::int64_t> range, std::int64_t target, bool single_list, std::optional<std::size_t> g) {
        ksum::GenConfig c;
        c.n = n;
        c.k = k;
        c.seed = seed;
        c.mode = ksum::parse_mode(mode);
        c.distribution = ksum::parse_distribution(distribution);
        c.range = range;
        c.target = target;
        c.single_list = single_list;
        c.g = g;
        auto gen = ksum::generate(c);
        return py::make_tuple(PyInstance{std::move(gen.instance)}, gen.planted);
      },
      py::arg("n"), py::arg("k") = 3, py::arg("seed") = 1, py::arg("mode") = "int",
      py::arg("distribution") = "uniform", py::arg("range") = std::nullopt, py::arg("target") = 0,
      py::arg("single_list") = true, py::arg("g") = std::nullopt,
      "Seeded instance and the (list_id, index) pairs of its planted tuple.");

  m.def("solver_names", &ksum::solver_names);

  m.def(
      "solve_json",
      [](const PyInstance& p, const std::string& solver, std::optional<std::string> base,
         std::optional<std::uint64_t> g, std::optional<std::uint64_t> h, std::optional<std::uint64_t> space_cap) {
        const auto o = options(solver, std::move(base), g, h, space_cap);
        ksum::TispReport r;
        {
          py::gil_scoped_release release;
          r = ksum::solve_instance(p.inst, o);
        }
        return ksum::to_json_text(r);
      },
      py::arg("instance"), py::arg("solver") = "brute-force", py::arg("base") = std::nullopt,
      py::arg("g") = std::nullopt, py::arg("h") = std::nullopt, py::arg("space_cap") = std::nullopt);

  m.def(
      "plan_ksum_json",
      [](std::size_t k, const std::string& space, std::uint64_t n) {
        return nlohmann::json(ksum::plan_ksum(k, ksum::parse_space_mode(space), n)).dump();
      },
      py::arg("k"), py::arg("space") = "linear", py::arg("n") = std::uint64_t{1} << 20);

  m.def(
      "plan_3sum_two_stage_json",
      [](const std::string& eps, const std::string& alpha) {
        return nlohmann::json(ksum::plan_3sum_two_stage(ksum::parse_rational(eps), ksum::parse_rational(alpha))).dump();
      },
      py::arg("eps"), py::arg("alpha"));

  m.def(
      "check_constraints_json",
      [](const std::string& f, std::array<double, 3> g, std::array<double, 3> h, double n) {
        const ksum::ParamFn gf{g[0], g[1], g[2]};
        const ksum::ParamFn hf{h[0], h[1], h[2]};
        return nlohmann::json(ksum::check_space_reduction_constraints(ksum::parse_growth(f), gf, hf, n)).dump();
      },
      py::arg("f"), py::arg("g"), py::arg("h"), py::arg("n"),
      "g and h are (p, q, r) exponents of n^p lg^q n lglg^r n.");

  m.def(
      "curve_csv",
      [](std::size_t k_lo, std::size_t k_hi, const std::string& space, std::uint64_t n) {
        std::string out = ksum::curve_header() + "\n";
        for (const auto& p : ksum::curve(k_lo, k_hi, ksum::parse_space_mode(space), n)) out += ksum::curve_row(p) + "\n";
        return out;
      },
      py::arg("k_min") = 4, py::arg("k_max") = 12, py::arg("space") = "linear", py::arg("n") = std::uint64_t{1} << 20);

  m.def(
      "bench_csv",
      [](const std::string& config, bool with_wall_time) {
        const auto c = ksum::parse_bench_config(nlohmann::json::parse(config));
        std::vector<ksum::TispReport> rows;
        {
          py::gil_scoped_release release;
          rows = ksum::run_bench(c);
        }
        return ksum::bench_csv(rows, with_wall_time);
      },
      py::arg("config"), py::arg("with_wall_time") = true);
}
