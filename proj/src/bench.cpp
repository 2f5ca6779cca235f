#include "ksum/bench.hpp"

#include <atomic>
#include <cmath>
#include <fstream>
#include <map>
#include <thread>

#include <nlohmann/json.hpp>

namespace ksum {

namespace {

bool uses_groups(const SolveOptions& s) { return s.solver.rfind("self-reduce", 0) == 0; }

template <typename T>
std::optional<T> optional_field(const nlohmann::json& j, const char* key) {
  if (!j.contains(key) || j.at(key).is_null()) return std::nullopt;
  return j.at(key).get<T>();
}

std::vector<std::uint64_t> uint_list(const nlohmann::json& j) {
  if (j.is_array()) return j.get<std::vector<std::uint64_t>>();
  return {j.get<std::uint64_t>()};
}

}  // namespace

BenchConfig parse_bench_config(const nlohmann::json& j) {
  BenchConfig c;
  try {
    if (!j.contains("solvers") || !j.contains("n")) {
      throw ParseError("bench config needs \"solvers\" and \"n\"");
    }
    for (const auto& s : j.at("solvers")) {
      SolveOptions o;
      if (s.is_string()) {
        o.solver = s.get<std::string>();
      } else {
        o.solver = s.at("solver").get<std::string>();
        o.base = optional_field<std::string>(s, "base");
      }
      solver_spec(o.solver);
      c.solvers.push_back(std::move(o));
    }
    c.ns = uint_list(j.at("n"));
    if (j.contains("g")) {
      c.gs.clear();
      const auto gs = j.at("g").is_array() ? j.at("g") : nlohmann::json::array({j.at("g")});
      for (const auto& g : gs) {
        if (g.is_string()) {
          if (g.get<std::string>() != "sqrt") throw ParseError("g entries must be integers or \"sqrt\"");
          c.gs.emplace_back(std::nullopt);
        } else {
          c.gs.emplace_back(g.get<std::uint64_t>());
        }
      }
    }
    c.h = optional_field<std::uint64_t>(j, "h");
    c.k = j.value("k", std::size_t{3});
    c.mode = parse_mode(j.value("mode", std::string("int")));
    c.distribution = parse_distribution(j.value("distribution", std::string("uniform")));
    c.range = optional_field<std::int64_t>(j, "range");
    c.target = j.value("target", std::int64_t{0});
    c.single_list = j.value("single_list", true);
    if (j.contains("seeds")) {
      c.seeds = uint_list(j.at("seeds"));
    } else {
      const auto seed = j.value("seed", std::uint64_t{1});
      const auto reps = j.value("repetitions", std::uint64_t{1});
      c.seeds.clear();
      for (std::uint64_t r = 0; r < reps; ++r) c.seeds.push_back(seed + r);
    }
    c.threads = j.value("threads", std::size_t{1});
    c.space_cap = optional_field<std::uint64_t>(j, "space_cap");
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("malformed bench config: ") + e.what());
  }
  if (c.solvers.empty() || c.ns.empty() || c.gs.empty() || c.seeds.empty()) {
    throw ParseError("bench grid is empty");
  }
  return c;
}

BenchConfig load_bench_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path + "'");
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError("'" + path + "' is not JSON: " + e.what());
  }
  return parse_bench_config(j);
}

std::vector<BenchCell> bench_cells(const BenchConfig& config) {
  std::vector<BenchCell> cells;
  for (std::size_t s = 0; s < config.solvers.size(); ++s) {
    const bool grouped = uses_groups(config.solvers[s]);
    for (const auto n : config.ns) {
      const std::size_t g_count = grouped ? config.gs.size() : 1;
      for (std::size_t gi = 0; gi < g_count; ++gi) {
        for (const auto seed : config.seeds) {
          cells.push_back(BenchCell{s, n, grouped ? config.gs[gi] : std::optional<std::uint64_t>{1}, seed});
        }
      }
    }
  }
  return cells;
}

std::vector<TispReport> run_bench(const BenchConfig& config) {
  const auto cells = bench_cells(config);

  // One instance per (n, seed), shared by every solver.
  struct Made {
    std::optional<AnyInstance> instance;
    std::string error;
  };
  std::map<std::pair<std::uint64_t, std::uint64_t>, Made> instances;
  for (const auto& cell : cells) {
    const auto key = std::pair{cell.n, cell.seed};
    if (instances.count(key) != 0) continue;
    Made made;
    try {
      GenConfig gen;
      gen.seed = cell.seed;
      gen.n = cell.n;
      gen.k = config.k;
      gen.mode = config.mode;
      gen.distribution = config.distribution;
      gen.range = config.range;
      gen.target = config.target;
      gen.single_list = config.single_list;
      made.instance = generate(gen).instance;
    } catch (const std::exception& e) {
      made.error = e.what();
    }
    instances.emplace(key, std::move(made));
  }

  std::vector<TispReport> rows(cells.size());
  auto run_cell = [&](std::size_t i) {
    const auto& cell = cells[i];
    SolveOptions options = config.solvers[cell.solver];
    const bool grouped = uses_groups(options);
    if (grouped) {
      options.g = cell.g.value_or(static_cast<std::uint64_t>(std::ceil(std::sqrt(static_cast<double>(cell.n)))));
      options.h = config.h;
    }
    options.space_cap = config.space_cap;
    const auto& made = instances.at({cell.n, cell.seed});
    try {
      if (!made.instance) throw Error(made.error);
      rows[i] = solve_instance(*made.instance, options);
    } catch (const std::exception& e) {
      TispReport failed;
      failed.n = cell.n;
      failed.g = grouped ? options.g.value_or(1) : 1;
      failed.h = grouped ? options.h.value_or(1) : 1;
      failed.failure = e.what();
      rows[i] = std::move(failed);
    }
  };

  const std::size_t threads = std::max<std::size_t>(1, std::min(config.threads, cells.size()));
  if (threads == 1) {
    for (std::size_t i = 0; i < cells.size(); ++i) run_cell(i);
    return rows;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  for (std::size_t t = 0; t < threads; ++t) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < cells.size(); i = next++) run_cell(i);
    });
  }
  for (auto& th : pool) th.join();
  return rows;
}

std::string bench_csv(const std::vector<TispReport>& rows, bool with_wall_time) {
  std::string out = csv_header(with_wall_time) + '\n';
  for (const auto& r : rows) out += csv_row(r, with_wall_time) + '\n';
  return out;
}

}  // namespace ksum
