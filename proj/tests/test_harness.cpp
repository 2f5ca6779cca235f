#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <nlohmann/json.hpp>
#include <sstream>

#include "ksum/bench.hpp"
#include "ksum/generator.hpp"
#include "ksum/instance_io.hpp"
#include "ksum/registry.hpp"
#include "ksum/report.hpp"
#include "oracles.hpp"

using ksum::AnyInstance;
using ksum::Instance;
using V = std::int64_t;

namespace {

ksum::GenConfig gen_config(std::uint64_t seed, std::size_t n, std::size_t k, ksum::Distribution d,
                           bool single = true) {
  ksum::GenConfig c;
  c.seed = seed;
  c.n = n;
  c.k = k;
  c.distribution = d;
  c.single_list = single;
  return c;
}

}  // namespace

TEST_CASE("instance files round trip") {
  for (auto d : {ksum::Distribution::uniform, ksum::Distribution::planted}) {
    for (bool single : {true, false}) {
      for (auto mode : {ksum::Mode::integer, ksum::Mode::real}) {
        auto c = gen_config(3, 25, 4, d, single);
        c.mode = mode;
        c.target = -7;
        const auto inst = ksum::generate(c).instance;
        const auto text = ksum::to_text(inst);
        CHECK(ksum::parse_instance(text) == inst);
        CHECK(ksum::to_text(ksum::parse_instance(text)) == text);
      }
    }
  }
}

TEST_CASE("instance text format") {
  const AnyInstance inst = Instance<V>::single_list({3, -1, 4}, 2, 2);
  CHECK(ksum::to_text(inst) == "2 3 int 1 2\n3 -1 4\n3 -1 4\n");
  const AnyInstance real = Instance<double>::multi_list({{0.5, 1}, {2, -3.25}}, 1.5);
  CHECK(ksum::to_text(real) == "2 2 real 0 1.5\n0.5 1\n2 -3.25\n");
  CHECK_THROWS_AS(ksum::parse_instance("2 3 int 1 0\n1 2 3\n1 2 4\n"), ksum::ParseError);
  CHECK_THROWS_AS(ksum::parse_instance("2 3 int 0 0\n1 2 3\n1 2\n"), ksum::ParseError);
  CHECK_THROWS_AS(ksum::parse_instance("2 2 int 0 0\n1 2.5\n1 2\n"), ksum::ParseError);
  CHECK_THROWS_AS(ksum::parse_instance("2 2 float 0 0\n1 2\n1 2\n"), ksum::ParseError);
  CHECK_THROWS_AS(ksum::parse_instance("2 2 int 0 0\n1 2\n1 2\n7\n"), ksum::ParseError);
}

TEST_CASE("generation is deterministic per seed") {
  for (auto d : {ksum::Distribution::uniform, ksum::Distribution::planted,
                 ksum::Distribution::boundary_adversarial}) {
    const auto a = ksum::to_text(ksum::generate(gen_config(9, 40, 3, d)).instance);
    const auto b = ksum::to_text(ksum::generate(gen_config(9, 40, 3, d)).instance);
    const auto c = ksum::to_text(ksum::generate(gen_config(10, 40, 3, d)).instance);
    CHECK(a == b);
    CHECK(a != c);
  }
}

TEST_CASE("Rng draws are portable") {
  // std::mt19937_64 with the default seed yields 9981545732273789042 as its
  // 10000th output; the first output for seed 1 is fixed as well.
  std::mt19937_64 ref(5489u);
  ref.discard(9999);
  CHECK(ref() == 9981545732273789042ull);
  ksum::Rng r(1), s(1);
  for (int i = 0; i < 100; ++i) CHECK(r.below(7) == s.below(7));
  ksum::Rng t(2);
  for (int i = 0; i < 1000; ++i) {
    const auto v = t.between(-3, 3);
    CHECK((v >= -3 && v <= 3));
  }
}

TEST_CASE("planted instances have exactly one solution at the recorded positions") {
  for (std::uint64_t seed = 1; seed <= 40; ++seed) {
    const std::size_t k = 2 + seed % 3;
    const bool single = seed % 2 == 0;
    auto c = gen_config(seed, single ? 12 : 7, k, ksum::Distribution::planted, single);
    c.target = static_cast<std::int64_t>(seed % 11) - 5;
    c.range = 1000;
    const auto gen = ksum::generate(c);
    const auto& inst = std::get<Instance<V>>(gen.instance);
    CHECK(oracle::count_solutions(inst) == 1);
    REQUIRE(gen.planted.size() == k);
    V sum = 0;
    for (const auto& [list, index] : gen.planted) sum += inst.values(list)[index];
    CHECK(sum == c.target);
  }
}

TEST_CASE("boundary-adversarial instances plant at group-boundary ranks") {
  for (std::uint64_t seed = 1; seed <= 30; ++seed) {
    const std::size_t n = 50, g = 1 + seed % 7;
    auto c = gen_config(seed, n, 3, ksum::Distribution::boundary_adversarial, false);
    c.g = g;
    const auto gen = ksum::generate(c);
    const auto& inst = std::get<Instance<V>>(gen.instance);
    CHECK(oracle::count_solutions(inst) == 1);
    const std::size_t s = (n + g - 1) / g + 1;
    for (const auto& [list, index] : gen.planted) {
      const auto sorted = oracle::sorted<V>(inst.list(list));
      std::size_t rank = 0;
      while (sorted[rank].index != index) ++rank;
      const bool boundary = rank % s == 0 || rank % s == s - 1 || rank == n - 1;
      CHECK(boundary);
    }
  }
}

TEST_CASE("generator rejects impossible parameters") {
  auto c = gen_config(1, 10, 3, ksum::Distribution::planted);
  c.range = 3;
  CHECK_THROWS_AS(ksum::generate(c), ksum::PreconditionViolation);
  c.range = ksum::max_range(ksum::Mode::integer, 3) + 1;
  CHECK_THROWS_AS(ksum::generate(c), ksum::PreconditionViolation);
  c = gen_config(1, 2, 3, ksum::Distribution::planted);
  CHECK_THROWS_AS(ksum::generate(c), ksum::PreconditionViolation);
  c = gen_config(1, 10, 3, ksum::Distribution::planted);
  c.target = 1000;
  c.range = 1000;
  CHECK_THROWS_AS(ksum::generate(c), ksum::PreconditionViolation);
}

TEST_CASE("report JSON and CSV") {
  const auto inst = Instance<V>::multi_list({{1, 2}, {3, 4}, {5, -6}}, 0);
  ksum::SolveOptions o;
  o.solver = "sorted-3sum";
  const auto r = ksum::solve_instance(inst, o);
  CHECK(r.decision);
  REQUIRE(r.witness);
  CHECK(std::get<V>(r.witness->sum_check) == 0);
  const auto j = nlohmann::json::parse(ksum::to_json_text(r));
  std::vector<std::string> keys;
  for (auto it = j.begin(); it != j.end(); ++it) keys.push_back(it.key());
  std::sort(keys.begin(), keys.end());
  CHECK(keys == std::vector<std::string>{"additions", "aux_words_peak", "comparisons", "decision", "g", "h",
                                         "input_reads", "n", "wall_time", "witness"});
  CHECK(j.at("witness").at("items").size() == 3);
  const auto back = j.get<ksum::TispReport>();
  CHECK(back.comparisons == r.comparisons);
  CHECK(back.witness == r.witness);

  CHECK(ksum::csv_header() == "n,g,h,comparisons,additions,input_reads,aux_words_peak,wall_time,decision");
  CHECK(ksum::csv_header(false) == "n,g,h,comparisons,additions,input_reads,aux_words_peak,decision");
  ksum::TispReport failed;
  failed.n = 4;
  failed.failure = "budget";
  CHECK(ksum::csv_row(failed, false) == "4,1,1,0,0,0,0,failed");

  const auto none = ksum::solve_instance(Instance<V>::multi_list({{1}, {1}, {1}}, 0), o);
  CHECK(nlohmann::json::parse(ksum::to_json_text(none)).at("witness").is_null());
}

TEST_CASE("registry names and defaults") {
  const auto names = ksum::solver_names();
  CHECK(names.size() == 9);
  CHECK_THROWS_AS(ksum::solver_spec("quantum"), ksum::PreconditionViolation);
  ksum::SolveOptions o;
  o.solver = "two-sum";
  CHECK_THROWS_AS(ksum::make_solver<V>(o, 3, 10), ksum::ArityMismatch);
  o.solver = "self-reduce-3sum";
  CHECK(ksum::make_solver<V>(o, 3, 100).g == 10);
  CHECK(ksum::make_solver<V>(o, 3, 101).g == 11);
}

TEST_CASE("every registered solver agrees with brute force through solve_instance") {
  const std::vector<std::pair<std::string, std::size_t>> cases{
      {"two-sum", 2},         {"sorted-3sum", 3},       {"meet-in-middle", 3},     {"meet-in-middle", 5},
      {"schroeppel-shamir", 4}, {"ksum-via-4sum", 8},   {"bootstrap", 5},          {"self-reduce-3sum", 3},
      {"self-reduce-ksum", 4},  {"self-reduce-ksum", 5}};
  for (const auto& [name, k] : cases) {
    for (std::uint64_t seed = 1; seed <= 12; ++seed) {
      const bool single = seed % 2 == 0;
      const std::size_t n = k >= 8 ? (single ? 10 : 3) : (k == 5 ? (single ? 14 : 6) : 24);
      auto c = gen_config(seed, n, k, seed % 3 ? ksum::Distribution::uniform : ksum::Distribution::planted, single);
      c.range = seed % 3 ? 12 : 100000;
      const auto inst = ksum::generate(c).instance;
      ksum::SolveOptions brute;
      ksum::SolveOptions o;
      o.solver = name;
      if (seed % 4 == 1 && name.starts_with("self-reduce")) o.g = 2;
      INFO(name << " k=" << k << " seed=" << seed);
      CHECK(ksum::solve_instance(inst, o).decision == ksum::solve_instance(inst, brute).decision);
    }
  }
}

TEST_CASE("self-reduce-3sum with g = 1 decides like its base") {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    auto c = gen_config(seed, 60, 3, ksum::Distribution::uniform);
    c.range = 200;
    const auto inst = ksum::generate(c).instance;
    ksum::SolveOptions base, red;
    base.solver = "sorted-3sum";
    red.solver = "self-reduce-3sum";
    red.base = "sorted-3sum";
    red.g = 1;
    const auto a = ksum::solve_instance(inst, base);
    const auto b = ksum::solve_instance(inst, red);
    CHECK(a.decision == b.decision);
    CHECK(b.g == 1);
  }
}

TEST_CASE("space caps abort with BudgetExceeded") {
  auto c = gen_config(1, 2000, 3, ksum::Distribution::uniform);
  const auto inst = ksum::generate(c).instance;
  ksum::SolveOptions o;
  o.solver = "sorted-3sum";
  o.space_cap = 100;
  CHECK_THROWS_AS(ksum::solve_instance(inst, o), ksum::BudgetExceeded);
  o.solver = "self-reduce-3sum";
  o.g = 200;
  o.space_cap = 20 * (2000 / 200);
  CHECK_NOTHROW(ksum::solve_instance(inst, o));
}

TEST_CASE("bench rows are deterministic and in grid order") {
  const auto config = ksum::parse_bench_config(nlohmann::json::parse(R"({
    "solvers": ["sorted-3sum", {"solver": "self-reduce-3sum", "base": "sorted-3sum"}],
    "n": [256, 512], "g": [4, "sqrt"], "k": 3, "range": 100000,
    "seed": 5, "repetitions": 2, "threads": 3
  })"));
  const auto cells = ksum::bench_cells(config);
  // sorted-3sum ignores g: 2 n x 2 seeds; the reduction: 2 n x 2 g x 2 seeds.
  REQUIRE(cells.size() == 12);
  CHECK(cells[0].solver == 0);
  CHECK(cells[4].solver == 1);
  const auto a = ksum::bench_csv(ksum::run_bench(config), false);
  auto serial = config;
  serial.threads = 1;
  const auto b = ksum::bench_csv(ksum::run_bench(serial), false);
  CHECK(a == b);
  CHECK(std::count(a.begin(), a.end(), '\n') == 13);
}

TEST_CASE("bench marks failed cells and continues") {
  const auto config = ksum::parse_bench_config(nlohmann::json::parse(R"({
    "solvers": ["sorted-3sum", "brute-force"], "n": [300], "k": 3, "space_cap": 64
  })"));
  const auto rows = ksum::run_bench(config);
  REQUIRE(rows.size() == 2);
  CHECK(rows[0].failure);
  CHECK_FALSE(rows[1].failure);
  CHECK_THROWS_AS(ksum::parse_bench_config(nlohmann::json::parse(R"({"solvers": [], "n": [4]})")),
                  ksum::ParseError);
}

TEST_CASE("doubling g roughly halves peak words") {
  const std::uint64_t n = 1 << 12;
  auto c = gen_config(7, n, 3, ksum::Distribution::uniform);
  const auto inst = ksum::generate(c).instance;
  std::vector<double> peaks;
  for (std::uint64_t g : {8u, 16u, 32u, 64u}) {
    ksum::SolveOptions o;
    o.solver = "self-reduce-3sum";
    o.base = "sorted-3sum";
    o.g = g;
    peaks.push_back(static_cast<double>(ksum::solve_instance(inst, o).aux_words_peak));
  }
  for (std::size_t i = 1; i < peaks.size(); ++i) {
    const double halved = peaks[i - 1] / 2;
    CHECK(peaks[i] <= 2.5 * halved);
    CHECK(peaks[i] >= halved / 2.5);
  }
}
