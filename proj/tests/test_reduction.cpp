#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>
#include <set>

#include "ksum/generator.hpp"
#include "ksum/reduction.hpp"
#include "ksum/selection.hpp"
#include "oracles.hpp"

using ksum::Instance;
using ksum::Meter;
using ksum::ReductionConfig;
using ksum::ReductionStats;
using ksum::SolveFn;
using ksum::SubproblemTuple;
using V = std::int64_t;

namespace {

Instance<V> random_instance(std::mt19937_64& rng, std::size_t k, std::size_t n, V range, bool single) {
  auto draw = [&] { return static_cast<V>(rng() % static_cast<std::uint64_t>(2 * range + 1)) - range; };
  const V target = static_cast<V>(rng() % 5) - 2;
  if (single) {
    std::vector<V> vals(n);
    for (auto& v : vals) v = draw();
    return Instance<V>::single_list(vals, k, target);
  }
  std::vector<std::vector<V>> lists(k, std::vector<V>(n));
  for (auto& l : lists) {
    for (auto& v : l) v = draw();
  }
  return Instance<V>::multi_list(lists, target);
}

// Distinct odd values: k odd values never sum to a target of the other
// parity, so every group tuple is explored and none is decided early.
Instance<V> parity_instance(std::uint64_t seed, std::size_t k, std::size_t n) {
  std::mt19937_64 rng(seed);
  std::vector<std::vector<V>> lists(k);
  std::set<V> used;
  for (auto& l : lists) {
    while (l.size() < n) {
      const V v = 2 * (static_cast<V>(rng() % 2000000) - 1000000) + 1;
      if (used.insert(v).second) l.push_back(v);
    }
  }
  return Instance<V>::multi_list(lists, k % 2 == 1 ? 0 : 1);
}

std::size_t isqrt_ceil(std::size_t n) { return static_cast<std::size_t>(std::ceil(std::sqrt(static_cast<double>(n)))); }

const SolveFn<V> kSorted3 = ksum::sorted_3sum<V>;
const SolveFn<V> kBrute = ksum::brute_force<V>;
const SolveFn<V> kSS = ksum::schroeppel_shamir_4sum<V>;

// Base solver that only counts its calls.
SolveFn<V> counting_stub(std::uint64_t& calls) {
  return [&calls](const ksum::Problem<V>&, Meter&) -> std::optional<ksum::Witness<V>> {
    ++calls;
    return std::nullopt;
  };
}

}  // namespace

TEST_CASE("chain_cover examples") {
  const auto chain = ksum::chain_cover(SubproblemTuple{{1, 1, 1}}, 3);
  CHECK(chain == std::vector<SubproblemTuple>{{{1, 1, 1}}, {{2, 2, 2}}, {{3, 3, 3}}});
  CHECK(ksum::chain_cover(SubproblemTuple{{1, 3}}, 3) == std::vector<SubproblemTuple>{{{1, 3}}});
  CHECK_THROWS_AS(ksum::chain_cover(SubproblemTuple{{2, 3}}, 3), ksum::PreconditionViolation);
  CHECK_THROWS_AS(ksum::chain_cover(SubproblemTuple{{1, 4}}, 3), ksum::PreconditionViolation);
}

TEST_CASE("chains partition [g]^k for g, k <= 4") {
  for (std::uint32_t g = 1; g <= 4; ++g) {
    for (std::size_t k = 1; k <= 4; ++k) {
      const auto starts = ksum::chain_starts(g, k);
      const auto gk = static_cast<std::size_t>(std::pow(g, k));
      CHECK(starts.size() == gk - static_cast<std::size_t>(std::pow(g - 1, k)));
      CHECK(starts.size() <= k * static_cast<std::size_t>(std::pow(g, k - 1)));
      std::set<SubproblemTuple> seen;
      std::size_t total = 0;
      for (const auto& s : starts) {
        const auto chain = ksum::chain_cover(s, g);
        for (std::size_t j = 0; j < chain.size(); ++j) {
          for (auto c : chain[j].coords) CHECK((c >= 1 && c <= g));
          if (j > 0) CHECK(ksum::dominates(chain[j], chain[j - 1]));
          seen.insert(chain[j]);
          ++total;
        }
      }
      CHECK(total == gk);
      CHECK(seen.size() == gk);
    }
  }
}

TEST_CASE("count_nontrivial_subproblems matches a direct enumeration") {
  std::mt19937_64 rng(4);
  auto boundaries_of = [](const Instance<V>& inst, std::size_t g) {
    std::vector<ksum::GroupBoundary<V>> out;
    for (std::size_t i = 0; i < inst.k(); ++i) {
      const auto sorted = oracle::sorted<V>(inst.list(i));
      ksum::GroupBoundary<V> b;
      for (std::size_t x = 0; x <= g; ++x) b.keys.push_back(sorted[std::min(x * inst.n() / g, inst.n() - 1)]);
      out.push_back(b);
    }
    return out;
  };
  for (auto [n, g, k] : {std::tuple{1000u, 10u, 3u}, std::tuple{256u, 4u, 4u}}) {
    const auto inst = parity_instance(n + g, k, n);
    const auto b = boundaries_of(inst, g);
    const auto got = ksum::count_nontrivial_subproblems<V>(b, g, inst.target());
    CHECK_FALSE(got.boundary_witness);
    CHECK(got.nontrivial + got.trivial == static_cast<std::uint64_t>(std::pow(g, k)));
    CHECK(got.nontrivial <= k * static_cast<std::uint64_t>(std::pow(g, k - 1)));
    // direct count
    std::uint64_t direct = 0;
    std::vector<std::size_t> x(k, 1);
    while (true) {
      V lo = 0, hi = 0;
      for (std::size_t i = 0; i < k; ++i) {
        lo += b[i].keys[x[i] - 1].value;
        hi += b[i].keys[x[i]].value;
      }
      direct += !(lo > inst.target() || hi < inst.target());
      std::size_t i = k;
      while (i > 0 && x[i - 1] == g) x[--i] = 1;
      if (i == 0) break;
      ++x[i - 1];
    }
    CHECK(got.nontrivial == direct);
  }
  (void)rng;
}

TEST_CASE("count_nontrivial_subproblems with g = 1 and exact boundary hits") {
  const auto inst = Instance<V>::multi_list({{1, 5}, {2, 6}, {3, 7}}, 100);
  std::vector<ksum::GroupBoundary<V>> b;
  for (std::size_t i = 0; i < 3; ++i) {
    b.push_back({{inst.list(i)[0], inst.list(i)[1]}});
  }
  auto one = ksum::count_nontrivial_subproblems<V>(b, 1, V{100});
  CHECK(one.trivial + one.nontrivial == 1);
  CHECK(one.trivial == 1);
  auto hit = ksum::count_nontrivial_subproblems<V>(b, 1, V{6});
  REQUIRE(hit.boundary_witness);
  CHECK(hit.boundary_witness->sum_check == 6);
}

TEST_CASE("g = 1 makes exactly one base call on the full lists") {
  std::mt19937_64 rng(2);
  for (int t = 0; t < 50; ++t) {
    const auto inst = random_instance(rng, 3, 5 + t, 20, t % 2 == 0);
    Meter m1, m2;
    ReductionStats stats;
    const auto via = ksum::three_sum_self_reduce(inst.problem(), ReductionConfig<V>{1, kSorted3, false}, m1, &stats);
    const auto direct = ksum::sorted_3sum(inst.problem(), m2);
    CHECK(via.has_value() == direct.has_value());
    CHECK(stats.base_calls == 1);
  }
}

TEST_CASE("three_sum_self_reduce agrees with the oracle on 500 instances") {
  std::mt19937_64 rng(11);
  for (int t = 0; t < 500; ++t) {
    const bool single = t % 2 == 0;
    const bool brute = t % 5 == 0;
    const std::size_t n = 3 + rng() % (brute ? 60 : 198);
    const std::size_t choices[] = {2, 4, 8, isqrt_ceil(n)};
    const std::size_t g = std::min(choices[t % 4], n);
    Instance<V> inst = [&] {
      if (t % 3 != 2) return random_instance(rng, 3, n, 1 + static_cast<V>(rng() % (n * 4)), single);
      ksum::GenConfig c;
      c.seed = static_cast<std::uint64_t>(t);
      c.n = n;
      c.k = 3;
      c.g = g;
      c.range = 100000;
      c.single_list = single;
      c.distribution = t % 2 ? ksum::Distribution::planted : ksum::Distribution::boundary_adversarial;
      return std::get<Instance<V>>(ksum::generate(c).instance);
    }();
    INFO("t=" << t << " n=" << n << " g=" << g);
    Meter m;
    const auto p = inst.problem();
    const auto w = ksum::three_sum_self_reduce(p, ReductionConfig<V>{g, brute ? kBrute : kSorted3, false}, m);
    CHECK(w.has_value() == oracle::has_3sum(inst));
    if (w) CHECK(ksum::verify_witness(p, *w));
    CHECK(m.aux_words_current() == 0);
  }
}

TEST_CASE("ksum_self_reduce at k = 3 decides like three_sum_self_reduce") {
  std::mt19937_64 rng(12);
  for (int t = 0; t < 150; ++t) {
    const std::size_t n = 3 + rng() % 80;
    const std::size_t g = 1 + rng() % n;
    const auto inst = random_instance(rng, 3, n, 1 + static_cast<V>(rng() % 200), t % 2 == 0);
    Meter m1, m2;
    ReductionStats s1, s2;
    const auto a = ksum::three_sum_self_reduce(inst.problem(), ReductionConfig<V>{g, kSorted3, false}, m1, &s1);
    const auto b = ksum::ksum_self_reduce(inst.problem(), ReductionConfig<V>{g, kSorted3, false}, m2, &s2);
    CHECK(a.has_value() == b.has_value());
    if (!a) CHECK(s1.base_calls == s2.base_calls);
  }
}

TEST_CASE("ksum_self_reduce at k = 4 over Schroeppel-Shamir agrees with the oracle") {
  std::mt19937_64 rng(13);
  for (int t = 0; t < 200; ++t) {
    const std::size_t n = 4 + rng() % 61;
    const std::size_t g = t % 2 ? 2 : 4;
    const bool single = t % 3 == 0;
    Instance<V> inst = [&] {
      if (t % 4 != 3) return random_instance(rng, 4, n, 1 + static_cast<V>(rng() % (n * 8)), single);
      ksum::GenConfig c;
      c.seed = static_cast<std::uint64_t>(t);
      c.n = n;
      c.k = 4;
      c.g = g;
      c.range = 100000;
      c.single_list = single;
      c.distribution = ksum::Distribution::boundary_adversarial;
      return std::get<Instance<V>>(ksum::generate(c).instance);
    }();
    Meter m;
    const auto p = inst.problem();
    const auto w = ksum::ksum_self_reduce(p, ReductionConfig<V>{g, kSS, false}, m);
    CHECK(w.has_value() == oracle::has_4sum(inst));
    if (w) CHECK(ksum::verify_witness(p, *w));
  }
}

TEST_CASE("ksum_self_reduce at k = 5 over bootstrap(Schroeppel-Shamir) agrees with the oracle") {
  std::mt19937_64 rng(14);
  const SolveFn<V> base = ksum::make_bootstrap(kSS);
  for (int t = 0; t < 60; ++t) {
    const bool single = t % 2 == 0;
    const std::size_t n = single ? 5 + rng() % 28 : 2 + rng() % 12;
    const std::size_t g = 1 + rng() % std::min<std::size_t>(n, 4);
    const auto inst = random_instance(rng, 5, n, 1 + static_cast<V>(rng() % 30), single);
    Meter m;
    const auto w = ksum::ksum_self_reduce(inst.problem(), ReductionConfig<V>{g, base, false}, m);
    CHECK(w.has_value() == oracle::has_solution(inst));
  }
}

TEST_CASE("solutions at group boundaries are found") {
  for (std::uint64_t seed = 1; seed <= 60; ++seed) {
    for (std::size_t g : {2u, 3u, 7u}) {
      ksum::GenConfig c;
      c.seed = seed;
      c.n = 30 + seed;
      c.k = 3;
      c.g = g;
      c.range = 1 << 20;
      c.target = static_cast<V>(seed % 7) - 3;
      c.single_list = seed % 2 == 0;
      c.distribution = ksum::Distribution::boundary_adversarial;
      const auto gen = ksum::generate(c);
      const auto& inst = std::get<Instance<V>>(gen.instance);
      Meter m;
      CHECK(ksum::three_sum_self_reduce(inst.problem(), ReductionConfig<V>{g, kSorted3, false}, m));
    }
  }
}

TEST_CASE("realized subproblems form an antichain and stay within C*g^2 calls") {
  for (std::size_t g : {2u, 3u, 5u, 8u}) {
    const auto inst = parity_instance(g, 3, 240);
    std::uint64_t calls = 0;
    Meter m;
    ReductionStats stats;
    CHECK_FALSE(ksum::three_sum_self_reduce(inst.problem(), ReductionConfig<V>{g, counting_stub(calls), true}, m, &stats));
    REQUIRE(stats.subproblems.size() == calls);
    CHECK(calls <= 6 * g * g);
    for (const auto& a : stats.subproblems) {
      for (const auto& b : stats.subproblems) CHECK_FALSE(ksum::dominates(b, a));
    }
  }
  for (std::size_t g : {2u, 3u, 4u}) {
    const auto inst = parity_instance(g + 100, 4, 120);
    std::uint64_t calls = 0;
    Meter m;
    ReductionStats stats;
    CHECK_FALSE(ksum::ksum_self_reduce(inst.problem(), ReductionConfig<V>{g, counting_stub(calls), true}, m, &stats));
    CHECK(calls <= 6 * 4 * g * g * g);
    for (const auto& a : stats.subproblems) {
      for (const auto& b : stats.subproblems) CHECK_FALSE(ksum::dominates(b, a));
    }
  }
}

TEST_CASE("stats split charged work between base calls and the reduction") {
  const auto inst = parity_instance(77, 3, 400);
  Meter m;
  ReductionStats stats;
  (void)ksum::three_sum_self_reduce(inst.problem(), ReductionConfig<V>{20, kSorted3, false}, m, &stats);
  CHECK(stats.base_operations + stats.reduction_operations == m.operations());
  CHECK(stats.base_calls > 0);
  CHECK(stats.next_group_calls >= stats.base_calls);
}

TEST_CASE("three_sum_self_reduce with sorted_3sum fits in C*(n/g) words") {
  const std::size_t n = 2500, g = 50;
  const auto inst = parity_instance(5, 3, n);
  Meter m(std::optional<std::uint64_t>{20 * (n / g)});
  CHECK_NOTHROW(ksum::three_sum_self_reduce(inst.problem(), ReductionConfig<V>{g, kSorted3, false}, m));
}

TEST_CASE("reductions check their preconditions") {
  const auto inst = Instance<V>::single_list({1, 2, 3}, 3);
  Meter m;
  CHECK_THROWS_AS(ksum::three_sum_self_reduce(inst.problem(), ReductionConfig<V>{0, kSorted3, false}, m),
                  ksum::PreconditionViolation);
  CHECK_THROWS_AS(ksum::three_sum_self_reduce(inst.problem(), ReductionConfig<V>{4, kSorted3, false}, m),
                  ksum::PreconditionViolation);
  CHECK_THROWS_AS(ksum::three_sum_self_reduce(inst.problem(), ReductionConfig<V>{1, nullptr, false}, m),
                  ksum::PreconditionViolation);
  const auto four = Instance<V>::single_list({1, 2, 3, 4}, 4);
  CHECK_THROWS_AS(ksum::three_sum_self_reduce(four.problem(), ReductionConfig<V>{1, kSorted3, false}, m),
                  ksum::ArityMismatch);
  const auto two = Instance<V>::single_list({1, 2}, 2);
  CHECK_THROWS_AS(ksum::ksum_self_reduce(two.problem(), ReductionConfig<V>{1, kSorted3, false}, m),
                  ksum::ArityMismatch);
}
