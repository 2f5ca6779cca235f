#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "ksum/meter.hpp"

using ksum::Meter;

TEST_CASE("acquire and release bracket the current count") {
  Meter m;
  {
    auto lease = m.acquire(10);
    CHECK(m.aux_words_current() == 10);
  }
  CHECK(m.aux_words_current() == 0);
  CHECK(m.aux_words_peak() >= 10);
}

TEST_CASE("acquire(0) only issues a token") {
  Meter m;
  auto lease = m.acquire(0);
  CHECK(m.aux_words_current() == 0);
  CHECK(m.aux_words_peak() == 0);
  CHECK(lease.active());
}

TEST_CASE("acquisitions add up") {
  Meter m;
  auto before = m.aux_words_peak();
  {
    auto a = m.acquire(5);
    auto b = m.acquire(7);
  }
  CHECK(m.aux_words_peak() == before + 12);
  CHECK(m.aux_words_current() == 0);
}

TEST_CASE("charges hit the right counter") {
  Meter m;
  m.charge(ksum::Charge::comparison, 1);
  m.charge(ksum::Charge::addition, 3);
  m.charge(ksum::Charge::input_read, 0);
  CHECK(m.comparisons() == 1);
  CHECK(m.additions() == 3);
  CHECK(m.input_reads() == 0);
  CHECK(m.operations() == 4);
}

TEST_CASE("a release is applied exactly once") {
  Meter m;
  auto a = m.acquire(4);
  a.release();
  a.release();
  CHECK(m.aux_words_current() == 0);
  auto b = m.acquire(3);
  ksum::Lease c = std::move(b);
  CHECK(m.aux_words_current() == 3);
  c = m.acquire(2);
  CHECK(m.aux_words_current() == 2);
}

TEST_CASE("the hard cap rejects an acquisition without side effects") {
  Meter m(std::optional<std::uint64_t>{10});
  auto a = m.acquire(8);
  CHECK_THROWS_AS((void)m.acquire(3), ksum::BudgetExceeded);
  CHECK(m.aux_words_current() == 8);
  CHECK(m.aux_words_peak() == 8);
  try {
    (void)m.acquire(5);
  } catch (const ksum::BudgetExceeded& e) {
    CHECK(e.requested() == 5);
    CHECK(e.in_use() == 8);
    CHECK(e.cap() == 10);
  }
  CHECK_NOTHROW((void)m.acquire(2));
}

TEST_CASE("scratch charges its capacity for its lifetime") {
  Meter m;
  {
    ksum::Scratch<int> s(m, 6, 2);
    CHECK(m.aux_words_current() == 12);
    for (int i = 0; i < 6; ++i) s.push_back(i);
    CHECK(s.full());
    CHECK_THROWS((s.push_back(7)));
    ksum::Scratch<int> moved = std::move(s);
    CHECK(moved.size() == 6);
    CHECK(m.aux_words_current() == 12);
    moved.reset();
    CHECK(m.aux_words_current() == 0);
  }
  CHECK(m.aux_words_current() == 0);
  CHECK(m.aux_words_peak() == 12);
}

TEST_CASE("peak never falls below current under random traffic") {
  Meter m;
  std::vector<ksum::Lease> live;
  std::uint64_t x = 12345;
  for (int step = 0; step < 2000; ++step) {
    x = x * 6364136223846793005ULL + 1442695040888963407ULL;
    if ((x >> 60) < 9 || live.empty()) {
      live.push_back(m.acquire((x >> 32) % 50));
    } else {
      live.erase(live.begin() + static_cast<long>((x >> 20) % live.size()));
    }
    CHECK(m.aux_words_peak() >= m.aux_words_current());
  }
  live.clear();
  CHECK(m.aux_words_current() == 0);
}
