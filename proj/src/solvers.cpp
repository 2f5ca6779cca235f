#include "ksum/solvers.hpp"

#include <algorithm>
#include <array>
#include <limits>
#include <string>
#include <vector>

#include "ksum/detail/search.hpp"

namespace ksum {
namespace {

template <Numeric V>
void require_arity(const Problem<V>& p, std::size_t k, const char* who) {
  if (p.arity() != k) {
    throw ArityMismatch(std::string(who) + ": expected arity " + std::to_string(k) + ", got " +
                        std::to_string(p.arity()));
  }
}

// Sorted scratch copy of one list without the problem's excluded elements.
template <Numeric V>
Scratch<Item<V>> sorted_copy(std::span<const Item<V>> list, const Problem<V>& p, Meter& meter) {
  Scratch<Item<V>> out(meter, list.size());
  for (const auto& item : list) {
    meter.read();
    if (!p.is_excluded(item)) out.push_back(item);
  }
  detail::metered_sort(out.span(), meter);
  return out;
}

template <Numeric V, std::size_t N>
bool distinct_sources(const std::array<const Item<V>*, N>& items) {
  for (std::size_t i = 0; i < N; ++i) {
    for (std::size_t j = i + 1; j < N; ++j) {
      if (same_source(*items[i], *items[j])) return false;
    }
  }
  return true;
}

// Heap-driven 4-list search over ascending inputs.  `accept(a, b, c, d)`
// decides whether a value match is a real witness; on a rejected match every
// pair combination with the same two sums is tried before moving on.
template <typename E, typename V, typename Accept>
std::optional<std::array<std::size_t, 4>> four_list_search(std::span<const E> a,
                                                           std::span<const E> b,
                                                           std::span<const E> c,
                                                           std::span<const E> d, V target,
                                                           Meter& meter, Accept&& accept) {
  if (a.empty() || b.empty() || c.empty() || d.empty()) return std::nullopt;
  detail::PairSumStream<E, true> low(a, b, meter);
  detail::PairSumStream<E, false> high(c, d, meter);
  Lease state = meter.acquire(3);

  while (!low.empty() && !high.empty()) {
    const auto x = low.top();
    const auto y = high.top();
    meter.add();
    const V total = x.sum + y.sum;
    meter.compare();
    if (total < target) {
      low.advance();
      continue;
    }
    if (total > target) {
      high.advance();
      continue;
    }
    if (accept(x.row, x.col, y.row, y.col)) {
      return std::array<std::size_t, 4>{x.row, x.col, y.row, y.col};
    }
    std::optional<std::array<std::size_t, 4>> found;
    detail::pair_search(a, b, x.sum, meter, [&](std::size_t i, std::size_t j) {
      return detail::pair_search(c, d, y.sum, meter, [&](std::size_t k, std::size_t l) {
               if (!accept(i, j, k, l)) return false;
               found = std::array<std::size_t, 4>{i, j, k, l};
               return true;
             }).has_value();
    });
    if (found) return found;
    while (!low.empty() && (meter.compare(), low.top().sum == x.sum)) low.advance();
    while (!high.empty() && (meter.compare(), high.top().sum == y.sum)) high.advance();
  }
  return std::nullopt;
}

template <Numeric V>
struct TableEntry {
  V value;
  std::uint32_t row;
};

// All `width`-element subset sums drawn either as increasing index
// combinations of one aliased list or as the product of `width` consecutive
// lists starting at `first`.  Rows with a reused or excluded element are
// skipped.  Entries are sorted by sum; positions stay in row order.
template <Numeric V>
class SumTable {
 public:
  SumTable(const Problem<V>& p, std::size_t first, std::size_t width, bool combinations,
           Meter& meter)
      : problem_(&p), first_(first), width_(width), combinations_(combinations) {
    const std::uint64_t rows = row_bound();
    const std::uint64_t words = rows * (2 + width);
    if (!meter.space_cap() && rows > kMaxTableRows) {
      throw BudgetExceeded(words, meter.aux_words_current(), kMaxTableRows * (2 + width));
    }
    entries_ = Scratch<TableEntry<V>>(meter, rows, 2);
    positions_ = Scratch<std::uint32_t>(meter, rows * width);
    std::vector<std::uint32_t> chosen(width);
    Lease cursor = meter.acquire(2 * width);
    fill(0, V{}, chosen, meter);
    detail::metered_sort(entries_.span(), meter, [](const TableEntry<V>& x, const TableEntry<V>& y) {
      return x.value < y.value || (x.value == y.value && x.row < y.row);
    });
  }

  std::span<const TableEntry<V>> entries() const noexcept { return entries_.span(); }
  std::size_t width() const noexcept { return width_; }

  const Item<V>& item(std::uint32_t row, std::size_t t) const {
    const auto list = problem_->lists[combinations_ ? 0 : first_ + t];
    return list[positions_[static_cast<std::size_t>(row) * width_ + t]];
  }
  std::uint32_t position(std::uint32_t row, std::size_t t) const {
    return positions_[static_cast<std::size_t>(row) * width_ + t];
  }

 private:
  std::uint64_t row_bound() const {
    constexpr auto limit = std::numeric_limits<std::uint64_t>::max() / 64;
    std::uint64_t rows = 1;
    if (combinations_) {
      const std::uint64_t n = problem_->lists[0].size();
      if (n < width_) return 0;
      for (std::uint64_t i = 0; i < width_; ++i) {
        rows = rows * (n - i) / (i + 1);
        if (rows > limit) return limit;
      }
    } else {
      for (std::size_t t = 0; t < width_; ++t) {
        rows *= problem_->lists[first_ + t].size();
        if (rows > limit) return limit;
      }
    }
    return rows;
  }

  void fill(std::size_t depth, V partial, std::vector<std::uint32_t>& chosen, Meter& meter) {
    const auto list = problem_->lists[combinations_ ? 0 : first_ + depth];
    const std::size_t start = (combinations_ && depth > 0) ? chosen[depth - 1] + 1 : 0;
    for (std::size_t i = start; i < list.size(); ++i) {
      meter.read();
      const Item<V>& item = list[i];
      if (problem_->is_excluded(item)) continue;
      if (!combinations_) {
        bool reused = false;
        for (std::size_t t = 0; t < depth && !reused; ++t) {
          reused = same_source(problem_->lists[first_ + t][chosen[t]], item);
        }
        if (reused) continue;
      }
      chosen[depth] = static_cast<std::uint32_t>(i);
      meter.add();
      const V sum = partial + item.value;
      if (depth + 1 == width_) {
        const auto row = static_cast<std::uint32_t>(entries_.size());
        entries_.push_back(TableEntry<V>{sum, row});
        for (auto pos : chosen) positions_.push_back(pos);
      } else {
        fill(depth + 1, sum, chosen, meter);
      }
    }
  }

  const Problem<V>* problem_;
  std::size_t first_;
  std::size_t width_;
  bool combinations_;
  Scratch<TableEntry<V>> entries_;
  Scratch<std::uint32_t> positions_;
};

// Rows from several tables (in list order) use no element twice.
template <Numeric V>
bool rows_compatible(std::span<const SumTable<V>* const> tables,
                     std::span<const std::uint32_t> rows) {
  for (std::size_t x = 0; x < tables.size(); ++x) {
    for (std::size_t t = 0; t < tables[x]->width(); ++t) {
      const Item<V>& a = tables[x]->item(rows[x], t);
      for (std::size_t y = x + 1; y < tables.size(); ++y) {
        for (std::size_t u = 0; u < tables[y]->width(); ++u) {
          if (same_source(a, tables[y]->item(rows[y], u))) return false;
        }
      }
    }
  }
  return true;
}

// Aliased tables: rows must occupy consecutive, increasing index blocks.
template <Numeric V>
bool rows_increasing(std::span<const SumTable<V>* const> tables,
                     std::span<const std::uint32_t> rows) {
  for (std::size_t x = 0; x + 1 < tables.size(); ++x) {
    const auto last = tables[x]->position(rows[x], tables[x]->width() - 1);
    const auto next_first = tables[x + 1]->position(rows[x + 1], 0);
    if (!(last < next_first)) return false;
  }
  return true;
}

template <Numeric V>
Witness<V> witness_from_rows(std::span<const SumTable<V>* const> tables,
                             std::span<const std::uint32_t> rows) {
  std::vector<Item<V>> items;
  for (std::size_t x = 0; x < tables.size(); ++x) {
    for (std::size_t t = 0; t < tables[x]->width(); ++t) items.push_back(tables[x]->item(rows[x], t));
  }
  return make_witness(std::move(items));
}

}  // namespace

template <Numeric V>
std::optional<Witness<V>> brute_force(const Problem<V>& problem, Meter& meter) {
  const std::size_t k = problem.arity();
  if (k < 2) throw ArityMismatch("brute_force: arity must be at least 2");
  const bool combinations = problem.aliased();
  // chosen positions and running prefix sums
  Lease state = meter.acquire(2 * k);
  std::vector<std::size_t> chosen(k);
  std::vector<const Item<V>*> picked(k);
  std::optional<Witness<V>> result;

  auto search = [&](auto&& self, std::size_t depth, V partial) -> bool {
    const auto list = problem.lists[depth];
    const std::size_t start = (combinations && depth > 0) ? chosen[depth - 1] + 1 : 0;
    for (std::size_t i = start; i < list.size(); ++i) {
      meter.read();
      const Item<V>& item = list[i];
      if (problem.is_excluded(item)) continue;
      if (!combinations) {
        bool reused = false;
        for (std::size_t t = 0; t < depth && !reused; ++t) reused = same_source(*picked[t], item);
        if (reused) continue;
      }
      chosen[depth] = i;
      picked[depth] = &item;
      meter.add();
      const V sum = partial + item.value;
      if (depth + 1 == k) {
        meter.compare();
        if (sum == problem.target) {
          std::vector<Item<V>> items;
          for (const auto* p : picked) items.push_back(*p);
          result = make_witness(std::move(items));
          return true;
        }
      } else if (self(self, depth + 1, sum)) {
        return true;
      }
    }
    return false;
  };
  search(search, 0, V{});
  return result;
}

template <Numeric V>
std::optional<Witness<V>> two_sum(const Problem<V>& problem, Meter& meter) {
  require_arity(problem, 2, "two_sum");
  auto xs = sorted_copy(problem.lists[0], problem, meter);
  Scratch<Item<V>> ys_storage;
  if (!problem.aliased()) ys_storage = sorted_copy(problem.lists[1], problem, meter);
  const std::span<const Item<V>> x = xs.span();
  const std::span<const Item<V>> y = problem.aliased() ? x : ys_storage.span();

  const auto hit = detail::pair_search(x, y, problem.target, meter, [&](std::size_t i, std::size_t j) {
    return !same_source(x[i], y[j]);
  });
  if (!hit) return std::nullopt;
  return make_witness<V>({x[hit->first], y[hit->second]});
}

template <Numeric V>
std::optional<Witness<V>> sorted_3sum(const Problem<V>& problem, Meter& meter) {
  require_arity(problem, 3, "sorted_3sum");
  const bool aliased = problem.aliased();
  auto a_copy = sorted_copy(problem.lists[0], problem, meter);
  Scratch<Item<V>> b_copy;
  Scratch<Item<V>> c_copy;
  if (!aliased) {
    b_copy = sorted_copy(problem.lists[1], problem, meter);
    c_copy = sorted_copy(problem.lists[2], problem, meter);
  }
  const std::span<const Item<V>> as = a_copy.span();
  const std::span<const Item<V>> bs = aliased ? as : b_copy.span();
  const std::span<const Item<V>> cs = aliased ? as : c_copy.span();

  Lease state = meter.acquire(2);
  for (const auto& a : as) {
    meter.add();
    const V need = problem.target - a.value;
    const auto hit = detail::pair_search(bs, cs, need, meter, [&](std::size_t i, std::size_t j) {
      return !same_source(a, bs[i]) && !same_source(a, cs[j]) && !same_source(bs[i], cs[j]);
    });
    if (hit) return make_witness<V>({a, bs[hit->first], cs[hit->second]});
  }
  return std::nullopt;
}

template <Numeric V>
std::optional<Witness<V>> meet_in_middle(const Problem<V>& problem, Meter& meter) {
  const std::size_t k = problem.arity();
  if (k < 3) throw ArityMismatch("meet_in_middle: arity must be at least 3");
  const bool aliased = problem.aliased();
  const std::size_t left_width = (k + 1) / 2;
  const std::size_t right_width = k - left_width;

  SumTable<V> left(problem, 0, left_width, aliased, meter);
  SumTable<V> right(problem, left_width, right_width, aliased, meter);
  const std::array<const SumTable<V>*, 2> tables{&left, &right};
  const auto le = left.entries();
  const auto re = right.entries();

  const auto hit = detail::pair_search(le, re, problem.target, meter, [&](std::size_t i, std::size_t j) {
    const std::array<std::uint32_t, 2> rows{le[i].row, re[j].row};
    return aliased ? rows_increasing<V>(tables, rows) : rows_compatible<V>(tables, rows);
  });
  if (!hit) return std::nullopt;
  const std::array<std::uint32_t, 2> rows{le[hit->first].row, re[hit->second].row};
  return witness_from_rows<V>(tables, rows);
}

template <Numeric V>
std::optional<Witness<V>> schroeppel_shamir_4sum(const Problem<V>& problem, Meter& meter) {
  require_arity(problem, 4, "schroeppel_shamir_4sum");
  const bool aliased = problem.aliased();
  std::array<Scratch<Item<V>>, 4> copies;
  std::array<std::span<const Item<V>>, 4> lists;
  for (std::size_t i = 0; i < 4; ++i) {
    if (aliased && i > 0) {
      lists[i] = lists[0];
      continue;
    }
    copies[i] = sorted_copy(problem.lists[i], problem, meter);
    lists[i] = copies[i].span();
  }
  const auto hit = four_list_search(
      lists[0], lists[1], lists[2], lists[3], problem.target, meter,
      [&](std::size_t a, std::size_t b, std::size_t c, std::size_t d) {
        return distinct_sources<V, 4>({&lists[0][a], &lists[1][b], &lists[2][c], &lists[3][d]});
      });
  if (!hit) return std::nullopt;
  return make_witness<V>({lists[0][(*hit)[0]], lists[1][(*hit)[1]], lists[2][(*hit)[2]],
                          lists[3][(*hit)[3]]});
}

template <Numeric V>
std::optional<Witness<V>> ksum_via_4sum(const Problem<V>& problem, Meter& meter) {
  const std::size_t k = problem.arity();
  if (k < 4 || k % 4 != 0) throw ArityMismatch("ksum_via_4sum: arity must be a multiple of 4");
  const std::size_t width = k / 4;
  const bool aliased = problem.aliased();

  std::vector<SumTable<V>> owned;
  owned.reserve(4);
  std::array<const SumTable<V>*, 4> tables{};
  for (std::size_t j = 0; j < 4; ++j) {
    if (aliased && j > 0) {
      tables[j] = tables[0];
      continue;
    }
    owned.emplace_back(problem, j * width, width, aliased, meter);
    tables[j] = &owned.back();
  }
  const auto hit = four_list_search(
      tables[0]->entries(), tables[1]->entries(), tables[2]->entries(), tables[3]->entries(),
      problem.target, meter, [&](std::size_t a, std::size_t b, std::size_t c, std::size_t d) {
        const std::array<std::uint32_t, 4> rows{
            tables[0]->entries()[a].row, tables[1]->entries()[b].row,
            tables[2]->entries()[c].row, tables[3]->entries()[d].row};
        return aliased ? rows_increasing<V>(tables, rows) : rows_compatible<V>(tables, rows);
      });
  if (!hit) return std::nullopt;
  const std::array<std::uint32_t, 4> rows{
      tables[0]->entries()[(*hit)[0]].row, tables[1]->entries()[(*hit)[1]].row,
      tables[2]->entries()[(*hit)[2]].row, tables[3]->entries()[(*hit)[3]].row};
  return witness_from_rows<V>(tables, rows);
}

template <Numeric V>
std::optional<Witness<V>> bootstrap(const SolveFn<V>& inner, const Problem<V>& problem,
                                    Meter& meter) {
  const std::size_t k = problem.arity();
  if (k < 3) throw ArityMismatch("bootstrap: outer arity must be at least 3");
  Problem<V> sub;
  sub.lists.assign(problem.lists.begin(), problem.lists.end() - 1);
  sub.excluded = problem.excluded;
  sub.excluded.emplace_back();
  // fixed element, loop cursor, exclusion slot
  Lease state = meter.acquire(3);
  for (const auto& x : problem.lists.back()) {
    meter.read();
    if (problem.is_excluded(x)) continue;
    meter.add();
    sub.target = problem.target - x.value;
    sub.excluded.back() = x;
    if (auto w = inner(sub, meter)) {
      w->items.push_back(x);
      return make_witness(std::move(w->items));
    }
  }
  return std::nullopt;
}

#define KSUM_INSTANTIATE_SOLVERS(V)                                                           \
  template std::optional<Witness<V>> brute_force<V>(const Problem<V>&, Meter&);              \
  template std::optional<Witness<V>> two_sum<V>(const Problem<V>&, Meter&);                  \
  template std::optional<Witness<V>> sorted_3sum<V>(const Problem<V>&, Meter&);              \
  template std::optional<Witness<V>> meet_in_middle<V>(const Problem<V>&, Meter&);           \
  template std::optional<Witness<V>> schroeppel_shamir_4sum<V>(const Problem<V>&, Meter&);   \
  template std::optional<Witness<V>> ksum_via_4sum<V>(const Problem<V>&, Meter&);            \
  template std::optional<Witness<V>> bootstrap<V>(const SolveFn<V>&, const Problem<V>&, Meter&);

KSUM_INSTANTIATE_SOLVERS(std::int64_t)
KSUM_INSTANTIATE_SOLVERS(double)

}  // namespace ksum
