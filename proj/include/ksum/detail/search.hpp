#pragma once

// Metered building blocks shared by the base solvers: sorting, the two-cursor
// equal-sum scan and monotone pair-sum streams.  Element types expose a
// `value` member; Items and materialized subset sums both qualify.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <utility>

#include "ksum/meter.hpp"
#include "ksum/types.hpp"

namespace ksum::detail {

template <typename T, typename Less>
void metered_sort(std::span<T> s, Meter& meter, Less less) {
  std::sort(s.begin(), s.end(), [&](const T& a, const T& b) {
    meter.compare();
    return less(a, b);
  });
}

template <Numeric V>
void metered_sort(std::span<Item<V>> s, Meter& meter) {
  metered_sort(s, meter, [](const Item<V>& a, const Item<V>& b) { return item_compare(a, b) < 0; });
}

// Two-cursor scan over xs (ascending) and ys (ascending, walked from the
// top) for pairs whose values sum to `need`.  Every such pair is offered to
// `accept(i, j)` until it returns true; runs of equal values are expanded so
// that no pair is skipped.
template <typename X, typename Y, typename V, typename Accept>
std::optional<std::pair<std::size_t, std::size_t>> pair_search(std::span<const X> xs,
                                                               std::span<const Y> ys, V need,
                                                               Meter& meter, Accept&& accept) {
  std::size_t i = 0;
  std::size_t j = ys.size();  // one past the current y
  while (i < xs.size() && j > 0) {
    meter.add();
    const V sum = xs[i].value + ys[j - 1].value;
    meter.compare();
    if (sum < need) {
      ++i;
      continue;
    }
    if (sum > need) {
      --j;
      continue;
    }
    std::size_t i_end = i + 1;
    while (i_end < xs.size() && (meter.compare(), xs[i_end].value == xs[i].value)) ++i_end;
    std::size_t j_begin = j - 1;
    while (j_begin > 0 && (meter.compare(), ys[j_begin - 1].value == ys[j - 1].value)) --j_begin;
    for (std::size_t a = i; a < i_end; ++a) {
      for (std::size_t b = j_begin; b < j; ++b) {
        if (accept(a, b)) return std::pair{a, b};
      }
    }
    i = i_end;
    j = j_begin;
  }
  return std::nullopt;
}

// Enumerates rows[r] + cols[c] over all (r, c) in non-decreasing (Ascending)
// or non-increasing order.  Both inputs must be sorted ascending.  The heap
// holds at most one candidate per row: O(|rows|) words.
template <typename E, bool Ascending>
class PairSumStream {
 public:
  using Value = std::remove_cvref_t<decltype(std::declval<E>().value)>;

  struct Entry {
    Value sum;
    std::uint32_t row;
    std::uint32_t col;
  };

  PairSumStream(std::span<const E> rows, std::span<const E> cols, Meter& meter)
      : rows_(rows), cols_(cols), meter_(&meter), heap_(meter, rows.size(), 3) {
    if (cols_.empty()) return;
    const auto first_col = static_cast<std::uint32_t>(Ascending ? 0 : cols_.size() - 1);
    for (std::size_t r = 0; r < rows_.size(); ++r) {
      meter.add();
      heap_.push_back(Entry{rows_[r].value + cols_[first_col].value, static_cast<std::uint32_t>(r),
                            first_col});
    }
    std::make_heap(heap_.begin(), heap_.end(), order());
  }

  bool empty() const noexcept { return heap_.empty(); }
  const Entry& top() const noexcept { return heap_[0]; }

  void advance() {
    std::pop_heap(heap_.begin(), heap_.end(), order());
    Entry e = heap_.back();
    heap_.pop_back();
    const bool more = Ascending ? e.col + 1 < cols_.size() : e.col > 0;
    if (!more) return;
    e.col = Ascending ? e.col + 1 : e.col - 1;
    meter_->add();
    e.sum = rows_[e.row].value + cols_[e.col].value;
    heap_.push_back(e);
    std::push_heap(heap_.begin(), heap_.end(), order());
  }

 private:
  // std heaps keep the greatest element under the comparator on top.
  auto order() const {
    return [meter = meter_](const Entry& a, const Entry& b) {
      meter->compare();
      return Ascending ? b.sum < a.sum : a.sum < b.sum;
    };
  }

  std::span<const E> rows_;
  std::span<const E> cols_;
  Meter* meter_;
  Scratch<Entry> heap_;
};

}  // namespace ksum::detail
