#include "ksum/selection.hpp"

#include <algorithm>
#include <string>
#include <utility>

#include "ksum/detail/search.hpp"

namespace ksum {
namespace {

// lo, hi, rank and the medians count of one select frame.
constexpr std::uint64_t kSelectFrameWords = 4;

template <Numeric V>
bool less(const Item<V>& a, const Item<V>& b, Meter& meter) {
  meter.compare();
  return item_compare(a, b) < 0;
}

template <Numeric V>
void insertion_sort(std::span<Item<V>> s, Meter& meter) {
  for (std::size_t i = 1; i < s.size(); ++i) {
    const Item<V> x = s[i];
    std::size_t j = i;
    while (j > 0 && less(x, s[j - 1], meter)) {
      s[j] = s[j - 1];
      --j;
    }
    s[j] = x;
  }
}

// r is 0-based.
template <Numeric V>
Item<V> select_rank(std::span<Item<V>> buf, std::size_t r, Meter& meter) {
  Lease frame = meter.acquire(kSelectFrameWords);
  std::size_t lo = 0;
  std::size_t hi = buf.size();
  while (true) {
    const std::size_t len = hi - lo;
    if (len <= 5) {
      insertion_sort(buf.subspan(lo, len), meter);
      return buf[lo + r];
    }

    // Median of each group of five goes to the front of the range.
    std::size_t medians = 0;
    for (std::size_t i = lo; i < hi; i += 5) {
      const std::size_t end = std::min(i + 5, hi);
      insertion_sort(buf.subspan(i, end - i), meter);
      std::swap(buf[lo + medians], buf[i + (end - i - 1) / 2]);
      ++medians;
    }
    const Item<V> pivot = select_rank(buf.subspan(lo, medians), (medians - 1) / 2, meter);

    std::size_t store = lo;
    std::size_t pivot_pos = hi;
    for (std::size_t j = lo; j < hi; ++j) {
      meter.compare();
      const auto c = item_compare(buf[j], pivot);
      if (c < 0) {
        std::swap(buf[store], buf[j]);
        if (pivot_pos == store) pivot_pos = j;
        ++store;
      } else if (c == 0) {
        pivot_pos = j;
      }
    }
    std::swap(buf[store], buf[pivot_pos]);

    const std::size_t pivot_rank = store - lo;
    if (r == pivot_rank) return buf[store];
    if (r < pivot_rank) {
      hi = store;
    } else {
      r -= pivot_rank + 1;
      lo = store + 1;
    }
  }
}

}  // namespace

template <Numeric V>
Item<V> mom_select(std::span<Item<V>> buffer, std::size_t rank, Meter& meter) {
  if (rank < 1 || rank > buffer.size()) {
    throw RankOutOfRange("mom_select: rank " + std::to_string(rank) + " outside [1, " +
                         std::to_string(buffer.size()) + "]");
  }
  return select_rank(buffer, rank - 1, meter);
}

template <Numeric V>
StreamingSelector<V>::StreamingSelector(Meter& meter, std::size_t s,
                                        std::optional<std::size_t> expected_items)
    : meter_(&meter),
      s_(s),
      buffer_(meter, expected_items ? std::min(2 * s, *expected_items) : 2 * s) {
  if (s == 0) throw PreconditionViolation("selector rank parameter s must be positive");
}

template <Numeric V>
void StreamingSelector<V>::push(const Item<V>& item) {
  if (cutoff_ && less(*cutoff_, item, *meter_)) return;
  buffer_.push_back(item);
  if (buffer_.size() == 2 * s_) compact();
}

template <Numeric V>
void StreamingSelector<V>::compact() {
  const Item<V> pivot = mom_select(buffer_.span(), s_ + 1, *meter_);
  std::size_t keep = 0;
  for (std::size_t j = 0; j < buffer_.size(); ++j) {
    if (less(buffer_[j], pivot, *meter_)) buffer_[keep++] = buffer_[j];
  }
  buffer_.resize(keep);
  cutoff_ = pivot;
  ++compactions_;
}

template <Numeric V>
Group<V> StreamingSelector<V>::finalize() && {
  if (buffer_.size() > s_) compact();
  if (buffer_.empty()) return Group<V>(std::move(buffer_), Item<V>{}, Item<V>{});
  Item<V> lo = buffer_[0];
  Item<V> hi = buffer_[0];
  for (std::size_t i = 1; i < buffer_.size(); ++i) {
    if (less(buffer_[i], lo, *meter_)) {
      lo = buffer_[i];
    } else if (less(hi, buffer_[i], *meter_)) {
      hi = buffer_[i];
    }
  }
  return Group<V>(std::move(buffer_), lo, hi);
}

template <Numeric V>
Group<V> next_group(std::span<const Item<V>> list, const Threshold<V>& after, std::size_t s,
                    Meter& meter, SelectionStats* stats) {
  if (s == 0) throw PreconditionViolation("next_group: s must be positive");
  StreamingSelector<V> selector(meter, s, list.size());
  Lease cursor = meter.acquire(1);
  for (const auto& item : list) {
    meter.read();
    if (after.admits(item, meter)) selector.push(item);
  }
  auto group = std::move(selector).finalize();
  if (stats != nullptr) stats->compactions += selector.compactions();
  return group;
}

template <Numeric V>
V bounded_range_select(std::span<const Item<V>> list, std::size_t s, V bound, Meter& meter) {
  if constexpr (!std::is_integral_v<V>) {
    throw ModeMismatch("bounded_range_select requires integer mode");
  } else {
    if (s < 1 || s > list.size()) {
      throw RankOutOfRange("bounded_range_select: rank " + std::to_string(s) + " outside [1, " +
                           std::to_string(list.size()) + "]");
    }
    if (bound < 0 || bound > (V{1} << 62)) {
      throw PreconditionViolation("bounded_range_select: bound must lie in [0, 2^62]");
    }
    // lo, hi, mid, count
    Lease state = meter.acquire(4);
    for (const auto& item : list) {
      meter.read();
      meter.compare(2);
      if (item.value < -bound || item.value > bound) {
        throw PreconditionViolation("bounded_range_select: value outside [-bound, bound]");
      }
    }
    V lo = -bound;
    V hi = bound;
    while (meter.compare(), lo < hi) {
      meter.add();
      const V mid = (lo + hi) >> 1;  // floor division, also for negative sums
      std::size_t count = 0;
      for (const auto& item : list) {
        meter.read();
        meter.compare();
        if (mid >= item.value) ++count;
      }
      if (count >= s) {
        hi = mid;
      } else {
        meter.add();
        lo = mid + 1;
      }
    }
    return lo;
  }
}

template <Numeric V>
std::vector<V> batch_select(std::span<const Item<V>> list, std::span<const std::size_t> ranks,
                            Meter& meter) {
  const std::size_t n = list.size();
  if (ranks.size() > n) throw RankOutOfRange("batch_select: more ranks than items");
  for (std::size_t j = 0; j < ranks.size(); ++j) {
    if (ranks[j] < 1 || ranks[j] > n || (j > 0 && ranks[j] <= ranks[j - 1])) {
      throw RankOutOfRange("batch_select: ranks must be strictly increasing in [1, n]");
    }
  }
  if (ranks.empty()) return {};

  Scratch<V> answers(meter, ranks.size());
  answers.resize(ranks.size());
  // prev, curr, dup, i, j
  Lease state = meter.acquire(5);
  std::optional<V> prev;
  std::size_t next_rank = 0;
  std::size_t i = 1;
  while (i <= n && next_rank < ranks.size()) {
    std::optional<V> curr;
    for (const auto& item : list) {
      meter.read();
      if (prev) {
        meter.compare();
        if (!(item.value > *prev)) continue;
      }
      if (curr) meter.compare();
      if (!curr || item.value < *curr) curr = item.value;
    }
    std::size_t dup = 0;
    for (const auto& item : list) {
      meter.read();
      meter.compare();
      if (item.value == *curr) ++dup;
    }
    while (next_rank < ranks.size() && ranks[next_rank] < i + dup) {
      answers[next_rank++] = *curr;
    }
    prev = curr;
    i += dup;
  }
  return std::vector<V>(answers.begin(), answers.end());
}

template <Numeric V>
GroupBoundary<V> group_boundaries(std::span<const Item<V>> list, std::size_t g, Meter& meter) {
  const std::size_t n = list.size();
  if (g < 1 || g > n) throw PreconditionViolation("group_boundaries: g must lie in [1, n]");
  Scratch<Item<V>> sorted(meter, n);
  for (const auto& item : list) {
    meter.read();
    sorted.push_back(item);
  }
  detail::metered_sort(sorted.span(), meter);
  GroupBoundary<V> out;
  out.keys.reserve(g + 1);
  for (std::size_t i = 0; i <= g; ++i) {
    out.keys.push_back(sorted[std::min(i * n / g, n - 1)]);
  }
  return out;
}

#define KSUM_INSTANTIATE_SELECTION(V)                                                          \
  template Item<V> mom_select<V>(std::span<Item<V>>, std::size_t, Meter&);                    \
  template class StreamingSelector<V>;                                                        \
  template Group<V> next_group<V>(std::span<const Item<V>>, const Threshold<V>&, std::size_t, \
                                  Meter&, SelectionStats*);                                   \
  template V bounded_range_select<V>(std::span<const Item<V>>, std::size_t, V, Meter&);       \
  template std::vector<V> batch_select<V>(std::span<const Item<V>>,                           \
                                          std::span<const std::size_t>, Meter&);              \
  template GroupBoundary<V> group_boundaries<V>(std::span<const Item<V>>, std::size_t, Meter&);

KSUM_INSTANTIATE_SELECTION(std::int64_t)
KSUM_INSTANTIATE_SELECTION(double)

}  // namespace ksum
