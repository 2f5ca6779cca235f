#pragma once

// Order statistics in small space.
//
// next_group() returns the s smallest list items above a threshold key in
// O(n) charged time and O(s) words by streaming the list through a 2s-slot
// buffer that is compacted with an in-place median-of-medians whenever it
// fills.  bounded_range_select() and batch_select() are the two alternative
// selectors for integer lists with a known range and for many ranks at once.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "ksum/meter.hpp"
#include "ksum/types.hpp"

namespace ksum {

// Lower cut for next_group: either -infinity, strictly after a full item key,
// or every item whose value is at least v.
template <Numeric V>
class Threshold {
 public:
  static Threshold minus_infinity() { return Threshold{}; }
  static Threshold after(const Item<V>& key) { return Threshold{key, false}; }
  // (v, 0, 0) is the least key with value v.
  static Threshold at_least(V value) { return Threshold{Item<V>{value, 0, 0}, true}; }

  bool unbounded() const noexcept { return !key_.has_value(); }
  const std::optional<Item<V>>& key() const noexcept { return key_; }
  bool inclusive() const noexcept { return inclusive_; }

  bool admits(const Item<V>& item, Meter& meter) const noexcept {
    if (!key_) return true;
    meter.compare();
    auto c = item_compare(item, *key_);
    return inclusive_ ? c >= 0 : c > 0;
  }

 private:
  Threshold() = default;
  Threshold(const Item<V>& key, bool inclusive) : key_(key), inclusive_(inclusive) {}

  std::optional<Item<V>> key_;
  bool inclusive_ = false;
};

// Unordered buffer of up to s items plus its extreme keys.  The storage stays
// charged to the meter that produced it until the group is destroyed or reset.
template <Numeric V>
class Group {
 public:
  Group() = default;
  Group(Scratch<Item<V>> items, const Item<V>& min_key, const Item<V>& max_key)
      : items_(std::move(items)), min_key_(min_key), max_key_(max_key) {}

  std::size_t count() const noexcept { return items_.size(); }
  bool empty() const noexcept { return items_.empty(); }
  std::span<const Item<V>> items() const noexcept { return items_.span(); }
  const Item<V>& min_key() const noexcept { return min_key_; }
  const Item<V>& max_key() const noexcept { return max_key_; }

  void reset() noexcept { items_.reset(); }

 private:
  Scratch<Item<V>> items_;
  Item<V> min_key_{};
  Item<V> max_key_{};
};

// Returns the item of 1-based rank `rank` in `buffer`, permuting the buffer.
// Groups of five, recursion only into the medians prefix; the partition side
// is handled iteratively.  Throws RankOutOfRange.
template <Numeric V>
Item<V> mom_select(std::span<Item<V>> buffer, std::size_t rank, Meter& meter);

// Tracks the s smallest items pushed so far in a buffer of 2s slots.
template <Numeric V>
class StreamingSelector {
 public:
  // `expected_items` caps the buffer when fewer than 2s items can arrive.
  StreamingSelector(Meter& meter, std::size_t s,
                    std::optional<std::size_t> expected_items = std::nullopt);

  void push(const Item<V>& item);
  Group<V> finalize() &&;

  std::size_t occupancy() const noexcept { return buffer_.size(); }
  std::size_t compactions() const noexcept { return compactions_; }
  std::span<const Item<V>> buffer() const noexcept { return buffer_.span(); }

 private:
  void compact();

  Meter* meter_;
  std::size_t s_;
  Scratch<Item<V>> buffer_;
  // (s+1)-th smallest item seen when the buffer was last compacted; nothing
  // above it can be among the s smallest.
  std::optional<Item<V>> cutoff_;
  std::size_t compactions_ = 0;
};

struct SelectionStats {
  std::size_t compactions = 0;
};

// The s smallest items of `list` that pass `after`, fewer if the list runs
// out.  Throws PreconditionViolation when s == 0.
template <Numeric V>
Group<V> next_group(std::span<const Item<V>> list, const Threshold<V>& after, std::size_t s,
                    Meter& meter, SelectionStats* stats = nullptr);

// Binary search over [-bound, bound] counting list values <= the midpoint;
// returns the s-th smallest value (1-based).  Integer mode only; one
// validation pass plus at most ceil(log2(2*bound+1)) counting passes.
template <Numeric V>
V bounded_range_select(std::span<const Item<V>> list, std::size_t s, V bound, Meter& meter);

// Values of the given strictly increasing 1-based ranks, found by repeated
// next-distinct-value scans with duplicate counting.  O(n^2) time, O(g) words.
template <Numeric V>
std::vector<V> batch_select(std::span<const Item<V>> list, std::span<const std::size_t> ranks,
                            Meter& meter);

// Keys m[0..g] of the list cut into g near-equal groups in sorted order:
// m[i] is the item at sorted position floor(i*n/g), clamped to n-1, so group
// x spans m[x-1] .. (at most) m[x].  Uses an O(n)-word sorted copy.
template <Numeric V>
GroupBoundary<V> group_boundaries(std::span<const Item<V>> list, std::size_t g, Meter& meter);

}  // namespace ksum
