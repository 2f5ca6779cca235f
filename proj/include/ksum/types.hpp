#pragma once

// Domain types shared by every solver: list items under a tie-broken total
// order, read-only instances, solver-facing problem views and witnesses.

#include <algorithm>
#include <cmath>
#include <compare>
#include <concepts>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <type_traits>
#include <utility>
#include <variant>
#include <vector>

#include "ksum/error.hpp"

namespace ksum {

enum class Mode { integer, real };

// Values are only ever added and compared.  Integers model the word-RAM,
// doubles the comparison-addition real-RAM at desk scale.
template <typename V>
concept Numeric = std::same_as<V, std::int64_t> || std::same_as<V, double>;

template <Numeric V>
inline constexpr Mode mode_of = std::is_integral_v<V> ? Mode::integer : Mode::real;

std::string_view to_string(Mode mode);
Mode parse_mode(std::string_view text);

template <Numeric V>
struct Item {
  V value{};
  std::uint32_t list_id = 0;
  std::uint32_t index = 0;

  friend constexpr bool operator==(const Item&, const Item&) = default;
};

// Lexicographic order on (value, list_id, index).  Values are finite, so the
// order is strict and total.
template <Numeric V>
constexpr std::strong_ordering item_compare(const Item<V>& a, const Item<V>& b) noexcept {
  if (a.value < b.value) return std::strong_ordering::less;
  if (b.value < a.value) return std::strong_ordering::greater;
  if (auto c = a.list_id <=> b.list_id; c != 0) return c;
  return a.index <=> b.index;
}

template <Numeric V>
constexpr std::strong_ordering operator<=>(const Item<V>& a, const Item<V>& b) noexcept {
  return item_compare(a, b);
}

// Two items are the same input element.  A witness never uses one element twice.
template <Numeric V>
constexpr bool same_source(const Item<V>& a, const Item<V>& b) noexcept {
  return a.list_id == b.list_id && a.index == b.index;
}

// The view every solver consumes: k item sequences, a target and a set of
// input elements that must not appear in a witness.  Items keep their
// original (list_id, index), so a view over scratch copies still enforces
// index distinctness for single-list instances.
template <Numeric V>
struct Problem {
  std::vector<std::span<const Item<V>>> lists;
  V target{};
  std::vector<Item<V>> excluded;

  std::size_t arity() const noexcept { return lists.size(); }

  // All lists are the same storage, which lets solvers enumerate index
  // combinations instead of products.
  bool aliased() const noexcept {
    if (lists.size() < 2) return false;
    return std::all_of(lists.begin() + 1, lists.end(), [&](auto s) {
      return s.data() == lists.front().data() && s.size() == lists.front().size();
    });
  }

  bool is_excluded(const Item<V>& item) const noexcept {
    return std::any_of(excluded.begin(), excluded.end(),
                       [&](const Item<V>& e) { return same_source(e, item); });
  }
};

template <Numeric V>
struct Witness {
  std::vector<Item<V>> items;
  V sum_check{};
};

template <Numeric V>
Witness<V> make_witness(std::vector<Item<V>> items) {
  V total{};
  for (const auto& it : items) total += it.value;
  return Witness<V>{std::move(items), total};
}

// Boundary keys m[0..g] of a list cut into g groups; see group_boundaries().
template <Numeric V>
struct GroupBoundary {
  std::vector<Item<V>> keys;
};

namespace detail {

template <Numeric V>
inline constexpr V magnitude_limit = [] {
  if constexpr (std::is_integral_v<V>) {
    return std::numeric_limits<std::int64_t>::max();
  } else {
    return 9007199254740992.0;  // 2^53: integers summed exactly
  }
}();

template <Numeric V>
V abs_value(V v) {
  if constexpr (std::is_integral_v<V>) {
    return v < 0 ? -v : v;
  } else {
    return std::fabs(v);
  }
}

}  // namespace detail

// k read-only lists of equal length n.  A single-list instance stores one
// sequence that every list position aliases.
template <Numeric V>
class Instance {
 public:
  static Instance single_list(std::vector<V> values, std::size_t k, V target = V{}) {
    Instance inst;
    inst.k_ = k;
    inst.target_ = target;
    inst.single_ = true;
    inst.storage_.push_back(to_items(values, 0));
    inst.validate();
    return inst;
  }

  static Instance multi_list(const std::vector<std::vector<V>>& lists, V target = V{}) {
    Instance inst;
    inst.k_ = lists.size();
    inst.target_ = target;
    inst.single_ = false;
    for (std::size_t i = 0; i < lists.size(); ++i) {
      inst.storage_.push_back(to_items(lists[i], static_cast<std::uint32_t>(i)));
    }
    inst.validate();
    return inst;
  }

  std::size_t k() const noexcept { return k_; }
  std::size_t n() const noexcept { return storage_.front().size(); }
  V target() const noexcept { return target_; }
  bool single_list() const noexcept { return single_; }
  static constexpr Mode mode() noexcept { return mode_of<V>; }

  std::span<const Item<V>> list(std::size_t i) const {
    return storage_.at(single_ ? 0 : i);
  }

  std::vector<V> values(std::size_t i) const {
    std::vector<V> out;
    out.reserve(n());
    for (const auto& it : list(i)) out.push_back(it.value);
    return out;
  }

  Problem<V> problem() const {
    Problem<V> p;
    p.target = target_;
    for (std::size_t i = 0; i < k_; ++i) p.lists.push_back(list(i));
    return p;
  }

  friend bool operator==(const Instance&, const Instance&) = default;

 private:
  Instance() = default;

  static std::vector<Item<V>> to_items(const std::vector<V>& values, std::uint32_t list_id) {
    std::vector<Item<V>> items;
    items.reserve(values.size());
    for (std::size_t i = 0; i < values.size(); ++i) {
      items.push_back(Item<V>{values[i], list_id, static_cast<std::uint32_t>(i)});
    }
    return items;
  }

  void validate() const {
    if (k_ < 2) throw InvalidInstance("arity k must be at least 2");
    if (storage_.empty() || storage_.front().empty()) {
      throw InvalidInstance("lists must be non-empty");
    }
    if (storage_.front().size() > std::numeric_limits<std::uint32_t>::max()) {
      throw InvalidInstance("list too long");
    }
    for (const auto& l : storage_) {
      if (l.size() != storage_.front().size()) {
        throw InvalidInstance("all lists must have the same length");
      }
    }
    if constexpr (!std::is_integral_v<V>) {
      if (!std::isfinite(target_)) throw InvalidInstance("target must be finite");
    } else {
      if (target_ == std::numeric_limits<V>::min()) {
        throw InvalidInstance("target magnitude overflows");
      }
    }
    V max_abs{};
    for (const auto& l : storage_) {
      for (const auto& it : l) {
        if constexpr (!std::is_integral_v<V>) {
          if (!std::isfinite(it.value)) throw InvalidInstance("values must be finite");
        } else {
          if (it.value == std::numeric_limits<V>::min()) {
            throw InvalidInstance("value magnitude overflows");
          }
        }
        max_abs = std::max(max_abs, detail::abs_value(it.value));
      }
    }
    // Any k-fold sum, and target minus any partial sum, must stay representable.
    const V limit = detail::magnitude_limit<V>;
    const V target_abs = detail::abs_value(target_);
    if (target_abs > limit ||
        max_abs > (limit - target_abs) / static_cast<V>(k_)) {
      throw InvalidInstance("values too large: k-fold sums could overflow");
    }
  }

  std::vector<std::vector<Item<V>>> storage_;
  std::size_t k_ = 0;
  V target_{};
  bool single_ = false;
};

using AnyInstance = std::variant<Instance<std::int64_t>, Instance<double>>;

// Checks a witness against the problem it claims to solve: one item per
// list, drawn from that list, no element reused or excluded, exact sum.
template <Numeric V>
bool verify_witness(const Problem<V>& p, const Witness<V>& w) {
  if (w.items.size() != p.arity()) return false;
  V total{};
  for (std::size_t i = 0; i < w.items.size(); ++i) {
    const auto& it = w.items[i];
    const auto list = p.lists[i];
    bool found = std::any_of(list.begin(), list.end(), [&](const Item<V>& x) { return x == it; });
    if (!found || p.is_excluded(it)) return false;
    for (std::size_t j = 0; j < i; ++j) {
      if (same_source(w.items[j], it)) return false;
    }
    total += it.value;
  }
  return total == p.target && w.sum_check == p.target;
}

}  // namespace ksum
