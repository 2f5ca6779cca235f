#pragma once

// Per-solve accounting of charged operations and auxiliary words.
//
// Every solver receives a Meter and performs its comparisons, additions and
// input reads through it.  Scratch storage is only ever obtained via
// acquire(), which hands back a Lease that returns the words on destruction.
// One word is one value, one item or one index/counter.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include "ksum/error.hpp"

namespace ksum {

enum class Charge { comparison, addition, input_read };

class Meter;

// Token for an acquisition.  Released exactly once, either explicitly or
// when it goes out of scope.
class Lease {
 public:
  Lease() = default;
  Lease(const Lease&) = delete;
  Lease& operator=(const Lease&) = delete;
  Lease(Lease&& other) noexcept
      : meter_(std::exchange(other.meter_, nullptr)), words_(std::exchange(other.words_, 0)) {}
  Lease& operator=(Lease&& other) noexcept {
    if (this != &other) {
      release();
      meter_ = std::exchange(other.meter_, nullptr);
      words_ = std::exchange(other.words_, 0);
    }
    return *this;
  }
  ~Lease() { release(); }

  void release() noexcept;
  std::uint64_t words() const noexcept { return words_; }
  bool active() const noexcept { return meter_ != nullptr; }

 private:
  friend class Meter;
  Lease(Meter* meter, std::uint64_t words) : meter_(meter), words_(words) {}

  Meter* meter_ = nullptr;
  std::uint64_t words_ = 0;
};

struct MeterSnapshot {
  std::uint64_t comparisons = 0;
  std::uint64_t additions = 0;
  std::uint64_t input_reads = 0;
  std::uint64_t aux_words_current = 0;
  std::uint64_t aux_words_peak = 0;

  std::uint64_t operations() const noexcept { return comparisons + additions + input_reads; }
};

class Meter {
 public:
  Meter() = default;
  explicit Meter(std::optional<std::uint64_t> space_cap) : cap_(space_cap) {}
  Meter(const Meter&) = delete;
  Meter& operator=(const Meter&) = delete;

  // Throws BudgetExceeded, leaving the counters untouched, if the cap would
  // be crossed.
  [[nodiscard]] Lease acquire(std::uint64_t words) {
    if (cap_ && current_ + words > *cap_) throw BudgetExceeded(words, current_, *cap_);
    current_ += words;
    if (current_ > peak_) peak_ = current_;
    return Lease(this, words);
  }

  void charge(Charge kind, std::uint64_t count = 1) noexcept {
    switch (kind) {
      case Charge::comparison: comparisons_ += count; break;
      case Charge::addition: additions_ += count; break;
      case Charge::input_read: input_reads_ += count; break;
    }
  }

  void compare(std::uint64_t count = 1) noexcept { comparisons_ += count; }
  void add(std::uint64_t count = 1) noexcept { additions_ += count; }
  void read(std::uint64_t count = 1) noexcept { input_reads_ += count; }

  std::uint64_t comparisons() const noexcept { return comparisons_; }
  std::uint64_t additions() const noexcept { return additions_; }
  std::uint64_t input_reads() const noexcept { return input_reads_; }
  std::uint64_t aux_words_current() const noexcept { return current_; }
  std::uint64_t aux_words_peak() const noexcept { return peak_; }
  // Total charged time: comparisons + additions + input reads.
  std::uint64_t operations() const noexcept { return comparisons_ + additions_ + input_reads_; }

  std::optional<std::uint64_t> space_cap() const noexcept { return cap_; }
  void set_space_cap(std::optional<std::uint64_t> cap) noexcept { cap_ = cap; }

  MeterSnapshot snapshot() const noexcept {
    return {comparisons_, additions_, input_reads_, current_, peak_};
  }

 private:
  friend class Lease;
  void release(std::uint64_t words) noexcept { current_ -= words; }

  std::uint64_t comparisons_ = 0;
  std::uint64_t additions_ = 0;
  std::uint64_t input_reads_ = 0;
  std::uint64_t current_ = 0;
  std::uint64_t peak_ = 0;
  std::optional<std::uint64_t> cap_;
};

inline void Lease::release() noexcept {
  if (meter_ != nullptr) {
    meter_->release(words_);
    meter_ = nullptr;
    words_ = 0;
  }
}

// Fixed-capacity scratch array whose capacity is charged to a meter for as
// long as the array lives.
template <typename T>
class Scratch {
 public:
  Scratch() = default;
  Scratch(Meter& meter, std::size_t capacity, std::uint64_t words_per_element = 1)
      : lease_(meter.acquire(static_cast<std::uint64_t>(capacity) * words_per_element)),
        capacity_(capacity) {
    data_.reserve(capacity);
  }
  Scratch(const Scratch&) = delete;
  Scratch& operator=(const Scratch&) = delete;
  Scratch(Scratch&& other) noexcept
      : lease_(std::move(other.lease_)),
        data_(std::move(other.data_)),
        capacity_(std::exchange(other.capacity_, 0)) {}
  Scratch& operator=(Scratch&& other) noexcept {
    if (this != &other) {
      data_ = std::move(other.data_);
      lease_ = std::move(other.lease_);
      capacity_ = std::exchange(other.capacity_, 0);
    }
    return *this;
  }

  void push_back(const T& value) {
    if (data_.size() == capacity_) throw std::logic_error("scratch capacity exhausted");
    data_.push_back(value);
  }
  void pop_back() { data_.pop_back(); }
  void resize(std::size_t size) {
    if (size > capacity_) throw std::logic_error("scratch capacity exhausted");
    data_.resize(size);
  }
  void clear() noexcept { data_.clear(); }

  // Drops the storage and returns the words to the meter.
  void reset() noexcept {
    data_ = {};
    capacity_ = 0;
    lease_.release();
  }

  std::size_t size() const noexcept { return data_.size(); }
  std::size_t capacity() const noexcept { return capacity_; }
  bool empty() const noexcept { return data_.empty(); }
  bool full() const noexcept { return data_.size() == capacity_; }

  T& operator[](std::size_t i) noexcept { return data_[i]; }
  const T& operator[](std::size_t i) const noexcept { return data_[i]; }
  T& back() noexcept { return data_.back(); }
  const T& back() const noexcept { return data_.back(); }

  auto begin() noexcept { return data_.begin(); }
  auto end() noexcept { return data_.end(); }
  auto begin() const noexcept { return data_.begin(); }
  auto end() const noexcept { return data_.end(); }

  std::span<T> span() noexcept { return data_; }
  std::span<const T> span() const noexcept { return data_; }

 private:
  Lease lease_;
  std::vector<T> data_;
  std::size_t capacity_ = 0;
};

}  // namespace ksum
