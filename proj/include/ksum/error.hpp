#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace ksum {

// Base of every error the library raises.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidInstance : public Error {
 public:
  using Error::Error;
};

class PreconditionViolation : public Error {
 public:
  using Error::Error;
};

class RankOutOfRange : public PreconditionViolation {
 public:
  using PreconditionViolation::PreconditionViolation;
};

class ModeMismatch : public PreconditionViolation {
 public:
  using PreconditionViolation::PreconditionViolation;
};

class ArityMismatch : public PreconditionViolation {
 public:
  using PreconditionViolation::PreconditionViolation;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

// Raised when an acquisition would cross a meter's hard space cap, or when a
// materializing solver would exceed its table budget.
class BudgetExceeded : public Error {
 public:
  BudgetExceeded(std::uint64_t requested, std::uint64_t in_use, std::uint64_t cap)
      : Error("space budget exceeded: requested " + std::to_string(requested) +
              " words with " + std::to_string(in_use) + " in use, cap " + std::to_string(cap)),
        requested_(requested),
        in_use_(in_use),
        cap_(cap) {}

  std::uint64_t requested() const noexcept { return requested_; }
  std::uint64_t in_use() const noexcept { return in_use_; }
  std::uint64_t cap() const noexcept { return cap_; }

 private:
  std::uint64_t requested_;
  std::uint64_t in_use_;
  std::uint64_t cap_;
};

}  // namespace ksum
