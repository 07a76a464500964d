#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace zipstrata {

/// Base of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Bad input that never reaches the mathematics (unsupported family, bad rank, ...).
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

class GroupMismatch : public Error {
 public:
  using Error::Error;
};

/// psi does not carry the reflections of I onto those of J.
class PsiMismatch : public Error {
 public:
  using Error::Error;
};

/// A concrete object violates one of its structural invariants.
class InvariantViolation : public Error {
 public:
  using Error::Error;
};

/// Im V != ker F or Im F != ker V for a level-1 Dieudonne pair.
class ImKerMismatch : public InvariantViolation {
 public:
  using InvariantViolation::InvariantViolation;
};

class NotInGroup : public Error {
 public:
  using Error::Error;
};

class SingularMatrix : public Error {
 public:
  using Error::Error;
};

/// An exhaustive enumeration would exceed the configured element bound.
class TooLarge : public Error {
 public:
  TooLarge(const std::string& what, std::uint64_t size, std::uint64_t bound)
      : Error(what + " (size " + std::to_string(size) + " exceeds bound " +
              std::to_string(bound) + ")"),
        size_(size),
        bound_(bound) {}

  std::uint64_t size() const noexcept { return size_; }
  std::uint64_t bound() const noexcept { return bound_; }

 private:
  std::uint64_t size_;
  std::uint64_t bound_;
};

/// No standard representative was reached within the extension-degree bound.
class Undetermined : public Error {
 public:
  Undetermined(const std::string& what, int max_ext)
      : Error(what + " (max extension degree " + std::to_string(max_ext) + ")"),
        max_ext_(max_ext) {}

  int max_ext() const noexcept { return max_ext_; }

 private:
  int max_ext_;
};

class InconsistentGrowth : public Error {
 public:
  using Error::Error;
};

/// Hard bound on the size of any exhaustive enumeration.
inline constexpr std::uint64_t kExhaustionGuard = 2'000'000;

}  // namespace zipstrata
