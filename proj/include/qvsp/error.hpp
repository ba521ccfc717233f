#ifndef QVSP_ERROR_HPP
#define QVSP_ERROR_HPP

#include <cstdint>
#include <stdexcept>
#include <string>

namespace qvsp {

/// Parameter outside the documented domain of an operation.
class DomainError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// An object failed validation (invalid partition, bad evaluation points, ...).
class ValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A configured enumeration/search budget would be exceeded.  `requested`
/// carries the size that was asked for when it is known.
class BudgetExceeded : public std::runtime_error {
 public:
  BudgetExceeded(const std::string& what, std::uint64_t requested = 0, std::uint64_t limit = 0)
      : std::runtime_error(what), requested_(requested), limit_(limit) {}

  std::uint64_t requested() const noexcept { return requested_; }
  std::uint64_t limit() const noexcept { return limit_; }

 private:
  std::uint64_t requested_;
  std::uint64_t limit_;
};

}  // namespace qvsp

#endif  // QVSP_ERROR_HPP
