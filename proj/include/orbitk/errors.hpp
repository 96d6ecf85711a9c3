#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace orbitk {

/// Argument outside an operation's mathematical domain (e.g. x < 2 for the map).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// 64-bit arithmetic would wrap.
class OverflowError : public std::overflow_error {
 public:
  using std::overflow_error::overflow_error;
};

/// A table or buffer could not be allocated at the requested size.
class ResourceError : public std::runtime_error {
 public:
  ResourceError(const std::string& what, std::uint64_t requested)
      : std::runtime_error(what), requested_(requested) {}

  std::uint64_t requested() const noexcept { return requested_; }

 private:
  std::uint64_t requested_;
};

/// An iteration exceeded its step budget without closing a cycle.
class IterationBudgetError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace orbitk
