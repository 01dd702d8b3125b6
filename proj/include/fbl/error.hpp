#pragma once

#include <stdexcept>
#include <string>

namespace fbl {

/// Base for every error raised by the toolkit.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Raised when a configured size cap (group closure, graph size, field size) is exceeded.
class CapExceeded : public Error {
public:
  CapExceeded(const std::string& what, std::size_t cap)
      : Error(what + " (cap " + std::to_string(cap) + ")"), cap_(cap) {}
  std::size_t cap() const noexcept { return cap_; }

private:
  std::size_t cap_;
};

} // namespace fbl
