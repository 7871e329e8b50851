#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace rankcover {

// Malformed map input. `position` is a byte offset into the input, or npos.
class FormatError : public std::runtime_error {
 public:
  explicit FormatError(const std::string& what, std::size_t position = npos)
      : std::runtime_error(what), position_(position) {}

  std::size_t position() const noexcept { return position_; }

  static constexpr std::size_t npos = static_cast<std::size_t>(-1);

 private:
  std::size_t position_;
};

// Caller violated a precondition (mismatched lengths, bad parameters).
class ContractError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Instance too large for an exhaustive routine.
class SizeError : public std::length_error {
 public:
  using std::length_error::length_error;
};

// The LP solution failed its integrality or optimality certificate.
class CertificateError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Two points are not connected inside the eroded free region.
class NoPathError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace rankcover
