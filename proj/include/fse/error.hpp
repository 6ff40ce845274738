#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace fse {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Invalid parameters or geometry (dimension mismatch, rho/gamma out of range, ...).
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// The weighting function has no usable support samples.
class EmptySupportError : public Error {
 public:
  using Error::Error;
};

/// Input data violates a precondition (non-finite samples, complex support).
class InputError : public Error {
 public:
  using Error::Error;
};

/// Malformed or unsupported image file. Carries the byte offset of the problem.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t offset)
      : Error(what + " (at byte " + std::to_string(offset) + ")"), offset_(offset) {}

  std::size_t offset() const noexcept { return offset_; }

 private:
  std::size_t offset_;
};

}  // namespace fse
