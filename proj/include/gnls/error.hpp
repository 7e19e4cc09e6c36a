#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace gnls {

/// Base class for every error raised by the toolkit.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// Operation needs a nonzero field (normalization, quotient, support).
class ZeroField : public Error {
 public:
  ZeroField() : Error("field is identically zero") {}
};

/// A standing hypothesis of the variational problem does not hold.
class HypothesisViolated : public Error {
 public:
  using Error::Error;
};

/// The boosted symbol decreases without bound along the search line.
class UnboundedBelow : public Error {
 public:
  using Error::Error;
};

/// Phase unwrapping requested over a support mask with several components.
class DisconnectedSupport : public Error {
 public:
  using Error::Error;
};

/// Malformed field file; carries the byte offset where parsing stopped.
class FormatError : public Error {
 public:
  FormatError(const std::string& what, std::size_t offset)
      : Error(what + " (byte offset " + std::to_string(offset) + ")"), offset_(offset) {}
  std::size_t offset() const noexcept { return offset_; }

 private:
  std::size_t offset_;
};

/// Malformed run configuration; carries the 1-based line number.
class ConfigError : public Error {
 public:
  ConfigError(const std::string& what, int line)
      : Error(line > 0 ? "line " + std::to_string(line) + ": " + what : what), line_(line) {}
  int line() const noexcept { return line_; }

 private:
  int line_;
};

}  // namespace gnls
