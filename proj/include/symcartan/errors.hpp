#pragma once

#include <stdexcept>
#include <string>

namespace symcartan {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed input text or JSON.
class SchemaError : public Error {
 public:
  using Error::Error;
};

class ParseError : public SchemaError {
 public:
  ParseError(const std::string& msg, std::size_t pos)
      : SchemaError(msg + " at position " + std::to_string(pos)), pos_(pos) {}
  std::size_t position() const { return pos_; }

 private:
  std::size_t pos_;
};

class ChartMismatch : public Error {
 public:
  ChartMismatch() : Error("fields live on different charts") {}
};

class PoleError : public Error {
 public:
  using Error::Error;
};

// Preconditions of a computation not met (degenerate metric, torsion where
// forbidden, degree out of range, ...).
class ComputationError : public Error {
 public:
  using Error::Error;
};

}  // namespace symcartan
