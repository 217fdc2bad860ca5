#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace cac {

// Base of every error the kernel raises. Callers that only care about
// "something went wrong" catch this one.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidPosition : public Error {
 public:
  using Error::Error;
};

// An equivalence class grew past the configured bound while being enumerated.
class ClassBoundExceeded : public Error {
 public:
  ClassBoundExceeded(std::string term, std::size_t bound)
      : Error("equivalence class of " + term + " exceeds bound " + std::to_string(bound)),
        term_(std::move(term)),
        bound_(bound) {}

  const std::string& term() const { return term_; }
  std::size_t bound() const { return bound_; }

 private:
  std::string term_;
  std::size_t bound_;
};

// A normalization ran out of its step budget. Raised instead of looping.
class FuelExhausted : public Error {
 public:
  FuelExhausted(std::string term, std::size_t fuel)
      : Error("fuel of " + std::to_string(fuel) + " steps exhausted while normalizing " + term),
        term_(std::move(term)),
        fuel_(fuel) {}

  const std::string& term() const { return term_; }
  std::size_t fuel() const { return fuel_; }

 private:
  std::string term_;
  std::size_t fuel_;
};

class TypeError : public Error {
 public:
  using Error::Error;
};

// Raised while turning parsed declarations into a Signature.
class LoadError : public Error {
 public:
  LoadError(int line, const std::string& message)
      : Error("line " + std::to_string(line) + ": " + message), line_(line) {}

  int line() const { return line_; }

 private:
  int line_;
};

class SyntaxError : public Error {
 public:
  SyntaxError(int line, int column, const std::string& message)
      : Error(std::to_string(line) + ":" + std::to_string(column) + ": " + message),
        line_(line),
        column_(column) {}

  int line() const { return line_; }
  int column() const { return column_; }

 private:
  int line_;
  int column_;
};

}  // namespace cac
