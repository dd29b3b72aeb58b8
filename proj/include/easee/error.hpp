#pragma once

#include <stdexcept>
#include <string>

namespace easee {

// Base of every error the library raises. Callers that only care about
// "something in easee failed" can catch this.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : Error("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

// A bounded search (closure, graph construction) hit its size limit.
class BudgetExceeded : public Error {
 public:
  using Error::Error;
};

class DepthZero : public Error {
 public:
  DepthZero() : Error("graph depth must be at least 1") {}
};

class InfeasibleGraph : public Error {
 public:
  using Error::Error;
};

class UnknownNode : public Error {
 public:
  using Error::Error;
};

class CursorAtFinalLayer : public Error {
 public:
  CursorAtFinalLayer() : Error("cursor is on the final layer; advance or reset first") {}
};

class UnknownEnv : public Error {
 public:
  using Error::Error;
};

class UnknownVariant : public Error {
 public:
  using Error::Error;
};

class EmptyReport : public Error {
 public:
  EmptyReport() : Error("report has no rows") {}
};

// Malformed inputs that are not DSL parse errors (bad JSON, bad weights...).
class ValidationError : public Error {
 public:
  using Error::Error;
};

}  // namespace easee
