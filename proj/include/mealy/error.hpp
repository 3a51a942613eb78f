#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace mealy {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : Error("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

// Structural problems reported by validate(); carries one message per
// violation.
class InvalidMachine : public Error {
 public:
  explicit InvalidMachine(std::vector<std::string> problems);
  const std::vector<std::string>& problems() const noexcept {
    return problems_;
  }

 private:
  std::vector<std::string> problems_;
};

class UnknownSymbol : public Error {
 public:
  using Error::Error;
};

class BudgetExceeded : public Error {
 public:
  using Error::Error;
};

// Every operation whose input fails a documented precondition throws a
// subclass of this; the CLI maps the whole family to exit code 2.
class PreconditionViolated : public Error {
 public:
  using Error::Error;
};

class NotInvertible : public PreconditionViolated {
 public:
  NotInvertible() : PreconditionViolated("NotInvertible") {}
};

class NotACycle : public PreconditionViolated {
 public:
  using PreconditionViolated::PreconditionViolated;
};

class NoSuchTriple : public PreconditionViolated {
 public:
  NoSuchTriple() : PreconditionViolated("NoSuchTriple") {}
};

class NoExitCycle : public PreconditionViolated {
 public:
  NoExitCycle() : PreconditionViolated("NoExitCycle") {}
};

class EmptyResult : public PreconditionViolated {
 public:
  EmptyResult() : PreconditionViolated("EmptyResult") {}
};

}  // namespace mealy
