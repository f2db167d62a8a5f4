#pragma once

#include <stdexcept>
#include <string>

namespace qsim {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// A requested register exceeds the configured qubit budget.
class CapacityError : public Error {
  public:
    CapacityError(const std::string &what, int requested, int budget)
        : Error(what + ": " + std::to_string(requested) +
                " qubits requested, budget is " + std::to_string(budget)),
          requested_(requested), budget_(budget) {}

    int requested() const noexcept { return requested_; }
    int budget() const noexcept { return budget_; }

  private:
    int requested_;
    int budget_;
};

class DimensionError : public Error {
  public:
    using Error::Error;
};

class InvalidIndexError : public Error {
  public:
    using Error::Error;
};

class ArityError : public Error {
  public:
    using Error::Error;
};

class MalformedTreeError : public Error {
  public:
    using Error::Error;
};

/// An oracle does not satisfy the promise an algorithm relies on.
class PromiseViolation : public Error {
  public:
    using Error::Error;
};

class InvalidArgument : public Error {
  public:
    using Error::Error;
};

class ParseError : public Error {
  public:
    using Error::Error;
};

/// Gate synthesis could not reach the requested accuracy.
class AccuracyUnreachable : public Error {
  public:
    AccuracyUnreachable(double requested, double best)
        : Error("requested accuracy " + std::to_string(requested) +
                " not reached; best achieved distance " + std::to_string(best)),
          requested_(requested), best_(best) {}

    double requested() const noexcept { return requested_; }
    double best_distance() const noexcept { return best_; }

  private:
    double requested_;
    double best_;
};

} // namespace qsim
