#pragma once

#include <stdexcept>
#include <string>

namespace perfacto {

/// Base class for every error raised by the kernel.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

class InvalidRing : public Error {
 public:
  using Error::Error;
};

/// A matrix offered as a module morphism does not send the source relations
/// into the span of the target relations.
class IncompatibleWithRelations : public Error {
 public:
  using Error::Error;
};

/// d(v-1) * d(v) != 0 somewhere; `degree()` is v.
class NotAComplex : public Error {
 public:
  NotAComplex(int degree, const std::string& what)
      : Error(what), degree_(degree) {}
  int degree() const { return degree_; }

 private:
  int degree_;
};

/// Components of a purported chain map do not commute with the differentials.
class NotAChainMap : public Error {
 public:
  NotAChainMap(int degree, const std::string& what)
      : Error(what), degree_(degree) {}
  int degree() const { return degree_; }

 private:
  int degree_;
};

/// An input violates the hypothesis under which an operation is defined
/// (non-flat target for factorization, non-projective P for HomFrom, ...).
class HypothesisViolation : public Error {
 public:
  using Error::Error;
};

/// Iterative deepening of the resolution window ran out of rounds.
class WindowExhausted : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

class ReferenceError : public Error {
 public:
  using Error::Error;
};

}  // namespace perfacto
