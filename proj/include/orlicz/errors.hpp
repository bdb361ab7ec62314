#pragma once

#include <stdexcept>
#include <string>

namespace orlicz {

/// Base of every error raised by the toolkit.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An operation was called outside its documented domain.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// A structural hypothesis of an inequality is not met (e.g. d_M < 2).
class HypothesisError : public PreconditionError {
 public:
  using PreconditionError::PreconditionError;
};

/// The explicit constants requested are only valid in another parameter regime.
class OutOfRegimeError : public PreconditionError {
 public:
  using PreconditionError::PreconditionError;
};

/// A growth or doubling certificate could not be produced on the grid.
class CertificationError : public Error {
 public:
  CertificationError(const std::string& what, double node)
      : Error(what), node_(node) {}
  double node() const noexcept { return node_; }

 private:
  double node_;
};

/// An integrand produced a non-finite value.
class EvaluationError : public Error {
 public:
  EvaluationError(const std::string& what, double location)
      : Error(what), location_(location) {}
  double location() const noexcept { return location_; }

 private:
  double location_;
};

/// Requested accuracy could not be reached (truncation tail or panel budget).
class AccuracyError : public Error {
 public:
  using Error::Error;
};

class DivergenceError : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t line, std::size_t column)
      : Error(what), line_(line), column_(column) {}
  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

/// A corpus member violates one of its invariants.
class ValidationError : public Error {
 public:
  ValidationError(const std::string& member, const std::string& invariant,
                  const std::string& detail)
      : Error(member + ": " + invariant + " (" + detail + ")"),
        member_(member),
        invariant_(invariant) {}
  const std::string& member() const noexcept { return member_; }
  const std::string& invariant() const noexcept { return invariant_; }

 private:
  std::string member_;
  std::string invariant_;
};

}  // namespace orlicz
