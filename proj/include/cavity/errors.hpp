#pragma once

#include <stdexcept>
#include <string>

namespace cavity {

/// Argument outside the mathematical domain of a function (negative x, NaN, ...).
class DomainError : public std::domain_error {
public:
  using std::domain_error::domain_error;
};

/// Index out of the admissible range (e.g. |m| > n for a spherical harmonic).
class IndexError : public std::out_of_range {
public:
  using std::out_of_range::out_of_range;
};

/// A zero scan reached its upper limit before finding the requested zeros.
class BracketError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// A refined zero does not change sign: double root or tangency.
class TangencyError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Eigensolver failed to converge, or produced a result that violates its contract.
class SolverError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// A spectrum could not be extended far enough to cover the requested bound.
class TruncationError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Field evaluation requested at a point outside the closed domain.
class OutsideDomainError : public std::out_of_range {
public:
  using std::out_of_range::out_of_range;
};

/// Degenerate linear system (e.g. a Laplace solve with no Dirichlet data).
class SingularError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Malformed input file or configuration.
class FormatError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

} // namespace cavity
