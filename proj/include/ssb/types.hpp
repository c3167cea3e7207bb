#pragma once

#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace ssb {

using Complex = std::complex<double>;
using CVector = Eigen::VectorXcd;
using CMatrix = Eigen::MatrixXcd;
using RVector = Eigen::VectorXd;
using RMatrix = Eigen::MatrixXd;

/// Base class for every error raised by the engine.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Inconsistent shapes or dimensions between inputs.
class StructuralError : public Error {
 public:
  using Error::Error;
};

/// A documented precondition was violated by the caller.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// An iterative solver did not reach its tolerance.
class SolverError : public Error {
 public:
  SolverError(const std::string& what, CVector last_iterate, double residual)
      : Error(what), last_iterate_(std::move(last_iterate)), residual_(residual) {}

  const CVector& last_iterate() const { return last_iterate_; }
  double residual() const { return residual_; }

 private:
  CVector last_iterate_;
  double residual_;
};

/// A numerical quantity violated a mathematical invariant (PSD, minimum, ...).
class InvariantError : public Error {
 public:
  using Error::Error;
};

/// Re<v, w> for the standard Hermitian product, conjugate-linear in v.
inline double re_inner(const CVector& v, const CVector& w) { return v.dot(w).real(); }

}  // namespace ssb
