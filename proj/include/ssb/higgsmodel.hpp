#pragma once

#include <cstdint>
#include <functional>
#include <optional>

#include "ssb/liecore.hpp"

namespace ssb {

inline constexpr double kTolVac = 1e-9;

/// V(v) = -mu/2 |v|^2 + lambda/2 |v|^4 with mu, lambda > 0.
class QuarticPotential {
 public:
  QuarticPotential(double mu, double lambda);

  double mu() const { return mu_; }
  double lambda() const { return lambda_; }

  double value(const CVector& v) const;
  /// Gradient on the realified space, (-mu + 2 lambda |v|^2) realify(v).
  RVector gradient(const CVector& v) const;
  /// (-mu + 2 lambda |v|^2) I + 4 lambda x x^T with x = realify(v).
  RMatrix hessian(const CVector& v) const;

  /// Radius of the sphere of minima, sqrt(mu / (2 lambda)).
  double vacuum_norm() const;

  bool operator==(const QuarticPotential&) const = default;

 private:
  double mu_;
  double lambda_;
};

/// A potential given as callables. Missing derivatives default to central
/// finite differences of the value on the realified space.
struct PotentialFunctions {
  std::function<double(const CVector&)> value;
  std::function<RVector(const CVector&)> gradient;
  std::function<RMatrix(const CVector&)> hessian;
};

PotentialFunctions make_potential(std::function<double(const CVector&)> value,
                                  std::function<RVector(const CVector&)> gradient = nullptr,
                                  std::function<RMatrix(const CVector&)> hessian = nullptr);
PotentialFunctions make_potential(const QuarticPotential& p);

/// Central-difference gradient / Hessian of an arbitrary potential value.
RVector fd_gradient(const std::function<double(const CVector&)>& value, const CVector& v,
                    double step = 1e-5);
RMatrix fd_hessian(const std::function<double(const CVector&)>& value, const CVector& v,
                   double step = 1e-4);

double potential_value(const QuarticPotential& p, const CVector& v);
RVector potential_gradient(const QuarticPotential& p, const CVector& v);
RMatrix potential_hessian(const QuarticPotential& p, const CVector& v);

struct HiggsModel {
  GeneratorSet gens;
  QuarticPotential potential;
  std::optional<CVector> vacuum;
};

struct VacuumCheck {
  double gradient_norm = 0.0;
  double min_hessian_eigenvalue = 0.0;
  bool is_vacuum = false;
};

/// Stationarity and second-order test at v.
VacuumCheck check_vacuum(const PotentialFunctions& p, const CVector& v, double tol = kTolVac);
VacuumCheck check_vacuum(const HiggsModel& m, const CVector& v, double tol = kTolVac);

struct VacuumOptions {
  double tol = kTolVac;
  int max_iter = 200;
};

struct VacuumSolution {
  CVector vacuum;
  int iterations = 0;
  double gradient_norm = 0.0;
};

/// Damped Newton on the realified space with Armijo backtracking; gradient
/// descent is used while the Hessian is indefinite. Rejects a zero seed;
/// throws SolverError with the last iterate on non-convergence.
VacuumSolution find_vacuum(const PotentialFunctions& p, const CVector& seed,
                           const VacuumOptions& opts = {});
VacuumSolution find_vacuum(const HiggsModel& m, const CVector& seed,
                           const VacuumOptions& opts = {});

/// max over samples of |V(exp(X) v) - V(v)| for random X (scaled by
/// `algebra_scale`) and random v. Samples are indexed, so the result depends
/// only on (seed, samples).
double check_potential_invariance(const GeneratorSet& gs, const PotentialFunctions& p, int samples,
                                  std::uint64_t seed, double algebra_scale = 1.0);
double check_potential_invariance(const HiggsModel& m, int samples, std::uint64_t seed,
                                  double algebra_scale = 1.0);

}  // namespace ssb
