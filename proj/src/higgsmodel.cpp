#include "ssb/higgsmodel.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

#include "ssb/random.hpp"

namespace ssb {

QuarticPotential::QuarticPotential(double mu, double lambda) : mu_(mu), lambda_(lambda) {
  if (!(mu > 0.0)) throw PreconditionError(fmt::format("potential: mu must be > 0, got {}", mu));
  if (!(lambda > 0.0)) {
    throw PreconditionError(fmt::format("potential: lambda must be > 0, got {}", lambda));
  }
}

double QuarticPotential::value(const CVector& v) const {
  const double s = v.squaredNorm();
  return -0.5 * mu_ * s + 0.5 * lambda_ * s * s;
}

RVector QuarticPotential::gradient(const CVector& v) const {
  return (-mu_ + 2.0 * lambda_ * v.squaredNorm()) * realify(v);
}

RMatrix QuarticPotential::hessian(const CVector& v) const {
  const RVector x = realify(v);
  const double radial = -mu_ + 2.0 * lambda_ * x.squaredNorm();
  RMatrix h = 4.0 * lambda_ * x * x.transpose();
  h.diagonal().array() += radial;
  return h;
}

double QuarticPotential::vacuum_norm() const { return std::sqrt(mu_ / (2.0 * lambda_)); }

double potential_value(const QuarticPotential& p, const CVector& v) { return p.value(v); }
RVector potential_gradient(const QuarticPotential& p, const CVector& v) { return p.gradient(v); }
RMatrix potential_hessian(const QuarticPotential& p, const CVector& v) { return p.hessian(v); }

RVector fd_gradient(const std::function<double(const CVector&)>& value, const CVector& v,
                    double step) {
  const RVector x = realify(v);
  RVector g(x.size());
  for (Eigen::Index k = 0; k < x.size(); ++k) {
    RVector xp = x;
    RVector xm = x;
    xp[k] += step;
    xm[k] -= step;
    g[k] = (value(unrealify(xp)) - value(unrealify(xm))) / (2.0 * step);
  }
  return g;
}

RMatrix fd_hessian(const std::function<double(const CVector&)>& value, const CVector& v,
                   double step) {
  const RVector x = realify(v);
  const Eigen::Index m = x.size();
  RMatrix h(m, m);
  auto f = [&](Eigen::Index i, double di, Eigen::Index j, double dj) {
    RVector y = x;
    y[i] += di;
    y[j] += dj;
    return value(unrealify(y));
  };
  for (Eigen::Index i = 0; i < m; ++i) {
    for (Eigen::Index j = i; j < m; ++j) {
      const double d = (f(i, step, j, step) - f(i, step, j, -step) - f(i, -step, j, step) +
                        f(i, -step, j, -step)) /
                       (4.0 * step * step);
      h(i, j) = d;
      h(j, i) = d;
    }
  }
  return h;
}

PotentialFunctions make_potential(std::function<double(const CVector&)> value,
                                  std::function<RVector(const CVector&)> gradient,
                                  std::function<RMatrix(const CVector&)> hessian) {
  PotentialFunctions p;
  p.value = std::move(value);
  auto v = p.value;
  p.gradient = gradient ? std::move(gradient)
                        : std::function<RVector(const CVector&)>(
                              [v](const CVector& x) { return fd_gradient(v, x); });
  p.hessian = hessian ? std::move(hessian)
                      : std::function<RMatrix(const CVector&)>(
                            [v](const CVector& x) { return fd_hessian(v, x); });
  return p;
}

PotentialFunctions make_potential(const QuarticPotential& p) {
  return PotentialFunctions{[p](const CVector& v) { return p.value(v); },
                            [p](const CVector& v) { return p.gradient(v); },
                            [p](const CVector& v) { return p.hessian(v); }};
}

VacuumCheck check_vacuum(const PotentialFunctions& p, const CVector& v, double tol) {
  VacuumCheck check;
  check.gradient_norm = p.gradient(v).norm();
  Eigen::SelfAdjointEigenSolver<RMatrix> eig(p.hessian(v), Eigen::EigenvaluesOnly);
  check.min_hessian_eigenvalue = eig.eigenvalues().minCoeff();
  check.is_vacuum = check.gradient_norm < tol && check.min_hessian_eigenvalue > -tol;
  return check;
}

VacuumCheck check_vacuum(const HiggsModel& m, const CVector& v, double tol) {
  return check_vacuum(make_potential(m.potential), v, tol);
}

VacuumSolution find_vacuum(const PotentialFunctions& p, const CVector& seed,
                           const VacuumOptions& opts) {
  if (seed.size() == 0 || seed.norm() == 0.0) {
    throw PreconditionError("find_vacuum: seed must be nonzero (the origin is a stationary point)");
  }
  RVector x = realify(seed);
  auto value_at = [&](const RVector& y) { return p.value(unrealify(y)); };
  auto grad_at = [&](const RVector& y) { return p.gradient(unrealify(y)); };

  for (int iter = 0; iter <= opts.max_iter; ++iter) {
    const RVector g = grad_at(x);
    Eigen::SelfAdjointEigenSolver<RMatrix> eig(p.hessian(unrealify(x)));
    const RVector& lam = eig.eigenvalues();
    const RMatrix& vec = eig.eigenvectors();
    const double gnorm = g.norm();
    if (gnorm < opts.tol && lam.minCoeff() > -opts.tol) {
      return VacuumSolution{unrealify(x), iter, gnorm};
    }
    if (iter == opts.max_iter) break;

    const double scale = std::max(1.0, lam.cwiseAbs().maxCoeff());
    const bool convex = lam.minCoeff() > -opts.tol * scale;
    RVector dir = RVector::Zero(x.size());
    bool newton = false;
    if (convex) {
      for (Eigen::Index k = 0; k < lam.size(); ++k) {
        if (lam[k] > 1e-10 * scale) dir -= (vec.col(k).dot(g) / lam[k]) * vec.col(k);
      }
      newton = dir.dot(g) < 0.0;
    }
    if (!newton) {
      dir = -g;
      if (gnorm < opts.tol) {
        // Stationary but not a minimum: leave along negative curvature.
        dir = vec.col(0);
      }
    }

    const double f0 = value_at(x);
    const double slope = dir.dot(g);
    double t = 1.0;
    bool accepted = false;
    for (int ls = 0; ls < 60; ++ls) {
      const RVector trial = x + t * dir;
      const double f1 = value_at(trial);
      if (f1 <= f0 + 1e-4 * t * slope || (newton && grad_at(trial).norm() < gnorm)) {
        accepted = true;
        break;
      }
      t *= 0.5;
    }
    if (accepted && !newton && t == 1.0) {
      // Steepest descent from small seeds benefits from expanding the step.
      while (t < 1e6 && value_at(x + 2.0 * t * dir) < value_at(x + t * dir)) t *= 2.0;
    }
    if (!accepted) {
      throw SolverError(
          fmt::format("find_vacuum: line search failed at iteration {} (|grad| = {:.3e})", iter,
                      gnorm),
          unrealify(x), gnorm);
    }
    x += t * dir;
  }
  const double residual = grad_at(x).norm();
  throw SolverError(fmt::format("find_vacuum: no convergence after {} iterations (|grad| = {:.3e})",
                                opts.max_iter, residual),
                    unrealify(x), residual);
}

VacuumSolution find_vacuum(const HiggsModel& m, const CVector& seed, const VacuumOptions& opts) {
  if (seed.size() != m.gens.n()) {
    throw StructuralError(fmt::format("find_vacuum: seed has size {}, multiplet space has {}",
                                      seed.size(), m.gens.n()));
  }
  return find_vacuum(make_potential(m.potential), seed, opts);
}

double check_potential_invariance(const GeneratorSet& gs, const PotentialFunctions& p, int samples,
                                  std::uint64_t seed, double algebra_scale) {
  if (samples < 1) throw PreconditionError("check_potential_invariance: samples must be >= 1");
  double defect = 0.0;
  for (int k = 0; k < samples; ++k) {
    const auto stream = static_cast<std::uint64_t>(k);
    const AlgebraElement x = random_algebra_element(gs, seed, algebra_scale, 2 * stream);
    Rng rng(seed, 2 * stream + 1);
    const CVector v = rng.complex_normal_vector(gs.n());
    const CMatrix u = exponentiate(gs, x);
    defect = std::max(defect, std::abs(p.value(u * v) - p.value(v)));
  }
  return defect;
}

double check_potential_invariance(const HiggsModel& m, int samples, std::uint64_t seed,
                                  double algebra_scale) {
  return check_potential_invariance(m.gens, make_potential(m.potential), samples, seed,
                                    algebra_scale);
}

}  // namespace ssb
