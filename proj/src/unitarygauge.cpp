#include "ssb/unitarygauge.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

namespace ssb {

RVector fiber_derivative(const GeneratorSet& gs, const CVector& v0, const CVector& phi) {
  if (phi.size() != gs.n() || v0.size() != gs.n()) {
    throw StructuralError("fiber_derivative: vector sizes do not match the generators");
  }
  RVector s(gs.r());
  for (Eigen::Index i = 0; i < gs.r(); ++i) s[i] = re_inner(phi, gs.gen(i) * v0);
  return s;
}

GoldstoneCheck goldstone_vanish_check(const SpectrumResult& spec, const CVector& v0,
                                      const CVector& phi, double tol) {
  const ShiftDecomposition shift = decompose_shift(spec, phi, v0);
  GoldstoneCheck check;
  check.defect = shift.xi.size() > 0 ? shift.xi.cwiseAbs().maxCoeff() : 0.0;
  check.vanishes = check.defect < tol;
  return check;
}

BrokenHessianMatrix broken_hessian(const GeneratorSet& gs, const CVector& v0, const CVector& phi,
                                   const CMatrix& group_element,
                                   const std::vector<AlgebraElement>& broken_basis) {
  const auto d = static_cast<Eigen::Index>(broken_basis.size());
  const CVector w = group_element * phi;
  std::vector<CMatrix> mats;
  mats.reserve(broken_basis.size());
  for (const auto& a : broken_basis) mats.push_back(gs.matrix(a));

  RMatrix raw(d, d);
  for (Eigen::Index i = 0; i < d; ++i) {
    for (Eigen::Index j = 0; j < d; ++j) {
      raw(i, j) = re_inner(w, mats[static_cast<std::size_t>(i)] *
                                  (mats[static_cast<std::size_t>(j)] * v0));
    }
  }
  BrokenHessianMatrix out;
  out.asymmetry = d > 0 ? (raw - raw.transpose()).cwiseAbs().maxCoeff() : 0.0;
  out.matrix = 0.5 * (raw + raw.transpose());
  return out;
}

namespace {

struct Probe {
  CVector w;
  RVector s;       // Re<w, A_i v0>
  double overlap;  // Re<w, v0>
  double defect;   // max |xi|
};

}  // namespace

UnitaryGaugeSolution solve_unitary_gauge_point(const GeneratorSet& gs, const CVector& v0,
                                               const SpectrumResult& spec, const CVector& phi,
                                               const UnitaryGaugeOptions& opts,
                                               const std::optional<CMatrix>& initial) {
  if (phi.size() != gs.n() || v0.size() != gs.n()) {
    throw StructuralError("solve_unitary_gauge_point: vector sizes do not match the generators");
  }
  if (phi.norm() == 0.0) {
    throw PreconditionError("solve_unitary_gauge_point: phi = 0 has no unitary gauge");
  }
  const auto d = static_cast<Eigen::Index>(spec.broken_basis.size());
  std::vector<CMatrix> mats;
  std::vector<CVector> images;
  double op_scale = 0.0;
  for (const auto& a : spec.broken_basis) {
    mats.push_back(gs.matrix(a));
    images.push_back(mats.back() * v0);
    op_scale = std::max(op_scale, mats.back().norm());
  }

  auto probe = [&](const CMatrix& u) {
    Probe p;
    p.w = u * phi;
    p.s.resize(d);
    for (Eigen::Index i = 0; i < d; ++i) p.s[i] = re_inner(p.w, images[static_cast<std::size_t>(i)]);
    p.overlap = re_inner(p.w, v0);
    p.defect = goldstone_vanish_check(spec, v0, p.w, opts.tol).defect;
    return p;
  };
  auto step_matrix = [&](const RVector& t) {
    CMatrix x = CMatrix::Zero(gs.n(), gs.n());
    for (Eigen::Index i = 0; i < d; ++i) x += t[i] * mats[static_cast<std::size_t>(i)];
    return expm(x);
  };

  CMatrix u = initial.value_or(CMatrix::Identity(gs.n(), gs.n()));
  Probe cur = probe(u);
  const double tiny = 1e-14 * phi.norm() * std::max(1.0, v0.norm());

  for (int iter = 0; iter <= opts.max_iter; ++iter) {
    if (cur.defect < opts.tol && cur.overlap >= -tiny) {
      const BrokenHessianMatrix b = broken_hessian(gs, v0, phi, u, spec.broken_basis);
      if (d > 0) {
        Eigen::SelfAdjointEigenSolver<RMatrix> eig(b.matrix, Eigen::EigenvaluesOnly);
        const double smallest = eig.eigenvalues().cwiseAbs().minCoeff();
        if (smallest <= 1e-12 * std::max(1.0, b.matrix.cwiseAbs().maxCoeff())) {
          throw DegeneratePointError(
              "solve_unitary_gauge_point: broken Hessian is degenerate at the solution");
        }
      }
      return UnitaryGaugeSolution{u, cur.w, iter, cur.defect};
    }
    if (iter == opts.max_iter) break;

    const RVector grad = -cur.s;  // derivative of the overlap along exp(t a_i)
    const BrokenHessianMatrix b = broken_hessian(gs, v0, phi, u, spec.broken_basis);
    Eigen::SelfAdjointEigenSolver<RMatrix> eig(b.matrix);
    const double scale = std::max(1e-300, b.matrix.cwiseAbs().maxCoeff());
    bool newton = false;
    RVector dir;
    if (d > 0 && eig.eigenvalues().maxCoeff() < -1e-12 * scale) {
      dir = -b.matrix.ldlt().solve(grad);
      newton = true;
    } else if (grad.norm() > tiny) {
      dir = grad;
      const double len = dir.norm() * op_scale;
      if (len > 1.0) dir /= len;
    } else {
      // Critical point that is not the maximum: probe finite rotations.
      double best = cur.overlap;
      RVector best_t = RVector::Zero(d);
      for (Eigen::Index j = 0; j < d; ++j) {
        const double norm2 = mats[static_cast<std::size_t>(j)].operatorNorm();
        for (int k = 1; k <= 8; ++k) {
          RVector t = RVector::Zero(d);
          t[j] = k * M_PI / (4.0 * norm2);
          const double value = re_inner(step_matrix(t) * cur.w, v0);
          if (value > best + tiny) {
            best = value;
            best_t = t;
          }
        }
      }
      if (best_t.norm() == 0.0) {
        throw DegeneratePointError(
            "solve_unitary_gauge_point: stuck at a critical point with negative overlap");
      }
      u = step_matrix(best_t) * u;
      cur = probe(u);
      continue;
    }

    const double slope = grad.dot(dir);
    double t = 1.0;
    bool accepted = false;
    for (int ls = 0; ls < 60; ++ls) {
      const CMatrix trial_u = step_matrix(t * dir) * u;
      const Probe trial = probe(trial_u);
      if (trial.overlap >= cur.overlap + 1e-4 * t * slope ||
          (newton && trial.defect < cur.defect)) {
        u = trial_u;
        cur = trial;
        accepted = true;
        break;
      }
      t *= 0.5;
    }
    if (!accepted) {
      throw SolverError(
          fmt::format("solve_unitary_gauge_point: line search failed (Goldstone defect {:.3e})",
                      cur.defect),
          cur.w, cur.defect);
    }
  }
  throw SolverError(
      fmt::format("solve_unitary_gauge_point: no convergence in {} iterations (Goldstone defect "
                  "{:.3e})",
                  opts.max_iter, cur.defect),
      cur.w, cur.defect);
}

UnitaryGaugeField apply_unitary_gauge_field(const GeneratorSet& gs, const CVector& v0,
                                            const SpectrumResult& spec,
                                            const std::vector<CVector>& field,
                                            const UnitaryGaugeOptions& opts) {
  UnitaryGaugeField out;
  out.sigma.reserve(field.size());
  out.transformed.reserve(field.size());
  for (std::size_t site = 0; site < field.size(); ++site) {
    if (field[site].norm() == 0.0) {
      throw PreconditionError(fmt::format("unitary gauge: field vanishes at site {}", site));
    }
  }
  std::optional<CMatrix> warm;
  for (std::size_t site = 0; site < field.size(); ++site) {
    try {
      UnitaryGaugeSolution sol = solve_unitary_gauge_point(gs, v0, spec, field[site], opts, warm);
      out.max_defect = std::max(out.max_defect, sol.goldstone_defect);
      warm = sol.u;
      out.sigma.push_back(std::move(sol.u));
      out.transformed.push_back(std::move(sol.rotated));
    } catch (const Error& e) {
      throw Error(fmt::format("unitary gauge failed at site {}: {}", site, e.what()));
    }
  }
  return out;
}

}  // namespace ssb
