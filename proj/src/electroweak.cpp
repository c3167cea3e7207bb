#include "ssb/electroweak.hpp"

#include <cmath>

#include <fmt/format.h>

namespace ssb::electroweak {

namespace {

const Complex kI(0.0, 1.0);

std::array<CMatrix, 3> pauli() {
  CMatrix s1(2, 2), s2(2, 2), s3(2, 2);
  s1 << 0.0, 1.0, 1.0, 0.0;
  s2 << 0.0, -kI, kI, 0.0;
  s3 << 1.0, 0.0, 0.0, -1.0;
  return {s1, s2, s3};
}

std::vector<CMatrix> doublet_gens(const Params& p, double hypercharge_sign) {
  const auto s = pauli();
  std::vector<CMatrix> gens;
  for (const auto& m : s) gens.push_back(p.g * kI * m / 2.0);
  gens.push_back(hypercharge_sign * p.gp * kI / 2.0 * CMatrix::Identity(2, 2));
  return gens;
}

}  // namespace

void check_params(const Params& p) {
  if (!(p.g > 0.0) || !(p.gp > 0.0) || !(p.mu > 0.0) || !(p.lambda > 0.0)) {
    throw PreconditionError(fmt::format(
        "electroweak parameters must be positive (g = {}, g' = {}, mu = {}, lambda = {})", p.g, p.gp,
        p.mu, p.lambda));
  }
}

GeneratorSet generators(const Params& p) {
  check_params(p);
  std::vector<FactorLabel> factors{
      FactorLabel{"su2", "simple", p.g, {0, 1, 2}},
      FactorLabel{"u1", "u1", p.gp, {3}},
  };
  return GeneratorSet(doublet_gens(p, 1.0), std::move(factors));
}

double vacuum_norm(const Params& p) { return std::sqrt(p.mu / (2.0 * p.lambda)); }

HiggsModel build_model(const Params& p) {
  check_params(p);
  CVector v0(2);
  v0 << 0.0, vacuum_norm(p);
  return HiggsModel{generators(p), QuarticPotential(p.mu, p.lambda), v0};
}

double weinberg_angle(const Params& p) { return std::atan(p.gp / p.g); }

MassPredictions boson_mass_predictions(const Params& p) {
  check_params(p);
  const double v = vacuum_norm(p);
  return MassPredictions{v * p.g / std::sqrt(2.0), v * std::hypot(p.g, p.gp) / std::sqrt(2.0), 0.0,
                         std::sqrt(p.mu)};
}

RMatrix mass_form_closed_form(double g, double gp, double v_norm) {
  RMatrix m = RMatrix::Zero(4, 4);
  m(0, 0) = g * g;
  m(1, 1) = g * g;
  m(2, 2) = g * g;
  m(2, 3) = -g * gp;
  m(3, 2) = -g * gp;
  m(3, 3) = gp * gp;
  return v_norm * v_norm / 4.0 * m;
}

std::array<AlgebraElement, 4> rotated_basis(const Params& p) {
  const double n = std::hypot(p.g, p.gp);
  RVector a3 = RVector::Zero(4);
  RVector a4 = RVector::Zero(4);
  a3[2] = p.g / n;
  a3[3] = -p.gp / n;
  a4[2] = p.gp / n;
  a4[3] = p.g / n;
  return {AlgebraElement::basis(4, 0), AlgebraElement::basis(4, 1), AlgebraElement(a3),
          AlgebraElement(a4)};
}

Representation left_doublet(const Params& p) { return Representation{"E_L", 2, doublet_gens(p, -1.0)}; }

Representation higgs_doublet(const Params& p) { return Representation{"Phi", 2, doublet_gens(p, 1.0)}; }

Representation right_singlet(const Params& p) {
  std::vector<CMatrix> gens(3, CMatrix::Zero(1, 1));
  gens.push_back(CMatrix::Constant(1, 1, -p.gp * kI));
  return Representation{"e_R", 1, std::move(gens)};
}

ChargeOperators charge_operators(const Representation& rep, const Params& p) {
  check_params(p);
  if (rep.r() != 4) {
    throw StructuralError(fmt::format("charge_operators: representation '{}' has {} generators, expected 4",
                                      rep.name, rep.r()));
  }
  validate_representation(rep);
  ChargeOperators c;
  c.t1 = rep.gens[0] / (kI * p.g);
  c.t2 = rep.gens[1] / (kI * p.g);
  c.t3 = rep.gens[2] / (kI * p.g);
  c.y = 2.0 * rep.gens[3] / (kI * p.gp);
  c.q = c.t3 + c.y / 2.0;
  c.t_plus = c.t1 + kI * c.t2;
  c.t_minus = c.t1 - kI * c.t2;
  const double comm = (c.t3 * c.y - c.y * c.t3).norm();
  if (comm > 1e-12) {
    throw InvariantError(fmt::format(
        "charge_operators: T3 and Y do not commute (defect {:.3e}); not an SU(2) x U(1) representation",
        comm));
  }
  // A generic combination separates the joint eigenspaces.
  const CMatrix mix = c.t3 + (1.0 / M_PI) * c.y;
  Eigen::SelfAdjointEigenSolver<CMatrix> eig(0.5 * (mix + mix.adjoint()));
  c.eigenbasis = eig.eigenvectors();
  const Eigen::Index n = rep.dim;
  c.t3_values.resize(n);
  c.y_values.resize(n);
  c.q_values.resize(n);
  for (Eigen::Index k = 0; k < n; ++k) {
    const CVector v = c.eigenbasis.col(k);
    c.t3_values[k] = v.dot(c.t3 * v).real();
    c.y_values[k] = v.dot(c.y * v).real();
    c.q_values[k] = v.dot(c.q * v).real();
  }
  return c;
}

GaugeComponents decompose_gauge_field(const RVector& a, const Params& p) {
  if (a.size() != 4) {
    throw StructuralError(fmt::format("decompose_gauge_field: expected 4 coefficients, got {}", a.size()));
  }
  const double th = weinberg_angle(p);
  const double r2 = std::sqrt(2.0);
  GaugeComponents c;
  c.w_plus = Complex(a[0], a[1]) / r2;
  c.w_minus = Complex(a[0], -a[1]) / r2;
  c.z0 = std::cos(th) * a[2] - std::sin(th) * a[3];
  c.photon = std::sin(th) * a[2] + std::cos(th) * a[3];
  return c;
}

RVector recompose_gauge_field(const GaugeComponents& c, const Params& p) {
  const double th = weinberg_angle(p);
  const double r2 = std::sqrt(2.0);
  RVector a(4);
  a[0] = ((c.w_plus + c.w_minus) / r2).real();
  a[1] = ((c.w_plus - c.w_minus) / (r2 * kI)).real();
  a[2] = std::cos(th) * c.z0 + std::sin(th) * c.photon;
  a[3] = -std::sin(th) * c.z0 + std::cos(th) * c.photon;
  return a;
}

double elementary_charge(const Params& p) { return p.g * p.gp / std::hypot(p.g, p.gp); }

}  // namespace ssb::electroweak
