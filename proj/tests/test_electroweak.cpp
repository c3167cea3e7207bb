#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "ssb/electroweak.hpp"
#include "ssb/linalg.hpp"
#include "ssb/random.hpp"

namespace ssb::electroweak {
namespace {

RMatrix columns(const std::vector<AlgebraElement>& xs) {
  RMatrix m(4, static_cast<Eigen::Index>(xs.size()));
  for (std::size_t k = 0; k < xs.size(); ++k) m.col(static_cast<Eigen::Index>(k)) = xs[k].coeffs;
  return m;
}

TEST(Params, MustBePositive) {
  EXPECT_THROW(check_params({0.0, 1.0, 2.0, 1.0}), PreconditionError);
  EXPECT_THROW(check_params({2.0, -1.0, 2.0, 1.0}), PreconditionError);
  EXPECT_THROW(build_model({2.0, 1.0, 2.0, 0.0}), PreconditionError);
}

TEST(BuildModel, GeneratorsVacuumAndCounts) {
  const Params p;
  const HiggsModel m = build_model(p);
  const ValidationReport v = validate_generators(m.gens);
  EXPECT_EQ(v.skew_defect, 0.0);
  EXPECT_EQ(v.closure_defect, 0.0);
  ASSERT_TRUE(m.vacuum.has_value());
  EXPECT_EQ((*m.vacuum)[0], Complex(0.0));
  EXPECT_DOUBLE_EQ((*m.vacuum)[1].real(), 1.0);
  EXPECT_DOUBLE_EQ(vacuum_norm({2.0, 1.0, 8.0, 1.0}), 2.0);
  const SpectrumResult s = compute_spectrum(m, *m.vacuum);
  EXPECT_EQ(s.d, 3);
  EXPECT_EQ(s.higgs_masses.size(), 1u);
}

TEST(WeinbergAngle, Values) {
  EXPECT_DOUBLE_EQ(weinberg_angle({1.3, 1.3, 2.0, 1.0}), std::numbers::pi / 4);
  EXPECT_DOUBLE_EQ(weinberg_angle({}), std::atan(0.5));
  const MassPredictions m = boson_mass_predictions({});
  EXPECT_NEAR(std::cos(weinberg_angle({})), m.m_w / m.m_z, 1e-12);
}

TEST(MassPredictions, ReferenceParameters) {
  const MassPredictions m = boson_mass_predictions({});
  EXPECT_DOUBLE_EQ(m.m_w, std::sqrt(2.0));
  EXPECT_DOUBLE_EQ(m.m_z, std::sqrt(2.5));
  EXPECT_EQ(m.m_gamma, 0.0);
  EXPECT_DOUBLE_EQ(m.m_h, std::sqrt(2.0));
}

TEST(MassPredictions, AgreeWithNumericalSpectrum) {
  for (const Params& p : {Params{}, Params{0.65, 0.35, 3.0, 0.25}, Params{1.0, 3.0, 0.5, 2.0}}) {
    const HiggsModel m = build_model(p);
    const SpectrumResult s = compute_spectrum(m, *m.vacuum);
    const MassPredictions pred = boson_mass_predictions(p);
    std::vector<double> expected = {pred.m_w, pred.m_w, pred.m_z, 0.0};
    std::sort(expected.begin(), expected.end(), std::greater<>());
    for (std::size_t i = 0; i < 4; ++i) EXPECT_NEAR(s.boson_masses[i], expected[i], 1e-9);
    EXPECT_NEAR(s.higgs_masses[0], pred.m_h, 1e-9);
  }
}

TEST(MassPredictions, LimitsAndScaling) {
  const MassPredictions small = boson_mass_predictions({2.0, 1e-8, 2.0, 1.0});
  EXPECT_NEAR(small.m_z, small.m_w, 1e-12);
  EXPECT_NEAR(weinberg_angle({2.0, 1e-8, 2.0, 1.0}), 0.0, 1e-8);
  // mu -> 4 mu doubles |v0| and the gauge boson masses.
  const MassPredictions a = boson_mass_predictions({2.0, 1.0, 2.0, 1.0});
  const MassPredictions b = boson_mass_predictions({2.0, 1.0, 8.0, 1.0});
  EXPECT_NEAR(b.m_w, 2.0 * a.m_w, 1e-14);
  EXPECT_NEAR(b.m_z, 2.0 * a.m_z, 1e-14);
}

TEST(MassForm, ClosedFormForRandomParameters) {
  Rng rng(2024);
  for (int k = 0; k < 20; ++k) {
    const double g = rng.uniform(0.1, 3.0), gp = rng.uniform(0.1, 3.0), vn = rng.uniform(0.1, 3.0);
    CVector v0(2);
    v0 << 0.0, vn;
    const RMatrix mf = mass_form(generators({g, gp, 2.0, 1.0}), v0).matrix;
    EXPECT_LT((mf - mass_form_closed_form(g, gp, vn)).cwiseAbs().maxCoeff(), 1e-12);
  }
}

TEST(RotatedBasis, SplitsBrokenAndUnbroken) {
  const Params p;
  const HiggsModel m = build_model(p);
  const SpectrumResult s = compute_spectrum(m, *m.vacuum);
  const auto alpha = rotated_basis(p);
  EXPECT_LT(act(m.gens, alpha[3], *m.vacuum).norm(), 1e-12);
  EXPECT_LT(linalg::subspace_angle(columns(s.unbroken_basis), columns({alpha[3]})), 1e-8);
  EXPECT_LT(linalg::subspace_angle(columns(s.broken_basis), columns({alpha[0], alpha[1], alpha[2]})), 1e-8);
  // alpha is orthonormal and diagonalises the mass form.
  const RMatrix a = columns({alpha[0], alpha[1], alpha[2], alpha[3]});
  EXPECT_LT((a.transpose() * a - RMatrix::Identity(4, 4)).norm(), 1e-14);
  const RMatrix d = a.transpose() * s.mass.matrix * a;
  EXPECT_LT((d - RMatrix(d.diagonal().asDiagonal())).norm(), 1e-14);
}

TEST(ChargeOperators, HiggsDoublet) {
  const ChargeOperators c = charge_operators(higgs_doublet({}), {});
  CMatrix t3 = CMatrix::Zero(2, 2);
  t3(0, 0) = 0.5;
  t3(1, 1) = -0.5;
  EXPECT_LT((c.t3 - t3).norm(), 1e-15);
  EXPECT_LT((c.y - CMatrix::Identity(2, 2)).norm(), 1e-15);
  CMatrix q = CMatrix::Zero(2, 2);
  q(0, 0) = 1.0;
  EXPECT_LT((c.q - q).norm(), 1e-15);
  EXPECT_LT((c.q - c.t3 - 0.5 * c.y).norm(), 1e-15);
  EXPECT_LT((c.q - c.q.adjoint()).norm(), 1e-15);
  // Q annihilates the vacuum direction.
  EXPECT_LT((c.q * *build_model({}).vacuum).norm(), 1e-15);
  // Ladder operators: T+ raises (0,1) to (1,0).
  EXPECT_NEAR(std::abs(c.t_plus(0, 1) - 1.0), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(c.t_minus(1, 0) - 1.0), 0.0, 1e-15);
  // Common eigenbasis.
  for (Eigen::Index k = 0; k < 2; ++k) {
    const CVector e = c.eigenbasis.col(k);
    EXPECT_LT((c.q * e - c.q_values[k] * e).norm(), 1e-12);
    EXPECT_LT((c.t3 * e - c.t3_values[k] * e).norm(), 1e-12);
    EXPECT_LT((c.y * e - c.y_values[k] * e).norm(), 1e-12);
  }
}

TEST(ChargeOperators, SingletsAndTrivial) {
  const ChargeOperators e = charge_operators(right_singlet({}), {});
  EXPECT_NEAR(e.y(0, 0).real(), -2.0, 1e-15);
  EXPECT_NEAR(e.q(0, 0).real(), -1.0, 1e-15);
  const Representation trivial{"1", 1, std::vector<CMatrix>(4, CMatrix::Zero(1, 1))};
  const ChargeOperators t = charge_operators(trivial, {});
  EXPECT_EQ(t.q.norm(), 0.0);
  EXPECT_EQ(t.y.norm(), 0.0);
}

TEST(ChargeOperators, LeftDoubletCharges) {
  const ChargeOperators c = charge_operators(left_doublet({}), {});
  EXPECT_NEAR(c.q(0, 0).real(), 0.0, 1e-15);   // neutrino
  EXPECT_NEAR(c.q(1, 1).real(), -1.0, 1e-15);  // electron
}

TEST(ChargeOperators, NonCommutingIsRejected) {
  Representation bad = higgs_doublet({});
  bad.gens[3] = bad.gens[0];  // hypercharge along sigma_1 does not commute with T3
  EXPECT_THROW(charge_operators(bad, {}), InvariantError);
}

TEST(GaugeDecomposition, ExamplesAndRoundTrip) {
  const Params p;
  RVector a(4);
  a << 0.0, 0.0, 1.0, 0.0;
  const GaugeComponents c = decompose_gauge_field(a, p);
  EXPECT_NEAR(c.z0, 2.0 / std::sqrt(5.0), 1e-15);
  EXPECT_NEAR(c.photon, 1.0 / std::sqrt(5.0), 1e-15);
  const GaugeComponents z = decompose_gauge_field(RVector::Zero(4), p);
  EXPECT_EQ(z.w_plus, Complex(0.0));
  EXPECT_EQ(z.photon, 0.0);
  Rng rng(8);
  for (int k = 0; k < 20; ++k) {
    const RVector x = rng.normal_vector(4);
    const GaugeComponents d = decompose_gauge_field(x, p);
    EXPECT_LT((recompose_gauge_field(d, p) - x).cwiseAbs().maxCoeff(), 1e-14);
    EXPECT_NEAR(std::norm(d.w_plus) + std::norm(d.w_minus) + d.z0 * d.z0 + d.photon * d.photon, x.squaredNorm(),
                1e-13);
    EXPECT_NEAR(d.w_plus.real(), x[0] / std::sqrt(2.0), 1e-15);
    EXPECT_NEAR(d.w_plus.imag(), x[1] / std::sqrt(2.0), 1e-15);
  }
}

TEST(ElementaryCharge, Formulas) {
  EXPECT_NEAR(elementary_charge({}), 2.0 / std::sqrt(5.0), 1e-15);
  EXPECT_NEAR(elementary_charge({}), 2.0 * std::sin(weinberg_angle({})), 1e-14);
  EXPECT_NEAR(elementary_charge({1.7, 1.7, 2.0, 1.0}), 1.7 / std::sqrt(2.0), 1e-15);
  Rng rng(9);
  for (int k = 0; k < 50; ++k) {
    const Params p{rng.uniform(0.01, 5.0), rng.uniform(0.01, 5.0), 2.0, 1.0};
    EXPECT_LT(elementary_charge(p), std::min(p.g, p.gp));
  }
}

}  // namespace
}  // namespace ssb::electroweak
