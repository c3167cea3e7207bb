#include <cmath>

#include <gtest/gtest.h>

#include "ssb/electroweak.hpp"
#include "ssb/random.hpp"
#include "ssb/unitarygauge.hpp"

namespace ssb {
namespace {

CVector vec2(Complex a, Complex b) {
  CVector v(2);
  v << a, b;
  return v;
}

struct Fixture {
  HiggsModel model = electroweak::build_model({});
  CVector v0 = *model.vacuum;
  SpectrumResult spec = compute_spectrum(model, v0);
};

TEST(FiberDerivative, CoefficientAlongBeta2) {
  // s_i = Re<(c, 0), b_i (0, 1)>; only b_2 = i sigma_2 maps (0,1) to (1, 0).
  const Fixture f;
  const RVector s = fiber_derivative(f.model.gens, f.v0, vec2(0.7, 0.0));
  EXPECT_NEAR(s[0], 0.0, 1e-15);
  EXPECT_NEAR(s[1], 0.7, 1e-15);
  EXPECT_NEAR(s[2], 0.0, 1e-15);
  EXPECT_NEAR(s[3], 0.0, 1e-15);
}

TEST(GoldstoneCheck, VacuumAndPerturbations) {
  const Fixture f;
  EXPECT_TRUE(goldstone_vanish_check(f.spec, f.v0, f.v0).vanishes);
  const GoldstoneCheck c = goldstone_vanish_check(f.spec, f.v0, f.v0 + unrealify(RVector::Unit(4, 0)));
  EXPECT_FALSE(c.vanishes);
  EXPECT_NEAR(c.defect, std::sqrt(2.0), 1e-12);
  // A pure Higgs shift keeps the Goldstone components zero.
  EXPECT_TRUE(goldstone_vanish_check(f.spec, f.v0, 2.5 * f.v0).vanishes);
}

TEST(BrokenHessian, NegativeDefiniteAtUnitaryPoint) {
  const Fixture f;
  const BrokenHessianMatrix b = broken_hessian(f.model.gens, f.v0, vec2(0.0, 1.3), CMatrix::Identity(2, 2), f.spec.broken_basis);
  EXPECT_LT(b.asymmetry, 1e-14);
  Eigen::SelfAdjointEigenSolver<RMatrix> eig(b.matrix);
  EXPECT_LT(eig.eigenvalues().maxCoeff(), 0.0);
}

TEST(SolveUnitaryGauge, RotatesFirstComponentIntoSecond) {
  const Fixture f;
  const UnitaryGaugeSolution s = solve_unitary_gauge_point(f.model.gens, f.v0, f.spec, vec2(0.8, 0.0));
  EXPECT_LT((s.rotated - vec2(0.0, 0.8)).norm(), 1e-9);
  EXPECT_LE(s.goldstone_defect, kTolUg);
  EXPECT_LT((s.u.adjoint() * s.u - CMatrix::Identity(2, 2)).norm(), 1e-12);
  EXPECT_LT((s.u * vec2(0.8, 0.0) - s.rotated).norm(), 1e-12);
}

TEST(SolveUnitaryGauge, RandomPointsLandInUnitaryGauge) {
  const Fixture f;
  for (int k = 0; k < 100; ++k) {
    Rng rng(77, static_cast<std::uint64_t>(k));
    const CVector phi = rng.complex_normal_vector(2);
    const UnitaryGaugeSolution s = solve_unitary_gauge_point(f.model.gens, f.v0, f.spec, phi);
    EXPECT_LE(s.goldstone_defect, kTolUg) << k;
    EXPECT_LT(goldstone_vanish_check(f.spec, f.v0, s.rotated).defect, 1e-9) << k;
    EXPECT_NEAR(s.rotated.norm(), phi.norm(), 1e-12 * phi.norm()) << k;
    // The group element lies in the represented group: det 1 times a U(1) phase is unitary.
    EXPECT_LT((s.u.adjoint() * s.u - CMatrix::Identity(2, 2)).norm(), 1e-12) << k;
  }
}

TEST(SolveUnitaryGauge, ZeroFieldIsRejected) {
  const Fixture f;
  EXPECT_THROW(solve_unitary_gauge_point(f.model.gens, f.v0, f.spec, vec2(0.0, 0.0)), PreconditionError);
}

TEST(ApplyUnitaryGaugeField, NamesTheFailingSite) {
  const Fixture f;
  std::vector<CVector> field = {vec2(0.3, 0.4), vec2(0.0, 0.0), vec2(0.1, 1.0)};
  try {
    apply_unitary_gauge_field(f.model.gens, f.v0, f.spec, field);
    FAIL() << "expected PreconditionError";
  } catch (const PreconditionError& e) {
    EXPECT_NE(std::string(e.what()).find("site 1"), std::string::npos) << e.what();
  }
}

TEST(ApplyUnitaryGaugeField, WarmStartedSweep) {
  const Fixture f;
  std::vector<CVector> field;
  for (int k = 0; k < 30; ++k) {
    const double t = 0.2 * k;
    field.push_back(vec2(Complex(0.5 * std::cos(t), 0.2), Complex(1.0, 0.3 * std::sin(t))));
  }
  const UnitaryGaugeField out = apply_unitary_gauge_field(f.model.gens, f.v0, f.spec, field);
  ASSERT_EQ(out.transformed.size(), field.size());
  EXPECT_LE(out.max_defect, kTolUg);
  for (std::size_t k = 0; k < field.size(); ++k)
    EXPECT_LT((out.sigma[k] * field[k] - out.transformed[k]).norm(), 1e-12);
}

}  // namespace
}  // namespace ssb
