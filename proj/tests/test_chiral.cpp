#include <cmath>

#include <gtest/gtest.h>

#include "ssb/chiral.hpp"
#include "ssb/electroweak.hpp"
#include "ssb/random.hpp"

namespace ssb {
namespace {

const Complex kI(0.0, 1.0);

Representation from(const GeneratorSet& gs, std::string name) {
  return Representation{std::move(name), gs.n(), gs.gens()};
}

Representation u1_charge(double q) { return Representation{"q", 1, {kI * q * CMatrix::Identity(1, 1)}}; }

Representation trivial(Eigen::Index r) {
  return Representation{"1", 1, std::vector<CMatrix>(static_cast<std::size_t>(r), CMatrix::Zero(1, 1))};
}

double commutation_residual(const Representation& l, const Representation& r, const CMatrix& k) {
  double out = 0.0;
  for (std::size_t i = 0; i < l.gens.size(); ++i) out = std::max(out, (l.gens[i] * k - k * r.gens[i]).norm());
  return out;
}

TEST(ValidateRepresentation, ShapesAndSkewness) {
  EXPECT_NO_THROW(validate_representation(electroweak::left_doublet({})));
  Representation bad{"bad", 2, {CMatrix::Identity(2, 2)}};
  EXPECT_THROW(validate_representation(bad), PreconditionError);
  Representation wrong{"wrong", 3, {CMatrix::Zero(2, 2)}};
  EXPECT_THROW(validate_representation(wrong), StructuralError);
}

TEST(Intertwiner, LeftDoubletVersusRightSingletIsZero) {
  const electroweak::Params p;
  EXPECT_TRUE(intertwiner_basis(electroweak::left_doublet(p), electroweak::right_singlet(p)).basis.empty());
  EXPECT_FALSE(mass_form_exists(electroweak::left_doublet(p), electroweak::right_singlet(p)));
}

TEST(Intertwiner, SchurForSu2Irreps) {
  for (int dim = 1; dim <= 4; ++dim) {
    const Representation rep = from(su2_irrep(dim), "irrep");
    const IntertwinerBasis b = intertwiner_basis(rep, rep);
    ASSERT_EQ(b.basis.size(), 1u) << dim;
    // The single intertwiner is a multiple of the identity, normalised with a positive entry.
    const CMatrix expected = CMatrix::Identity(dim, dim) / std::sqrt(static_cast<double>(dim));
    EXPECT_LT((b.basis[0] - expected).norm(), 1e-10) << dim;
    EXPECT_LT(commutation_residual(rep, rep, b.basis[0]), 1e-10);
  }
}

TEST(Intertwiner, TrivialVersusTrivial) {
  const IntertwinerBasis b = intertwiner_basis(trivial(2), trivial(2));
  ASSERT_EQ(b.basis.size(), 1u);
  EXPECT_NEAR(std::abs(b.basis[0](0, 0) - 1.0), 0.0, 1e-14);
}

TEST(Intertwiner, InequivalentU1Charges) {
  EXPECT_FALSE(mass_form_exists(u1_charge(1.0), u1_charge(2.0)));
  EXPECT_TRUE(mass_form_exists(u1_charge(1.5), u1_charge(1.5)));
}

TEST(Intertwiner, ReducibleRepresentationDimensionCounts) {
  // 2 (+) 1 against itself: intertwiners are block scalars, dimension 2.
  const GeneratorSet two = su2_irrep(2), one = su2_irrep(1);
  Representation sum{"2+1", 3, {}};
  for (Eigen::Index i = 0; i < 3; ++i) {
    CMatrix m = CMatrix::Zero(3, 3);
    m.topLeftCorner(2, 2) = two.gen(i);
    m(2, 2) = one.gen(i)(0, 0);
    sum.gens.push_back(m);
  }
  const IntertwinerBasis b = intertwiner_basis(sum, sum);
  EXPECT_EQ(b.basis.size(), 2u);
  for (const auto& k : b.basis) EXPECT_LT(commutation_residual(sum, sum, k), 1e-10);
}

TEST(Intertwiner, InvariantUnderUnitaryConjugation) {
  const Representation rep = from(su2_irrep(3), "3");
  Rng rng(4);
  CMatrix z(3, 3);
  for (Eigen::Index c = 0; c < 3; ++c) z.col(c) = rng.complex_normal_vector(3);
  const CMatrix w = Eigen::HouseholderQR<CMatrix>(z).householderQ();
  Representation conj{"3'", 3, {}};
  for (const auto& g : rep.gens) conj.gens.push_back(w * g * w.adjoint());
  const IntertwinerBasis b = intertwiner_basis(rep, conj);
  ASSERT_EQ(b.basis.size(), 1u);
  EXPECT_LT(commutation_residual(rep, conj, b.basis[0]), 1e-10);
}

TEST(Intertwiner, MismatchedAlgebraDimension) {
  EXPECT_THROW(intertwiner_basis(trivial(2), trivial(3)), StructuralError);
}

TEST(YukawaTensor, EntriesAndFlags) {
  const TripleProduct t = electroweak_yukawa_tensor();
  EXPECT_EQ(t.dims, (std::array<Eigen::Index, 3>{2, 2, 1}));
  EXPECT_EQ(t.conjugate, (std::array<bool, 3>{true, false, false}));
  EXPECT_EQ(t.at(0, 0, 0), Complex(1.0));
  EXPECT_EQ(t.at(1, 1, 0), Complex(1.0));
  EXPECT_EQ(t.at(0, 1, 0), Complex(0.0));
  EXPECT_EQ(t.at(1, 0, 0), Complex(0.0));
}

TEST(YukawaTensor, EvaluatesTheContraction) {
  const TripleProduct t = electroweak_yukawa_tensor();
  CVector e(2), phi(2), r(1);
  e << Complex(1.0, 2.0), Complex(-0.5, 0.3);
  phi << Complex(0.2, -1.0), Complex(0.7, 0.4);
  r << Complex(1.5, -0.5);
  const Complex expected = (std::conj(e[0]) * phi[0] + std::conj(e[1]) * phi[1]) * r[0];
  EXPECT_LT(std::abs(evaluate(t, e, phi, r) - expected), 1e-14);
}

TEST(TripleInvariance, ElectroweakIsInvariant) {
  const electroweak::Params p;
  const double defect = triple_invariance_defect(electroweak_yukawa_tensor(), electroweak::left_doublet(p),
                                                 electroweak::higgs_doublet(p), electroweak::right_singlet(p));
  EXPECT_LT(defect, 1e-12);
}

TEST(TripleInvariance, ZeroTensor) {
  const electroweak::Params p;
  const TripleProduct z = TripleProduct::zero({2, 2, 1}, {true, false, false});
  EXPECT_EQ(triple_invariance_defect(z, electroweak::left_doublet(p), electroweak::higgs_doublet(p),
                                     electroweak::right_singlet(p)),
            0.0);
}

TEST(TripleInvariance, WrongHyperchargeIsDetected) {
  const electroweak::Params p;
  Representation flipped = electroweak::right_singlet(p);
  flipped.gens[3] = kI * p.gp * CMatrix::Identity(1, 1);
  const double defect = triple_invariance_defect(electroweak_yukawa_tensor(), electroweak::left_doublet(p),
                                                 electroweak::higgs_doublet(p), flipped);
  EXPECT_GT(defect, 0.1 * p.gp);
}

TEST(TripleInvariance, ImpliesFiniteGroupInvariance) {
  const electroweak::Params p;
  const GeneratorSet gs = electroweak::generators(p);
  const Representation a = electroweak::left_doublet(p), b = electroweak::higgs_doublet(p),
                       c = electroweak::right_singlet(p);
  const TripleProduct t = electroweak_yukawa_tensor();
  auto group = [](const Representation& rep, const AlgebraElement& x) {
    CMatrix m = CMatrix::Zero(rep.dim, rep.dim);
    for (Eigen::Index i = 0; i < x.size(); ++i) m += x.coeffs[i] * rep.gens[static_cast<std::size_t>(i)];
    return expm(m);
  };
  for (int k = 0; k < 50; ++k) {
    const AlgebraElement x = random_algebra_element(gs, 19, 1.0, static_cast<std::uint64_t>(k));
    Rng rng(20, static_cast<std::uint64_t>(k));
    const CVector va = rng.complex_normal_vector(2), vb = rng.complex_normal_vector(2), vc = rng.complex_normal_vector(1);
    const Complex before = evaluate(t, va, vb, vc);
    const Complex after = evaluate(t, group(a, x) * va, group(b, x) * vb, group(c, x) * vc);
    EXPECT_LT(std::abs(after - before), 1e-8);
  }
}

TEST(TripleInvariance, ShapeMismatch) {
  const electroweak::Params p;
  EXPECT_THROW(triple_invariance_defect(electroweak_yukawa_tensor(), electroweak::right_singlet(p),
                                        electroweak::higgs_doublet(p), electroweak::right_singlet(p)),
               StructuralError);
}

TEST(FermionMasses, ElectronAndNeutrino) {
  CVector v0(2);
  v0 << 0.0, 1.0;
  const FermionMasses m = fermion_mass_after_breaking(electroweak_yukawa_tensor(), v0, 0.5);
  ASSERT_EQ(m.rows.size(), 2u);
  EXPECT_EQ(m.rows[0], 0.0);
  EXPECT_NEAR(m.rows[1], 0.5, 1e-15);
  EXPECT_EQ(fermion_mass_after_breaking(electroweak_yukawa_tensor(), v0, 0.0).rows[1], 0.0);
}

TEST(FermionMasses, FollowTheVacuumDirection) {
  CVector v0(2);
  v0 << 1.7, 0.0;
  const FermionMasses m = fermion_mass_after_breaking(electroweak_yukawa_tensor(), v0, 0.5);
  EXPECT_NEAR(m.rows[0], 1.7 * 0.5, 1e-15);
  EXPECT_EQ(m.rows[1], 0.0);
}

TEST(FermionMasses, WarnsOffVacuum) {
  const HiggsModel model = electroweak::build_model({});
  CVector v(2);
  v << 0.0, 0.5;
  EXPECT_FALSE(fermion_mass_after_breaking(electroweak_yukawa_tensor(), model, v, 0.5).warning.empty());
  EXPECT_TRUE(fermion_mass_after_breaking(electroweak_yukawa_tensor(), model, *model.vacuum, 0.5).warning.empty());
}

}  // namespace
}  // namespace ssb
