#pragma once

#include <array>
#include <string>
#include <vector>

#include "ssb/higgsmodel.hpp"

namespace ssb {

/// Action of the gauge algebra basis on one multiplet space.
struct Representation {
  std::string name;
  Eigen::Index dim = 0;
  std::vector<CMatrix> gens;

  Eigen::Index r() const { return static_cast<Eigen::Index>(gens.size()); }
  bool operator==(const Representation& other) const;
};

/// Throws StructuralError on wrong shapes, PreconditionError when a
/// generator is not skew-Hermitian to `tol`.
void validate_representation(const Representation& rep, double tol = kTolAlg);

struct IntertwinerBasis {
  std::vector<CMatrix> basis;  // dim_L x dim_R, orthonormal in the Frobenius product
  RVector singular_values;     // of the stacked commutation system, descending
};

/// Null space of K -> (L_i K - K R_i)_i, singular values below 1e-8 sigma_max
/// counted as zero.
IntertwinerBasis intertwiner_basis(const Representation& left, const Representation& right,
                                   double rel_tol = 1e-8);
bool mass_form_exists(const Representation& left, const Representation& right);

/// A complex trilinear form on V_A x V_B x V_C. A conjugate slot takes the
/// conjugated vector, so tau(a, b, c) = sum T[i][j][k] a'_i b'_j c'_k with
/// a'_i = conj(a_i) when slot A is conjugate.
struct TripleProduct {
  std::array<Eigen::Index, 3> dims{0, 0, 0};
  std::array<bool, 3> conjugate{false, false, false};
  std::vector<Complex> tensor;  // row-major (i, j, k)

  static TripleProduct zero(std::array<Eigen::Index, 3> dims, std::array<bool, 3> conjugate = {});
  Complex& at(Eigen::Index i, Eigen::Index j, Eigen::Index k);
  Complex at(Eigen::Index i, Eigen::Index j, Eigen::Index k) const;
  bool operator==(const TripleProduct&) const = default;
};

/// max over generators of the Frobenius norm of the summed infinitesimal
/// action on the tensor. A conjugate slot is acted on by conj(X).
double triple_invariance_defect(const TripleProduct& tau, const Representation& a,
                                const Representation& b, const Representation& c);

Complex evaluate(const TripleProduct& tau, const CVector& a, const CVector& b, const CVector& c);

/// delta_ij on (conj E_L, Phi), one e_R slot.
TripleProduct electroweak_yukawa_tensor();

struct FermionMasses {
  /// One entry per component of the first fermion slot: g_Y times the norm of
  /// the bilinear coefficients of that row after Phi -> v0.
  std::vector<double> rows;
  std::string warning;
};

/// `higgs_slot` selects which slot receives v0; the remaining two are the
/// fermions, rows indexing the first of them.
FermionMasses fermion_mass_after_breaking(const TripleProduct& tau, const CVector& v0, double g_y,
                                          int higgs_slot = 1);
/// Same, warning when v0 is not a vacuum of the model.
FermionMasses fermion_mass_after_breaking(const TripleProduct& tau, const HiggsModel& model,
                                          const CVector& v0, double g_y, int higgs_slot = 1);

}  // namespace ssb
