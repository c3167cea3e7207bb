#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ssb/types.hpp"

namespace ssb {

inline constexpr double kTolAlg = 1e-10;

/// Metadata for one simple or U(1) factor of the gauge algebra. Couplings are
/// already folded into the generator matrices; this is informational only.
struct FactorLabel {
  std::string name;
  std::string kind;  // "u1" or "simple"
  double coupling = 1.0;
  std::vector<int> generators;

  bool operator==(const FactorLabel&) const = default;
};

/// Coordinates of a Lie algebra element in the generator basis. The basis is
/// orthonormal for the invariant scalar product by convention, so the scalar
/// product of two elements is the Euclidean product of their coefficients.
struct AlgebraElement {
  RVector coeffs;

  AlgebraElement() = default;
  explicit AlgebraElement(RVector c) : coeffs(std::move(c)) {}
  static AlgebraElement zero(Eigen::Index r) { return AlgebraElement(RVector::Zero(r)); }
  static AlgebraElement basis(Eigen::Index r, Eigen::Index i) {
    return AlgebraElement(RVector::Unit(r, i));
  }

  Eigen::Index size() const { return coeffs.size(); }
  double dot(const AlgebraElement& other) const { return coeffs.dot(other.coeffs); }
  double norm() const { return coeffs.norm(); }
};

/// The gauge Lie algebra, concretely: r skew-Hermitian n x n matrices giving
/// the action of the orthonormal basis on the multiplet space C^n.
class GeneratorSet {
 public:
  /// Throws StructuralError when the list is empty or matrices are not n x n.
  explicit GeneratorSet(std::vector<CMatrix> gens, std::vector<FactorLabel> factors = {});

  Eigen::Index n() const { return n_; }
  Eigen::Index r() const { return static_cast<Eigen::Index>(gens_.size()); }
  const CMatrix& gen(Eigen::Index i) const { return gens_.at(static_cast<std::size_t>(i)); }
  const std::vector<CMatrix>& gens() const { return gens_; }
  const std::vector<FactorLabel>& factors() const { return factors_; }

  /// sum_i coeffs_i * gens[i]
  CMatrix matrix(const AlgebraElement& x) const;

  /// Coefficients of the real-linear projection of `m` onto span{gens}, and
  /// the Frobenius norm of what is left over.
  struct Projection {
    AlgebraElement element;
    double defect = 0.0;
  };
  Projection project(const CMatrix& m) const;

  /// [X, Y] expressed in the generator basis via the structure constants.
  AlgebraElement bracket(const AlgebraElement& x, const AlgebraElement& y) const;

  /// structure_constant(i, j)[k] = c_ij^k with [b_i, b_j] = sum_k c_ij^k b_k.
  const RVector& structure_constant(Eigen::Index i, Eigen::Index j) const;

  bool operator==(const GeneratorSet& other) const;

 private:
  void build_projector();
  RVector coefficients(const RVector& flat) const;

  Eigen::Index n_ = 0;
  std::vector<CMatrix> gens_;
  std::vector<FactorLabel> factors_;
  // Realified generators as columns (2 n^2 x r) and its pseudo-inverse.
  RMatrix flat_;
  RMatrix flat_pinv_;
  // Mutually orthogonal generators are projected by exact division.
  bool orthogonal_ = false;
  RVector gram_diag_;
  std::vector<RVector> structure_;
  double closure_defect_ = 0.0;

  friend struct ValidationReport validate_generators(const GeneratorSet&, double);
};

struct ValidationReport {
  double skew_defect = 0.0;     // max_i ||g_i + g_i^H||_F
  double closure_defect = 0.0;  // max_ij distance of [g_i, g_j] from span{g_k}
  double tol = kTolAlg;
  bool passed = false;
};

ValidationReport validate_generators(const GeneratorSet& gs, double tol = kTolAlg);

/// (sum_i X_i g_i) v. Throws StructuralError on mismatched sizes.
CVector act(const GeneratorSet& gs, const AlgebraElement& x, const CVector& v);

/// exp(sum_i X_i g_i) by scaling and squaring with a Taylor kernel.
CMatrix exponentiate(const GeneratorSet& gs, const AlgebraElement& x);

/// Matrix exponential of an arbitrary square complex matrix.
CMatrix expm(const CMatrix& a);

/// Interleaved realification (Re v1, Im v1, Re v2, Im v2, ...). This is an
/// isometry from (C^n, Re<.,.>) onto Euclidean R^{2n}.
RVector realify(const CVector& v);
CVector unrealify(const RVector& x);

/// The complex-linear map m as a real 2n x 2n matrix in the interleaved layout.
RMatrix realify_matrix(const CMatrix& m);
RMatrix real_action_matrix(const GeneratorSet& gs, Eigen::Index i);

/// Deterministic normal(0, scale^2) coefficients.
AlgebraElement random_algebra_element(const GeneratorSet& gs, std::uint64_t seed, double scale,
                                      std::uint64_t stream = 0);

/// Matrix C with U g_j U^H = sum_i C_ij g_i (adjoint action on coefficients).
RMatrix adjoint_matrix(const GeneratorSet& gs, const CMatrix& u);

/// Spin-j irreducible representation of su(2) on C^dim with generators
/// coupling * i * J_l (l = 1, 2, 3), J_l the standard Hermitian spin matrices.
GeneratorSet su2_irrep(int dim, double coupling = 1.0);

}  // namespace ssb
