#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ssb/higgsmodel.hpp"
#include "ssb/liecore.hpp"

namespace ssb {

/// Relative singular-value cutoff for every rank decision in this module.
inline constexpr double kTolRank = 1e-8;

/// m(A, B) = Re<A v0, B v0> in the generator basis.
struct MassForm {
  RMatrix matrix;
};

MassForm mass_form(const GeneratorSet& gs, const CVector& v0);

/// The linear map X -> realify(X v0) as a 2n x r real matrix.
RMatrix orbit_map(const GeneratorSet& gs, const CVector& v0);

struct StabilizerSplit {
  std::vector<AlgebraElement> unbroken;  // spans the stabilizer subalgebra h
  std::vector<AlgebraElement> broken;    // spans its orthogonal complement
  RVector singular_values;
};

/// Kernel / co-kernel of X -> X v0. A zero vacuum leaves everything unbroken.
StabilizerSplit stabilizer_split(const GeneratorSet& gs, const CVector& v0,
                                 double tol_rank = kTolRank);

struct BosonSpectrum {
  /// Diagonalising basis: d broken generators (descending mass), then the
  /// unbroken ones.
  std::vector<AlgebraElement> basis;
  std::vector<double> masses;
  int d = 0;
};

/// Diagonalise the mass form on the broken subspace; M_i = sqrt(2 m(a_i, a_i)).
/// Throws InvariantError if the form has an eigenvalue below -1e-10.
BosonSpectrum boson_spectrum(const MassForm& mf, const StabilizerSplit& split);

struct OrbitSplit {
  RMatrix e;  // 2n x d, orthonormal basis of the orbit tangent space W
  RMatrix f;  // 2n x (2n - d), Hessian eigenbasis of W^perp
  RVector hessian_eigenvalues;  // eigenvalue on each f_j
  std::vector<double> higgs_masses;  // sqrt(eigenvalue / 2)
  double tangent_hessian_defect = 0.0;  // ||e^T H e||, zero at a true vacuum
};

/// Orbit / normal split at a vacuum. Throws InvariantError when the Hessian is
/// negative on W^perp (not a minimum) or nonzero on W (inconsistent vacuum).
OrbitSplit orbit_split(const GeneratorSet& gs, const CVector& v0, const RMatrix& hessian,
                       double tol_rank = kTolRank);
/// Same decomposition without the vacuum checks; masses of negative modes are
/// reported as 0 and the raw eigenvalues are kept.
OrbitSplit orbit_split_unchecked(const GeneratorSet& gs, const CVector& v0,
                                 const RMatrix& hessian, double tol_rank = kTolRank);

struct SpectrumResult {
  CVector vacuum;
  std::vector<AlgebraElement> unbroken_basis;
  std::vector<AlgebraElement> broken_basis;
  std::vector<double> boson_masses;  // d broken masses, then r - d zeros
  int d = 0;
  RMatrix orbit_basis;  // e
  RMatrix ortho_basis;  // f
  RVector hessian_eigenvalues;
  std::vector<double> higgs_masses;
  MassForm mass;
};

/// Full spectrum at a verified vacuum of the model.
SpectrumResult compute_spectrum(const HiggsModel& model, const CVector& v0);

struct ShiftDecomposition {
  RVector xi;   // Goldstone coefficients
  RVector eta;  // Higgs coefficients
};

/// phi - v0 = (1/sqrt 2)(sum xi_i e_i + sum eta_j f_j).
ShiftDecomposition decompose_shift(const SpectrumResult& spec, const CVector& phi,
                                   const CVector& v0);
CVector reconstruct_shift(const SpectrumResult& spec, const ShiftDecomposition& shift);

/// Coefficient tables of the free-field Lagrangian in unitary gauge.
struct QuadraticReport {
  struct ScalarMode {
    double mass_squared = 0.0;
    double mass = 0.0;
    double kinetic_coefficient = 0.5;  // 1/2 (d eta)^2
    double mass_coefficient = 0.0;     // -1/2 m^2 eta^2
  };
  struct VectorMode {
    AlgebraElement generator;
    double mass = 0.0;
    double kinetic_coefficient = -0.25;  // -1/4 (dA)^2
    double mass_coefficient = 0.0;       // +1/2 M^2 A^2
  };
  double vacuum_energy = 0.0;  // V(v0), dropped from the Lagrangian
  bool is_vacuum = true;
  std::string note;
  std::vector<ScalarMode> higgs;
  std::vector<VectorMode> broken;
  std::vector<VectorMode> unbroken;
};

/// Works at any v0; a non-vacuum point is flagged and its negative modes kept.
QuadraticReport quadratic_lagrangian(const HiggsModel& model, const CVector& v0);
QuadraticReport quadratic_lagrangian(const SpectrumResult& spec, const HiggsModel& model);

}  // namespace ssb
