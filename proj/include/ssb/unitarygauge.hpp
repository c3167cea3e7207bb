#pragma once

#include <optional>
#include <vector>

#include "ssb/breaking.hpp"

namespace ssb {

inline constexpr double kTolUg = 1e-10;

/// s_i = Re<phi, g_i v0>, the fiber derivative in the generator basis.
RVector fiber_derivative(const GeneratorSet& gs, const CVector& v0, const CVector& phi);

struct GoldstoneCheck {
  bool vanishes = false;
  double defect = 0.0;  // max |xi_i|
};

GoldstoneCheck goldstone_vanish_check(const SpectrumResult& spec, const CVector& v0,
                                      const CVector& phi, double tol = kTolUg);

struct BrokenHessianMatrix {
  RMatrix matrix;            // symmetrised
  double asymmetry = 0.0;    // max |B_ij - B_ji| before symmetrisation
};

/// B_ij = Re<U phi, A_i A_j v0> over the given broken basis.
BrokenHessianMatrix broken_hessian(const GeneratorSet& gs, const CVector& v0, const CVector& phi,
                                   const CMatrix& group_element,
                                   const std::vector<AlgebraElement>& broken_basis);

struct UnitaryGaugeOptions {
  double tol = kTolUg;
  int max_iter = 50;
};

struct UnitaryGaugeSolution {
  CMatrix u;
  CVector rotated;  // u * phi
  int iterations = 0;
  double goldstone_defect = 0.0;
};

/// Rotate phi into unitary gauge with respect to v0. Newton iteration on the
/// broken directions with the broken Hessian as Jacobian, applied as left
/// group updates U <- exp(sum t_i a_i) U, safeguarded by a backtracking line
/// search on the overlap Re<U phi, v0> (whose critical points are exactly
/// the unitary set and whose maximum puts the component along v0 real and
/// nonnegative).
UnitaryGaugeSolution solve_unitary_gauge_point(const GeneratorSet& gs, const CVector& v0,
                                               const SpectrumResult& spec, const CVector& phi,
                                               const UnitaryGaugeOptions& opts = {},
                                               const std::optional<CMatrix>& initial = std::nullopt);

/// Thrown when the solver hits a point where the broken Hessian degenerates.
class DegeneratePointError : public Error {
 public:
  using Error::Error;
};

struct UnitaryGaugeField {
  std::vector<CMatrix> sigma;
  std::vector<CVector> transformed;
  double max_defect = 0.0;
};

/// Pointwise solver over a flat list of sites in lexicographic order, warm
/// starting each site from its predecessor. Errors name the failing site.
UnitaryGaugeField apply_unitary_gauge_field(const GeneratorSet& gs, const CVector& v0,
                                            const SpectrumResult& spec,
                                            const std::vector<CVector>& field,
                                            const UnitaryGaugeOptions& opts = {});

}  // namespace ssb
