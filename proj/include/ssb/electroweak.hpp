#pragma once

#include <array>

#include "ssb/breaking.hpp"
#include "ssb/chiral.hpp"

namespace ssb::electroweak {

struct Params {
  double g = 2.0;
  double gp = 1.0;
  double mu = 2.0;
  double lambda = 1.0;

  bool operator==(const Params&) const = default;
};

/// Throws PreconditionError unless every parameter is positive.
void check_params(const Params& p);

/// beta_l = g i sigma_l / 2 (l = 1, 2, 3), beta_4 = g' i / 2 on C^2.
GeneratorSet generators(const Params& p);
/// Generators, quartic potential and the vacuum (0, sqrt(mu / 2 lambda)).
HiggsModel build_model(const Params& p);
double vacuum_norm(const Params& p);

/// atan(g' / g).
double weinberg_angle(const Params& p);

struct MassPredictions {
  double m_w = 0.0;
  double m_z = 0.0;
  double m_gamma = 0.0;
  double m_h = 0.0;
};

/// Closed forms m_W = |v0| g / sqrt 2, m_Z = |v0| sqrt(g^2 + g'^2) / sqrt 2,
/// m_H = sqrt(mu).
MassPredictions boson_mass_predictions(const Params& p);

/// (|v0|^2 / 4) [[g^2,0,0,0],[0,g^2,0,0],[0,0,g^2,-g g'],[0,0,-g g',g'^2]].
RMatrix mass_form_closed_form(double g, double gp, double v_norm);

/// alpha_1 = beta_1, alpha_2 = beta_2, alpha_3 = (g beta_3 - g' beta_4) / N,
/// alpha_4 = (g' beta_3 + g beta_4) / N with N = sqrt(g^2 + g'^2).
std::array<AlgebraElement, 4> rotated_basis(const Params& p);

Representation left_doublet(const Params& p);
Representation higgs_doublet(const Params& p);
Representation right_singlet(const Params& p);

struct ChargeOperators {
  CMatrix t1, t2, t3, y, q;
  CMatrix t_plus;   // T1 + i T2
  CMatrix t_minus;  // T1 - i T2
  CMatrix eigenbasis;  // columns diagonalise T3, Y and Q together
  RVector t3_values, y_values, q_values;
};

/// T_l = gens[l] / (i g), Y = 2 gens[3] / (i g'), Q = T3 + Y/2. Throws
/// InvariantError when T3 and Y do not commute.
ChargeOperators charge_operators(const Representation& rep, const Params& p);

struct GaugeComponents {
  Complex w_plus;
  Complex w_minus;
  double z0 = 0.0;
  double photon = 0.0;
};

/// W+- = (A1 +- i A2) / sqrt 2, Z = cos A3 - sin A4, photon = sin A3 + cos A4.
GaugeComponents decompose_gauge_field(const RVector& a, const Params& p);
RVector recompose_gauge_field(const GaugeComponents& c, const Params& p);

/// g g' / sqrt(g^2 + g'^2).
double elementary_charge(const Params& p);

}  // namespace ssb::electroweak
