#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "ssb/breaking.hpp"
#include "ssb/higgsmodel.hpp"
#include "ssb/liecore.hpp"

namespace ssb {

enum class Metric { euclidean, lorentzian };

/// Periodic hypercubic grid. Sites are numbered row-major (last axis fastest).
class Grid {
 public:
  Grid(std::vector<int> shape, double spacing, Metric metric = Metric::euclidean);

  int dim() const { return static_cast<int>(shape_.size()); }
  const std::vector<int>& shape() const { return shape_; }
  double spacing() const { return spacing_; }
  Metric metric() const { return metric_; }
  std::size_t sites() const { return sites_; }

  std::vector<int> coords(std::size_t site) const;
  std::size_t site(const std::vector<int>& coords) const;
  /// Neighbour `step` units along direction mu, with periodic wrap.
  std::size_t shift(std::size_t site, int mu, int step) const;
  /// Physical position of a site, coords * spacing.
  RVector position(std::size_t site) const;
  /// Diagonal metric entry: +1, or diag(+,-,...,-) for lorentzian.
  double metric_sign(int mu) const;

  bool operator==(const Grid&) const = default;

 private:
  std::vector<int> shape_;
  std::vector<std::size_t> strides_;
  double spacing_;
  Metric metric_;
  std::size_t sites_ = 1;
};

struct MultipletField {
  Grid grid;
  Eigen::Index n = 0;
  std::vector<CVector> values;  // one per site

  static MultipletField constant(const Grid& grid, const CVector& v);
};

struct GaugeField {
  Grid grid;
  Eigen::Index r = 0;
  std::vector<RVector> coeffs;  // index site * dim + mu

  static GaugeField zero(const Grid& grid, Eigen::Index r);
  RVector& at(std::size_t site, int mu) { return coeffs[site * static_cast<std::size_t>(grid.dim()) + static_cast<std::size_t>(mu)]; }
  const RVector& at(std::size_t site, int mu) const {
    return coeffs[site * static_cast<std::size_t>(grid.dim()) + static_cast<std::size_t>(mu)];
  }
};

struct GaugeTransformField {
  Grid grid;
  std::vector<CMatrix> values;  // unitary per site

  static GaugeTransformField constant(const Grid& grid, const CMatrix& u);
};

/// F_{mu nu} per site as generator coefficients; antisymmetric in (mu, nu).
struct FieldStrength {
  Grid grid;
  Eigen::Index r = 0;
  std::vector<RVector> data;  // index (site * dim + mu) * dim + nu

  const RVector& at(std::size_t site, int mu, int nu) const {
    const auto d = static_cast<std::size_t>(grid.dim());
    return data[(site * d + static_cast<std::size_t>(mu)) * d + static_cast<std::size_t>(nu)];
  }
};

struct ScalarField {
  Grid grid;
  std::vector<double> values;
};

MultipletField gauge_transform_matter(const GaugeTransformField& sigma, const MultipletField& psi);

struct TransformedGaugeField {
  GaugeField field;
  double projection_defect = 0.0;  // max over sites of the off-algebra residual
  double projection_tol = 0.0;
};

/// A'_mu = sigma A_mu sigma^-1 - (d_mu sigma) sigma^-1, central differences,
/// projected onto the generator span. Throws InvariantError when the residual
/// exceeds tol_proj = 1e-6 (1 + max|A|) + h^2 max|d^3 sigma|, i.e. when sigma
/// is not in the represented group. A positive `tol_override` replaces it.
TransformedGaugeField gauge_transform_gauge(const GeneratorSet& gs, const GaugeTransformField& sigma,
                                            const GaugeField& a, double tol_override = 0.0);

/// (d_mu psi)(x) + A_mu(x) psi(x) with central differences.
MultipletField covariant_derivative(const GeneratorSet& gs, const GaugeField& a,
                                    const MultipletField& psi, int mu);

/// d_mu A_nu - d_nu A_mu + [A_mu, A_nu].
FieldStrength field_strength(const GeneratorSet& gs, const GaugeField& a);

/// -1/4 F^{mu nu}_i F_{mu nu}^i.
ScalarField yang_mills_density(const FieldStrength& f);
/// (nabla^mu psi)^H (nabla_mu psi) - m^2 psi^H psi.
ScalarField klein_gordon_density(const GeneratorSet& gs, const GaugeField& a,
                                 const MultipletField& psi, double mass);
/// (nabla^mu phi)^H (nabla_mu phi) - V(phi).
ScalarField higgs_density(const GeneratorSet& gs, const GaugeField& a, const MultipletField& phi,
                          const PotentialFunctions& potential);

struct LatticeConfig {
  GaugeField gauge;
  std::optional<MultipletField> matter;  // Klein-Gordon field
  std::optional<MultipletField> higgs;
};

struct ActionTerms {
  bool yang_mills = false;
  std::optional<double> klein_gordon_mass;
  std::optional<PotentialFunctions> higgs_potential;
};

/// h^D times the pairwise sum of the selected densities.
double total_action(const GeneratorSet& gs, const LatticeConfig& config, const ActionTerms& terms);

/// Deterministic pairwise summation.
double pairwise_sum(const std::vector<double>& values);

struct QuadraticExpansionResult {
  double remainder = 0.0;   // max over sites |L_full - L_quadratic|
  double cross_term = 0.0;  // max over sites |2 Re (d Phi)^H (A v0)|
};

/// Compare the full Higgs + Yang-Mills density at (v0 + eps dphi, eps a) with
/// the free-field model built from the spectrum. `dphi` must be in unitary
/// gauge (no Goldstone components); otherwise PreconditionError.
QuadraticExpansionResult quadratic_expansion_check(const GeneratorSet& gs,
                                                   const PotentialFunctions& potential,
                                                   const SpectrumResult& spec,
                                                   const MultipletField& dphi, const GaugeField& a,
                                                   double eps);

/// Smooth periodic test data: a few low Fourier modes whose amplitudes and
/// phases depend only on the seed, so refining the grid samples the same
/// continuum function. Evaluated at unit coordinates u in [0, 1)^D.
class SmoothRandomFunction {
 public:
  SmoothRandomFunction(int dim, std::uint64_t seed, double amplitude, int modes = 3);
  double operator()(const RVector& u) const;

 private:
  struct Mode {
    std::vector<int> k;
    double amplitude;
    double phase;
  };
  double offset_ = 0.0;
  std::vector<Mode> modes_;
};

GaugeTransformField smooth_random_gauge_transform(const GeneratorSet& gs, const Grid& grid,
                                                  std::uint64_t seed, double amplitude = 1.0);
GaugeField smooth_random_gauge_field(const GeneratorSet& gs, const Grid& grid, std::uint64_t seed,
                                     double amplitude = 1.0);
MultipletField smooth_random_multiplet(const Grid& grid, Eigen::Index n, std::uint64_t seed,
                                       double amplitude = 1.0);

/// Site coordinates divided by the extents, in [0, 1)^D.
RVector unit_position(const Grid& grid, std::size_t site);

}  // namespace ssb
