#include "ssb/latticefields.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

#include "ssb/random.hpp"

namespace ssb {

Grid::Grid(std::vector<int> shape, double spacing, Metric metric)
    : shape_(std::move(shape)), spacing_(spacing), metric_(metric) {
  if (shape_.empty()) throw PreconditionError("grid: dimension must be >= 1");
  if (!(spacing_ > 0.0)) throw PreconditionError(fmt::format("grid: spacing must be > 0, got {}", spacing_));
  strides_.assign(shape_.size(), 1);
  for (int mu = dim() - 1; mu >= 0; --mu) {
    const int extent = shape_[static_cast<std::size_t>(mu)];
    if (extent < 4) {
      throw PreconditionError(fmt::format("grid: extent {} along axis {} is below 4", extent, mu));
    }
    strides_[static_cast<std::size_t>(mu)] = sites_;
    sites_ *= static_cast<std::size_t>(extent);
  }
}

std::vector<int> Grid::coords(std::size_t site) const {
  std::vector<int> c(shape_.size());
  for (std::size_t mu = 0; mu < shape_.size(); ++mu) {
    c[mu] = static_cast<int>((site / strides_[mu]) % static_cast<std::size_t>(shape_[mu]));
  }
  return c;
}

std::size_t Grid::site(const std::vector<int>& c) const {
  std::size_t s = 0;
  for (std::size_t mu = 0; mu < shape_.size(); ++mu) {
    const int extent = shape_[mu];
    const int wrapped = ((c[mu] % extent) + extent) % extent;
    s += static_cast<std::size_t>(wrapped) * strides_[mu];
  }
  return s;
}

std::size_t Grid::shift(std::size_t site, int mu, int step) const {
  const auto m = static_cast<std::size_t>(mu);
  const int extent = shape_[m];
  const int c = static_cast<int>((site / strides_[m]) % static_cast<std::size_t>(extent));
  const int moved = (((c + step) % extent) + extent) % extent;
  return site + (static_cast<std::size_t>(moved) - static_cast<std::size_t>(c)) * strides_[m];
}

RVector Grid::position(std::size_t site) const {
  const std::vector<int> c = coords(site);
  RVector x(dim());
  for (int mu = 0; mu < dim(); ++mu) x[mu] = c[static_cast<std::size_t>(mu)] * spacing_;
  return x;
}

double Grid::metric_sign(int mu) const {
  return (metric_ == Metric::lorentzian && mu > 0) ? -1.0 : 1.0;
}

RVector unit_position(const Grid& grid, std::size_t site) {
  const std::vector<int> c = grid.coords(site);
  RVector u(grid.dim());
  for (int mu = 0; mu < grid.dim(); ++mu) {
    u[mu] = static_cast<double>(c[static_cast<std::size_t>(mu)]) /
            grid.shape()[static_cast<std::size_t>(mu)];
  }
  return u;
}

MultipletField MultipletField::constant(const Grid& grid, const CVector& v) {
  return MultipletField{grid, v.size(), std::vector<CVector>(grid.sites(), v)};
}

GaugeField GaugeField::zero(const Grid& grid, Eigen::Index r) {
  return GaugeField{grid, r,
                    std::vector<RVector>(grid.sites() * static_cast<std::size_t>(grid.dim()),
                                         RVector::Zero(r))};
}

GaugeTransformField GaugeTransformField::constant(const Grid& grid, const CMatrix& u) {
  return GaugeTransformField{grid, std::vector<CMatrix>(grid.sites(), u)};
}

namespace {

void require_same_grid(const Grid& a, const Grid& b, const char* where) {
  if (!(a == b)) throw StructuralError(fmt::format("{}: fields live on different grids", where));
}

template <typename T>
T central_difference(const std::vector<T>& values, const Grid& grid, std::size_t site, int mu) {
  const std::size_t plus = grid.shift(site, mu, 1);
  const std::size_t minus = grid.shift(site, mu, -1);
  return (values[plus] - values[minus]) / (2.0 * grid.spacing());
}

}  // namespace

MultipletField gauge_transform_matter(const GaugeTransformField& sigma, const MultipletField& psi) {
  require_same_grid(sigma.grid, psi.grid, "gauge_transform_matter");
  MultipletField out{psi.grid, psi.n, {}};
  out.values.reserve(psi.values.size());
  for (std::size_t s = 0; s < psi.values.size(); ++s) {
    if (sigma.values[s].cols() != psi.values[s].size()) {
      throw StructuralError(fmt::format("gauge_transform_matter: size mismatch at site {}", s));
    }
    out.values.push_back(sigma.values[s] * psi.values[s]);
  }
  return out;
}

TransformedGaugeField gauge_transform_gauge(const GeneratorSet& gs, const GaugeTransformField& sigma,
                                            const GaugeField& a, double tol_override) {
  require_same_grid(sigma.grid, a.grid, "gauge_transform_gauge");
  if (a.r != gs.r()) throw StructuralError("gauge_transform_gauge: algebra dimension mismatch");
  const Grid& grid = a.grid;
  const double h = grid.spacing();

  TransformedGaugeField out{GaugeField::zero(grid, gs.r()), 0.0, 0.0};
  double a_max = 0.0;
  double third_max = 0.0;
  for (std::size_t s = 0; s < grid.sites(); ++s) {
    const CMatrix& u = sigma.values[s];
    const CMatrix u_inv = u.adjoint();
    for (int mu = 0; mu < grid.dim(); ++mu) {
      const CMatrix du = central_difference(sigma.values, grid, s, mu);
      const CMatrix m = u * gs.matrix(AlgebraElement(a.at(s, mu))) * u_inv - du * u_inv;
      const GeneratorSet::Projection p = gs.project(m);
      out.field.at(s, mu) = p.element.coeffs;
      out.projection_defect = std::max(out.projection_defect, p.defect);
      a_max = std::max(a_max, a.at(s, mu).norm());

      const CMatrix third = (sigma.values[grid.shift(s, mu, 2)] - 2.0 * sigma.values[grid.shift(s, mu, 1)] +
                             2.0 * sigma.values[grid.shift(s, mu, -1)] -
                             sigma.values[grid.shift(s, mu, -2)]) /
                            (2.0 * h * h * h);
      third_max = std::max(third_max, third.norm());
    }
  }
  out.projection_tol = tol_override > 0.0 ? tol_override : 1e-6 * (1.0 + a_max) + h * h * third_max;
  if (out.projection_defect > out.projection_tol) {
    throw InvariantError(fmt::format(
        "gauge_transform_gauge: transformed field is not algebra-valued (defect {:.3e} > {:.3e}); "
        "sigma is not in the represented group",
        out.projection_defect, out.projection_tol));
  }
  return out;
}

MultipletField covariant_derivative(const GeneratorSet& gs, const GaugeField& a,
                                    const MultipletField& psi, int mu) {
  require_same_grid(a.grid, psi.grid, "covariant_derivative");
  if (mu < 0 || mu >= a.grid.dim()) {
    throw PreconditionError(fmt::format("covariant_derivative: direction {} out of range", mu));
  }
  MultipletField out{psi.grid, psi.n, std::vector<CVector>(psi.values.size())};
  for (std::size_t s = 0; s < psi.values.size(); ++s) {
    out.values[s] = central_difference(psi.values, psi.grid, s, mu) +
                    gs.matrix(AlgebraElement(a.at(s, mu))) * psi.values[s];
  }
  return out;
}

FieldStrength field_strength(const GeneratorSet& gs, const GaugeField& a) {
  const ValidationReport report = validate_generators(gs);
  if (report.closure_defect >= kTolAlg) {
    throw InvariantError(
        fmt::format("field_strength: generators do not close under the bracket (defect {:.3e})",
                    report.closure_defect));
  }
  const Grid& grid = a.grid;
  const int dim = grid.dim();
  FieldStrength f{grid, gs.r(),
                  std::vector<RVector>(grid.sites() * static_cast<std::size_t>(dim * dim),
                                       RVector::Zero(gs.r()))};
  auto slot = [&](std::size_t s, int mu, int nu) -> RVector& {
    return f.data[(s * static_cast<std::size_t>(dim) + static_cast<std::size_t>(mu)) *
                      static_cast<std::size_t>(dim) +
                  static_cast<std::size_t>(nu)];
  };
  const double h = grid.spacing();
  for (std::size_t s = 0; s < grid.sites(); ++s) {
    for (int mu = 0; mu < dim; ++mu) {
      for (int nu = mu + 1; nu < dim; ++nu) {
        const RVector d_mu_a_nu = (a.at(grid.shift(s, mu, 1), nu) - a.at(grid.shift(s, mu, -1), nu)) / (2.0 * h);
        const RVector d_nu_a_mu = (a.at(grid.shift(s, nu, 1), mu) - a.at(grid.shift(s, nu, -1), mu)) / (2.0 * h);
        const RVector value = d_mu_a_nu - d_nu_a_mu +
                              gs.bracket(AlgebraElement(a.at(s, mu)), AlgebraElement(a.at(s, nu))).coeffs;
        slot(s, mu, nu) = value;
        slot(s, nu, mu) = -value;
      }
    }
  }
  return f;
}

ScalarField yang_mills_density(const FieldStrength& f) {
  const Grid& grid = f.grid;
  ScalarField out{grid, std::vector<double>(grid.sites(), 0.0)};
  for (std::size_t s = 0; s < grid.sites(); ++s) {
    double sum = 0.0;
    for (int mu = 0; mu < grid.dim(); ++mu) {
      for (int nu = 0; nu < grid.dim(); ++nu) {
        sum += grid.metric_sign(mu) * grid.metric_sign(nu) * f.at(s, mu, nu).squaredNorm();
      }
    }
    out.values[s] = -0.25 * sum;
  }
  return out;
}

namespace {

ScalarField kinetic_density(const GeneratorSet& gs, const GaugeField& a, const MultipletField& psi) {
  const Grid& grid = psi.grid;
  ScalarField out{grid, std::vector<double>(grid.sites(), 0.0)};
  for (int mu = 0; mu < grid.dim(); ++mu) {
    const MultipletField d = covariant_derivative(gs, a, psi, mu);
    const double sign = grid.metric_sign(mu);
    for (std::size_t s = 0; s < grid.sites(); ++s) out.values[s] += sign * d.values[s].squaredNorm();
  }
  return out;
}

}  // namespace

ScalarField klein_gordon_density(const GeneratorSet& gs, const GaugeField& a,
                                 const MultipletField& psi, double mass) {
  ScalarField out = kinetic_density(gs, a, psi);
  for (std::size_t s = 0; s < out.values.size(); ++s) {
    out.values[s] -= mass * mass * psi.values[s].squaredNorm();
  }
  return out;
}

ScalarField higgs_density(const GeneratorSet& gs, const GaugeField& a, const MultipletField& phi,
                          const PotentialFunctions& potential) {
  ScalarField out = kinetic_density(gs, a, phi);
  for (std::size_t s = 0; s < out.values.size(); ++s) out.values[s] -= potential.value(phi.values[s]);
  return out;
}

double pairwise_sum(const std::vector<double>& values) {
  auto rec = [&](auto&& self, std::size_t lo, std::size_t hi) -> double {
    if (hi - lo <= 8) {
      double s = 0.0;
      for (std::size_t i = lo; i < hi; ++i) s += values[i];
      return s;
    }
    const std::size_t mid = lo + (hi - lo) / 2;
    return self(self, lo, mid) + self(self, mid, hi);
  };
  return rec(rec, 0, values.size());
}

double total_action(const GeneratorSet& gs, const LatticeConfig& config, const ActionTerms& terms) {
  const Grid& grid = config.gauge.grid;
  std::vector<double> density(grid.sites(), 0.0);
  auto accumulate = [&](const ScalarField& f) {
    for (std::size_t s = 0; s < density.size(); ++s) density[s] += f.values[s];
  };
  if (terms.yang_mills) accumulate(yang_mills_density(field_strength(gs, config.gauge)));
  if (terms.klein_gordon_mass) {
    if (!config.matter) throw PreconditionError("total_action: Klein-Gordon term needs a matter field");
    accumulate(klein_gordon_density(gs, config.gauge, *config.matter, *terms.klein_gordon_mass));
  }
  if (terms.higgs_potential) {
    if (!config.higgs) throw PreconditionError("total_action: Higgs term needs a Higgs field");
    accumulate(higgs_density(gs, config.gauge, *config.higgs, *terms.higgs_potential));
  }
  return std::pow(grid.spacing(), grid.dim()) * pairwise_sum(density);
}

QuadraticExpansionResult quadratic_expansion_check(const GeneratorSet& gs,
                                                   const PotentialFunctions& potential,
                                                   const SpectrumResult& spec,
                                                   const MultipletField& dphi, const GaugeField& a,
                                                   double eps) {
  require_same_grid(dphi.grid, a.grid, "quadratic_expansion_check");
  const Grid& grid = dphi.grid;
  const CVector& v0 = spec.vacuum;
  const double sqrt2 = std::sqrt(2.0);
  for (std::size_t s = 0; s < grid.sites(); ++s) {
    const RVector xi = sqrt2 * spec.orbit_basis.transpose() * realify(dphi.values[s]);
    if (xi.size() > 0 && xi.cwiseAbs().maxCoeff() > 1e-10 * std::max(1.0, dphi.values[s].norm())) {
      throw PreconditionError(
          fmt::format("quadratic_expansion_check: shift is not in unitary gauge at site {}", s));
    }
  }

  MultipletField phi{grid, dphi.n, {}};
  MultipletField shift{grid, dphi.n, {}};
  for (const auto& v : dphi.values) {
    shift.values.push_back(eps * v);
    phi.values.push_back(v0 + eps * v);
  }
  GaugeField field = a;
  for (auto& c : field.coeffs) c *= eps;

  const ScalarField higgs = higgs_density(gs, field, phi, potential);
  const ScalarField ym = yang_mills_density(field_strength(gs, field));

  // Higgs bosons eta_j and gauge bosons A^i in the diagonalising basis.
  const Eigen::Index n_higgs = spec.ortho_basis.cols();
  std::vector<RVector> eta(grid.sites());
  for (std::size_t s = 0; s < grid.sites(); ++s) {
    eta[s] = sqrt2 * spec.ortho_basis.transpose() * realify(shift.values[s]);
  }
  std::vector<AlgebraElement> alpha = spec.broken_basis;
  alpha.insert(alpha.end(), spec.unbroken_basis.begin(), spec.unbroken_basis.end());
  const auto r = static_cast<Eigen::Index>(alpha.size());
  RMatrix to_alpha(r, gs.r());
  for (Eigen::Index i = 0; i < r; ++i) to_alpha.row(i) = alpha[static_cast<std::size_t>(i)].coeffs.transpose();
  std::vector<RVector> a_alpha(field.coeffs.size());
  for (std::size_t k = 0; k < field.coeffs.size(); ++k) a_alpha[k] = to_alpha * field.coeffs[k];
  auto a_at = [&](std::size_t s, int mu) -> const RVector& {
    return a_alpha[s * static_cast<std::size_t>(grid.dim()) + static_cast<std::size_t>(mu)];
  };

  const double h = grid.spacing();
  const double v_vac = potential.value(v0);
  QuadraticExpansionResult result;
  for (std::size_t s = 0; s < grid.sites(); ++s) {
    double model = -v_vac;
    for (Eigen::Index j = 0; j < n_higgs; ++j) {
      const double m2 = spec.higgs_masses[static_cast<std::size_t>(j)] *
                        spec.higgs_masses[static_cast<std::size_t>(j)];
      model -= 0.5 * m2 * eta[s][j] * eta[s][j];
    }
    double cross = 0.0;
    for (int mu = 0; mu < grid.dim(); ++mu) {
      const double smu = grid.metric_sign(mu);
      const RVector d_eta = (eta[grid.shift(s, mu, 1)] - eta[grid.shift(s, mu, -1)]) / (2.0 * h);
      model += 0.5 * smu * d_eta.squaredNorm();
      for (Eigen::Index i = 0; i < r; ++i) {
        const double mass = spec.boson_masses[static_cast<std::size_t>(i)];
        model += 0.5 * smu * mass * mass * a_at(s, mu)[i] * a_at(s, mu)[i];
      }
      for (int nu = 0; nu < grid.dim(); ++nu) {
        if (nu == mu) continue;
        const RVector curl = (a_at(grid.shift(s, mu, 1), nu) - a_at(grid.shift(s, mu, -1), nu)) / (2.0 * h) -
                             (a_at(grid.shift(s, nu, 1), mu) - a_at(grid.shift(s, nu, -1), mu)) / (2.0 * h);
        model -= 0.25 * smu * grid.metric_sign(nu) * curl.squaredNorm();
      }
      const CVector d_shift = central_difference(shift.values, grid, s, mu);
      const CVector a_v0 = gs.matrix(AlgebraElement(field.at(s, mu))) * v0;
      cross += smu * 2.0 * re_inner(d_shift, a_v0);
    }
    result.remainder = std::max(result.remainder, std::abs(higgs.values[s] + ym.values[s] - model));
    result.cross_term = std::max(result.cross_term, std::abs(cross));
  }
  return result;
}

SmoothRandomFunction::SmoothRandomFunction(int dim, std::uint64_t seed, double amplitude, int modes) {
  Rng rng(seed, 0x5eed);
  offset_ = amplitude * 0.5 * rng.normal();
  for (int m = 0; m < modes; ++m) {
    Mode mode;
    mode.k.resize(static_cast<std::size_t>(dim));
    bool nonzero = false;
    for (int mu = 0; mu < dim; ++mu) {
      const int k = static_cast<int>(std::floor(rng.uniform(-1.0, 2.0)));  // -1, 0 or 1
      mode.k[static_cast<std::size_t>(mu)] = std::clamp(k, -1, 1);
      nonzero = nonzero || k != 0;
    }
    if (!nonzero) mode.k[static_cast<std::size_t>(m % dim)] = 1;
    mode.amplitude = amplitude * rng.uniform(0.3, 1.0) / modes;
    mode.phase = rng.uniform(0.0, 2.0 * M_PI);
    modes_.push_back(std::move(mode));
  }
}

double SmoothRandomFunction::operator()(const RVector& u) const {
  double value = offset_;
  for (const auto& mode : modes_) {
    double arg = mode.phase;
    for (std::size_t mu = 0; mu < mode.k.size(); ++mu) {
      arg += 2.0 * M_PI * mode.k[mu] * u[static_cast<Eigen::Index>(mu)];
    }
    value += mode.amplitude * std::sin(arg);
  }
  return value;
}

GaugeTransformField smooth_random_gauge_transform(const GeneratorSet& gs, const Grid& grid,
                                                  std::uint64_t seed, double amplitude) {
  std::vector<SmoothRandomFunction> fns;
  for (Eigen::Index i = 0; i < gs.r(); ++i) {
    fns.emplace_back(grid.dim(), seed * 1009 + static_cast<std::uint64_t>(i), amplitude);
  }
  GaugeTransformField out{grid, std::vector<CMatrix>(grid.sites())};
  for (std::size_t s = 0; s < grid.sites(); ++s) {
    const RVector u = unit_position(grid, s);
    RVector c(gs.r());
    for (Eigen::Index i = 0; i < gs.r(); ++i) c[i] = fns[static_cast<std::size_t>(i)](u);
    out.values[s] = exponentiate(gs, AlgebraElement(c));
  }
  return out;
}

GaugeField smooth_random_gauge_field(const GeneratorSet& gs, const Grid& grid, std::uint64_t seed,
                                     double amplitude) {
  std::vector<SmoothRandomFunction> fns;
  for (int mu = 0; mu < grid.dim(); ++mu) {
    for (Eigen::Index i = 0; i < gs.r(); ++i) {
      fns.emplace_back(grid.dim(), seed * 2003 + static_cast<std::uint64_t>(mu * gs.r() + i), amplitude);
    }
  }
  GaugeField out = GaugeField::zero(grid, gs.r());
  for (std::size_t s = 0; s < grid.sites(); ++s) {
    const RVector u = unit_position(grid, s);
    for (int mu = 0; mu < grid.dim(); ++mu) {
      for (Eigen::Index i = 0; i < gs.r(); ++i) {
        out.at(s, mu)[i] = fns[static_cast<std::size_t>(mu * gs.r() + i)](u);
      }
    }
  }
  return out;
}

MultipletField smooth_random_multiplet(const Grid& grid, Eigen::Index n, std::uint64_t seed,
                                       double amplitude) {
  std::vector<SmoothRandomFunction> fns;
  for (Eigen::Index k = 0; k < 2 * n; ++k) {
    fns.emplace_back(grid.dim(), seed * 3001 + static_cast<std::uint64_t>(k), amplitude);
  }
  MultipletField out{grid, n, std::vector<CVector>(grid.sites())};
  for (std::size_t s = 0; s < grid.sites(); ++s) {
    const RVector u = unit_position(grid, s);
    CVector v(n);
    for (Eigen::Index k = 0; k < n; ++k) {
      v[k] = Complex(fns[static_cast<std::size_t>(2 * k)](u), fns[static_cast<std::size_t>(2 * k + 1)](u));
    }
    out.values[s] = v;
  }
  return out;
}

}  // namespace ssb
