#include "ssb/breaking.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

#include "ssb/linalg.hpp"

namespace ssb {

namespace {

std::vector<AlgebraElement> columns_as_elements(const RMatrix& m) {
  std::vector<AlgebraElement> out;
  out.reserve(static_cast<std::size_t>(m.cols()));
  for (Eigen::Index j = 0; j < m.cols(); ++j) out.emplace_back(m.col(j));
  return out;
}

RMatrix elements_as_columns(const std::vector<AlgebraElement>& elems, Eigen::Index r) {
  RMatrix m(r, static_cast<Eigen::Index>(elems.size()));
  for (std::size_t j = 0; j < elems.size(); ++j) m.col(static_cast<Eigen::Index>(j)) = elems[j].coeffs;
  return m;
}

void check_size(const GeneratorSet& gs, const CVector& v0, const char* where) {
  if (v0.size() != gs.n()) {
    throw StructuralError(
        fmt::format("{}: vacuum has size {}, multiplet space has {}", where, v0.size(), gs.n()));
  }
}

}  // namespace

RMatrix orbit_map(const GeneratorSet& gs, const CVector& v0) {
  check_size(gs, v0, "orbit_map");
  RMatrix l(2 * gs.n(), gs.r());
  for (Eigen::Index i = 0; i < gs.r(); ++i) l.col(i) = realify(gs.gen(i) * v0);
  return l;
}

MassForm mass_form(const GeneratorSet& gs, const CVector& v0) {
  check_size(gs, v0, "mass_form");
  std::vector<CVector> images;
  images.reserve(static_cast<std::size_t>(gs.r()));
  for (Eigen::Index i = 0; i < gs.r(); ++i) images.push_back(gs.gen(i) * v0);
  RMatrix m(gs.r(), gs.r());
  for (Eigen::Index i = 0; i < gs.r(); ++i) {
    for (Eigen::Index j = i; j < gs.r(); ++j) {
      const double value = re_inner(images[static_cast<std::size_t>(i)],
                                    images[static_cast<std::size_t>(j)]);
      m(i, j) = value;
      m(j, i) = value;
    }
  }
  return MassForm{std::move(m)};
}

StabilizerSplit stabilizer_split(const GeneratorSet& gs, const CVector& v0, double tol_rank) {
  const linalg::KernelSplit ks = linalg::kernel_split(orbit_map(gs, v0), tol_rank);
  StabilizerSplit split;
  split.unbroken = columns_as_elements(linalg::canonical_basis(ks.kernel));
  split.broken = columns_as_elements(linalg::canonical_basis(ks.complement));
  split.singular_values = ks.singular_values;
  return split;
}

BosonSpectrum boson_spectrum(const MassForm& mf, const StabilizerSplit& split) {
  const Eigen::Index r = mf.matrix.rows();
  {
    Eigen::SelfAdjointEigenSolver<RMatrix> full(mf.matrix, Eigen::EigenvaluesOnly);
    if (r > 0 && full.eigenvalues().minCoeff() < -1e-10) {
      throw InvariantError(fmt::format("mass form is not positive semidefinite (eigenvalue {:.3e})",
                                       full.eigenvalues().minCoeff()));
    }
  }
  const RMatrix broken = elements_as_columns(split.broken, r);
  const RMatrix unbroken = elements_as_columns(split.unbroken, r);

  const RMatrix restricted = broken.transpose() * mf.matrix * broken;
  const linalg::SymmetricEigen eig = linalg::symmetric_eigen(restricted);
  RMatrix alpha = broken * eig.vectors;
  linalg::canonicalize_clusters(eig.values, alpha);

  BosonSpectrum out;
  out.d = static_cast<int>(split.broken.size());
  for (Eigen::Index i = 0; i < alpha.cols(); ++i) {
    out.basis.emplace_back(alpha.col(i));
    out.masses.push_back(std::sqrt(2.0 * std::max(0.0, eig.values[i])));
  }
  for (Eigen::Index i = 0; i < unbroken.cols(); ++i) {
    out.basis.emplace_back(unbroken.col(i));
    out.masses.push_back(0.0);
  }
  return out;
}

OrbitSplit orbit_split_unchecked(const GeneratorSet& gs, const CVector& v0,
                                 const RMatrix& hessian, double tol_rank) {
  const Eigen::Index dim = 2 * gs.n();
  if (hessian.rows() != dim || hessian.cols() != dim) {
    throw StructuralError(fmt::format("orbit_split: Hessian is {}x{}, expected {}x{}",
                                      hessian.rows(), hessian.cols(), dim, dim));
  }
  const linalg::KernelSplit ks = linalg::kernel_split(orbit_map(gs, v0), tol_rank);
  OrbitSplit out;
  out.e = linalg::canonical_basis(ks.range);
  const RMatrix& normal = ks.cokernel;

  const linalg::SymmetricEigen eig = linalg::symmetric_eigen(normal.transpose() * hessian * normal);
  out.f = normal * eig.vectors;
  linalg::canonicalize_clusters(eig.values, out.f);
  out.hessian_eigenvalues = eig.values;
  for (Eigen::Index j = 0; j < eig.values.size(); ++j) {
    out.higgs_masses.push_back(std::sqrt(0.5 * std::max(0.0, eig.values[j])));
  }
  if (out.e.cols() > 0) {
    const double tangent = (out.e.transpose() * hessian * out.e).cwiseAbs().maxCoeff();
    const double cross =
        out.f.cols() > 0 ? (out.e.transpose() * hessian * out.f).cwiseAbs().maxCoeff() : 0.0;
    out.tangent_hessian_defect = std::max(tangent, cross);
  }
  return out;
}

OrbitSplit orbit_split(const GeneratorSet& gs, const CVector& v0, const RMatrix& hessian,
                       double tol_rank) {
  OrbitSplit out = orbit_split_unchecked(gs, v0, hessian, tol_rank);
  const double tol = 1e-8 * std::max(1.0, hessian.cwiseAbs().maxCoeff());
  if (out.hessian_eigenvalues.size() > 0 && out.hessian_eigenvalues.minCoeff() < -tol) {
    throw InvariantError(
        fmt::format("not a minimum: Hessian eigenvalue {:.6e} on the normal space of the orbit",
                    out.hessian_eigenvalues.minCoeff()));
  }
  if (out.tangent_hessian_defect > tol) {
    throw InvariantError(
        fmt::format("inconsistent vacuum: Hessian does not vanish on the orbit tangent space "
                    "(defect {:.3e})",
                    out.tangent_hessian_defect));
  }
  return out;
}

SpectrumResult compute_spectrum(const HiggsModel& model, const CVector& v0) {
  check_size(model.gens, v0, "compute_spectrum");
  const VacuumCheck vc = check_vacuum(model, v0);
  if (!vc.is_vacuum) {
    throw InvariantError(
        fmt::format("not a vacuum: |grad V| = {:.3e}, min Hessian eigenvalue = {:.3e}",
                    vc.gradient_norm, vc.min_hessian_eigenvalue));
  }
  SpectrumResult out;
  out.vacuum = v0;
  out.mass = mass_form(model.gens, v0);
  const StabilizerSplit split = stabilizer_split(model.gens, v0);
  const BosonSpectrum bosons = boson_spectrum(out.mass, split);
  out.d = bosons.d;
  out.boson_masses = bosons.masses;
  for (std::size_t i = 0; i < bosons.basis.size(); ++i) {
    if (static_cast<int>(i) < bosons.d) {
      out.broken_basis.push_back(bosons.basis[i]);
    } else {
      out.unbroken_basis.push_back(bosons.basis[i]);
    }
  }
  const OrbitSplit orbit = orbit_split(model.gens, v0, model.potential.hessian(v0));
  if (orbit.e.cols() != out.d) {
    throw InvariantError(fmt::format("orbit dimension {} differs from broken dimension {}",
                                     orbit.e.cols(), out.d));
  }
  out.orbit_basis = orbit.e;
  out.ortho_basis = orbit.f;
  out.hessian_eigenvalues = orbit.hessian_eigenvalues;
  out.higgs_masses = orbit.higgs_masses;
  return out;
}

ShiftDecomposition decompose_shift(const SpectrumResult& spec, const CVector& phi,
                                   const CVector& v0) {
  if (phi.size() != v0.size() || 2 * phi.size() != spec.orbit_basis.rows()) {
    throw StructuralError("decompose_shift: vector sizes do not match the spectrum");
  }
  const RVector x = realify(phi - v0);
  return ShiftDecomposition{std::sqrt(2.0) * spec.orbit_basis.transpose() * x,
                            std::sqrt(2.0) * spec.ortho_basis.transpose() * x};
}

CVector reconstruct_shift(const SpectrumResult& spec, const ShiftDecomposition& shift) {
  const RVector x = (spec.orbit_basis * shift.xi + spec.ortho_basis * shift.eta) / std::sqrt(2.0);
  return unrealify(x);
}

QuadraticReport quadratic_lagrangian(const HiggsModel& model, const CVector& v0) {
  check_size(model.gens, v0, "quadratic_lagrangian");
  QuadraticReport report;
  report.vacuum_energy = model.potential.value(v0);
  const VacuumCheck vc = check_vacuum(model, v0);
  report.is_vacuum = vc.is_vacuum;

  const MassForm mf = mass_form(model.gens, v0);
  const BosonSpectrum bosons = boson_spectrum(mf, stabilizer_split(model.gens, v0));
  for (std::size_t i = 0; i < bosons.basis.size(); ++i) {
    QuadraticReport::VectorMode mode;
    mode.generator = bosons.basis[i];
    mode.mass = bosons.masses[i];
    mode.mass_coefficient = 0.5 * mode.mass * mode.mass;
    if (static_cast<int>(i) < bosons.d) {
      report.broken.push_back(std::move(mode));
    } else {
      report.unbroken.push_back(std::move(mode));
    }
  }

  const OrbitSplit orbit = orbit_split_unchecked(model.gens, v0, model.potential.hessian(v0));
  for (Eigen::Index j = 0; j < orbit.hessian_eigenvalues.size(); ++j) {
    QuadraticReport::ScalarMode mode;
    mode.mass_squared = 0.5 * orbit.hessian_eigenvalues[j];
    mode.mass = std::sqrt(std::max(0.0, mode.mass_squared));
    mode.mass_coefficient = -0.5 * mode.mass_squared;
    report.higgs.push_back(mode);
  }
  if (!report.is_vacuum) {
    report.note = fmt::format(
        "not a vacuum (|grad V| = {:.3e}, min Hessian eigenvalue = {:.3e}); scalar modes with "
        "negative mass squared are tachyonic",
        vc.gradient_norm, vc.min_hessian_eigenvalue);
  }
  return report;
}

QuadraticReport quadratic_lagrangian(const SpectrumResult& spec, const HiggsModel& model) {
  return quadratic_lagrangian(model, spec.vacuum);
}

}  // namespace ssb
