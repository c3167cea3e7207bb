#include "ssb/chiral.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

namespace ssb {

bool Representation::operator==(const Representation& other) const {
  if (name != other.name || dim != other.dim || gens.size() != other.gens.size()) return false;
  for (std::size_t i = 0; i < gens.size(); ++i) {
    if (gens[i] != other.gens[i]) return false;
  }
  return true;
}

void validate_representation(const Representation& rep, double tol) {
  for (std::size_t i = 0; i < rep.gens.size(); ++i) {
    const CMatrix& g = rep.gens[i];
    if (g.rows() != rep.dim || g.cols() != rep.dim) {
      throw StructuralError(fmt::format("representation '{}': generator {} is {}x{}, expected {}x{}",
                                        rep.name, i, g.rows(), g.cols(), rep.dim, rep.dim));
    }
    const double skew = (g + g.adjoint()).norm();
    if (skew > tol) {
      throw PreconditionError(fmt::format(
          "representation '{}': generator {} is not skew-Hermitian (defect {:.3e})", rep.name, i, skew));
    }
  }
}

IntertwinerBasis intertwiner_basis(const Representation& left, const Representation& right,
                                   double rel_tol) {
  if (left.r() != right.r()) {
    throw StructuralError(fmt::format("intertwiner_basis: algebra dimensions differ ({} vs {})",
                                      left.r(), right.r()));
  }
  validate_representation(left);
  validate_representation(right);
  const Eigen::Index dl = left.dim;
  const Eigen::Index dr = right.dim;
  const Eigen::Index unknowns = dl * dr;
  // Column-major vec: vec(L K) = (I kron L) vec K, vec(K R) = (R^T kron I) vec K.
  CMatrix system = CMatrix::Zero(std::max<Eigen::Index>(1, left.r() * unknowns), unknowns);
  for (Eigen::Index i = 0; i < left.r(); ++i) {
    const CMatrix& l = left.gens[static_cast<std::size_t>(i)];
    const CMatrix& r = right.gens[static_cast<std::size_t>(i)];
    auto block = system.block(i * unknowns, 0, unknowns, unknowns);
    for (Eigen::Index q = 0; q < dr; ++q) {
      block.block(q * dl, q * dl, dl, dl) += l;
      for (Eigen::Index p = 0; p < dr; ++p) {
        block.block(q * dl, p * dl, dl, dl) -= r(p, q) * CMatrix::Identity(dl, dl);
      }
    }
  }
  Eigen::JacobiSVD<CMatrix> svd(system, Eigen::ComputeFullV);
  IntertwinerBasis out;
  out.singular_values = svd.singularValues();
  const double smax = out.singular_values.size() > 0 ? out.singular_values[0] : 0.0;
  Eigen::Index rank = 0;
  for (Eigen::Index k = 0; k < out.singular_values.size(); ++k) {
    if (out.singular_values[k] > rel_tol * smax && smax > 0.0) ++rank;
  }
  const CMatrix& v = svd.matrixV();
  for (Eigen::Index k = rank; k < unknowns; ++k) {
    CVector col = v.col(k);
    Eigen::Index pivot = 0;
    col.cwiseAbs().maxCoeff(&pivot);
    col *= std::conj(col[pivot]) / std::abs(col[pivot]);
    out.basis.push_back(Eigen::Map<const CMatrix>(col.data(), dl, dr));
  }
  return out;
}

bool mass_form_exists(const Representation& left, const Representation& right) {
  return !intertwiner_basis(left, right).basis.empty();
}

TripleProduct TripleProduct::zero(std::array<Eigen::Index, 3> dims, std::array<bool, 3> conjugate) {
  TripleProduct t;
  t.dims = dims;
  t.conjugate = conjugate;
  t.tensor.assign(static_cast<std::size_t>(dims[0] * dims[1] * dims[2]), Complex(0.0, 0.0));
  return t;
}

Complex& TripleProduct::at(Eigen::Index i, Eigen::Index j, Eigen::Index k) {
  return tensor[static_cast<std::size_t>((i * dims[1] + j) * dims[2] + k)];
}

Complex TripleProduct::at(Eigen::Index i, Eigen::Index j, Eigen::Index k) const {
  return tensor[static_cast<std::size_t>((i * dims[1] + j) * dims[2] + k)];
}

namespace {

void check_shape(const TripleProduct& tau) {
  if (static_cast<Eigen::Index>(tau.tensor.size()) != tau.dims[0] * tau.dims[1] * tau.dims[2]) {
    throw StructuralError(fmt::format("triple product: tensor has {} entries, dims give {}",
                                      tau.tensor.size(), tau.dims[0] * tau.dims[1] * tau.dims[2]));
  }
}

}  // namespace

double triple_invariance_defect(const TripleProduct& tau, const Representation& a,
                                const Representation& b, const Representation& c) {
  check_shape(tau);
  const std::array<const Representation*, 3> reps{&a, &b, &c};
  for (int s = 0; s < 3; ++s) {
    if (reps[static_cast<std::size_t>(s)]->dim != tau.dims[static_cast<std::size_t>(s)]) {
      throw StructuralError(fmt::format("triple_invariance_defect: slot {} has dimension {}, tensor expects {}",
                                        s, reps[static_cast<std::size_t>(s)]->dim,
                                        tau.dims[static_cast<std::size_t>(s)]));
    }
  }
  if (a.r() != b.r() || a.r() != c.r()) {
    throw StructuralError("triple_invariance_defect: representations have different algebra dimensions");
  }
  const auto [da, db, dc] = tau.dims;
  double worst = 0.0;
  for (Eigen::Index g = 0; g < a.r(); ++g) {
    std::array<CMatrix, 3> m;
    for (std::size_t s = 0; s < 3; ++s) {
      const CMatrix& x = reps[s]->gens[static_cast<std::size_t>(g)];
      m[s] = tau.conjugate[s] ? CMatrix(x.conjugate()) : x;
    }
    double sum2 = 0.0;
    for (Eigen::Index i = 0; i < da; ++i) {
      for (Eigen::Index j = 0; j < db; ++j) {
        for (Eigen::Index k = 0; k < dc; ++k) {
          Complex d(0.0, 0.0);
          for (Eigen::Index p = 0; p < da; ++p) d += tau.at(p, j, k) * m[0](p, i);
          for (Eigen::Index p = 0; p < db; ++p) d += tau.at(i, p, k) * m[1](p, j);
          for (Eigen::Index p = 0; p < dc; ++p) d += tau.at(i, j, p) * m[2](p, k);
          sum2 += std::norm(d);
        }
      }
    }
    worst = std::max(worst, std::sqrt(sum2));
  }
  return worst;
}

Complex evaluate(const TripleProduct& tau, const CVector& a, const CVector& b, const CVector& c) {
  check_shape(tau);
  if (a.size() != tau.dims[0] || b.size() != tau.dims[1] || c.size() != tau.dims[2]) {
    throw StructuralError("evaluate: vector sizes do not match the tensor");
  }
  const CVector x = tau.conjugate[0] ? CVector(a.conjugate()) : a;
  const CVector y = tau.conjugate[1] ? CVector(b.conjugate()) : b;
  const CVector z = tau.conjugate[2] ? CVector(c.conjugate()) : c;
  Complex sum(0.0, 0.0);
  for (Eigen::Index i = 0; i < tau.dims[0]; ++i) {
    for (Eigen::Index j = 0; j < tau.dims[1]; ++j) {
      for (Eigen::Index k = 0; k < tau.dims[2]; ++k) sum += tau.at(i, j, k) * x[i] * y[j] * z[k];
    }
  }
  return sum;
}

TripleProduct electroweak_yukawa_tensor() {
  TripleProduct t = TripleProduct::zero({2, 2, 1}, {true, false, false});
  t.at(0, 0, 0) = 1.0;
  t.at(1, 1, 0) = 1.0;
  return t;
}

FermionMasses fermion_mass_after_breaking(const TripleProduct& tau, const CVector& v0, double g_y,
                                          int higgs_slot) {
  check_shape(tau);
  if (higgs_slot < 0 || higgs_slot > 2) {
    throw PreconditionError(fmt::format("fermion_mass_after_breaking: bad Higgs slot {}", higgs_slot));
  }
  const auto hs = static_cast<std::size_t>(higgs_slot);
  if (v0.size() != tau.dims[hs]) {
    throw StructuralError(fmt::format("fermion_mass_after_breaking: vacuum has size {}, slot {} has {}",
                                      v0.size(), higgs_slot, tau.dims[hs]));
  }
  const CVector v = tau.conjugate[hs] ? CVector(v0.conjugate()) : v0;
  std::array<std::size_t, 2> fermion{};
  for (std::size_t s = 0, f = 0; s < 3; ++s) {
    if (s != hs) fermion[f++] = s;
  }
  const Eigen::Index rows = tau.dims[fermion[0]];
  const Eigen::Index cols = tau.dims[fermion[1]];
  CMatrix bilinear = CMatrix::Zero(rows, cols);
  for (Eigen::Index i = 0; i < tau.dims[0]; ++i) {
    for (Eigen::Index j = 0; j < tau.dims[1]; ++j) {
      for (Eigen::Index k = 0; k < tau.dims[2]; ++k) {
        const std::array<Eigen::Index, 3> idx{i, j, k};
        bilinear(idx[fermion[0]], idx[fermion[1]]) += tau.at(i, j, k) * v[idx[hs]];
      }
    }
  }
  FermionMasses out;
  for (Eigen::Index i = 0; i < rows; ++i) out.rows.push_back(std::abs(g_y) * bilinear.row(i).norm());
  return out;
}

FermionMasses fermion_mass_after_breaking(const TripleProduct& tau, const HiggsModel& model,
                                          const CVector& v0, double g_y, int higgs_slot) {
  FermionMasses out = fermion_mass_after_breaking(tau, v0, g_y, higgs_slot);
  const VacuumCheck vc = check_vacuum(model, v0);
  if (!vc.is_vacuum) {
    out.warning = fmt::format("v0 is not a vacuum (|grad V| = {:.3e}, min Hessian eigenvalue = {:.3e})",
                              vc.gradient_norm, vc.min_hessian_eigenvalue);
  }
  return out;
}

}  // namespace ssb
