#include "ssb/liecore.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

#include "ssb/random.hpp"

namespace ssb {

namespace {

RVector flatten(const CMatrix& m) {
  const Eigen::Index n = m.rows();
  RVector out(2 * m.size());
  Eigen::Index k = 0;
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      out[k++] = m(i, j).real();
      out[k++] = m(i, j).imag();
    }
  }
  return out;
}

}  // namespace

GeneratorSet::GeneratorSet(std::vector<CMatrix> gens, std::vector<FactorLabel> factors)
    : gens_(std::move(gens)), factors_(std::move(factors)) {
  if (gens_.empty()) throw StructuralError("generator set must contain at least one matrix");
  n_ = gens_.front().rows();
  if (n_ < 1) throw StructuralError("multiplet space must have dimension >= 1");
  for (std::size_t i = 0; i < gens_.size(); ++i) {
    if (gens_[i].rows() != n_ || gens_[i].cols() != n_) {
      throw StructuralError(fmt::format("generator {} is {}x{}, expected {}x{}", i, gens_[i].rows(),
                                        gens_[i].cols(), n_, n_));
    }
  }
  for (const auto& f : factors_) {
    for (int idx : f.generators) {
      if (idx < 0 || idx >= r()) {
        throw StructuralError(
            fmt::format("factor '{}' references generator {} outside [0, {})", f.name, idx, r()));
      }
    }
  }
  build_projector();
}

void GeneratorSet::build_projector() {
  const Eigen::Index dim = r();
  flat_.resize(2 * n_ * n_, dim);
  for (Eigen::Index i = 0; i < dim; ++i) flat_.col(i) = flatten(gen(i));
  flat_pinv_ = flat_.completeOrthogonalDecomposition().pseudoInverse();
  const RMatrix gram = flat_.transpose() * flat_;
  gram_diag_ = gram.diagonal();
  orthogonal_ = (gram_diag_.array() > 0.0).all() &&
                (gram - RMatrix(gram_diag_.asDiagonal())).cwiseAbs().maxCoeff() == 0.0;

  structure_.assign(static_cast<std::size_t>(dim * dim), RVector::Zero(dim));
  closure_defect_ = 0.0;
  for (Eigen::Index i = 0; i < dim; ++i) {
    for (Eigen::Index j = 0; j < dim; ++j) {
      const CMatrix comm = gen(i) * gen(j) - gen(j) * gen(i);
      const RVector flat = flatten(comm);
      const RVector c = coefficients(flat);
      closure_defect_ = std::max(closure_defect_, (flat - flat_ * c).norm());
      structure_[static_cast<std::size_t>(i * dim + j)] = c;
    }
  }
}

RVector GeneratorSet::coefficients(const RVector& flat) const {
  if (orthogonal_) return (flat_.transpose() * flat).cwiseQuotient(gram_diag_);
  return flat_pinv_ * flat;
}

CMatrix GeneratorSet::matrix(const AlgebraElement& x) const {
  if (x.size() != r()) {
    throw StructuralError(
        fmt::format("algebra element has {} coefficients, generator set has {}", x.size(), r()));
  }
  CMatrix out = CMatrix::Zero(n_, n_);
  for (Eigen::Index i = 0; i < r(); ++i) {
    if (x.coeffs[i] != 0.0) out += x.coeffs[i] * gen(i);
  }
  return out;
}

GeneratorSet::Projection GeneratorSet::project(const CMatrix& m) const {
  if (m.rows() != n_ || m.cols() != n_) {
    throw StructuralError(fmt::format("cannot project a {}x{} matrix onto {}x{} generators",
                                      m.rows(), m.cols(), n_, n_));
  }
  const RVector flat = flatten(m);
  Projection p;
  p.element = AlgebraElement(coefficients(flat));
  p.defect = (flat - flat_ * p.element.coeffs).norm();
  return p;
}

const RVector& GeneratorSet::structure_constant(Eigen::Index i, Eigen::Index j) const {
  return structure_.at(static_cast<std::size_t>(i * r() + j));
}

AlgebraElement GeneratorSet::bracket(const AlgebraElement& x, const AlgebraElement& y) const {
  if (x.size() != r() || y.size() != r()) throw StructuralError("bracket: coefficient size mismatch");
  RVector out = RVector::Zero(r());
  for (Eigen::Index i = 0; i < r(); ++i) {
    if (x.coeffs[i] == 0.0) continue;
    for (Eigen::Index j = 0; j < r(); ++j) {
      if (y.coeffs[j] == 0.0 || i == j) continue;
      out += (x.coeffs[i] * y.coeffs[j]) * structure_constant(i, j);
    }
  }
  return AlgebraElement(std::move(out));
}

bool GeneratorSet::operator==(const GeneratorSet& other) const {
  if (n_ != other.n_ || r() != other.r() || factors_ != other.factors_) return false;
  for (Eigen::Index i = 0; i < r(); ++i) {
    if (gen(i) != other.gen(i)) return false;
  }
  return true;
}

ValidationReport validate_generators(const GeneratorSet& gs, double tol) {
  ValidationReport report;
  report.tol = tol;
  for (const auto& g : gs.gens()) {
    report.skew_defect = std::max(report.skew_defect, (g + g.adjoint()).norm());
  }
  report.closure_defect = gs.closure_defect_;
  report.passed = report.skew_defect < tol && report.closure_defect < tol;
  return report;
}

CVector act(const GeneratorSet& gs, const AlgebraElement& x, const CVector& v) {
  if (v.size() != gs.n()) {
    throw StructuralError(
        fmt::format("vector of size {} cannot be acted on by {}x{} generators", v.size(), gs.n(),
                    gs.n()));
  }
  return gs.matrix(x) * v;
}

CMatrix expm(const CMatrix& a) {
  const Eigen::Index n = a.rows();
  const double norm = a.cwiseAbs().colwise().sum().maxCoeff();
  int squarings = 0;
  if (norm > 0.25) squarings = static_cast<int>(std::ceil(std::log2(norm / 0.25)));
  const CMatrix scaled = a / std::ldexp(1.0, squarings);

  CMatrix result = CMatrix::Identity(n, n);
  CMatrix term = CMatrix::Identity(n, n);
  for (int k = 1; k <= 40; ++k) {
    term = term * scaled / static_cast<double>(k);
    result += term;
    if (term.cwiseAbs().maxCoeff() < 1e-18) break;
  }
  for (int s = 0; s < squarings; ++s) result = result * result;
  return result;
}

CMatrix exponentiate(const GeneratorSet& gs, const AlgebraElement& x) {
  return expm(gs.matrix(x));
}

RVector realify(const CVector& v) {
  RVector out(2 * v.size());
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    out[2 * i] = v[i].real();
    out[2 * i + 1] = v[i].imag();
  }
  return out;
}

CVector unrealify(const RVector& x) {
  if (x.size() % 2 != 0) throw StructuralError("realified vector must have even length");
  CVector out(x.size() / 2);
  for (Eigen::Index i = 0; i < out.size(); ++i) out[i] = Complex(x[2 * i], x[2 * i + 1]);
  return out;
}

RMatrix realify_matrix(const CMatrix& m) {
  RMatrix out(2 * m.rows(), 2 * m.cols());
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      const double a = m(i, j).real();
      const double b = m(i, j).imag();
      out(2 * i, 2 * j) = a;
      out(2 * i, 2 * j + 1) = -b;
      out(2 * i + 1, 2 * j) = b;
      out(2 * i + 1, 2 * j + 1) = a;
    }
  }
  return out;
}

RMatrix real_action_matrix(const GeneratorSet& gs, Eigen::Index i) {
  return realify_matrix(gs.gen(i));
}

AlgebraElement random_algebra_element(const GeneratorSet& gs, std::uint64_t seed, double scale,
                                      std::uint64_t stream) {
  if (scale < 0.0) throw PreconditionError("random_algebra_element: scale must be >= 0");
  Rng rng(seed, stream);
  return AlgebraElement(scale * rng.normal_vector(gs.r()));
}

RMatrix adjoint_matrix(const GeneratorSet& gs, const CMatrix& u) {
  RMatrix c(gs.r(), gs.r());
  const CMatrix u_inv = u.adjoint();
  for (Eigen::Index j = 0; j < gs.r(); ++j) {
    c.col(j) = gs.project(u * gs.gen(j) * u_inv).element.coeffs;
  }
  return c;
}

GeneratorSet su2_irrep(int dim, double coupling) {
  if (dim < 1) throw PreconditionError("su2_irrep: dimension must be >= 1");
  const double j = 0.5 * (dim - 1);
  CMatrix jp = CMatrix::Zero(dim, dim);
  CMatrix j3 = CMatrix::Zero(dim, dim);
  for (int k = 0; k < dim; ++k) {
    const double m = j - k;
    j3(k, k) = m;
    if (k + 1 < dim) {
      const double lower = m - 1.0;
      jp(k, k + 1) = std::sqrt(j * (j + 1.0) - lower * (lower + 1.0));
    }
  }
  const CMatrix jm = jp.adjoint();
  const Complex i_unit(0.0, 1.0);
  const CMatrix j1 = 0.5 * (jp + jm);
  const CMatrix j2 = (jp - jm) / (2.0 * i_unit);
  std::vector<CMatrix> gens{coupling * i_unit * j1, coupling * i_unit * j2, coupling * i_unit * j3};
  return GeneratorSet(std::move(gens),
                      {FactorLabel{"su2", "simple", coupling, {0, 1, 2}}});
}

}  // namespace ssb
