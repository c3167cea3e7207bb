#include "ssb/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace ssb::linalg {

RMatrix canonical_basis(const RMatrix& vectors, double tol) {
  const Eigen::Index dim = vectors.rows();
  const Eigen::Index k = vectors.cols();
  RMatrix out(dim, k);
  if (k == 0) return out;

  Eigen::Index found = 0;
  auto residual_of = [&](Eigen::Index i) {
    RVector u = vectors * vectors.row(i).transpose();  // P e_i
    for (Eigen::Index j = 0; j < found; ++j) u -= out.col(j).dot(u) * out.col(j);
    return u;
  };

  // Index order, accepting clearly independent residuals.
  constexpr double accept = 1e-6;
  for (Eigen::Index i = 0; i < dim && found < k; ++i) {
    RVector u = residual_of(i);
    const double norm = u.norm();
    if (norm > accept) {
      u /= norm;
      // Second pass keeps orthogonality at round-off level.
      for (Eigen::Index j = 0; j < found; ++j) u -= out.col(j).dot(u) * out.col(j);
      out.col(found++) = u.normalized();
    }
  }
  // Pathological spans: fall back to pivoting on the largest residual.
  while (found < k) {
    Eigen::Index best = 0;
    double best_norm = -1.0;
    for (Eigen::Index i = 0; i < dim; ++i) {
      const double norm = residual_of(i).norm();
      if (norm > best_norm + tol) {
        best_norm = norm;
        best = i;
      }
    }
    out.col(found++) = residual_of(best).normalized();
  }
  return out;
}

KernelSplit kernel_split(const RMatrix& map, double rel_tol) {
  KernelSplit split;
  const Eigen::Index rows = map.rows();
  const Eigen::Index cols = map.cols();
  Eigen::JacobiSVD<RMatrix> svd(map, Eigen::ComputeFullU | Eigen::ComputeFullV);
  split.singular_values = svd.singularValues();
  const double sigma_max = split.singular_values.size() > 0 ? split.singular_values[0] : 0.0;
  Eigen::Index rank = 0;
  if (sigma_max > 0.0) {
    for (Eigen::Index i = 0; i < split.singular_values.size(); ++i) {
      if (split.singular_values[i] > rel_tol * sigma_max) ++rank;
    }
  }
  split.rank = rank;
  split.complement = svd.matrixV().leftCols(rank);
  split.kernel = svd.matrixV().rightCols(cols - rank);
  split.range = svd.matrixU().leftCols(rank);
  split.cokernel = svd.matrixU().rightCols(rows - rank);
  return split;
}

SymmetricEigen symmetric_eigen(const RMatrix& sym, double cluster_tol) {
  const Eigen::Index n = sym.rows();
  SymmetricEigen out;
  if (n == 0) {
    out.values = RVector::Zero(0);
    out.vectors = RMatrix::Zero(0, 0);
    return out;
  }
  Eigen::SelfAdjointEigenSolver<RMatrix> solver(0.5 * (sym + sym.transpose()));
  out.values = solver.eigenvalues().reverse();
  out.vectors = solver.eigenvectors().rowwise().reverse();

  canonicalize_clusters(out.values, out.vectors, cluster_tol);
  return out;
}

void canonicalize_clusters(const RVector& values, RMatrix& vectors, double cluster_tol) {
  const Eigen::Index n = values.size();
  if (n == 0) return;
  const double scale = std::max(1.0, values.cwiseAbs().maxCoeff());
  Eigen::Index start = 0;
  while (start < n) {
    Eigen::Index stop = start + 1;
    while (stop < n && values[stop - 1] - values[stop] < cluster_tol * scale) ++stop;
    const Eigen::Index size = stop - start;
    vectors.middleCols(start, size) = canonical_basis(vectors.middleCols(start, size));
    start = stop;
  }
}

double subspace_angle(const RMatrix& a, const RMatrix& b) {
  if (a.cols() != b.cols()) return M_PI / 2;
  if (a.cols() == 0) return 0.0;
  const RMatrix residual = b - a * (a.transpose() * b);
  Eigen::JacobiSVD<RMatrix> svd(residual);
  return std::asin(std::min(1.0, svd.singularValues()[0]));
}

}  // namespace ssb::linalg
