#pragma once

#include <vector>

#include "ssb/types.hpp"

namespace ssb::linalg {

/// Orthonormal basis of the column span of `vectors`, independent of how the
/// span was presented: the standard basis vectors are projected onto the span
/// and Gram-Schmidt is run in index order, skipping near-dependent residuals.
/// Each output column therefore has its first significant component positive.
/// `vectors` must already be orthonormal (e.g. eigenvectors or singular vectors).
RMatrix canonical_basis(const RMatrix& vectors, double tol = 1e-10);

/// Orthonormal kernel / co-kernel of a real linear map, by singular-value
/// thresholding at `rel_tol * sigma_max`. A zero map has a full kernel.
struct KernelSplit {
  RMatrix kernel;      // columns span ker(M)
  RMatrix complement;  // columns span ker(M)^perp in the domain
  RMatrix range;       // columns span im(M) in the codomain
  RMatrix cokernel;    // columns span im(M)^perp in the codomain
  RVector singular_values;
  Eigen::Index rank = 0;
};
KernelSplit kernel_split(const RMatrix& map, double rel_tol = 1e-8);

/// Symmetric eigendecomposition with eigenvalues sorted descending and
/// eigenvectors within clusters (gap < cluster_tol) canonicalised.
struct SymmetricEigen {
  RVector values;
  RMatrix vectors;
};
SymmetricEigen symmetric_eigen(const RMatrix& sym, double cluster_tol = 1e-8);

/// Replace each run of near-equal `values` (sorted descending) by the
/// canonical basis of the corresponding columns of `vectors`.
void canonicalize_clusters(const RVector& values, RMatrix& vectors, double cluster_tol = 1e-8);

/// Largest principal angle between the column spans of two orthonormal bases.
double subspace_angle(const RMatrix& a, const RMatrix& b);

}  // namespace ssb::linalg
