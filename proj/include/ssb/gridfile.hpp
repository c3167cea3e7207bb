#pragma once

#include <string>
#include <vector>

#include "ssb/latticefields.hpp"

namespace ssb {

/// Binary grid field file, little-endian throughout:
///
///   char[8]  magic "SSBGRID1"
///   uint32   dim
///   uint32   shape[dim]
///   float64  h
///   uint32   n        multiplet dimension (rows of each site value)
///   uint32   r        algebra dimension
///   uint32   metric   0 euclidean, 1 lorentzian
///   uint32   kind     0 multiplet, 1 unitary matrix, 2 gauge coefficients
///   payload  sites in row-major order (last axis fastest); per site:
///            kind 0: n (re, im) float64 pairs
///            kind 1: n x n (re, im) pairs, row-major
///            kind 2: dim x r float64 coefficients, direction-major
enum class GridFieldKind : std::uint32_t { multiplet = 0, unitary = 1, gauge = 2 };

struct GridFile {
  Grid grid;
  Eigen::Index n = 0;
  Eigen::Index r = 0;
  GridFieldKind kind = GridFieldKind::multiplet;
  std::vector<CVector> multiplet;
  std::vector<CMatrix> unitary;
  std::vector<RVector> gauge;  // index site * dim + mu
};

GridFile make_grid_file(const MultipletField& field, Eigen::Index r);
GridFile make_grid_file(const GaugeTransformField& field, Eigen::Index r);
GridFile make_grid_file(const GaugeField& field, Eigen::Index n);

void write_grid_file(const std::string& path, const GridFile& file);
/// Throws Error on a bad header, truncated payload or trailing bytes.
GridFile read_grid_file(const std::string& path);

std::string encode_grid_file(const GridFile& file);
GridFile decode_grid_file(const std::string& bytes);

}  // namespace ssb
