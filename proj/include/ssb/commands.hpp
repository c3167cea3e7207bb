#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ssb/electroweak.hpp"
#include "ssb/latticefields.hpp"
#include "ssb/modelfile.hpp"
#include "ssb/report.hpp"

namespace ssb::cli {

inline constexpr std::uint64_t kDefaultSeed = 12345;

/// Explicit flag, else SSB_SPECTRUM_SEED, else kDefaultSeed. Throws
/// PreconditionError when the variable is not an unsigned integer.
std::uint64_t resolve_seed(std::optional<std::uint64_t> flag);

enum class Format { table, machine };

struct Options {
  std::string model_path;
  std::uint64_t seed = kDefaultSeed;
  std::optional<double> tol;
  int grid = 16;
  int refine = 2;
  Format format = Format::table;
  std::optional<Metric> metric;
  std::string input_path;   // unitary-gauge: grid field to transform
  std::string output_path;  // unitary-gauge: where to write the result
};

/// The electroweak preset at g = 2, g' = 1, mu = 2, lambda = 1 with its
/// fermion representations, Yukawa coupling g_Y = 0.5 and a 16 x 16 grid.
ModelFile preset_model_file();

struct Output {
  std::string text;
  int exit_code = 0;
};

Output run_spectrum(const Options& opts);
Output run_validate(const Options& opts);
Output run_unitary_gauge(const Options& opts);
Output run_gauge_check(const Options& opts);
Output run_yukawa(const Options& opts);
Output run_electroweak(const Options& opts, const electroweak::Params& params);

/// Spectrum report for a model at its vacuum (given, or found from a seeded
/// start). A zero vacuum yields the unbroken report with d = 0.
SpectrumReport spectrum_report(const HiggsModel& model, std::uint64_t seed);
SpectrumReport electroweak_report(const electroweak::Params& params, std::uint64_t seed, double tol);

struct CovarianceLevel {
  int extent = 0;
  double spacing = 0.0;
  double covariant_error = 0.0;  // max |nabla^{A'}(sigma psi) - sigma nabla^A psi|
  double curvature_error = 0.0;  // max |F^{A'} - sigma F^A sigma^-1|
  double covariant_order = 0.0;  // against the previous level, 0 on the first
  double curvature_order = 0.0;
};

struct CovarianceStudy {
  std::vector<CovarianceLevel> levels;
  double covariant_order = 0.0;  // observed order between the two finest levels
  double curvature_order = 0.0;
  double yang_mills_invariance = 0.0;  // constant sigma, max |L' - L|
  double klein_gordon_invariance = 0.0;
  double higgs_invariance = 0.0;
};

/// Smooth random sigma, A, psi on grids extent * 2^k (k = 0..refine), unit
/// periodic box in `dim` dimensions.
CovarianceStudy covariance_study(const GeneratorSet& gs, const PotentialFunctions& potential,
                                 int dim, int extent, int refine, std::uint64_t seed, Metric metric);

/// Observed order log(e_{m-1} / e_m) / log(h_{m-1} / h_m) of the two finest
/// levels; coarser levels only show the approach to the asymptotic range.
double convergence_order(const std::vector<double>& spacings, const std::vector<double>& errors);

}  // namespace ssb::cli
