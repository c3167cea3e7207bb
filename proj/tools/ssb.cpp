// ssb: spectra of spontaneously broken gauge theories.

#include <cstdio>
#include <map>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "ssb/commands.hpp"

namespace {

struct Flags {
  std::string model;
  std::optional<std::uint64_t> seed;
  std::optional<double> tol;
  int grid = 16;
  int refine = 2;
  std::string format = "table";
  std::string metric;
  std::string input;
  std::string output;
};

void add_common(CLI::App* cmd, Flags& f) {
  cmd->add_option("--model", f.model, "Model file (defaults to the built-in electroweak preset)");
  cmd->add_option("--seed", f.seed, "Seed for stochastic checks (env SSB_SPECTRUM_SEED, default 12345)");
  cmd->add_option("--tol", f.tol, "Override the principal tolerance of the command");
  cmd->add_option("--format", f.format, "Output format")->check(CLI::IsMember({"table", "machine"}));
}

void add_grid(CLI::App* cmd, Flags& f) {
  cmd->add_option("--grid", f.grid, "Grid extent per axis")->check(CLI::Range(4, 1 << 16));
  cmd->add_option("--metric", f.metric, "Spacetime metric")->check(CLI::IsMember({"euclidean", "lorentzian"}));
}

ssb::cli::Options to_options(const Flags& f) {
  ssb::cli::Options o;
  o.model_path = f.model;
  o.seed = ssb::cli::resolve_seed(f.seed);
  o.tol = f.tol;
  o.grid = f.grid;
  o.refine = f.refine;
  o.format = f.format == "machine" ? ssb::cli::Format::machine : ssb::cli::Format::table;
  if (f.metric == "euclidean") o.metric = ssb::Metric::euclidean;
  if (f.metric == "lorentzian") o.metric = ssb::Metric::lorentzian;
  o.input_path = f.input;
  o.output_path = f.output;
  return o;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Spontaneous symmetry breaking spectra: gauge boson, Goldstone and Higgs masses"};
  app.require_subcommand(1);
  Flags flags;
  ssb::electroweak::Params params;
  bool emit_model = false;

  auto* spectrum = app.add_subcommand("spectrum", "Mass spectrum at the vacuum of a model");
  add_common(spectrum, flags);
  auto* validate = app.add_subcommand("validate", "Run every validation and invariance check on a model");
  add_common(validate, flags);
  auto* unitary = app.add_subcommand("unitary-gauge", "Rotate a grid Higgs field into unitary gauge");
  add_common(unitary, flags);
  add_grid(unitary, flags);
  unitary->add_option("--input", flags.input, "Grid field file to transform (default: smooth random field)")
      ->check(CLI::ExistingFile);
  unitary->add_option("--output", flags.output, "Write the transformed field here");
  auto* gauge = app.add_subcommand("gauge-check", "Convergence order of the discrete gauge covariance");
  add_common(gauge, flags);
  add_grid(gauge, flags);
  gauge->add_option("--refine", flags.refine, "Number of grid doublings")->check(CLI::Range(1, 6));
  auto* yukawa = app.add_subcommand("yukawa", "Yukawa invariance and fermion masses after breaking");
  add_common(yukawa, flags);
  auto* ew = app.add_subcommand("electroweak", "Built-in SU(2) x U(1) preset report");
  ew->add_option("--seed", flags.seed, "Seed for stochastic checks");
  ew->add_option("--tol", flags.tol, "Tolerance for the closed-form comparisons (default 1e-9)");
  ew->add_option("--format", flags.format, "Output format")->check(CLI::IsMember({"table", "machine"}));
  ew->add_option("--g", params.g, "SU(2) coupling")->check(CLI::PositiveNumber);
  ew->add_option("--gp", params.gp, "U(1) coupling")->check(CLI::PositiveNumber);
  ew->add_option("--mu", params.mu, "Quadratic potential coefficient")->check(CLI::PositiveNumber);
  ew->add_option("--lambda", params.lambda, "Quartic potential coefficient")->check(CLI::PositiveNumber);
  ew->add_flag("--emit-model", emit_model, "Print the preset as a model file and exit");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  }

  try {
    const ssb::cli::Options opts = to_options(flags);
    ssb::cli::Output out;
    if (*spectrum) {
      out = ssb::cli::run_spectrum(opts);
    } else if (*validate) {
      out = ssb::cli::run_validate(opts);
    } else if (*unitary) {
      out = ssb::cli::run_unitary_gauge(opts);
    } else if (*gauge) {
      out = ssb::cli::run_gauge_check(opts);
    } else if (*yukawa) {
      out = ssb::cli::run_yukawa(opts);
    } else if (emit_model) {
      out.text = ssb::emit_model_file(ssb::cli::preset_model_file());
    } else {
      out = ssb::cli::run_electroweak(opts, params);
    }
    std::fputs(out.text.c_str(), stdout);
    return out.exit_code;
  } catch (const std::exception& e) {
    fmt::print(stderr, "error: {}\n", e.what());
    return 2;
  }
}
