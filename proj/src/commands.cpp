#include "ssb/commands.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>

#include <fmt/format.h>

#include "json_util.hpp"
#include "ssb/gridfile.hpp"
#include "ssb/linalg.hpp"
#include "ssb/random.hpp"
#include "ssb/unitarygauge.hpp"

namespace ssb::cli {

using json::Json;

std::uint64_t resolve_seed(std::optional<std::uint64_t> flag) {
  if (flag) return *flag;
  const char* env = std::getenv("SSB_SPECTRUM_SEED");
  if (env == nullptr || *env == '\0') return kDefaultSeed;
  char* end = nullptr;
  errno = 0;
  const unsigned long long value = std::strtoull(env, &end, 10);
  if (errno != 0 || end == env || *end != '\0' || env[0] == '-') {
    throw PreconditionError(fmt::format("SSB_SPECTRUM_SEED='{}' is not an unsigned integer", env));
  }
  return value;
}

namespace {

constexpr double kInvarianceTol = 1e-9;
constexpr double kFdTol = 1e-6;

}  // namespace

ModelFile preset_model_file() {
  const electroweak::Params p;
  ModelFile f{electroweak::build_model(p), {}, std::nullopt, GridSpec{{16, 16}, 1.0 / 16.0, Metric::euclidean}};
  for (auto rep : {electroweak::left_doublet(p), electroweak::higgs_doublet(p), electroweak::right_singlet(p)}) {
    f.representations.emplace(rep.name, rep);
  }
  f.yukawa = YukawaSpec{{"E_L", "Phi", "e_R"}, electroweak_yukawa_tensor(), 0.5, 1};
  return f;
}

namespace {

ModelFile load_or_preset(const Options& opts) {
  return opts.model_path.empty() ? preset_model_file() : load_model_file(opts.model_path);
}

CVector vacuum_of(const HiggsModel& model, std::uint64_t seed) {
  if (model.vacuum) return *model.vacuum;
  Rng rng(seed, 0);
  return find_vacuum(model, rng.complex_normal_vector(model.gens.n())).vacuum;
}

Json checks_json(const std::vector<Check>& checks) {
  Json out = Json::array();
  for (const auto& c : checks) {
    out.push_back(Json{{"name", c.name}, {"value", c.value}, {"tol", c.tol}, {"passed", c.passed}});
  }
  return out;
}

bool all_passed(const std::vector<Check>& checks) {
  return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.passed; });
}

std::string checks_table(const std::vector<Check>& checks) {
  std::string out = "checks\n";
  for (const auto& c : checks) {
    out += fmt::format("  {:<4} {:<40} {:.3e} (tol {:.1e})\n", c.passed ? "ok" : "FAIL", c.name, c.value, c.tol);
  }
  return out;
}

void add_algebra_checks(const GeneratorSet& gs, std::vector<Check>& checks) {
  const ValidationReport v = validate_generators(gs);
  checks.push_back(make_check("generators skew-Hermitian", v.skew_defect, kTolAlg));
  checks.push_back(make_check("generators closed under bracket", v.closure_defect, kTolAlg));
}

double max_abs(const CMatrix& m) { return m.size() ? m.cwiseAbs().maxCoeff() : 0.0; }

}  // namespace

SpectrumReport spectrum_report(const HiggsModel& model, std::uint64_t seed) {
  const CVector v0 = vacuum_of(model, seed);
  SpectrumReport rep;
  if (v0.norm() == 0.0) {
    const QuadraticReport q = quadratic_lagrangian(model, v0);
    rep.command = "spectrum";
    rep.n = model.gens.n();
    rep.r = model.gens.r();
    rep.d = 0;
    rep.vacuum = v0;
    for (const auto& mode : q.unbroken) {
      rep.unbroken_basis.push_back(mode.generator.coeffs);
      rep.boson_masses.push_back(mode.mass);
    }
    for (const auto& mode : q.higgs) {
      rep.higgs_masses.push_back(mode.mass);
      rep.hessian_eigenvalues.push_back(2.0 * mode.mass_squared);
    }
    rep.mass_form = mass_form(model.gens, v0).matrix;
    rep.note = "unbroken: H = G, d = 0";
    if (!q.note.empty()) rep.note += "; " + q.note;
  } else {
    rep = report_from_spectrum("spectrum", compute_spectrum(model, v0));
  }
  add_algebra_checks(model.gens, rep.checks);
  rep.checks.push_back(make_check("potential invariance (100 samples)",
                                  check_potential_invariance(model, 100, seed), kInvarianceTol));
  rep.checks.push_back(make_check("vacuum gradient norm", check_vacuum(model, v0).gradient_norm, kTolVac));
  return rep;
}

SpectrumReport electroweak_report(const electroweak::Params& params, std::uint64_t seed, double tol) {
  const HiggsModel model = electroweak::build_model(params);
  SpectrumReport rep = spectrum_report(model, seed);
  rep.command = "electroweak";
  const electroweak::MassPredictions pred = electroweak::boson_mass_predictions(params);
  ElectroweakSummary s;
  s.params = params;
  s.weinberg_angle = electroweak::weinberg_angle(params);
  s.m_w = pred.m_w;
  s.m_z = pred.m_z;
  s.m_gamma = pred.m_gamma;
  s.m_h = pred.m_h;
  s.elementary_charge = electroweak::elementary_charge(params);
  rep.electroweak = s;

  const std::vector<double> expected{pred.m_z, pred.m_w, pred.m_w, pred.m_gamma};
  double boson_err = rep.boson_masses.size() == expected.size() ? 0.0 : std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < expected.size() && i < rep.boson_masses.size(); ++i) {
    boson_err = std::max(boson_err, std::abs(rep.boson_masses[i] - expected[i]));
  }
  rep.checks.push_back(make_check("gauge boson masses vs closed form", boson_err, tol));
  const double higgs_err = rep.higgs_masses.size() == 1 ? std::abs(rep.higgs_masses[0] - pred.m_h)
                                                        : std::numeric_limits<double>::infinity();
  rep.checks.push_back(make_check("Higgs mass vs sqrt(mu)", higgs_err, tol));
  rep.checks.push_back(make_check("Goldstone count |d - 3|", std::abs(rep.d - 3.0), 0.0));
  rep.checks.push_back(make_check("mass form vs closed form",
                                  (rep.mass_form - electroweak::mass_form_closed_form(params.g, params.gp,
                                                                                      electroweak::vacuum_norm(params)))
                                      .cwiseAbs()
                                      .maxCoeff(),
                                  1e-12));
  const auto alpha = electroweak::rotated_basis(params);
  RMatrix unbroken(4, static_cast<Eigen::Index>(rep.unbroken_basis.size()));
  for (std::size_t i = 0; i < rep.unbroken_basis.size(); ++i) unbroken.col(static_cast<Eigen::Index>(i)) = rep.unbroken_basis[i];
  const double angle = unbroken.cols() == 1 ? linalg::subspace_angle(unbroken, alpha[3].coeffs)
                                            : std::numeric_limits<double>::infinity();
  rep.checks.push_back(make_check("unbroken direction vs alpha_4", angle, 1e-8));
  rep.checks.push_back(make_check("|alpha_4 v0|", act(model.gens, alpha[3], rep.vacuum).norm(), 1e-12));
  rep.checks.push_back(make_check("cos theta_W vs m_W / m_Z",
                                  std::abs(std::cos(s.weinberg_angle) - rep.boson_masses.at(1) / rep.boson_masses.at(0)),
                                  1e-12));
  rep.checks.push_back(make_check("e = g g'/sqrt(g^2+g'^2) vs g sin theta_W",
                                  std::abs(s.elementary_charge - params.g * std::sin(s.weinberg_angle)), 1e-14));
  return rep;
}

Output run_spectrum(const Options& opts) {
  const ModelFile file = load_or_preset(opts);
  const SpectrumReport rep = spectrum_report(file.model, opts.seed);
  return Output{opts.format == Format::machine ? emit_report(rep) : render_table(rep), rep.passed() ? 0 : 1};
}

Output run_electroweak(const Options& opts, const electroweak::Params& params) {
  const SpectrumReport rep = electroweak_report(params, opts.seed, opts.tol.value_or(1e-9));
  return Output{opts.format == Format::machine ? emit_report(rep) : render_table(rep), rep.passed() ? 0 : 1};
}

Output run_validate(const Options& opts) {
  const ModelFile file = load_or_preset(opts);
  const HiggsModel& model = file.model;
  std::vector<Check> checks;
  add_algebra_checks(model.gens, checks);
  checks.push_back(make_check("potential invariance (100 samples)",
                              check_potential_invariance(model, 100, opts.seed), kInvarianceTol));

  const PotentialFunctions pot = make_potential(model.potential);
  auto value = [&](const CVector& v) { return model.potential.value(v); };
  double grad_err = 0.0;
  double hess_err = 0.0;
  for (int k = 0; k < 50; ++k) {
    Rng rng(opts.seed, static_cast<std::uint64_t>(1000 + k));
    const CVector v = rng.complex_normal_vector(model.gens.n());
    const RVector g = pot.gradient(v);
    const RMatrix h = pot.hessian(v);
    grad_err = std::max(grad_err, (g - fd_gradient(value, v)).norm() / std::max(1.0, g.norm()));
    hess_err = std::max(hess_err, (h - fd_hessian(value, v)).norm() / std::max(1.0, h.norm()));
  }
  checks.push_back(make_check("gradient vs finite differences (50 points)", grad_err, kFdTol));
  checks.push_back(make_check("Hessian vs finite differences (50 points)", hess_err, kFdTol));

  if (model.vacuum) {
    const VacuumCheck vc = check_vacuum(model, *model.vacuum);
    checks.push_back(make_check("vacuum gradient norm", vc.gradient_norm, kTolVac));
    checks.push_back(make_check("vacuum Hessian negativity", std::max(0.0, -vc.min_hessian_eigenvalue), kTolVac));
  }
  for (const auto& [name, rep] : file.representations) {
    double skew = 0.0;
    for (const auto& g : rep.gens) skew = std::max(skew, (g + g.adjoint()).norm());
    checks.push_back(make_check(fmt::format("representation {} skew-Hermitian", name), skew, kTolAlg));
  }
  if (file.yukawa) {
    const YukawaSpec& y = *file.yukawa;
    const double defect = triple_invariance_defect(y.tensor, file.representations.at(y.slots[0]),
                                                   file.representations.at(y.slots[1]),
                                                   file.representations.at(y.slots[2]));
    checks.push_back(make_check("Yukawa tensor invariance", defect, opts.tol.value_or(kTolAlg)));
  }
  const bool ok = all_passed(checks);
  if (opts.format == Format::machine) {
    return Output{json::emit(Json{{"command", "validate"}, {"checks", checks_json(checks)}, {"passed", ok}}), ok ? 0 : 1};
  }
  return Output{"validate report\n" + checks_table(checks), ok ? 0 : 1};
}

Output run_unitary_gauge(const Options& opts) {
  const ModelFile file = load_or_preset(opts);
  const HiggsModel& model = file.model;
  const CVector v0 = vacuum_of(model, opts.seed);
  const SpectrumResult spec = compute_spectrum(model, v0);

  MultipletField field = [&] {
    if (!opts.input_path.empty()) {
      const GridFile in = read_grid_file(opts.input_path);
      if (in.kind != GridFieldKind::multiplet || in.n != model.gens.n()) {
        throw StructuralError(fmt::format("{}: expected a multiplet field with n = {}", opts.input_path, model.gens.n()));
      }
      return MultipletField{in.grid, in.n, in.multiplet};
    }
    const int dim = file.grid ? static_cast<int>(file.grid->shape.size()) : 2;
    const Metric metric = opts.metric.value_or(file.grid ? file.grid->metric : Metric::euclidean);
    const Grid grid(std::vector<int>(static_cast<std::size_t>(dim), opts.grid), 1.0 / opts.grid, metric);
    MultipletField f = smooth_random_multiplet(grid, model.gens.n(), opts.seed, 0.5);
    for (auto& v : f.values) v += v0;
    return f;
  }();

  UnitaryGaugeOptions ug;
  ug.tol = opts.tol.value_or(kTolUg);
  const UnitaryGaugeField result = apply_unitary_gauge_field(model.gens, v0, spec, field.values, ug);
  double norm_err = 0.0;
  for (std::size_t s = 0; s < field.values.size(); ++s) {
    const double n0 = field.values[s].norm();
    norm_err = std::max(norm_err, std::abs(result.transformed[s].norm() - n0) / std::max(1.0, n0));
  }
  std::vector<Check> checks;
  checks.push_back(make_check("max Goldstone defect", result.max_defect, ug.tol));
  checks.push_back(make_check("norm preservation", norm_err, 1e-12));
  if (!opts.output_path.empty()) {
    write_grid_file(opts.output_path,
                    make_grid_file(MultipletField{field.grid, field.n, result.transformed}, model.gens.r()));
  }
  const bool ok = all_passed(checks);
  if (opts.format == Format::machine) {
    return Output{json::emit(Json{{"command", "unitary-gauge"},
                                  {"sites", field.values.size()},
                                  {"max_defect", result.max_defect},
                                  {"output", opts.output_path},
                                  {"checks", checks_json(checks)},
                                  {"passed", ok}}),
                  ok ? 0 : 1};
  }
  std::string text = fmt::format("unitary-gauge report\n  sites               {}\n  max Goldstone defect {:.3e}\n",
                                 field.values.size(), result.max_defect);
  if (!opts.output_path.empty()) text += fmt::format("  written to          {}\n", opts.output_path);
  return Output{text + checks_table(checks), ok ? 0 : 1};
}

double convergence_order(const std::vector<double>& spacings, const std::vector<double>& errors) {
  const std::size_t m = spacings.size();
  if (m < 2 || errors.size() != m) throw PreconditionError("convergence_order: need at least two levels");
  return std::log(errors[m - 2] / errors[m - 1]) / std::log(spacings[m - 2] / spacings[m - 1]);
}

CovarianceStudy covariance_study(const GeneratorSet& gs, const PotentialFunctions& potential, int dim,
                                 int extent, int refine, std::uint64_t seed, Metric metric) {
  if (refine < 1) throw PreconditionError("covariance_study: need at least one refinement");
  CovarianceStudy study;
  for (int k = 0; k <= refine; ++k) {
    const int n_ext = extent << k;
    const Grid grid(std::vector<int>(static_cast<std::size_t>(dim), n_ext), 1.0 / n_ext, metric);
    const GaugeTransformField sigma = smooth_random_gauge_transform(gs, grid, seed);
    const GaugeField a = smooth_random_gauge_field(gs, grid, seed + 1);
    const MultipletField psi = smooth_random_multiplet(grid, gs.n(), seed + 2);
    const GaugeField a2 = gauge_transform_gauge(gs, sigma, a).field;
    const MultipletField psi2 = gauge_transform_matter(sigma, psi);

    CovarianceLevel level{n_ext, grid.spacing(), 0.0, 0.0, 0.0, 0.0};
    for (int mu = 0; mu < dim; ++mu) {
      const MultipletField lhs = covariant_derivative(gs, a2, psi2, mu);
      const MultipletField rhs = gauge_transform_matter(sigma, covariant_derivative(gs, a, psi, mu));
      for (std::size_t s = 0; s < grid.sites(); ++s) {
        level.covariant_error = std::max(level.covariant_error, max_abs(lhs.values[s] - rhs.values[s]));
      }
    }
    const FieldStrength f = field_strength(gs, a);
    const FieldStrength f2 = field_strength(gs, a2);
    for (std::size_t s = 0; s < grid.sites(); ++s) {
      const CMatrix& u = sigma.values[s];
      for (int mu = 0; mu < dim; ++mu) {
        for (int nu = mu + 1; nu < dim; ++nu) {
          const CMatrix diff = gs.matrix(AlgebraElement(f2.at(s, mu, nu))) -
                               u * gs.matrix(AlgebraElement(f.at(s, mu, nu))) * u.adjoint();
          level.curvature_error = std::max(level.curvature_error, max_abs(diff));
        }
      }
    }
    if (!study.levels.empty()) {
      const CovarianceLevel& prev = study.levels.back();
      level.covariant_order = convergence_order({prev.spacing, level.spacing}, {prev.covariant_error, level.covariant_error});
      level.curvature_order = convergence_order({prev.spacing, level.spacing}, {prev.curvature_error, level.curvature_error});
    }
    study.levels.push_back(level);

    if (k == 0) {
      const CMatrix u0 = exponentiate(gs, random_algebra_element(gs, seed + 3, 1.0));
      const GaugeTransformField constant = GaugeTransformField::constant(grid, u0);
      const GaugeField ac = gauge_transform_gauge(gs, constant, a).field;
      const MultipletField pc = gauge_transform_matter(constant, psi);
      auto diff = [](const ScalarField& x, const ScalarField& y) {
        double m = 0.0;
        for (std::size_t s = 0; s < x.values.size(); ++s) m = std::max(m, std::abs(x.values[s] - y.values[s]));
        return m;
      };
      study.yang_mills_invariance = diff(yang_mills_density(field_strength(gs, a)), yang_mills_density(field_strength(gs, ac)));
      study.klein_gordon_invariance = diff(klein_gordon_density(gs, a, psi, 1.3), klein_gordon_density(gs, ac, pc, 1.3));
      study.higgs_invariance = diff(higgs_density(gs, a, psi, potential), higgs_density(gs, ac, pc, potential));
    }
  }
  std::vector<double> h, ec, ef;
  for (const auto& l : study.levels) {
    h.push_back(l.spacing);
    ec.push_back(l.covariant_error);
    ef.push_back(l.curvature_error);
  }
  study.covariant_order = convergence_order(h, ec);
  study.curvature_order = convergence_order(h, ef);
  return study;
}

Output run_gauge_check(const Options& opts) {
  const ModelFile file = load_or_preset(opts);
  const int dim = file.grid ? static_cast<int>(file.grid->shape.size()) : 2;
  const Metric metric = opts.metric.value_or(file.grid ? file.grid->metric : Metric::euclidean);
  const CovarianceStudy study = covariance_study(file.model.gens, make_potential(file.model.potential), dim,
                                                 opts.grid, opts.refine, opts.seed, metric);
  const double inv_tol = opts.tol.value_or(1e-10);
  std::vector<Check> checks;
  checks.push_back(make_check("covariant derivative order |p - 2|", std::abs(study.covariant_order - 2.0), 0.1));
  checks.push_back(make_check("field strength order |p - 2|", std::abs(study.curvature_order - 2.0), 0.1));
  checks.push_back(make_check("Yang-Mills density, constant sigma", study.yang_mills_invariance, inv_tol));
  checks.push_back(make_check("Klein-Gordon density, constant sigma", study.klein_gordon_invariance, inv_tol));
  checks.push_back(make_check("Higgs density, constant sigma", study.higgs_invariance, inv_tol));
  const bool ok = all_passed(checks);
  if (opts.format == Format::machine) {
    Json levels = Json::array();
    for (const auto& l : study.levels) {
      levels.push_back(Json{{"extent", l.extent},
                            {"h", l.spacing},
                            {"covariant_error", l.covariant_error},
                            {"curvature_error", l.curvature_error},
                            {"covariant_order", l.covariant_order},
                            {"curvature_order", l.curvature_order}});
    }
    return Output{json::emit(Json{{"command", "gauge-check"},
                                  {"levels", levels},
                                  {"covariant_order", study.covariant_order},
                                  {"curvature_order", study.curvature_order},
                                  {"checks", checks_json(checks)},
                                  {"passed", ok}}),
                  ok ? 0 : 1};
  }
  std::string text = "gauge-check report\n";
  text += fmt::format("  {:>6} {:>12} {:>16} {:>8} {:>16} {:>8}\n", "N", "h", "covariant err", "order",
                      "curvature err", "order");
  for (const auto& l : study.levels) {
    text += fmt::format("  {:>6} {:>12.6g} {:>16.6e} {:>8.4f} {:>16.6e} {:>8.4f}\n", l.extent, l.spacing,
                        l.covariant_error, l.covariant_order, l.curvature_error, l.curvature_order);
  }
  return Output{text + checks_table(checks), ok ? 0 : 1};
}

Output run_yukawa(const Options& opts) {
  const ModelFile file = load_or_preset(opts);
  if (!file.yukawa) throw PreconditionError("yukawa: the model file has no [yukawa] section");
  const YukawaSpec& y = *file.yukawa;
  const double defect = triple_invariance_defect(y.tensor, file.representations.at(y.slots[0]),
                                                 file.representations.at(y.slots[1]),
                                                 file.representations.at(y.slots[2]));
  const CVector v0 = vacuum_of(file.model, opts.seed);
  const FermionMasses masses = fermion_mass_after_breaking(y.tensor, file.model, v0, y.g_y, y.higgs_slot);
  std::vector<Check> checks;
  checks.push_back(make_check("Yukawa tensor invariance", defect, opts.tol.value_or(kTolAlg)));
  const bool ok = all_passed(checks);
  if (opts.format == Format::machine) {
    return Output{json::emit(Json{{"command", "yukawa"},
                                  {"invariance_defect", defect},
                                  {"g_Y", y.g_y},
                                  {"vacuum_norm", v0.norm()},
                                  {"fermion_masses", masses.rows},
                                  {"warning", masses.warning},
                                  {"checks", checks_json(checks)},
                                  {"passed", ok}}),
                  ok ? 0 : 1};
  }
  std::string text = fmt::format("yukawa report\n  invariance defect   {:.3e}\n  g_Y                 {:.12g}\n", defect, y.g_y);
  const int fermion_slot = y.higgs_slot == 0 ? 1 : 0;
  for (std::size_t i = 0; i < masses.rows.size(); ++i) {
    text += fmt::format("  mass, {} row {}      {:.12g}\n", y.slots[static_cast<std::size_t>(fermion_slot)], i, masses.rows[i]);
  }
  if (!masses.warning.empty()) text += "  warning: " + masses.warning + "\n";
  return Output{text + checks_table(checks), ok ? 0 : 1};
}

}  // namespace ssb::cli
