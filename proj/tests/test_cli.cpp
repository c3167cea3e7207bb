#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <gtest/gtest.h>

#include "ssb/commands.hpp"
#include "ssb/gridfile.hpp"
#include "ssb/modelfile.hpp"
#include "ssb/report.hpp"

namespace ssb {
namespace {

namespace fs = std::filesystem;

std::string read_text(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

fs::path temp_path(const std::string& name) {
  return fs::temp_directory_path() / ("ssb_test_" + std::to_string(::getpid()) + "_" + name);
}

std::string write_temp(const std::string& name, const std::string& text) {
  const fs::path p = temp_path(name);
  std::ofstream(p, std::ios::binary) << text;
  return p.string();
}

std::vector<std::string> parse_errors(const std::string& text) {
  try {
    parse_model_file(text);
  } catch (const ModelFileError& e) {
    return e.errors();
  }
  return {};
}

bool any_contains(const std::vector<std::string>& errors, const std::string& needle) {
  for (const auto& e : errors)
    if (e.find(needle) != std::string::npos) return true;
  return false;
}

std::string replace_once(std::string text, const std::string& from, const std::string& to) {
  const auto pos = text.find(from);
  EXPECT_NE(pos, std::string::npos) << from;
  if (pos != std::string::npos) text.replace(pos, from.size(), to);
  return text;
}

const std::string kShipped = SSB_DATA_DIR "/electroweak.model";

TEST(ModelFile, ShippedFileMatchesThePreset) {
  const ModelFile f = load_model_file(kShipped);
  EXPECT_EQ(f, cli::preset_model_file());
  const HiggsModel built = electroweak::build_model({});
  EXPECT_TRUE(f.model.gens == built.gens);
  EXPECT_EQ(f.model.potential, built.potential);
  ASSERT_TRUE(f.model.vacuum.has_value());
  EXPECT_EQ(*f.model.vacuum, *built.vacuum);
}

TEST(ModelFile, EmitParseRoundTripIsExact) {
  const std::string text = read_text(kShipped);
  EXPECT_EQ(emit_model_file(parse_model_file(text)), text);
  const ModelFile preset = cli::preset_model_file();
  EXPECT_EQ(parse_model_file(emit_model_file(preset)), preset);
}

TEST(ModelFile, RoundTripKeepsNonTerminatingDecimals) {
  ModelFile f = cli::preset_model_file();
  f.model = electroweak::build_model({0.6532, 0.3497, 1.0 / 3.0, 0.129});
  f.representations.clear();
  f.yukawa.reset();
  const ModelFile back = parse_model_file(emit_model_file(f));
  EXPECT_EQ(back, f);
}

TEST(ModelFile, EmptyFile) {
  EXPECT_EQ(parse_errors(""), std::vector<std::string>{"missing [algebra]"});
  EXPECT_EQ(parse_errors("  \n"), std::vector<std::string>{"missing [algebra]"});
  const auto errs = parse_errors("{}");
  ASSERT_FALSE(errs.empty());
  EXPECT_EQ(errs[0], "missing [algebra]");
  EXPECT_TRUE(any_contains(errs, "missing [potential]"));
}

TEST(ModelFile, SyntaxErrorHasLineAndColumn) {
  const auto errs = parse_errors("{\n  \"algebra\": {\n    \"n\": 2,,\n");
  ASSERT_EQ(errs.size(), 1u);
  EXPECT_TRUE(any_contains(errs, "line 3")) << errs[0];
}

TEST(ModelFile, MismatchedRowLengthIsLocated) {
  const std::string text = replace_once(read_text(kShipped), "[[0.0, 0.0], [0.0, 1.0]],", "[[0.0, 0.0]],");
  const auto errs = parse_errors(text);
  EXPECT_TRUE(any_contains(errs, "algebra.generators[0][0]: has 1 entries, expected 2")) << ::testing::PrintToString(errs);
}

TEST(ModelFile, NonSkewGeneratorIsLocated) {
  const std::string text = replace_once(read_text(kShipped), "[[0.0, 0.5], [0.0, 0.0]],", "[[0.5, 0.0], [0.0, 0.0]],");
  EXPECT_TRUE(any_contains(parse_errors(text), "algebra.generators[3]: generator is not skew-Hermitian"));
}

TEST(ModelFile, NonPositiveParametersAreLocated) {
  const std::string text = replace_once(read_text(kShipped), "\"coupling\": 2.0", "\"coupling\": -2.0");
  EXPECT_TRUE(any_contains(parse_errors(text), "algebra.factors[0].coupling: must be > 0"));
  const std::string pot = replace_once(read_text(kShipped), "\"lambda\": 1.0", "\"lambda\": 0.0");
  EXPECT_TRUE(any_contains(parse_errors(pot), "potential.lambda: must be > 0"));
}

TEST(ModelFile, UnknownKeysAreRejected) {
  const std::string text = replace_once(read_text(kShipped), "\"potential\": {", "\"potental\": {}, \"potential\": {");
  const auto errs = parse_errors(text);
  EXPECT_TRUE(any_contains(errs, "potental: unknown key"));
  const std::string nested = replace_once(read_text(kShipped), "\"g_Y\": 0.5", "\"g_Y\": 0.5, \"gY\": 1");
  EXPECT_TRUE(any_contains(parse_errors(nested), "yukawa.gY: unknown key"));
}

TEST(ModelFile, LoadPrefixesThePath) {
  const std::string path = write_temp("bad.model", "{}");
  try {
    load_model_file(path);
    FAIL();
  } catch (const ModelFileError& e) {
    EXPECT_EQ(e.errors()[0], path + ": missing [algebra]");
  }
  fs::remove(path);
  EXPECT_THROW(load_model_file("/nonexistent/x.model"), Error);
}

TEST(Report, EmitParseRoundTrip) {
  const SpectrumReport rep = cli::electroweak_report({}, 12345, 1e-9);
  const std::string text = emit_report(rep);
  const SpectrumReport back = parse_report(text);
  EXPECT_EQ(back, rep);
  EXPECT_EQ(emit_report(back), text);
  EXPECT_THROW(parse_report("{\"command\": 1}"), Error);
}

TEST(Report, SeventeenSignificantDigits) {
  const std::string text = emit_report(cli::electroweak_report({}, 12345, 1e-9));
  EXPECT_NE(text.find("1.5811388300841898"), std::string::npos);  // sqrt(5/2)
  EXPECT_NE(text.find("1.4142135623730951"), std::string::npos);  // sqrt(2)
}

TEST(Report, TableForUnbrokenModel) {
  HiggsModel m = electroweak::build_model({});
  m.vacuum = CVector::Zero(2);
  const SpectrumReport rep = cli::spectrum_report(m, 1);
  EXPECT_EQ(rep.d, 0);
  EXPECT_NE(render_table(rep).find("unbroken: H = G, d = 0"), std::string::npos);
  EXPECT_TRUE(rep.passed());
}

TEST(GridFile, RoundTripAllKinds) {
  const GeneratorSet gs = electroweak::generators({});
  const Grid g({4, 5}, 0.25, Metric::lorentzian);
  const MultipletField m = smooth_random_multiplet(g, 2, 1);
  const GridFile a = decode_grid_file(encode_grid_file(make_grid_file(m, 4)));
  EXPECT_EQ(a.grid, g);
  EXPECT_EQ(a.kind, GridFieldKind::multiplet);
  EXPECT_EQ(a.multiplet, m.values);

  const GaugeTransformField u = smooth_random_gauge_transform(gs, g, 2);
  EXPECT_EQ(decode_grid_file(encode_grid_file(make_grid_file(u, 4))).unitary, u.values);

  const GaugeField gf = smooth_random_gauge_field(gs, g, 3);
  const GridFile c = decode_grid_file(encode_grid_file(make_grid_file(gf, 2)));
  EXPECT_EQ(c.gauge, gf.coeffs);
  EXPECT_EQ(c.r, 4);

  const std::string path = temp_path("field.grid").string();
  write_grid_file(path, make_grid_file(m, 4));
  EXPECT_EQ(read_grid_file(path).multiplet, m.values);
  fs::remove(path);
}

TEST(GridFile, HeaderLayout) {
  const Grid g({4, 4}, 0.5);
  const std::string bytes = encode_grid_file(make_grid_file(MultipletField::constant(g, CVector::Zero(2)), 4));
  EXPECT_EQ(bytes.substr(0, 8), "SSBGRID1");
  // magic + dim + 2 extents + h + n + r + metric + kind, then 16 sites of 2 complex values.
  EXPECT_EQ(bytes.size(), 8u + 4 + 8 + 8 + 16 + 16 * 2 * 16);
  EXPECT_EQ(static_cast<unsigned char>(bytes[8]), 2u);  // little-endian dim
}

TEST(GridFile, RejectsCorruptInput) {
  const Grid g({4, 4}, 0.5);
  const std::string good = encode_grid_file(make_grid_file(MultipletField::constant(g, CVector::Ones(2)), 4));
  EXPECT_THROW(decode_grid_file("NOTAGRID"), Error);
  EXPECT_THROW(decode_grid_file(good.substr(0, good.size() - 1)), Error);
  EXPECT_THROW(decode_grid_file(good + "x"), Error);
  std::string bad_magic = good;
  bad_magic[0] = 'X';
  EXPECT_THROW(decode_grid_file(bad_magic), Error);
}

class SeedEnv : public ::testing::Test {
 protected:
  void TearDown() override { ::unsetenv("SSB_SPECTRUM_SEED"); }
};

TEST_F(SeedEnv, Resolution) {
  ::unsetenv("SSB_SPECTRUM_SEED");
  EXPECT_EQ(cli::resolve_seed(std::nullopt), cli::kDefaultSeed);
  EXPECT_EQ(cli::resolve_seed(7u), 7u);
  ::setenv("SSB_SPECTRUM_SEED", "99", 1);
  EXPECT_EQ(cli::resolve_seed(std::nullopt), 99u);
  EXPECT_EQ(cli::resolve_seed(7u), 7u);
  ::setenv("SSB_SPECTRUM_SEED", "abc", 1);
  EXPECT_THROW(cli::resolve_seed(std::nullopt), PreconditionError);
  ::setenv("SSB_SPECTRUM_SEED", "-3", 1);
  EXPECT_THROW(cli::resolve_seed(std::nullopt), PreconditionError);
}

TEST(Commands, ElectroweakPassesAndIsDeterministic) {
  cli::Options o;
  o.format = cli::Format::machine;
  const cli::Output a = cli::run_electroweak(o, {});
  const cli::Output b = cli::run_electroweak(o, {});
  EXPECT_EQ(a.exit_code, 0);
  EXPECT_EQ(a.text, b.text);
  const SpectrumReport rep = parse_report(a.text);
  ASSERT_TRUE(rep.electroweak.has_value());
  EXPECT_NEAR(rep.electroweak->weinberg_angle, std::atan(0.5), 1e-15);
}

TEST(Commands, SpectrumOnZeroVacuumModel) {
  ModelFile f = cli::preset_model_file();
  f.model.vacuum = CVector::Zero(2);
  cli::Options o;
  o.model_path = write_temp("unbroken.model", emit_model_file(f));
  const cli::Output out = cli::run_spectrum(o);
  EXPECT_EQ(out.exit_code, 0);
  EXPECT_NE(out.text.find("unbroken: H = G, d = 0"), std::string::npos) << out.text;
  fs::remove(o.model_path);
}

TEST(Commands, SpectrumFindsVacuumWhenAbsent) {
  ModelFile f = cli::preset_model_file();
  f.model.vacuum.reset();
  cli::Options o;
  o.model_path = write_temp("novac.model", emit_model_file(f));
  o.format = cli::Format::machine;
  const cli::Output out = cli::run_spectrum(o);
  EXPECT_EQ(out.exit_code, 0);
  EXPECT_NEAR(parse_report(out.text).vacuum_norm, 1.0, 1e-9);
  fs::remove(o.model_path);
}

TEST(Commands, ValidateAndYukawaOnPreset) {
  cli::Options o;
  EXPECT_EQ(cli::run_validate(o).exit_code, 0);
  const cli::Output y = cli::run_yukawa(o);
  EXPECT_EQ(y.exit_code, 0);
  EXPECT_NE(y.text.find("0.5"), std::string::npos);
}

TEST(Commands, ValidateFlagsBrokenYukawa) {
  ModelFile f = cli::preset_model_file();
  f.representations.at("e_R").gens[3] = CMatrix::Constant(1, 1, Complex(0.0, 1.0));
  cli::Options o;
  o.model_path = write_temp("badyuk.model", emit_model_file(f));
  EXPECT_EQ(cli::run_validate(o).exit_code, 1);
  EXPECT_EQ(cli::run_yukawa(o).exit_code, 1);
  fs::remove(o.model_path);
}

TEST(Commands, UnitaryGaugeWritesAField) {
  cli::Options o;
  o.grid = 8;
  o.output_path = temp_path("ug.grid").string();
  const cli::Output out = cli::run_unitary_gauge(o);
  EXPECT_EQ(out.exit_code, 0) << out.text;
  const GridFile g = read_grid_file(o.output_path);
  EXPECT_EQ(g.grid.sites(), 64u);
  for (const auto& v : g.multiplet) {
    EXPECT_LT(std::abs(v[0]), 1e-9);
    EXPECT_LT(std::abs(v[1].imag()), 1e-9);
  }
  // Feeding the result back in is a fixed point.
  cli::Options again;
  again.input_path = o.output_path;
  EXPECT_EQ(cli::run_unitary_gauge(again).exit_code, 0);
  fs::remove(o.output_path);
}

TEST(Commands, GaugeCheckSmallGridReportsOrders) {
  cli::Options o;
  o.grid = 8;
  o.refine = 1;
  o.format = cli::Format::machine;
  const cli::Output out = cli::run_gauge_check(o);
  EXPECT_NE(out.text.find("covariant_order"), std::string::npos);
}

TEST(ConvergenceOrder, ExactPowerLaw) {
  EXPECT_NEAR(cli::convergence_order({0.1, 0.05, 0.025}, {3e-2, 7.5e-3, 1.875e-3}), 2.0, 1e-12);
  EXPECT_NEAR(cli::convergence_order({0.1, 0.05}, {1e-3, 1.25e-4}), 3.0, 1e-12);
}

TEST(ConvergenceOrder, UsesTheTwoFinestLevels) {
  // h^2 (1 - 10 h^2): pre-asymptotic on the coarse level, close to 2 on the fine pair.
  std::vector<double> h = {1.0 / 4, 1.0 / 8, 1.0 / 16, 1.0 / 32}, e;
  for (double x : h) e.push_back(x * x * (1.0 - 10.0 * x * x));
  const double fine = std::log2(e[2] / e[3]);
  EXPECT_DOUBLE_EQ(cli::convergence_order(h, e), fine);
  EXPECT_GT(fine, 1.95);
  EXPECT_LT(std::log2(e[0] / e[1]), 1.6);
}

TEST(CovarianceStudy, SecondOrderOnTheFinePair) {
  const HiggsModel m = electroweak::build_model({});
  const cli::CovarianceStudy s = cli::covariance_study(m.gens, make_potential(m.potential), 2, 16, 2, 99, Metric::lorentzian);
  ASSERT_EQ(s.levels.size(), 3u);
  EXPECT_EQ(s.levels[0].covariant_order, 0.0);
  EXPECT_DOUBLE_EQ(s.levels[2].curvature_order, s.curvature_order);
  EXPECT_NEAR(s.covariant_order, 2.0, 0.1);
  EXPECT_NEAR(s.curvature_order, 2.0, 0.1);
  EXPECT_LT(s.levels[2].curvature_error, s.levels[1].curvature_error);
  EXPECT_LT(s.yang_mills_invariance, 1e-10);
  EXPECT_THROW(cli::convergence_order({0.1}, {1.0}), PreconditionError);
}

}  // namespace
}  // namespace ssb
