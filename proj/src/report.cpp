#include "ssb/report.hpp"

#include <fmt/format.h>

#include "json_util.hpp"

namespace ssb {

using json::Json;

Check make_check(std::string name, double value, double tol) {
  return Check{std::move(name), value, tol, value <= tol};
}

bool SpectrumReport::passed() const {
  for (const auto& c : checks) {
    if (!c.passed) return false;
  }
  return true;
}

namespace {

template <typename M>
bool same(const M& a, const M& b) {
  return a.rows() == b.rows() && a.cols() == b.cols() && (a.size() == 0 || a == b);
}

bool same(const std::vector<RVector>& a, const std::vector<RVector>& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (!same(a[i], b[i])) return false;
  }
  return true;
}

Json basis_json(const std::vector<RVector>& basis) {
  Json out = Json::array();
  for (const auto& v : basis) out.push_back(json::real_vector(v));
  return out;
}

RVector real_vector(const Json& v) {
  RVector out(static_cast<Eigen::Index>(v.size()));
  for (std::size_t i = 0; i < v.size(); ++i) out[static_cast<Eigen::Index>(i)] = v[i].get<double>();
  return out;
}

std::vector<RVector> basis_from(const Json& v) {
  std::vector<RVector> out;
  for (const auto& item : v) out.push_back(real_vector(item));
  return out;
}

std::string join(const std::vector<double>& values) {
  std::string out;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i > 0) out += ", ";
    out += fmt::format("{:.12g}", values[i]);
  }
  return out;
}

}  // namespace

bool SpectrumReport::operator==(const SpectrumReport& o) const {
  return command == o.command && n == o.n && r == o.r && d == o.d && same(vacuum, o.vacuum) &&
         vacuum_norm == o.vacuum_norm && same(broken_basis, o.broken_basis) &&
         same(unbroken_basis, o.unbroken_basis) && boson_masses == o.boson_masses &&
         higgs_masses == o.higgs_masses && hessian_eigenvalues == o.hessian_eigenvalues &&
         same(mass_form, o.mass_form) && electroweak == o.electroweak && checks == o.checks &&
         note == o.note;
}

SpectrumReport report_from_spectrum(const std::string& command, const SpectrumResult& spec) {
  SpectrumReport rep;
  rep.command = command;
  rep.n = spec.vacuum.size();
  rep.r = spec.mass.matrix.rows();
  rep.d = spec.d;
  rep.vacuum = spec.vacuum;
  rep.vacuum_norm = spec.vacuum.norm();
  for (const auto& a : spec.broken_basis) rep.broken_basis.push_back(a.coeffs);
  for (const auto& a : spec.unbroken_basis) rep.unbroken_basis.push_back(a.coeffs);
  rep.boson_masses = spec.boson_masses;
  rep.higgs_masses = spec.higgs_masses;
  rep.hessian_eigenvalues.assign(spec.hessian_eigenvalues.data(),
                                 spec.hessian_eigenvalues.data() + spec.hessian_eigenvalues.size());
  rep.mass_form = spec.mass.matrix;
  return rep;
}

std::string emit_report(const SpectrumReport& rep) {
  Json doc = Json::object();
  doc["command"] = rep.command;
  doc["n"] = rep.n;
  doc["r"] = rep.r;
  doc["d"] = rep.d;
  doc["vacuum"] = json::complex_vector(rep.vacuum);
  doc["vacuum_norm"] = rep.vacuum_norm;
  doc["broken_basis"] = basis_json(rep.broken_basis);
  doc["unbroken_basis"] = basis_json(rep.unbroken_basis);
  doc["boson_masses"] = rep.boson_masses;
  doc["higgs_masses"] = rep.higgs_masses;
  doc["hessian_eigenvalues"] = rep.hessian_eigenvalues;
  doc["mass_form"] = json::real_matrix(rep.mass_form);
  if (rep.electroweak) {
    const ElectroweakSummary& e = *rep.electroweak;
    doc["electroweak"] = Json{{"g", e.params.g},
                              {"gp", e.params.gp},
                              {"mu", e.params.mu},
                              {"lambda", e.params.lambda},
                              {"weinberg_angle", e.weinberg_angle},
                              {"m_w", e.m_w},
                              {"m_z", e.m_z},
                              {"m_gamma", e.m_gamma},
                              {"m_h", e.m_h},
                              {"elementary_charge", e.elementary_charge}};
  }
  Json checks = Json::array();
  for (const auto& c : rep.checks) {
    checks.push_back(Json{{"name", c.name}, {"value", c.value}, {"tol", c.tol}, {"passed", c.passed}});
  }
  doc["checks"] = checks;
  doc["note"] = rep.note;
  doc["passed"] = rep.passed();
  return json::emit(doc);
}

SpectrumReport parse_report(const std::string& text) {
  try {
    const Json doc = Json::parse(text);
    SpectrumReport rep;
    rep.command = doc.at("command").get<std::string>();
    rep.n = doc.at("n").get<Eigen::Index>();
    rep.r = doc.at("r").get<Eigen::Index>();
    rep.d = doc.at("d").get<int>();
    const Json& vac = doc.at("vacuum");
    rep.vacuum.resize(static_cast<Eigen::Index>(vac.size()));
    for (std::size_t i = 0; i < vac.size(); ++i) {
      rep.vacuum[static_cast<Eigen::Index>(i)] = Complex(vac[i].at(0).get<double>(), vac[i].at(1).get<double>());
    }
    rep.vacuum_norm = doc.at("vacuum_norm").get<double>();
    rep.broken_basis = basis_from(doc.at("broken_basis"));
    rep.unbroken_basis = basis_from(doc.at("unbroken_basis"));
    rep.boson_masses = doc.at("boson_masses").get<std::vector<double>>();
    rep.higgs_masses = doc.at("higgs_masses").get<std::vector<double>>();
    rep.hessian_eigenvalues = doc.at("hessian_eigenvalues").get<std::vector<double>>();
    const Json& mf = doc.at("mass_form");
    rep.mass_form.resize(static_cast<Eigen::Index>(mf.size()), mf.empty() ? 0 : static_cast<Eigen::Index>(mf[0].size()));
    for (std::size_t i = 0; i < mf.size(); ++i) rep.mass_form.row(static_cast<Eigen::Index>(i)) = real_vector(mf[i]).transpose();
    if (doc.contains("electroweak")) {
      const Json& e = doc.at("electroweak");
      ElectroweakSummary s;
      s.params = electroweak::Params{e.at("g").get<double>(), e.at("gp").get<double>(), e.at("mu").get<double>(),
                                     e.at("lambda").get<double>()};
      s.weinberg_angle = e.at("weinberg_angle").get<double>();
      s.m_w = e.at("m_w").get<double>();
      s.m_z = e.at("m_z").get<double>();
      s.m_gamma = e.at("m_gamma").get<double>();
      s.m_h = e.at("m_h").get<double>();
      s.elementary_charge = e.at("elementary_charge").get<double>();
      rep.electroweak = s;
    }
    for (const auto& c : doc.at("checks")) {
      rep.checks.push_back(Check{c.at("name").get<std::string>(), c.at("value").get<double>(),
                                 c.at("tol").get<double>(), c.at("passed").get<bool>()});
    }
    rep.note = doc.at("note").get<std::string>();
    return rep;
  } catch (const nlohmann::json::exception& e) {
    throw Error(fmt::format("malformed report: {}", e.what()));
  }
}

std::string render_table(const SpectrumReport& rep) {
  std::string out;
  out += fmt::format("{} report\n", rep.command);
  out += fmt::format("  multiplet dim n     {}\n", rep.n);
  out += fmt::format("  algebra dim r       {}\n", rep.r);
  out += fmt::format("  vacuum norm         {:.12g}\n", rep.vacuum_norm);
  if (rep.d == 0) {
    out += "  unbroken: H = G, d = 0\n";
  } else {
    out += fmt::format("  broken generators d {}\n", rep.d);
    out += fmt::format("  unbroken dim        {}\n", rep.unbroken_basis.size());
  }
  out += fmt::format("  gauge boson masses  {}\n", join(rep.boson_masses));
  out += fmt::format("  Higgs masses        {}\n", join(rep.higgs_masses));
  if (rep.electroweak) {
    const ElectroweakSummary& e = *rep.electroweak;
    out += fmt::format("  g, g'               {:.12g}, {:.12g}\n", e.params.g, e.params.gp);
    out += fmt::format("  Weinberg angle      {:.12g}\n", e.weinberg_angle);
    out += fmt::format("  m_W, m_Z, m_gamma   {:.12g}, {:.12g}, {:.12g}\n", e.m_w, e.m_z, e.m_gamma);
    out += fmt::format("  m_H                 {:.12g}\n", e.m_h);
    out += fmt::format("  elementary charge   {:.12g}\n", e.elementary_charge);
  }
  if (!rep.note.empty()) out += fmt::format("  note: {}\n", rep.note);
  if (!rep.checks.empty()) {
    out += "checks\n";
    for (const auto& c : rep.checks) {
      out += fmt::format("  {:<4} {:<40} {:.3e} (tol {:.1e})\n", c.passed ? "ok" : "FAIL", c.name, c.value, c.tol);
    }
  }
  return out;
}

}  // namespace ssb
