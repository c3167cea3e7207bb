#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ssb/breaking.hpp"
#include "ssb/electroweak.hpp"

namespace ssb {

struct Check {
  std::string name;
  double value = 0.0;
  double tol = 0.0;
  bool passed = false;

  bool operator==(const Check&) const = default;
};

Check make_check(std::string name, double value, double tol);

struct ElectroweakSummary {
  electroweak::Params params;
  double weinberg_angle = 0.0;
  double m_w = 0.0;
  double m_z = 0.0;
  double m_gamma = 0.0;
  double m_h = 0.0;
  double elementary_charge = 0.0;

  bool operator==(const ElectroweakSummary&) const = default;
};

/// Machine-readable result of the spectrum and electroweak commands.
struct SpectrumReport {
  std::string command;
  Eigen::Index n = 0;
  Eigen::Index r = 0;
  int d = 0;
  CVector vacuum;
  double vacuum_norm = 0.0;
  std::vector<RVector> broken_basis;
  std::vector<RVector> unbroken_basis;
  std::vector<double> boson_masses;
  std::vector<double> higgs_masses;
  std::vector<double> hessian_eigenvalues;
  RMatrix mass_form;
  std::optional<ElectroweakSummary> electroweak;
  std::vector<Check> checks;
  std::string note;

  bool passed() const;
  bool operator==(const SpectrumReport& other) const;
};

/// Fill the spectrum fields from a computed spectrum.
SpectrumReport report_from_spectrum(const std::string& command, const SpectrumResult& spec);

std::string emit_report(const SpectrumReport& report);
SpectrumReport parse_report(const std::string& text);
std::string render_table(const SpectrumReport& report);

}  // namespace ssb
