#include "ssb/modelfile.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include <fmt/format.h>

#include "json_util.hpp"

namespace ssb {

using json::Json;

ModelFileError::ModelFileError(std::vector<std::string> errors)
    : Error([&] {
        std::string msg = "invalid model file:";
        for (const auto& e : errors) msg += "\n  " + e;
        return msg;
      }()),
      errors_(std::move(errors)) {}

bool ModelFile::operator==(const ModelFile& other) const {
  if (!(model.gens == other.model.gens) || !(model.potential == other.model.potential)) return false;
  if (model.vacuum.has_value() != other.model.vacuum.has_value()) return false;
  if (model.vacuum && (model.vacuum->size() != other.model.vacuum->size() ||
                       *model.vacuum != *other.model.vacuum)) {
    return false;
  }
  return representations == other.representations && yukawa == other.yukawa && grid == other.grid;
}

namespace {

/// Thrown inside a section; the section parser records it and moves on.
struct Located {
  std::string message;
};

[[noreturn]] void fail(const std::string& path, const std::string& what) {
  throw Located{fmt::format("{}: {}", path, what)};
}

const Json& require(const Json& obj, const std::string& path, const char* key) {
  if (!obj.contains(key)) fail(path, fmt::format("missing field '{}'", key));
  return obj.at(key);
}

void reject_unknown(const Json& obj, const std::string& path, std::initializer_list<const char*> allowed) {
  if (!obj.is_object()) fail(path, "expected an object");
  const std::set<std::string> ok(allowed.begin(), allowed.end());
  for (const auto& [key, value] : obj.items()) {
    (void)value;
    if (!ok.count(key)) fail(path.empty() ? key : path + "." + key, "unknown key");
  }
}

double number(const Json& v, const std::string& path) {
  if (!v.is_number()) fail(path, "expected a number");
  return v.get<double>();
}

long integer(const Json& v, const std::string& path) {
  if (!v.is_number_integer()) fail(path, "expected an integer");
  return v.get<long>();
}

Complex complex_entry(const Json& v, const std::string& path) {
  if (!v.is_array() || v.size() != 2) fail(path, "expected a [re, im] pair");
  return Complex(number(v[0], path + "[0]"), number(v[1], path + "[1]"));
}

CVector complex_vector(const Json& v, const std::string& path, Eigen::Index size) {
  if (!v.is_array()) fail(path, "expected an array");
  if (static_cast<Eigen::Index>(v.size()) != size) {
    fail(path, fmt::format("has {} entries, expected {}", v.size(), size));
  }
  CVector out(size);
  for (Eigen::Index i = 0; i < size; ++i) {
    out[i] = complex_entry(v[static_cast<std::size_t>(i)], fmt::format("{}[{}]", path, i));
  }
  return out;
}

CMatrix complex_matrix(const Json& v, const std::string& path, Eigen::Index n) {
  if (!v.is_array()) fail(path, "expected an array of rows");
  if (static_cast<Eigen::Index>(v.size()) != n) fail(path, fmt::format("has {} rows, expected {}", v.size(), n));
  CMatrix out(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    out.row(i) = complex_vector(v[static_cast<std::size_t>(i)], fmt::format("{}[{}]", path, i), n).transpose();
  }
  return out;
}

std::vector<CMatrix> generator_list(const Json& v, const std::string& path, Eigen::Index n,
                                    Eigen::Index r) {
  if (!v.is_array()) fail(path, "expected an array of matrices");
  if (static_cast<Eigen::Index>(v.size()) != r) {
    fail(path, fmt::format("has {} matrices, expected r = {}", v.size(), r));
  }
  std::vector<CMatrix> gens;
  for (Eigen::Index i = 0; i < r; ++i) {
    const std::string p = fmt::format("{}[{}]", path, i);
    CMatrix g = complex_matrix(v[static_cast<std::size_t>(i)], p, n);
    const double skew = (g + g.adjoint()).norm();
    if (skew > kTolAlg) fail(p, fmt::format("generator is not skew-Hermitian (defect {:.3e})", skew));
    gens.push_back(std::move(g));
  }
  return gens;
}

Eigen::Index positive_size(const Json& obj, const std::string& path, const char* key) {
  const long value = integer(require(obj, path, key), path + "." + key);
  if (value < 1) fail(path + "." + key, fmt::format("must be >= 1, got {}", value));
  return static_cast<Eigen::Index>(value);
}

double positive(const Json& obj, const std::string& path, const char* key) {
  const double value = number(require(obj, path, key), path + "." + key);
  if (!(value > 0.0)) fail(path + "." + key, fmt::format("must be > 0, got {}", value));
  return value;
}

GeneratorSet parse_algebra(const Json& a) {
  reject_unknown(a, "algebra", {"n", "r", "generators", "factors"});
  const Eigen::Index n = positive_size(a, "algebra", "n");
  const Eigen::Index r = positive_size(a, "algebra", "r");
  std::vector<CMatrix> gens = generator_list(require(a, "algebra", "generators"), "algebra.generators", n, r);
  std::vector<FactorLabel> factors;
  if (a.contains("factors")) {
    const Json& fs = a.at("factors");
    if (!fs.is_array()) fail("algebra.factors", "expected an array");
    for (std::size_t k = 0; k < fs.size(); ++k) {
      const std::string p = fmt::format("algebra.factors[{}]", k);
      const Json& f = fs[k];
      reject_unknown(f, p, {"name", "kind", "coupling", "generators"});
      FactorLabel label;
      const Json& name = require(f, p, "name");
      if (!name.is_string()) fail(p + ".name", "expected a string");
      label.name = name.get<std::string>();
      const Json& kind = require(f, p, "kind");
      if (!kind.is_string() || (kind != "u1" && kind != "simple")) {
        fail(p + ".kind", "expected \"u1\" or \"simple\"");
      }
      label.kind = kind.get<std::string>();
      label.coupling = positive(f, p, "coupling");
      const Json& idx = require(f, p, "generators");
      if (!idx.is_array()) fail(p + ".generators", "expected an array of indices");
      for (std::size_t j = 0; j < idx.size(); ++j) {
        const std::string q = fmt::format("{}.generators[{}]", p, j);
        const long i = integer(idx[j], q);
        if (i < 0 || i >= r) fail(q, fmt::format("index {} outside [0, {})", i, r));
        label.generators.push_back(static_cast<int>(i));
      }
      factors.push_back(std::move(label));
    }
  }
  return GeneratorSet(std::move(gens), std::move(factors));
}

Representation parse_representation(const std::string& name, const Json& v, Eigen::Index r) {
  const std::string p = "representations." + name;
  reject_unknown(v, p, {"dim", "generators"});
  const Eigen::Index dim = positive_size(v, p, "dim");
  return Representation{name, dim, generator_list(require(v, p, "generators"), p + ".generators", dim, r)};
}

YukawaSpec parse_yukawa(const Json& y, const std::map<std::string, Representation>& reps, Eigen::Index n) {
  reject_unknown(y, "yukawa", {"slots", "conjugate", "tensor", "g_Y", "higgs_slot"});
  YukawaSpec spec;
  const Json& slots = require(y, "yukawa", "slots");
  if (!slots.is_array() || slots.size() != 3) fail("yukawa.slots", "expected three representation names");
  std::array<Eigen::Index, 3> dims{};
  for (std::size_t s = 0; s < 3; ++s) {
    const std::string p = fmt::format("yukawa.slots[{}]", s);
    if (!slots[s].is_string()) fail(p, "expected a representation name");
    spec.slots[s] = slots[s].get<std::string>();
    const auto it = reps.find(spec.slots[s]);
    if (it == reps.end()) fail(p, fmt::format("unknown representation '{}'", spec.slots[s]));
    dims[s] = it->second.dim;
  }
  std::array<bool, 3> conj{false, false, false};
  if (y.contains("conjugate")) {
    const Json& c = y.at("conjugate");
    if (!c.is_array() || c.size() != 3) fail("yukawa.conjugate", "expected three booleans");
    for (std::size_t s = 0; s < 3; ++s) {
      if (!c[s].is_boolean()) fail(fmt::format("yukawa.conjugate[{}]", s), "expected a boolean");
      conj[s] = c[s].get<bool>();
    }
  }
  spec.tensor = TripleProduct::zero(dims, conj);
  const Json& t = require(y, "yukawa", "tensor");
  if (!t.is_array() || static_cast<Eigen::Index>(t.size()) != dims[0]) {
    fail("yukawa.tensor", fmt::format("expected {} blocks", dims[0]));
  }
  for (Eigen::Index i = 0; i < dims[0]; ++i) {
    const Json& block = t[static_cast<std::size_t>(i)];
    const std::string p = fmt::format("yukawa.tensor[{}]", i);
    if (!block.is_array() || static_cast<Eigen::Index>(block.size()) != dims[1]) {
      fail(p, fmt::format("expected {} rows", dims[1]));
    }
    for (Eigen::Index j = 0; j < dims[1]; ++j) {
      const CVector row = complex_vector(block[static_cast<std::size_t>(j)], fmt::format("{}[{}]", p, j), dims[2]);
      for (Eigen::Index k = 0; k < dims[2]; ++k) spec.tensor.at(i, j, k) = row[k];
    }
  }
  spec.g_y = number(require(y, "yukawa", "g_Y"), "yukawa.g_Y");
  if (y.contains("higgs_slot")) {
    const long h = integer(y.at("higgs_slot"), "yukawa.higgs_slot");
    if (h < 0 || h > 2) fail("yukawa.higgs_slot", "must be 0, 1 or 2");
    spec.higgs_slot = static_cast<int>(h);
  }
  if (dims[static_cast<std::size_t>(spec.higgs_slot)] != n) {
    fail("yukawa.higgs_slot", fmt::format("slot has dimension {}, the Higgs multiplet has {}",
                                          dims[static_cast<std::size_t>(spec.higgs_slot)], n));
  }
  return spec;
}

GridSpec parse_grid(const Json& g) {
  reject_unknown(g, "grid", {"dim", "shape", "h", "metric"});
  GridSpec spec;
  const Eigen::Index dim = positive_size(g, "grid", "dim");
  const Json& shape = require(g, "grid", "shape");
  if (!shape.is_array() || static_cast<Eigen::Index>(shape.size()) != dim) {
    fail("grid.shape", fmt::format("expected {} extents", dim));
  }
  for (std::size_t mu = 0; mu < shape.size(); ++mu) {
    const std::string p = fmt::format("grid.shape[{}]", mu);
    const long e = integer(shape[mu], p);
    if (e < 4) fail(p, fmt::format("extent must be >= 4, got {}", e));
    spec.shape.push_back(static_cast<int>(e));
  }
  spec.spacing = positive(g, "grid", "h");
  if (g.contains("metric")) {
    const Json& m = g.at("metric");
    if (m == "euclidean") {
      spec.metric = Metric::euclidean;
    } else if (m == "lorentzian") {
      spec.metric = Metric::lorentzian;
    } else {
      fail("grid.metric", "expected \"euclidean\" or \"lorentzian\"");
    }
  }
  return spec;
}

std::string locate(const std::string& text, std::size_t byte) {
  std::size_t line = 1, col = 1;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return fmt::format("line {}, column {}", line, col);
}

Json generators_json(const std::vector<CMatrix>& gens) {
  Json out = Json::array();
  for (const auto& g : gens) out.push_back(json::complex_matrix(g));
  return out;
}

}  // namespace

ModelFile parse_model_file(const std::string& text) {
  Json doc;
  const bool blank = text.find_first_not_of(" \t\r\n") == std::string::npos;
  if (blank) throw ModelFileError({"missing [algebra]"});
  try {
    doc = Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ModelFileError({fmt::format("syntax error at {}: {}", locate(text, e.byte), e.what())});
  }

  std::vector<std::string> errors;
  if (!doc.is_object()) throw ModelFileError({"top level: expected an object"});
  try {
    reject_unknown(doc, "", {"algebra", "potential", "vacuum", "representations", "yukawa", "grid"});
  } catch (const Located& e) {
    errors.push_back(e.message);
  }
  if (!doc.contains("algebra")) errors.insert(errors.begin(), "missing [algebra]");
  if (!doc.contains("potential")) errors.push_back("missing [potential]");

  std::optional<GeneratorSet> gens;
  if (doc.contains("algebra")) {
    try {
      gens = parse_algebra(doc.at("algebra"));
    } catch (const Located& e) {
      errors.push_back(e.message);
    } catch (const Error& e) {
      errors.push_back(fmt::format("algebra: {}", e.what()));
    }
  }
  std::optional<QuarticPotential> potential;
  if (doc.contains("potential")) {
    try {
      const Json& p = doc.at("potential");
      reject_unknown(p, "potential", {"mu", "lambda"});
      potential = QuarticPotential(positive(p, "potential", "mu"), positive(p, "potential", "lambda"));
    } catch (const Located& e) {
      errors.push_back(e.message);
    }
  }
  std::optional<CVector> vacuum;
  if (doc.contains("vacuum") && gens) {
    try {
      vacuum = complex_vector(doc.at("vacuum"), "vacuum", gens->n());
    } catch (const Located& e) {
      errors.push_back(e.message);
    }
  }
  std::map<std::string, Representation> reps;
  if (doc.contains("representations") && gens) {
    const Json& rs = doc.at("representations");
    if (!rs.is_object()) {
      errors.emplace_back("representations: expected an object of named representations");
    } else {
      for (const auto& [name, value] : rs.items()) {
        try {
          reps.emplace(name, parse_representation(name, value, gens->r()));
        } catch (const Located& e) {
          errors.push_back(e.message);
        }
      }
    }
  }
  std::optional<YukawaSpec> yukawa;
  if (doc.contains("yukawa") && gens) {
    try {
      yukawa = parse_yukawa(doc.at("yukawa"), reps, gens->n());
    } catch (const Located& e) {
      errors.push_back(e.message);
    }
  }
  std::optional<GridSpec> grid;
  if (doc.contains("grid")) {
    try {
      grid = parse_grid(doc.at("grid"));
    } catch (const Located& e) {
      errors.push_back(e.message);
    }
  }

  if (!errors.empty()) throw ModelFileError(std::move(errors));
  return ModelFile{HiggsModel{std::move(*gens), *potential, std::move(vacuum)}, std::move(reps),
                   std::move(yukawa), std::move(grid)};
}

ModelFile load_model_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(fmt::format("cannot open model file '{}'", path));
  std::stringstream buffer;
  buffer << in.rdbuf();
  try {
    return parse_model_file(buffer.str());
  } catch (const ModelFileError& e) {
    std::vector<std::string> errors;
    for (const auto& msg : e.errors()) errors.push_back(path + ": " + msg);
    throw ModelFileError(std::move(errors));
  }
}

std::string emit_model_file(const ModelFile& file) {
  const GeneratorSet& gs = file.model.gens;
  Json doc = Json::object();
  Json algebra = Json::object();
  algebra["n"] = gs.n();
  algebra["r"] = gs.r();
  algebra["generators"] = generators_json(gs.gens());
  if (!gs.factors().empty()) {
    Json factors = Json::array();
    for (const auto& f : gs.factors()) {
      factors.push_back(Json{{"name", f.name}, {"kind", f.kind}, {"coupling", f.coupling}, {"generators", f.generators}});
    }
    algebra["factors"] = factors;
  }
  doc["algebra"] = algebra;
  doc["potential"] = Json{{"mu", file.model.potential.mu()}, {"lambda", file.model.potential.lambda()}};
  if (file.model.vacuum) doc["vacuum"] = json::complex_vector(*file.model.vacuum);
  if (!file.representations.empty()) {
    Json reps = Json::object();
    for (const auto& [name, rep] : file.representations) {
      reps[name] = Json{{"dim", rep.dim}, {"generators", generators_json(rep.gens)}};
    }
    doc["representations"] = reps;
  }
  if (file.yukawa) {
    const YukawaSpec& y = *file.yukawa;
    Json tensor = Json::array();
    for (Eigen::Index i = 0; i < y.tensor.dims[0]; ++i) {
      Json block = Json::array();
      for (Eigen::Index j = 0; j < y.tensor.dims[1]; ++j) {
        Json row = Json::array();
        for (Eigen::Index k = 0; k < y.tensor.dims[2]; ++k) row.push_back(json::complex_value(y.tensor.at(i, j, k)));
        block.push_back(row);
      }
      tensor.push_back(block);
    }
    doc["yukawa"] = Json{{"slots", y.slots},
                         {"conjugate", y.tensor.conjugate},
                         {"tensor", tensor},
                         {"g_Y", y.g_y},
                         {"higgs_slot", y.higgs_slot}};
  }
  if (file.grid) {
    doc["grid"] = Json{{"dim", file.grid->shape.size()},
                       {"shape", file.grid->shape},
                       {"h", file.grid->spacing},
                       {"metric", file.grid->metric == Metric::euclidean ? "euclidean" : "lorentzian"}};
  }
  return json::emit(doc);
}

}  // namespace ssb
