#pragma once

#include <array>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ssb/chiral.hpp"
#include "ssb/higgsmodel.hpp"
#include "ssb/latticefields.hpp"

namespace ssb {

struct YukawaSpec {
  std::array<std::string, 3> slots;  // representation names
  TripleProduct tensor;
  double g_y = 1.0;
  int higgs_slot = 1;

  bool operator==(const YukawaSpec&) const = default;
};

struct GridSpec {
  std::vector<int> shape;
  double spacing = 1.0;
  Metric metric = Metric::euclidean;

  Grid grid() const { return Grid(shape, spacing, metric); }
  bool operator==(const GridSpec&) const = default;
};

/// Everything a model file can describe.
struct ModelFile {
  HiggsModel model;
  std::map<std::string, Representation> representations;
  std::optional<YukawaSpec> yukawa;
  std::optional<GridSpec> grid;

  bool operator==(const ModelFile& other) const;
};

/// Parse failure. Each message starts with its location, "section.field: ...".
class ModelFileError : public Error {
 public:
  explicit ModelFileError(std::vector<std::string> errors);
  const std::vector<std::string>& errors() const { return errors_; }

 private:
  std::vector<std::string> errors_;
};

ModelFile parse_model_file(const std::string& text);
ModelFile load_model_file(const std::string& path);
std::string emit_model_file(const ModelFile& file);

}  // namespace ssb
