#include "json_util.hpp"

#include <cmath>

#include <fmt/format.h>

namespace ssb::json {

namespace {

void emit_into(const Json& v, int indent, int depth, std::string& out) {
  const std::string pad(static_cast<std::size_t>(indent * (depth + 1)), ' ');
  const std::string close_pad(static_cast<std::size_t>(indent * depth), ' ');
  switch (v.type()) {
    case Json::value_t::object: {
      if (v.empty()) {
        out += "{}";
        return;
      }
      out += "{\n";
      bool first = true;
      for (const auto& [key, item] : v.items()) {
        if (!first) out += ",\n";
        first = false;
        out += pad;
        out += Json(key).dump();
        out += ": ";
        emit_into(item, indent, depth + 1, out);
      }
      out += "\n" + close_pad + "}";
      return;
    }
    case Json::value_t::array: {
      if (v.empty()) {
        out += "[]";
        return;
      }
      // Arrays of scalars, or of [re, im] pairs, stay on one line.
      bool flat = true;
      for (const auto& item : v) {
        const bool pair = item.is_array() && item.size() == 2 && !item[0].is_structured() && !item[1].is_structured();
        flat = flat && (!item.is_structured() || pair);
      }
      if (flat) {
        out += "[";
        for (std::size_t i = 0; i < v.size(); ++i) {
          if (i > 0) out += ", ";
          emit_into(v[i], indent, depth + 1, out);
        }
        out += "]";
        return;
      }
      out += "[\n";
      for (std::size_t i = 0; i < v.size(); ++i) {
        if (i > 0) out += ",\n";
        out += pad;
        emit_into(v[i], indent, depth + 1, out);
      }
      out += "\n" + close_pad + "]";
      return;
    }
    case Json::value_t::number_float: {
      const double x = v.get<double>();
      if (!std::isfinite(x)) throw Error("cannot serialise a non-finite number");
      std::string s = fmt::format("{:.17g}", x == 0.0 ? 0.0 : x);
      if (s.find_first_of(".eE") == std::string::npos) s += ".0";
      out += s;
      return;
    }
    default:
      out += v.dump();
  }
}

}  // namespace

std::string emit(const Json& value, int indent) {
  std::string out;
  emit_into(value, indent, 0, out);
  out += "\n";
  return out;
}

Json complex_value(Complex z) { return Json::array({z.real(), z.imag()}); }

Json complex_vector(const CVector& v) {
  Json out = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(complex_value(v[i]));
  return out;
}

Json complex_matrix(const CMatrix& m) {
  Json out = Json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) out.push_back(complex_vector(m.row(i).transpose()));
  return out;
}

Json real_vector(const RVector& v) {
  Json out = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(v[i]);
  return out;
}

Json real_matrix(const RMatrix& m) {
  Json out = Json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) out.push_back(real_vector(m.row(i).transpose()));
  return out;
}

}  // namespace ssb::json
