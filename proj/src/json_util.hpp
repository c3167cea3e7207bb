#pragma once

#include <string>

#include <nlohmann/json.hpp>

#include "ssb/types.hpp"

namespace ssb::json {

using Json = nlohmann::ordered_json;

/// Serialise with every floating-point value printed as %.17g, so that
/// parsing the output restores the same doubles.
std::string emit(const Json& value, int indent = 2);

Json complex_value(Complex z);
Json complex_vector(const CVector& v);
Json complex_matrix(const CMatrix& m);
Json real_vector(const RVector& v);
Json real_matrix(const RMatrix& m);

}  // namespace ssb::json
