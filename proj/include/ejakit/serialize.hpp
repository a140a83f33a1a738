#pragma once

#include <string>
#include <string_view>

#include <json.hpp>

#include "ejakit/check_report.hpp"
#include "ejakit/filters.hpp"

namespace ejakit {

using json = nlohmann::json;

// Schemas
//   spec:     {"factors":[{"kind":"complex","n":3},{"kind":"spin","k":4}]}
//   element:  {"spec":spec,"blocks":[...],"role":"effect"|"state"}
//             matrix blocks are flat row-major lists: n*n reals, n*n (re, im)
//             pairs for complex, and the full 2n x 2n complex embedding as
//             (re, im) pairs for quaternionic factors; spin blocks are
//             {"v":[...],"t":x}. "role" is optional.
//   map:      {"source":spec,"target":spec,"matrix":[[...]],"convention":"heisenberg"}
//   pure map: map fields plus {"witness":{"filter_effect":element,
//             "mid_spec":spec,"compression_projection":element}}
// Loaders throw ParseError carrying a JSON pointer to the offending value.

json spec_to_json(const AlgebraSpec& spec);
AlgebraSpec spec_from_json(const json& j, const std::string& pointer = "");

json element_to_json(const Element& a, std::string_view role = {});
/// Blocks must be self-adjoint (and quaternionic) within tol.op.
Element element_from_json(const json& j, const ToleranceConfig& tol = {}, const std::string& pointer = "");

json map_to_json(const PsuMap& f);
PsuMap map_from_json(const json& j, const std::string& pointer = "");

json pure_map_to_json(const PureMap& f);
PureMap pure_map_from_json(const json& j, const ToleranceConfig& tol = {});

json report_to_json(const CheckReport& r);
CheckReport report_from_json(const json& j, const std::string& pointer = "");

/// {"eigenvalues":[...],"projections":[element...],"atomic":[[element...]...]}
json decomposition_to_json(const SpectralDecomposition& d);

/// Sorted keys, two-space indentation, doubles printed with 17 significant
/// digits; non-finite doubles become the strings "inf", "-inf" and "nan".
std::string canonical_dump(const json& j);

/// Parses text, converting syntax errors into ParseError.
json parse_json(std::string_view text);

}  // namespace ejakit
