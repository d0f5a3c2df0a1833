#pragma once

#include <string>

#include "json.hpp"

#include "taukit/exterior_map.hpp"
#include "taukit/moments.hpp"
#include "taukit/theta.hpp"

namespace taukit {

// Field order is part of the report contract (byte-identical reruns).
using OrderedJson = nlohmann::ordered_json;

// Parsers throw InputError whose message names the violated invariant.
// Complex values are accepted as [re, im] pairs or plain numbers.
Complex parse_complex(const OrderedJson& j, const std::string& what);
CVector parse_cvector(const OrderedJson& j, const std::string& what);
RVector parse_rvector(const OrderedJson& j, const std::string& what);
CMatrix parse_cmatrix(const OrderedJson& j, const std::string& what);

// {"r": positive, "b0": [re, im], "coeffs": [[re, im], ...]}; b0 and coeffs
// may be omitted.
ExteriorMap parse_map(const OrderedJson& j);
// {"t0": real, "t": [[re, im], ...]}.
MomentSet parse_moments(const OrderedJson& j);

OrderedJson load_json_file(const std::string& path);

OrderedJson complex_json(Complex v);
OrderedJson cvector_json(const CVector& v);
OrderedJson rvector_json(const RVector& v);
OrderedJson cmatrix_json(const CMatrix& m);
OrderedJson map_json(const ExteriorMap& map);

// Fixed %.17g rendering for the CSV projection.
std::string format_real(Real v);

}  // namespace taukit
