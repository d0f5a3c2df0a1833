#include "taukit/io_json.hpp"

#include <cstdio>
#include <fstream>

#include "taukit/errors.hpp"

namespace taukit {

namespace {

Real number_at(const OrderedJson& j, const std::string& what) {
  if (!j.is_number()) throw InputError(what + " must be a finite number");
  const Real v = j.get<Real>();
  if (!std::isfinite(v)) throw InputError(what + " must be a finite number");
  return v;
}

}  // namespace

Complex parse_complex(const OrderedJson& j, const std::string& what) {
  if (j.is_number()) return Complex(number_at(j, what), 0.0);
  if (!j.is_array() || j.size() != 2)
    throw InputError(what + " must be a [re, im] pair or a number");
  return Complex(number_at(j[0], what + "[0]"), number_at(j[1], what + "[1]"));
}

CVector parse_cvector(const OrderedJson& j, const std::string& what) {
  if (!j.is_array()) throw InputError(what + " must be an array");
  CVector v(static_cast<int>(j.size()));
  for (int k = 0; k < v.size(); ++k)
    v[k] = parse_complex(j[static_cast<size_t>(k)],
                         what + "[" + std::to_string(k) + "]");
  return v;
}

RVector parse_rvector(const OrderedJson& j, const std::string& what) {
  if (!j.is_array()) throw InputError(what + " must be an array of numbers");
  RVector v(static_cast<int>(j.size()));
  for (int k = 0; k < v.size(); ++k)
    v[k] = number_at(j[static_cast<size_t>(k)],
                     what + "[" + std::to_string(k) + "]");
  return v;
}

CMatrix parse_cmatrix(const OrderedJson& j, const std::string& what) {
  if (!j.is_array() || j.empty())
    throw InputError(what + " must be a non-empty array of rows");
  const int rows = static_cast<int>(j.size());
  int cols = -1;
  CMatrix m;
  for (int i = 0; i < rows; ++i) {
    const auto& row = j[static_cast<size_t>(i)];
    const std::string rname = what + "[" + std::to_string(i) + "]";
    if (!row.is_array()) throw InputError(rname + " must be an array");
    if (cols < 0) {
      cols = static_cast<int>(row.size());
      if (cols == 0) throw InputError(rname + " must be non-empty");
      m.resize(rows, cols);
    } else if (static_cast<int>(row.size()) != cols) {
      throw InputError(what + " rows must all have the same length");
    }
    for (int k = 0; k < cols; ++k)
      m(i, k) = parse_complex(row[static_cast<size_t>(k)],
                              rname + "[" + std::to_string(k) + "]");
  }
  return m;
}

ExteriorMap parse_map(const OrderedJson& j) {
  if (!j.is_object())
    throw InputError("map input must be an object with r, b0, coeffs");
  if (!j.contains("r")) throw InputError("map input: r is required and must be > 0");
  ExteriorMap map;
  map.r = number_at(j.at("r"), "map input: r");
  if (j.contains("b0")) map.b0 = parse_complex(j.at("b0"), "map input: b0");
  if (j.contains("coeffs")) {
    const auto& c = j.at("coeffs");
    if (!c.is_array()) throw InputError("map input: coeffs must be an array");
    map.coeffs.resize(static_cast<int>(c.size()));
    for (int k = 0; k < map.coeffs.size(); ++k)
      map.coeffs[k] = parse_complex(c[static_cast<size_t>(k)],
                                    "map input: coeffs[" + std::to_string(k) + "]");
  } else {
    map.coeffs.resize(0);
  }
  validate_map(map);
  return map;
}

MomentSet parse_moments(const OrderedJson& j) {
  if (!j.is_object())
    throw InputError("moment input must be an object with t0 and t");
  if (!j.contains("t0")) throw InputError("moment input: t0 is required");
  MomentSet set;
  set.t0 = number_at(j.at("t0"), "moment input: t0");
  if (set.t0 <= 0.0) throw InputError("moment input: t0 must be > 0");
  if (!j.contains("t") || !j.at("t").is_array())
    throw InputError("moment input: t must be an array of [re, im] pairs");
  set.t = parse_cvector(j.at("t"), "moment input: t");
  return set;
}

OrderedJson load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open input file: " + path);
  OrderedJson j;
  try {
    in >> j;
  } catch (const std::exception& e) {
    throw InputError("invalid JSON in " + path + ": " + e.what());
  }
  return j;
}

OrderedJson complex_json(Complex v) {
  return OrderedJson::array({v.real(), v.imag()});
}

OrderedJson cvector_json(const CVector& v) {
  auto out = OrderedJson::array();
  for (int k = 0; k < v.size(); ++k) out.push_back(complex_json(v[k]));
  return out;
}

OrderedJson rvector_json(const RVector& v) {
  auto out = OrderedJson::array();
  for (int k = 0; k < v.size(); ++k) out.push_back(v[k]);
  return out;
}

OrderedJson cmatrix_json(const CMatrix& m) {
  auto out = OrderedJson::array();
  for (int i = 0; i < m.rows(); ++i) {
    auto row = OrderedJson::array();
    for (int k = 0; k < m.cols(); ++k) row.push_back(complex_json(m(i, k)));
    out.push_back(row);
  }
  return out;
}

OrderedJson map_json(const ExteriorMap& map) {
  OrderedJson j;
  j["r"] = map.r;
  j["b0"] = complex_json(map.b0);
  j["coeffs"] = cvector_json(map.coeffs);
  return j;
}

std::string format_real(Real v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace taukit
