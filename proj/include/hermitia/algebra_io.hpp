#pragma once

#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <tuple>

#include <json.hpp>

#include "hermitia/core.hpp"
#include "hermitia/structure.hpp"

// Algebra files are JSON:
//
//   {
//     "n": 3,
//     "C": [ {"upper": 3, "lower_i": 1, "lower_j": 2, "re": 1} ],
//     "D": [ {"upper": 1, "lower_i": 2, "lower_k": 1, "re": -1, "im": 0} ]
//   }
//
// Indices are 1-based.  "re"/"im" accept a plain number or an exact rational
// {"num": 1, "den": 3}; "im" defaults to 0.  C records may come in either
// lower-index orientation; both orientations of the same slot must agree up
// to the sign flip, and repeated records must agree exactly.

namespace hermitia {

namespace detail {

inline double number_field(const nlohmann::json& rec, const char* key,
                           bool required) {
  if (!rec.contains(key)) {
    if (required) throw ParseError(std::string("missing field '") + key + "'");
    return 0.0;
  }
  const auto& v = rec.at(key);
  if (v.is_number()) return v.get<double>();
  if (v.is_object() && v.contains("num") && v.contains("den")) {
    double den = v.at("den").get<double>();
    if (den == 0) throw ParseError("rational with zero denominator");
    return v.at("num").get<double>() / den;
  }
  throw ParseError(std::string("field '") + key +
                   "' must be a number or {num, den}");
}

inline int index_field(const nlohmann::json& rec, const char* key, int n) {
  if (!rec.contains(key) || !rec.at(key).is_number_integer())
    throw ParseError(std::string("missing integer field '") + key + "'");
  int v = rec.at(key).get<int>();
  if (v < 1 || v > n)
    throw ParseError(std::string("index '") + key + "' out of range 1..n");
  return v;
}

}  // namespace detail

inline StructureConstants load_algebra(std::istream& in) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("n") || !doc.at("n").is_number_integer())
    throw ParseError("top level must be an object with integer 'n'");
  int n = doc.at("n").get<int>();
  if (n < 1 || n > 16) throw ParseError("n must be between 1 and 16");

  StructureConstants S(n);

  // key: (upper, i, j) with i < j after normalization
  std::map<std::tuple<int, int, int>, cplx> c_seen;
  if (doc.contains("C")) {
    if (!doc.at("C").is_array()) throw ParseError("'C' must be an array");
    for (const auto& rec : doc.at("C")) {
      int k = detail::index_field(rec, "upper", n);
      int i = detail::index_field(rec, "lower_i", n);
      int j = detail::index_field(rec, "lower_j", n);
      cplx v{detail::number_field(rec, "re", true),
             detail::number_field(rec, "im", false)};
      if (i == j) {
        if (v != cplx{}) throw ParseError("C record with equal lower indices");
        continue;
      }
      if (i > j) {
        std::swap(i, j);
        v = -v;
      }
      auto key = std::make_tuple(k, i, j);
      auto it = c_seen.find(key);
      if (it != c_seen.end()) {
        if (it->second != v) throw ParseError("conflicting C records");
        continue;
      }
      c_seen.emplace(key, v);
      S.set_C(k - 1, i - 1, j - 1, v);
    }
  }

  std::map<std::tuple<int, int, int>, cplx> d_seen;
  if (doc.contains("D")) {
    if (!doc.at("D").is_array()) throw ParseError("'D' must be an array");
    for (const auto& rec : doc.at("D")) {
      int j = detail::index_field(rec, "upper", n);
      int i = detail::index_field(rec, "lower_i", n);
      int k = detail::index_field(rec, "lower_k", n);
      cplx v{detail::number_field(rec, "re", true),
             detail::number_field(rec, "im", false)};
      auto key = std::make_tuple(j, i, k);
      auto it = d_seen.find(key);
      if (it != d_seen.end()) {
        if (it->second != v) throw ParseError("conflicting D records");
        continue;
      }
      d_seen.emplace(key, v);
      S.set_D(j - 1, i - 1, k - 1, v);
    }
  }
  return S;
}

inline StructureConstants load_algebra(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open file: " + path);
  return load_algebra(in);
}

// Canonical form: C only in the i < j orientation, records sorted, zeros
// omitted.  Doubles round-trip exactly through the JSON layer, so
// load(save(S)) reproduces S bit for bit.
inline nlohmann::json algebra_to_json(const StructureConstants& S) {
  nlohmann::json doc;
  doc["n"] = S.n();
  auto c_arr = nlohmann::json::array();
  for (int k = 0; k < S.n(); ++k)
    for (int i = 0; i < S.n(); ++i)
      for (int j = i + 1; j < S.n(); ++j) {
        cplx v = S.C(k, i, j);
        if (v == cplx{}) continue;
        nlohmann::json rec;
        rec["upper"] = k + 1;
        rec["lower_i"] = i + 1;
        rec["lower_j"] = j + 1;
        rec["re"] = v.real();
        if (v.imag() != 0) rec["im"] = v.imag();
        c_arr.push_back(rec);
      }
  auto d_arr = nlohmann::json::array();
  for (int j = 0; j < S.n(); ++j)
    for (int i = 0; i < S.n(); ++i)
      for (int k = 0; k < S.n(); ++k) {
        cplx v = S.D(j, i, k);
        if (v == cplx{}) continue;
        nlohmann::json rec;
        rec["upper"] = j + 1;
        rec["lower_i"] = i + 1;
        rec["lower_k"] = k + 1;
        rec["re"] = v.real();
        if (v.imag() != 0) rec["im"] = v.imag();
        d_arr.push_back(rec);
      }
  if (!c_arr.empty()) doc["C"] = c_arr;
  if (!d_arr.empty()) doc["D"] = d_arr;
  return doc;
}

inline void save_algebra(const StructureConstants& S, std::ostream& out) {
  out << algebra_to_json(S).dump(2) << "\n";
}

inline void save_algebra(const StructureConstants& S, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw ParseError("cannot open file for writing: " + path);
  save_algebra(S, out);
}

}  // namespace hermitia
