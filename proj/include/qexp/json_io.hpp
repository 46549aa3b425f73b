#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "qexp/identities.hpp"
#include "qexp/inversion.hpp"
#include "qexp/numeric.hpp"
#include "qexp/text.hpp"

namespace qexp {

// ordered_json keeps keys in insertion order, so output bytes depend only on the data.
using Json = nlohmann::ordered_json;

inline Json to_json(const TruncSeries& s) {
  Json coeffs = Json::array();
  for (const auto& c : s.coeffs()) coeffs.push_back(to_string(c));
  return Json{{"order", s.order()}, {"coeffs", std::move(coeffs)}};
}

inline Json to_json(const LTMatrix& m) {
  Json rows = Json::array();
  for (std::size_t i = 0; i <= m.n(); ++i) {
    Json row = Json::array();
    for (std::size_t j = 0; j <= i; ++j) row.push_back(to_string(m(i, j)));
    rows.push_back(std::move(row));
  }
  return Json{{"n", m.n()}, {"entries", std::move(rows)}};
}

inline Json to_json(const IdentityReport& r) {
  Json params = Json::object();
  for (const auto& [k, v] : r.parameters) params[k] = v;
  Json failure = nullptr;
  if (r.first_failure) {
    failure = Json{{"index", r.first_failure->index}};
    if (r.first_failure->column) failure["column"] = *r.first_failure->column;
    failure["lhs"] = r.first_failure->lhs;
    failure["rhs"] = r.first_failure->rhs;
  }
  return Json{{"name", r.name},     {"kind", "symbolic"},     {"parameters", std::move(params)},
              {"order", r.order}, {"passed", r.passed}, {"first_failure", std::move(failure)}};
}

inline Json to_json(const NumericReport& r, int digits = 30) {
  Json point = Json::object();
  for (const auto& [k, v] : r.point) point[k] = v;
  return Json{{"name", r.name},
              {"kind", "numeric"},
              {"parameters", std::move(point)},
              {"precision", r.precision},
              {"tolerance", r.tolerance.str(3)},
              {"lhs", r.lhs.str(digits)},
              {"rhs", r.rhs.str(digits)},
              {"abs_diff", r.abs_diff.str(6)},
              {"terms", r.terms},
              {"passed", r.passed}};
}

/// Reads a points file: a JSON array of objects mapping symbol names to values.
/// Values may be strings ("0.1", "1/3") or JSON numbers.
inline std::vector<NumericPoint> parse_points(const std::string& text) {
  Json doc;
  try {
    doc = Json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("points file is not valid JSON: ") + e.what());
  }
  if (!doc.is_array()) throw ParseError("points file must hold a JSON array");
  std::vector<NumericPoint> out;
  for (const auto& obj : doc) {
    if (!obj.is_object()) throw ParseError("each point must be a JSON object");
    NumericPoint p;
    for (const auto& [k, v] : obj.items()) {
      if (v.is_string()) {
        p.emplace_back(k, v.get<std::string>());
      } else if (v.is_number()) {
        p.emplace_back(k, v.dump());
      } else {
        throw ParseError("value of '" + k + "' must be a string or number");
      }
    }
    out.push_back(std::move(p));
  }
  return out;
}

}  // namespace qexp
