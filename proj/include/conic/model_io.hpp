#pragma once

/**
 * @file model_io.hpp
 * @brief JSON reading and writing for surface models and results.
 *
 * Model schema (unknown keys are rejected at every level):
 *
 *   {
 *     "name":    string,                       optional
 *     "notes":   string,                       optional
 *     "points":  [{"id": 1..9, "near": id|null}, ...],   optional, default
 *                                                          nine plane points
 *     "curves":  [{"label": s, "kind": "exc",   "point": id},
 *                 {"label": s, "kind": "line"|"conic"|"cubic",
 *                  "through": [[id, mult], ...]},
 *                 {"label": s, "kind": "class", "class": [a, b1, ..., b9]}],
 *                each optionally with "role": "section"|"fiber"|"other"
 *     "config":  ["II*", "II", "10I1", ...],
 *     "fibers":  {"II*": [[label, mult], ...], "IV#2": [...]},   optional
 *     "pencils": [{"kind": "lines"|"conics", "base": [[id, mult], ...]}]
 *   }
 *
 * Class coefficients are JSON integers, or decimal strings when they do not
 * fit in 64 bits.
 */

#include <algorithm>
#include <cctype>
#include <fstream>
#include <initializer_list>
#include <limits>
#include <optional>
#include <set>
#include <span>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "conic/admissibility.hpp"
#include "conic/conic_bundles.hpp"
#include "conic/error.hpp"
#include "conic/kodaira.hpp"
#include "conic/ns_lattice.hpp"
#include "conic/surface_model.hpp"

namespace conic {

using Json = nlohmann::ordered_json;

namespace detail {

[[noreturn]] inline void schema_error(const std::string& where, const std::string& what) {
  throw Error(ErrorCode::Schema, where + ": " + what);
}

inline void only_keys(const Json& j, const std::string& where,
                      std::initializer_list<const char*> allowed) {
  if (!j.is_object()) schema_error(where, "expected an object");
  for (const auto& item : j.items()) {
    bool ok = false;
    for (const char* k : allowed) ok = ok || item.key() == k;
    if (!ok) schema_error(where, "unknown field '" + item.key() + "'");
  }
}

inline const Json& required(const Json& j, const std::string& where, const char* key) {
  if (!j.contains(key)) schema_error(where, std::string("missing field '") + key + "'");
  return j.at(key);
}

inline std::string as_string(const Json& j, const std::string& where) {
  if (!j.is_string()) schema_error(where, "expected a string");
  return j.get<std::string>();
}

inline int as_int(const Json& j, const std::string& where) {
  if (!j.is_number_integer()) schema_error(where, "expected an integer");
  const auto v = j.get<long long>();
  if (v < -1000000 || v > 1000000) schema_error(where, "integer out of range");
  return static_cast<int>(v);
}

inline Integer as_integer(const Json& j, const std::string& where) {
  if (j.is_number_integer()) {
    return j.is_number_unsigned() ? Integer(j.get<unsigned long long>())
                                  : Integer(j.get<long long>());
  }
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    const std::size_t start = (!s.empty() && s[0] == '-') ? 1 : 0;
    if (s.size() == start ||
        !std::all_of(s.begin() + static_cast<std::ptrdiff_t>(start), s.end(),
                     [](unsigned char c) { return std::isdigit(c); })) {
      schema_error(where, "'" + s + "' is not a decimal integer");
    }
    return Integer(s);
  }
  schema_error(where, "expected an integer or a decimal string");
}

inline Json integer_json(const Integer& v) {
  if (v >= std::numeric_limits<long long>::min() && v <= std::numeric_limits<long long>::max()) {
    return Json(v.convert_to<long long>());
  }
  return Json(v.str());
}

inline PointMultiplicities as_point_list(const Json& j, const std::string& where) {
  if (!j.is_array()) schema_error(where, "expected a list of [point, multiplicity] pairs");
  PointMultiplicities out;
  for (std::size_t k = 0; k < j.size(); ++k) {
    const auto& pair = j[k];
    const std::string at = where + "[" + std::to_string(k) + "]";
    if (!pair.is_array() || pair.size() != 2) schema_error(at, "expected [point, multiplicity]");
    out.emplace_back(as_int(pair[0], at), as_int(pair[1], at));
  }
  return out;
}

inline Json point_list_json(const PointMultiplicities& pts) {
  Json out = Json::array();
  for (const auto& [id, mult] : pts) out.push_back(Json::array({id, mult}));
  return out;
}

inline CurveRole parse_role(const std::string& s, const std::string& where) {
  if (s == "section") return CurveRole::Section;
  if (s == "fiber") return CurveRole::FiberComponent;
  if (s == "other") return CurveRole::Other;
  schema_error(where, "unknown role '" + s + "'");
}

}  // namespace detail

inline DivisorClass class_from_json(const Json& j, const std::string& where = "class") {
  if (!j.is_array() || j.size() != kLatticeRank) {
    detail::schema_error(where, "expected a list of 10 coefficients");
  }
  std::array<Integer, kLatticeRank> c;
  for (std::size_t i = 0; i < kLatticeRank; ++i) c[i] = detail::as_integer(j[i], where);
  return DivisorClass(c);
}

inline Json to_json(const DivisorClass& d) {
  Json out = Json::array();
  for (const auto& c : d.coefficients()) out.push_back(detail::integer_json(c));
  return out;
}

inline ModelSpec model_spec_from_json(const Json& j) {
  detail::only_keys(j, "model", {"name", "notes", "points", "curves", "config", "fibers", "pencils"});
  ModelSpec spec;
  if (j.contains("name")) spec.name = detail::as_string(j["name"], "name");
  if (j.contains("notes")) spec.notes = detail::as_string(j["notes"], "notes");

  if (j.contains("points")) {
    const auto& pts = j["points"];
    if (!pts.is_array()) detail::schema_error("points", "expected a list");
    std::array<std::optional<int>, kBlownUpPoints> near{};
    std::set<int> seen;
    for (std::size_t k = 0; k < pts.size(); ++k) {
      const std::string at = "points[" + std::to_string(k) + "]";
      detail::only_keys(pts[k], at, {"id", "near"});
      const int id = detail::as_int(detail::required(pts[k], at, "id"), at + ".id");
      if (!BasePointForest::contains(id)) detail::schema_error(at, "id must be in 1..9");
      if (!seen.insert(id).second) detail::schema_error(at, "point listed twice");
      if (pts[k].contains("near") && !pts[k]["near"].is_null()) {
        near[static_cast<std::size_t>(id - 1)] = detail::as_int(pts[k]["near"], at + ".near");
      }
    }
    spec.forest = BasePointForest(near);
  }

  const auto& curves = detail::required(j, "model", "curves");
  if (!curves.is_array()) detail::schema_error("curves", "expected a list");
  for (std::size_t k = 0; k < curves.size(); ++k) {
    const auto& c = curves[k];
    const std::string at = "curves[" + std::to_string(k) + "]";
    detail::only_keys(c, at, {"label", "kind", "point", "through", "class", "role"});
    const std::string label = detail::as_string(detail::required(c, at, "label"), at + ".label");
    const std::string kind = detail::as_string(detail::required(c, at, "kind"), at + ".kind");
    CurveSpec s;
    auto forbid = [&](std::initializer_list<const char*> keys) {
      for (const char* key : keys)
        if (c.contains(key)) detail::schema_error(at, std::string("'") + key + "' not allowed for kind " + kind);
    };
    if (kind == "exc") {
      forbid({"through", "class"});
      s = CurveSpec::exceptional(label, detail::as_int(detail::required(c, at, "point"), at + ".point"));
      if (!BasePointForest::contains(s.point)) detail::schema_error(at, "point must be in 1..9");
    } else if (kind == "line" || kind == "conic" || kind == "cubic") {
      forbid({"point", "class"});
      const CurveKind ck = kind == "line" ? CurveKind::Line
                           : kind == "conic" ? CurveKind::Conic
                                             : CurveKind::Cubic;
      s = CurveSpec::plane(label, ck,
                           detail::as_point_list(detail::required(c, at, "through"), at + ".through"));
    } else if (kind == "class") {
      forbid({"point", "through"});
      s = CurveSpec::with_class(label, class_from_json(detail::required(c, at, "class"), at + ".class"));
    } else {
      detail::schema_error(at, "unknown curve kind '" + kind + "'");
    }
    if (c.contains("role")) {
      s.declared_role = detail::parse_role(detail::as_string(c["role"], at + ".role"), at + ".role");
    }
    spec.curves.push_back(std::move(s));
  }

  const auto& config = detail::required(j, "model", "config");
  if (!config.is_array()) detail::schema_error("config", "expected a list of Kodaira tags");
  std::vector<std::string> tags;
  for (const auto& t : config) tags.push_back(detail::as_string(t, "config"));
  spec.config = parse_configuration(tags);

  if (j.contains("fibers")) {
    const auto& fibers = j["fibers"];
    if (!fibers.is_object()) detail::schema_error("fibers", "expected an object keyed by Kodaira tag");
    for (const auto& item : fibers.items()) {
      const std::string at = "fibers." + item.key();
      FiberDeclaration f;
      f.key = item.key();
      f.type = parse_kodaira(item.key().substr(0, item.key().find('#')));
      if (!item.value().is_array()) detail::schema_error(at, "expected a list of [label, multiplicity]");
      for (const auto& pair : item.value()) {
        if (!pair.is_array() || pair.size() != 2) detail::schema_error(at, "expected [label, multiplicity]");
        f.members.emplace_back(detail::as_string(pair[0], at), detail::as_int(pair[1], at));
      }
      spec.fibers.push_back(std::move(f));
    }
  }

  if (j.contains("pencils")) {
    const auto& pencils = j["pencils"];
    if (!pencils.is_array()) detail::schema_error("pencils", "expected a list");
    for (std::size_t k = 0; k < pencils.size(); ++k) {
      const std::string at = "pencils[" + std::to_string(k) + "]";
      detail::only_keys(pencils[k], at, {"kind", "base"});
      const std::string kind = detail::as_string(detail::required(pencils[k], at, "kind"), at + ".kind");
      PlanePencil p;
      if (kind == "lines") p.kind = PencilKind::Lines;
      else if (kind == "conics") p.kind = PencilKind::Conics;
      else detail::schema_error(at, "unknown pencil kind '" + kind + "'");
      p.base = detail::as_point_list(detail::required(pencils[k], at, "base"), at + ".base");
      spec.pencils.push_back(std::move(p));
    }
  }
  return spec;
}

inline Json to_json(const ModelSpec& spec) {
  Json j = Json::object();
  if (!spec.name.empty()) j["name"] = spec.name;
  if (!spec.notes.empty()) j["notes"] = spec.notes;
  Json points = Json::array();
  for (int id = 1; id <= static_cast<int>(kBlownUpPoints); ++id) {
    const auto n = spec.forest.near(id);
    points.push_back(Json{{"id", id}, {"near", n ? Json(*n) : Json(nullptr)}});
  }
  j["points"] = points;
  Json curves = Json::array();
  for (const auto& c : spec.curves) {
    Json cj{{"label", c.label}};
    switch (c.kind) {
      case CurveKind::Exceptional:
        cj["kind"] = "exc";
        cj["point"] = c.point;
        break;
      case CurveKind::Line:
      case CurveKind::Conic:
      case CurveKind::Cubic:
        cj["kind"] = c.kind == CurveKind::Line ? "line" : c.kind == CurveKind::Conic ? "conic" : "cubic";
        cj["through"] = detail::point_list_json(c.through);
        break;
      case CurveKind::Explicit:
        cj["kind"] = "class";
        cj["class"] = to_json(c.explicit_class);
        break;
    }
    if (c.declared_role) cj["role"] = to_string(*c.declared_role);
    curves.push_back(cj);
  }
  j["curves"] = curves;
  Json config = Json::array();
  for (const auto& t : spec.config) config.push_back(to_string(t));
  j["config"] = config;
  if (!spec.fibers.empty()) {
    Json fibers = Json::object();
    for (const auto& f : spec.fibers) {
      Json members = Json::array();
      for (const auto& [label, mult] : f.members) members.push_back(Json::array({label, mult}));
      fibers[f.key] = members;
    }
    j["fibers"] = fibers;
  }
  if (!spec.pencils.empty()) {
    Json pencils = Json::array();
    for (const auto& p : spec.pencils) {
      pencils.push_back(Json{{"kind", p.kind == PencilKind::Lines ? "lines" : "conics"},
                             {"base", detail::point_list_json(p.base)}});
    }
    j["pencils"] = pencils;
  }
  return j;
}

inline Json parse_json_text(const std::string& text, const std::string& where) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorCode::Schema, where + ": " + e.what());
  }
}

inline SurfaceModel load_model(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::Io, "cannot read '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return SurfaceModel(model_spec_from_json(parse_json_text(buf.str(), path)));
}

/// [[label, mult], ...] resolved against the model's curves.
inline std::vector<FiberTerm> fiber_terms_from_json(const Json& j, const SurfaceModel& m) {
  if (!j.is_array()) detail::schema_error("fiber", "expected a list of [label, multiplicity]");
  std::vector<FiberTerm> out;
  for (const auto& pair : j) {
    if (!pair.is_array() || pair.size() != 2) detail::schema_error("fiber", "expected [label, multiplicity]");
    out.push_back({m.at(detail::as_string(pair[0], "fiber")), detail::as_int(pair[1], "fiber")});
  }
  return out;
}

inline Json to_json(const SingularConicFiber& f) {
  Json support = Json::array();
  for (const auto& t : f.support) support.push_back(Json::array({t.curve.label, t.multiplicity}));
  return Json{{"type", to_string(f.type)}, {"support", support}};
}

inline Json to_json(const ConicBundle& b) {
  Json fibers = Json::array();
  for (const auto& f : b.fibers) fibers.push_back(to_json(f));
  return Json{{"class", to_json(b.conic.cls)}, {"fibers", fibers}};
}

inline Json to_json(const ConfigReport& r) {
  Json failures = Json::array();
  for (const auto& f : r.failures) failures.push_back(f);
  return Json{{"euler", r.euler},
              {"rank", r.rank ? Json(*r.rank) : Json(nullptr)},
              {"ok", r.ok()},
              {"failures", failures}};
}

inline Json to_json(const ModelReport& r) {
  return Json{{"ok", r.ok()},
              {"failures", r.failures},
              {"warnings", r.warnings},
              {"config", to_json(r.config)}};
}

inline Json to_json(const AdmissibilityReport& r) {
  return Json{{"rank", r.rank},
              {"a2", to_string(r.a2)},
              {"an", r.an},
              {"d3", r.d3},
              {"dm", r.dm},
              {"reasons",
               Json{{"a2", r.reasons.a2}, {"an", r.reasons.an}, {"d3", r.reasons.d3}, {"dm", r.reasons.dm}}}};
}

inline Json error_json(const Error& e) {
  return Json{{"error", Json{{"code", std::string(to_string(e.code()))}, {"message", e.detail()}}}};
}

}  // namespace conic
