#pragma once

/**
 * @file cli.hpp
 * @brief Command implementations behind the conic-bundles tool.
 *
 * Each command returns its exit code and the text it would print, so the
 * tool's main only parses arguments and writes output.
 * Exit codes: 0 success, 1 domain error, 2 input (I/O or schema) error.
 */

#include <algorithm>
#include <iomanip>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "conic/admissibility.hpp"
#include "conic/conic_bundles.hpp"
#include "conic/construction.hpp"
#include "conic/error.hpp"
#include "conic/fixtures.hpp"
#include "conic/kodaira.hpp"
#include "conic/model_io.hpp"
#include "conic/surface_model.hpp"

namespace conic::cli {

enum class Format { Json, Dot, Text };

inline Format parse_format(const std::string& s) {
  if (s == "json") return Format::Json;
  if (s == "dot") return Format::Dot;
  if (s == "text") return Format::Text;
  throw Error(ErrorCode::Schema, "unknown format '" + s + "'");
}

struct RunConfig {
  std::string command;
  std::string input;
  std::optional<Format> format;  // each command has its own default
  int bound = 1;
  std::string fiber;             // classify: [[label, mult], ...]
  bool strict = false;           // validate: warnings count as failures
};

struct CommandResult {
  int exit_code = 0;
  std::string output;
};

inline int exit_code_for(const Error& e) { return is_input_error(e.code()) ? 2 : 1; }

inline std::string dump(const Json& j) { return j.dump(2) + "\n"; }

[[noreturn]] inline void unsupported(Format f, const std::string& command) {
  (void)f;
  throw Error(ErrorCode::Schema, "format not supported by '" + command + "'");
}

inline std::string support_text(const SingularConicFiber& f) {
  std::string out;
  for (const auto& t : f.support) {
    if (!out.empty()) out += " + ";
    if (t.multiplicity > 1) out += std::to_string(t.multiplicity) + " ";
    out += t.curve.label;
  }
  return out;
}

inline CommandResult cmd_validate(const std::string& path, Format format, bool strict = false) {
  const SurfaceModel m = load_model(path);
  const ModelReport r = validate_model(m);
  const bool ok = r.ok() && (!strict || r.warnings.empty());
  std::ostringstream os;
  switch (format) {
    case Format::Json: {
      Json j = to_json(r);
      j["ok"] = ok;
      j = Json{{"model", m.name()}, {"config", to_string(m.config())}, {"report", j}};
      os << dump(j);
      break;
    }
    case Format::Text:
      os << m.name() << " " << to_string(m.config()) << ": " << (ok ? "valid" : "invalid") << "\n";
      os << "euler " << r.config.euler << ", rank "
         << (r.config.rank ? std::to_string(*r.config.rank) : std::string("undefined")) << "\n";
      for (const auto& f : r.failures) os << "failure: " << f << "\n";
      for (const auto& w : r.warnings) os << "warning: " << w << "\n";
      break;
    case Format::Dot: {
      const CurveGraph g = intersection_graph(m.curves());
      os << "graph \"" << m.name() << "\" {\n";
      for (const auto& c : g.curves) {
        os << "  \"" << c.label << "\" [label=\"" << c.label << "\"";
        if (c.role == CurveRole::Section) os << ", shape=circle";
        else if (c.role == CurveRole::FiberComponent) os << ", shape=circle, style=filled, fillcolor=black, fontcolor=white";
        else os << ", shape=star";
        os << "];\n";
      }
      for (std::size_t i = 0; i < g.curves.size(); ++i) {
        for (std::size_t j = i + 1; j < g.curves.size(); ++j) {
          if (g.pairing[i][j] <= 0) continue;
          os << "  \"" << g.curves[i].label << "\" -- \"" << g.curves[j].label << "\"";
          if (g.pairing[i][j] > 1) os << " [label=\"" << g.pairing[i][j].str() << "\"]";
          os << ";\n";
        }
      }
      os << "}\n";
      break;
    }
  }
  return {ok ? 0 : 1, os.str()};
}

inline CommandResult cmd_admits(const std::string& path, Format format) {
  const SurfaceModel m = load_model(path);
  const AdmissibilityReport r = admits(m.config());
  std::ostringstream os;
  if (format == Format::Json) {
    Json j{{"config", to_string(m.config())}};
    const Json body = to_json(r);
    for (const auto& item : body.items()) j[item.key()] = item.value();
    os << dump(j);
  } else if (format == Format::Text) {
    os << to_string(m.config()) << " rank " << r.rank << "\n";
    os << "A2  " << to_string(r.a2) << "  (" << r.reasons.a2 << ")\n";
    os << "An  " << (r.an ? "yes" : "no") << "  (" << r.reasons.an << ")\n";
    os << "D3  " << (r.d3 ? "yes" : "no") << "  (" << r.reasons.d3 << ")\n";
    os << "Dm  " << (r.dm ? "yes" : "no") << "  (" << r.reasons.dm << ")\n";
  } else {
    unsupported(format, "admits");
  }
  return {0, os.str()};
}

inline CommandResult cmd_bundles(const std::string& path, int bound, Format format) {
  const SurfaceModel m = load_model(path);
  const auto bundles = enumerate_conic_bundles(m, bound);
  std::ostringstream os;
  switch (format) {
    case Format::Json: {
      Json list = Json::array();
      for (const auto& b : bundles) list.push_back(to_json(b));
      os << dump(Json{{"model", m.name()}, {"bound", bound}, {"bundles", list}});
      break;
    }
    case Format::Text:
      os << m.name() << ": " << bundles.size() << " conic class(es) of degree <= " << bound
         << ", nef against the declared inventory\n";
      for (const auto& b : bundles) {
        os << to_string(b.conic.cls) << "\n";
        for (const auto& f : b.fibers) {
          os << "  " << std::left << std::setw(4) << to_string(f.type) << " " << support_text(f) << "\n";
        }
      }
      break;
    case Format::Dot:
      for (std::size_t i = 0; i < bundles.size(); ++i) {
        for (std::size_t k = 0; k < bundles[i].fibers.size(); ++k) {
          os << to_dot(bundles[i].fibers[k],
                       "bundle" + std::to_string(i + 1) + "_fiber" + std::to_string(k + 1));
        }
      }
      break;
  }
  return {0, os.str()};
}

inline CommandResult cmd_classify(const std::string& path, const std::string& fiber, Format format) {
  const SurfaceModel m = load_model(path);
  const auto terms = fiber_terms_from_json(parse_json_text(fiber, "--fiber"), m);
  const SingularConicFiber f = make_fiber(terms);
  std::ostringstream os;
  switch (format) {
    case Format::Json: {
      Json j = to_json(f);
      j["class"] = to_json(f.cls);
      os << dump(j);
      break;
    }
    case Format::Text:
      os << to_string(f.type) << ": " << support_text(f) << " = " << to_string(f.cls) << "\n";
      break;
    case Format::Dot:
      os << to_dot(f);
      break;
  }
  return {0, os.str()};
}

struct FixtureOutcome {
  std::string id;
  std::string config;
  int rank = 0;
  std::string target;
  std::vector<std::string> fiber_types;
  std::vector<std::string> failures;
  bool pass() const { return failures.empty(); }
};

/// Validation, pencil construction, fiber enumeration and admissibility
/// for one fixture, compared against its expected results.
inline FixtureOutcome run_fixture(const Fixture& fx) {
  FixtureOutcome o;
  o.id = fx.id;
  auto fail = [&o](std::string s) { o.failures.push_back(std::move(s)); };
  try {
    const SurfaceModel m(fx.spec);
    o.config = to_string(m.config());
    const ModelReport report = validate_model(m);
    for (const auto& f : report.failures) fail("validate: " + f);

    const ConicClass target = m.pencils().empty() ? verify_conic_class(fx.target, m)
                                                  : conic_class_from_pencil(m, m.pencils().front());
    o.target = to_string(target.cls);
    if (target.cls != fx.target) fail("pencil gives " + o.target + ", expected " + to_string(fx.target));

    const auto fibers = enumerate_singular_fibers(m, target);
    std::vector<ExpectedFiber> got;
    for (const auto& f : fibers) {
      o.fiber_types.push_back(to_string(f.type));
      ExpectedFiber e{to_string(f.type), {}};
      for (const auto& t : f.support) e.support.emplace_back(t.curve.label, t.multiplicity);
      got.push_back(std::move(e));
    }
    auto same = [](const ExpectedFiber& a, const ExpectedFiber& b) {
      return a.type == b.type && a.support == b.support;
    };
    if (!std::equal(got.begin(), got.end(), fx.fibers.begin(), fx.fibers.end(), same)) {
      fail("singular fibers differ from the expected list");
    }

    const AdmissibilityReport adm = admits(m.config());
    o.rank = adm.rank;
    if (adm.rank != fx.rank) fail("rank " + std::to_string(adm.rank));
    if (adm.a2 != fx.a2 || adm.an != fx.an || adm.d3 != fx.d3 || adm.dm != fx.dm) {
      fail("admissibility verdicts differ");
    }
    for (const auto& f : fibers) {
      const bool allowed = (f.type.kind == FiberKind::A && f.type.nodes == 2 && adm.a2 == A2Verdict::Possible) ||
                           (f.type.kind == FiberKind::A && f.type.nodes >= 3 && adm.an) ||
                           (f.type.kind == FiberKind::D && f.type.nodes == 3 && adm.d3) ||
                           (f.type.kind == FiberKind::D && f.type.nodes >= 4 && adm.dm);
      if (!allowed) fail("fiber type " + to_string(f.type) + " is not admissible");
    }
  } catch (const Error& e) {
    fail(std::string(to_string(e.code())) + ": " + e.detail());
  }
  return o;
}

inline CommandResult cmd_corpus(Format format) {
  std::vector<FixtureOutcome> outcomes;
  for (const auto& fx : corpus_fixtures()) outcomes.push_back(run_fixture(fx));
  const auto passed = std::count_if(outcomes.begin(), outcomes.end(),
                                    [](const auto& o) { return o.pass(); });
  std::ostringstream os;
  if (format == Format::Json) {
    Json list = Json::array();
    for (const auto& o : outcomes) {
      list.push_back(Json{{"id", o.id},
                          {"config", o.config},
                          {"rank", o.rank},
                          {"target", o.target},
                          {"fibers", o.fiber_types},
                          {"pass", o.pass()},
                          {"failures", o.failures}});
    }
    os << dump(Json{{"fixtures", list}, {"passed", passed}, {"total", outcomes.size()}});
  } else if (format == Format::Text) {
    os << std::left << std::setw(14) << "fixture" << std::setw(16) << "config" << std::setw(6)
       << "rank" << std::setw(9) << "class" << std::setw(26) << "singular fibers"
       << "result\n";
    for (const auto& o : outcomes) {
      std::string types;
      for (const auto& t : o.fiber_types) types += (types.empty() ? "" : " ") + t;
      os << std::setw(14) << o.id << std::setw(16) << o.config << std::setw(6) << o.rank
         << std::setw(9) << o.target << std::setw(26) << types << (o.pass() ? "pass" : "FAIL")
         << "\n";
      for (const auto& f : o.failures) os << "  " << f << "\n";
    }
    os << passed << "/" << outcomes.size() << " fixtures pass\n";
  } else {
    unsupported(format, "corpus");
  }
  return {passed == static_cast<long>(outcomes.size()) ? 0 : 1, os.str()};
}

/// Dispatches one command; every error becomes a JSON error object.
inline CommandResult run(const RunConfig& rc) {
  try {
    if (rc.command == "validate") return cmd_validate(rc.input, rc.format.value_or(Format::Text), rc.strict);
    if (rc.command == "admits") return cmd_admits(rc.input, rc.format.value_or(Format::Text));
    if (rc.command == "bundles") {
      if (rc.bound < 0) throw Error(ErrorCode::Schema, "--bound must be nonnegative");
      return cmd_bundles(rc.input, rc.bound, rc.format.value_or(Format::Json));
    }
    if (rc.command == "classify") return cmd_classify(rc.input, rc.fiber, rc.format.value_or(Format::Json));
    if (rc.command == "corpus") return cmd_corpus(rc.format.value_or(Format::Text));
    throw Error(ErrorCode::Schema, "unknown command '" + rc.command + "'");
  } catch (const Error& e) {
    return {exit_code_for(e), dump(error_json(e))};
  }
}

}  // namespace conic::cli
