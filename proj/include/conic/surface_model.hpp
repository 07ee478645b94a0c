#pragma once

/**
 * @file surface_model.hpp
 * @brief A rational elliptic surface given as blowup data: nine base points
 *        with their proximity forest, declared curves, and the declared
 *        reducible fibers of the elliptic fibration.
 *
 * Models are declarative. Nothing here discovers curves; every downstream
 * answer is relative to the declared inventory.
 */

#include <algorithm>
#include <array>
#include <cstddef>
#include <limits>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "conic/error.hpp"
#include "conic/kodaira.hpp"
#include "conic/ns_lattice.hpp"

namespace conic {

/// Nine base points; point j may lie on the exceptional curve of an earlier
/// point i (j infinitely near i, written near(j) == i).
class BasePointForest {
 public:
  /// Nine distinct plane points.
  BasePointForest() = default;

  /// near[k] is the parent of point k+1, or empty for a plane point.
  explicit BasePointForest(const std::array<std::optional<int>, kBlownUpPoints>& near)
      : near_(near) {
    for (std::size_t k = 0; k < kBlownUpPoints; ++k) {
      if (!near_[k]) continue;
      const int parent = *near_[k];
      const int id = static_cast<int>(k) + 1;
      if (parent < 1 || parent >= id) {
        throw Error(ErrorCode::InvalidForest,
                    "point " + std::to_string(id) + " is infinitely near point " +
                        std::to_string(parent) + ", which must be an earlier point");
      }
    }
  }

  /// p1 <- p2 <- ... <- p9, each infinitely near its predecessor.
  static BasePointForest chain() {
    std::array<std::optional<int>, kBlownUpPoints> near{};
    for (std::size_t k = 1; k < kBlownUpPoints; ++k) near[k] = static_cast<int>(k);
    return BasePointForest(near);
  }

  std::optional<int> near(int id) const { return near_.at(checked(id) - 1); }

  /// Points lying on the exceptional curve of `id`.
  std::vector<int> proximate_to(int id) const {
    checked(id);
    std::vector<int> out;
    for (std::size_t k = 0; k < kBlownUpPoints; ++k)
      if (near_[k] && *near_[k] == id) out.push_back(static_cast<int>(k) + 1);
    return out;
  }

  static bool contains(int id) { return id >= 1 && id <= static_cast<int>(kBlownUpPoints); }

  friend bool operator==(const BasePointForest&, const BasePointForest&) = default;

 private:
  static int checked(int id) {
    if (!contains(id)) {
      throw Error(ErrorCode::OutOfRange, "base point " + std::to_string(id) + " not in 1..9");
    }
    return id;
  }

  std::array<std::optional<int>, kBlownUpPoints> near_{};
};

enum class CurveRole { Section, FiberComponent, Other };

inline std::string to_string(CurveRole role) {
  switch (role) {
    case CurveRole::Section: return "section";
    case CurveRole::FiberComponent: return "fiber";
    case CurveRole::Other: return "other";
  }
  return "other";
}

/// Role forced by the numbers: (-1)-curves with D.K = -1 are sections,
/// (-2)-curves with D.K = 0 are fiber components.
inline CurveRole role_of(const DivisorClass& d) {
  const Integer square = self_intersection(d);
  const Integer k = intersect(d, canonical_class());
  if (square == -1 && k == -1) return CurveRole::Section;
  if (square == -2 && k == 0) return CurveRole::FiberComponent;
  return CurveRole::Other;
}

/// (point id, multiplicity) pairs a plane curve passes through.
using PointMultiplicities = std::vector<std::pair<int, int>>;

enum class CurveKind { Exceptional, Line, Conic, Cubic, Explicit };

struct CurveSpec {
  std::string label;
  CurveKind kind = CurveKind::Line;
  int point = 0;                    // Exceptional
  PointMultiplicities through;      // Line, Conic, Cubic
  DivisorClass explicit_class;      // Explicit
  std::optional<CurveRole> declared_role;

  static CurveSpec exceptional(std::string label, int point) {
    CurveSpec s;
    s.label = std::move(label);
    s.kind = CurveKind::Exceptional;
    s.point = point;
    return s;
  }
  static CurveSpec plane(std::string label, CurveKind kind, PointMultiplicities through) {
    CurveSpec s;
    s.label = std::move(label);
    s.kind = kind;
    s.through = std::move(through);
    return s;
  }
  static CurveSpec with_class(std::string label, DivisorClass d) {
    CurveSpec s;
    s.label = std::move(label);
    s.kind = CurveKind::Explicit;
    s.explicit_class = std::move(d);
    return s;
  }
};

inline int plane_degree(CurveKind kind) {
  switch (kind) {
    case CurveKind::Line: return 1;
    case CurveKind::Conic: return 2;
    case CurveKind::Cubic: return 3;
    default: return 0;
  }
}

struct NamedCurve {
  std::string label;
  DivisorClass cls;
  CurveRole role = CurveRole::Other;

  NamedCurve() = default;
  NamedCurve(std::string l, DivisorClass c)
      : label(std::move(l)), cls(std::move(c)), role(role_of(cls)) {}

  friend bool operator==(const NamedCurve& a, const NamedCurve& b) {
    return a.label == b.label && a.cls == b.cls;
  }
};

/// e_i minus the total transforms of the points lying on it.
inline DivisorClass exceptional_component_class(const BasePointForest& forest, int i) {
  DivisorClass d = DivisorClass::exceptional(static_cast<std::size_t>(i));
  for (int j : forest.proximate_to(i)) d -= DivisorClass::exceptional(static_cast<std::size_t>(j));
  return d;
}

/// Checks multiplicities against the forest: a curve through an infinitely
/// near point passes through its parent, and the multiplicity at a point
/// bounds the sum over the points proximate to it.
inline void check_proximity(const BasePointForest& forest, const PointMultiplicities& through,
                            const std::string& label) {
  std::array<int, kBlownUpPoints + 1> m{};
  for (const auto& [id, mult] : through) {
    if (!BasePointForest::contains(id)) {
      throw Error(ErrorCode::InconsistentProximity,
                  label + ": base point " + std::to_string(id) + " not in 1..9");
    }
    if (mult < 0) {
      throw Error(ErrorCode::InconsistentProximity, label + ": negative multiplicity");
    }
    if (m[static_cast<std::size_t>(id)] != 0) {
      throw Error(ErrorCode::InconsistentProximity,
                  label + ": point " + std::to_string(id) + " listed twice");
    }
    m[static_cast<std::size_t>(id)] = mult;
  }
  for (int id = 1; id <= static_cast<int>(kBlownUpPoints); ++id) {
    int sum = 0;
    for (int j : forest.proximate_to(id)) sum += m[static_cast<std::size_t>(j)];
    if (sum > m[static_cast<std::size_t>(id)]) {
      throw Error(ErrorCode::InconsistentProximity,
                  label + ": multiplicity " + std::to_string(m[static_cast<std::size_t>(id)]) +
                      " at point " + std::to_string(id) +
                      " is smaller than the total " + std::to_string(sum) +
                      " at the points infinitely near it");
    }
  }
}

/// d*l - sum m_i e_i for plane curves; exceptional components and explicit
/// classes are passed through.
inline DivisorClass strict_transform_class(const BasePointForest& forest, const CurveSpec& spec) {
  switch (spec.kind) {
    case CurveKind::Exceptional:
      return exceptional_component_class(forest, spec.point);
    case CurveKind::Explicit:
      return spec.explicit_class;
    default:
      break;
  }
  check_proximity(forest, spec.through, spec.label);
  DivisorClass d = plane_degree(spec.kind) * DivisorClass::line();
  for (const auto& [id, mult] : spec.through)
    d -= Integer(mult) * DivisorClass::exceptional(static_cast<std::size_t>(id));
  return d;
}

/// Members of one declared fiber: curve labels with multiplicities.
struct FiberDeclaration {
  std::string key;  // e.g. "II*", or "IV#2" for a repeated tag
  KodairaType type;
  std::vector<std::pair<std::string, int>> members;
};

enum class PencilKind { Lines, Conics };

struct PlanePencil {
  PencilKind kind = PencilKind::Lines;
  PointMultiplicities base;
};

struct ModelSpec {
  std::string name;
  std::string notes;
  BasePointForest forest;
  std::vector<CurveSpec> curves;
  FiberConfiguration config;
  std::vector<FiberDeclaration> fibers;
  std::vector<PlanePencil> pencils;
};

class SurfaceModel {
 public:
  /// Computes every curve class; throws on proximity or label errors.
  explicit SurfaceModel(ModelSpec spec) : spec_(std::move(spec)) {
    std::set<std::string> labels;
    curves_.reserve(spec_.curves.size());
    for (const auto& c : spec_.curves) {
      if (c.label.empty()) throw Error(ErrorCode::Schema, "curve with empty label");
      if (!labels.insert(c.label).second) {
        throw Error(ErrorCode::Schema, "duplicate curve label '" + c.label + "'");
      }
      curves_.emplace_back(c.label, strict_transform_class(spec_.forest, c));
    }
  }

  const std::string& name() const { return spec_.name; }
  const ModelSpec& spec() const { return spec_; }
  const BasePointForest& forest() const { return spec_.forest; }
  const std::vector<NamedCurve>& curves() const { return curves_; }
  const FiberConfiguration& config() const { return spec_.config; }
  const std::vector<FiberDeclaration>& fibers() const { return spec_.fibers; }
  const std::vector<PlanePencil>& pencils() const { return spec_.pencils; }

  const NamedCurve* find(const std::string& label) const {
    for (const auto& c : curves_)
      if (c.label == label) return &c;
    return nullptr;
  }

  const NamedCurve& at(const std::string& label) const {
    if (const auto* c = find(label)) return *c;
    throw Error(ErrorCode::UnknownCurve, "no curve labelled '" + label + "'");
  }

 private:
  ModelSpec spec_;
  std::vector<NamedCurve> curves_;
};

/// Declared curves of negative square, in declaration order.
inline std::vector<NamedCurve> negative_curve_inventory(const SurfaceModel& m) {
  std::vector<NamedCurve> out;
  for (const auto& c : m.curves())
    if (self_intersection(c.cls) < 0) out.push_back(c);
  return out;
}

struct CurveGraph {
  std::vector<NamedCurve> curves;
  std::vector<std::vector<Integer>> pairing;  // diagonal: self-intersections
};

/// Pairwise intersection numbers. Distinct integral curves meet
/// nonnegatively, so a negative off-diagonal entry throws NegativeEdge.
inline CurveGraph intersection_graph(const std::vector<NamedCurve>& curves) {
  CurveGraph g{curves, std::vector<std::vector<Integer>>(curves.size(),
                                                         std::vector<Integer>(curves.size()))};
  for (std::size_t i = 0; i < curves.size(); ++i) {
    for (std::size_t j = i; j < curves.size(); ++j) {
      const Integer v = intersect(curves[i].cls, curves[j].cls);
      if (i != j && v < 0) {
        throw Error(ErrorCode::NegativeEdge, curves[i].label + " . " + curves[j].label + " = " +
                                                 v.str() + " < 0");
      }
      g.pairing[i][j] = v;
      g.pairing[j][i] = v;
    }
  }
  return g;
}

/// Node-labelled weighted graph used for exact fiber isomorphism tests.
struct LabelledGraph {
  std::vector<int> self;          // self-intersections
  std::vector<int> multiplicity;  // node weights
  IntersectionMatrix pairing;
};

/// Exact isomorphism: self-intersections, multiplicities and edge weights
/// must all correspond. Backtracking; fibers have at most nine components.
inline bool isomorphic(const LabelledGraph& a, const LabelledGraph& b) {
  const std::size_t n = a.self.size();
  if (b.self.size() != n) return false;

  auto signature = [](const LabelledGraph& g, std::size_t v) {
    std::vector<int> s{g.self[v], g.multiplicity[v]};
    std::vector<int> weights;
    for (std::size_t w = 0; w < g.self.size(); ++w)
      if (w != v && g.pairing[v][w] != 0) weights.push_back(g.pairing[v][w]);
    std::sort(weights.begin(), weights.end());
    s.insert(s.end(), weights.begin(), weights.end());
    return s;
  };
  std::vector<std::vector<int>> sa(n), sb(n);
  for (std::size_t v = 0; v < n; ++v) {
    sa[v] = signature(a, v);
    sb[v] = signature(b, v);
  }
  {
    auto x = sa, y = sb;
    std::sort(x.begin(), x.end());
    std::sort(y.begin(), y.end());
    if (x != y) return false;
  }

  std::vector<int> map(n, -1);
  std::vector<bool> used(n, false);
  auto extend = [&](auto&& self, std::size_t v) -> bool {
    if (v == n) return true;
    for (std::size_t w = 0; w < n; ++w) {
      if (used[w] || sa[v] != sb[w]) continue;
      bool ok = true;
      for (std::size_t u = 0; u < v && ok; ++u)
        ok = a.pairing[v][u] == b.pairing[w][static_cast<std::size_t>(map[u])];
      if (!ok) continue;
      map[v] = static_cast<int>(w);
      used[w] = true;
      if (self(self, v + 1)) return true;
      used[w] = false;
    }
    map[v] = -1;
    return false;
  };
  return extend(extend, 0);
}

inline LabelledGraph labelled(const FiberGraph& fg) {
  LabelledGraph g;
  for (const auto& node : fg.nodes) {
    g.self.push_back(node.self_intersection);
    g.multiplicity.push_back(node.multiplicity);
  }
  g.pairing = fg.pairing;
  return g;
}

struct ModelReport {
  std::vector<std::string> failures;
  std::vector<std::string> warnings;
  ConfigReport config;

  bool ok() const { return failures.empty() && config.ok(); }
};

namespace detail {

inline bool fits_int(const Integer& v) {
  return v >= std::numeric_limits<int>::min() && v <= std::numeric_limits<int>::max();
}

}  // namespace detail

/// Checks curve invariants, declared fibers against their Kodaira graphs,
/// fiber class sums, section/fiber incidences, and the configuration.
inline ModelReport validate_model(const SurfaceModel& m) {
  ModelReport report;
  report.config = validate_config(m.config());
  auto fail = [&report](std::string s) { report.failures.push_back(std::move(s)); };

  // Curve invariants.
  for (std::size_t i = 0; i < m.curves().size(); ++i) {
    const auto& c = m.curves()[i];
    const auto& spec = m.spec().curves[i];
    const Integer square = self_intersection(c.cls);
    if (spec.declared_role && *spec.declared_role != c.role) {
      fail(c.label + " is declared a " + to_string(*spec.declared_role) + " but has class " +
           to_string(c.cls) + " (square " + square.str() + ", K-degree " +
           intersect(c.cls, canonical_class()).str() + ")");
    }
    if (square < 0 && c.role == CurveRole::Other) {
      fail(c.label + " has negative square " + square.str() +
           " but is neither a (-1)-curve section nor a (-2)-curve");
    }
    if (c.role != CurveRole::Other && arithmetic_genus(c.cls) != 0) {
      fail(c.label + " has nonzero arithmetic genus");
    }
  }

  // Pairwise nonnegativity of distinct curves.
  for (std::size_t i = 0; i < m.curves().size(); ++i) {
    for (std::size_t j = i + 1; j < m.curves().size(); ++j) {
      const Integer v = intersect(m.curves()[i].cls, m.curves()[j].cls);
      if (v < 0) {
        fail("NegativeEdge: " + m.curves()[i].label + " . " + m.curves()[j].label + " = " +
             v.str());
      }
    }
  }

  // Declared fibers.
  std::map<KodairaType, int> available;
  for (const auto& t : m.config()) ++available[t];
  std::map<std::string, std::string> owner;
  for (const auto& fib : m.fibers()) {
    const std::string where = "fiber " + fib.key;
    if (available[fib.type]-- <= 0) {
      fail(where + " is not part of the configuration " + to_string(m.config()));
    }
    bool resolved = true;
    DivisorClass total;
    std::vector<const NamedCurve*> members;
    LabelledGraph declared;
    for (const auto& [label, mult] : fib.members) {
      const auto* c = m.find(label);
      if (!c) {
        fail(where + " references unknown curve '" + label + "'");
        resolved = false;
        continue;
      }
      if (mult < 1) fail(where + ": multiplicity of " + label + " must be positive");
      if (auto [it, fresh] = owner.emplace(label, fib.key); !fresh) {
        fail(label + " is declared in both fiber " + it->second + " and " + where);
      }
      if (is_reducible(fib.type) && c->role != CurveRole::FiberComponent) {
        fail(where + ": member " + label + " is not a (-2)-curve");
      }
      total += Integer(mult) * c->cls;
      members.push_back(c);
      declared.multiplicity.push_back(mult);
    }
    if (!resolved) continue;
    if (total != anticanonical_class()) {
      fail(where + ": weighted sum of members is " + to_string(total) + ", expected " +
           to_string(anticanonical_class()));
    }
    bool representable = true;
    declared.pairing.assign(members.size(), std::vector<int>(members.size()));
    for (std::size_t i = 0; i < members.size(); ++i) {
      for (std::size_t j = 0; j < members.size(); ++j) {
        const Integer v = intersect(members[i]->cls, members[j]->cls);
        if (!detail::fits_int(v)) representable = false;
        else declared.pairing[i][j] = v.convert_to<int>();
      }
      declared.self.push_back(declared.pairing[i][i]);
    }
    if (!representable || !isomorphic(declared, labelled(build_fiber_graph(fib.type)))) {
      fail(where + ": intersection graph of the members does not match " +
           to_string(fib.type));
    }

    // Sections meet each declared fiber once, at a simple component.
    for (const auto& p : m.curves()) {
      if (p.role != CurveRole::Section) continue;
      Integer total_hits = 0;
      bool simple = true;
      for (std::size_t i = 0; i < members.size(); ++i) {
        const Integer v = intersect(p.cls, members[i]->cls);
        total_hits += Integer(declared.multiplicity[i]) * v;
        if (v != 0 && (v != 1 || declared.multiplicity[i] != 1)) simple = false;
      }
      if (total_hits != 1 || !simple) {
        fail("section " + p.label + " does not meet " + where +
             " once at a multiplicity-one component");
      }
    }
  }

  bool all_declared = true;
  for (const auto& [t, left] : available) {
    if (is_reducible(t) && left > 0) {
      all_declared = false;
      report.warnings.push_back(std::to_string(left) + " reducible fiber(s) of type " +
                                to_string(t) + " not declared; results are relative to the "
                                "declared inventory");
    }
  }
  for (const auto& c : m.curves()) {
    if (c.role != CurveRole::FiberComponent || owner.count(c.label)) continue;
    std::string msg = "(-2)-curve " + c.label + " is not a member of any declared fiber";
    if (all_declared) fail(msg);
    else report.warnings.push_back(msg);
  }

  for (const auto& f : report.config.failures) report.failures.push_back("config: " + f);
  return report;
}

}  // namespace conic
