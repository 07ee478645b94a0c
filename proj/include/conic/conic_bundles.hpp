#pragma once

/**
 * @file conic_bundles.hpp
 * @brief Conic classes, the five fiber types of a conic bundle, and exhaustive
 *        enumeration of singular fibers over a declared curve inventory.
 *
 * A conic class D is nef with D^2 = 0 and D.(-K) = 2. A reducible fiber is
 * supported on sections ((-1)-curves) and (-2)-curves and has one of the
 * shapes
 *
 *   A2     P + P'                      two sections meeting once
 *   An     P + C1 + ... + Ck + P'      a chain, all multiplicities one
 *   D3     2P + C1 + C2                C1, C2 meet P and not each other
 *   Dm     2P + 2C1 + ... + 2Cl + Cl+1 + Cl+2
 *                                      a doubled chain ending in a fork
 *
 * Type 0 is a single smooth rational curve of square zero.
 */

#include <algorithm>
#include <array>
#include <cctype>
#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "conic/error.hpp"
#include "conic/ns_lattice.hpp"
#include "conic/surface_model.hpp"

namespace conic {

enum class FiberKind { Type0, A, D };

struct FiberType {
  FiberKind kind = FiberKind::Type0;
  int nodes = 1;  // An stores n, Dm stores m

  static FiberType type0() { return {FiberKind::Type0, 1}; }
  static FiberType A(int n) { return {FiberKind::A, n}; }
  static FiberType D(int m) { return {FiberKind::D, m}; }

  friend bool operator==(const FiberType&, const FiberType&) = default;
  friend bool operator<(const FiberType& a, const FiberType& b) {
    if (a.kind != b.kind) return a.kind < b.kind;
    return a.nodes < b.nodes;
  }
};

inline std::string to_string(const FiberType& t) {
  switch (t.kind) {
    case FiberKind::Type0: return "0";
    case FiberKind::A: return "A" + std::to_string(t.nodes);
    case FiberKind::D: return "D" + std::to_string(t.nodes);
  }
  return "?";
}

inline FiberType parse_fiber_type(const std::string& s) {
  if (s == "0") return FiberType::type0();
  if (s.size() >= 2 && (s[0] == 'A' || s[0] == 'D')) {
    const std::string digits = s.substr(1);
    if (digits.size() <= 3 &&
        std::all_of(digits.begin(), digits.end(), [](unsigned char c) { return std::isdigit(c); })) {
      const int n = std::stoi(digits);
      if (s[0] == 'A' && n >= 2) return FiberType::A(n);
      if (s[0] == 'D' && n >= 3) return FiberType::D(n);
    }
  }
  throw Error(ErrorCode::Schema, "unknown fiber type '" + s + "'");
}

struct FiberTerm {
  NamedCurve curve;
  int multiplicity = 1;

  friend bool operator==(const FiberTerm&, const FiberTerm&) = default;
};

struct SingularConicFiber {
  std::vector<FiberTerm> support;  // in shape order (see classify_fiber)
  FiberType type;
  DivisorClass cls;

  std::vector<std::string> labels() const {
    std::vector<std::string> out;
    for (const auto& t : support) out.push_back(t.curve.label);
    return out;
  }
};

struct ConicClass {
  DivisorClass cls;
  std::vector<std::string> nef_evidence;  // inventory curves D was checked against
};

struct ConicBundle {
  ConicClass conic;
  std::vector<SingularConicFiber> fibers;
};

/// D.C >= 0 for every curve in the inventory.
inline bool is_nef_against(const DivisorClass& d, std::span<const NamedCurve> inventory) {
  return std::all_of(inventory.begin(), inventory.end(),
                     [&d](const NamedCurve& c) { return intersect(d, c.cls) >= 0; });
}

/// Certifies D as a conic class relative to the model's negative-curve inventory.
inline ConicClass verify_conic_class(const DivisorClass& d, const SurfaceModel& m) {
  if (self_intersection(d) != 0) {
    throw Error(ErrorCode::NotSquareZero,
                to_string(d) + " has square " + self_intersection(d).str());
  }
  if (anticanonical_degree(d) != 2) {
    throw Error(ErrorCode::WrongAnticanonicalDegree,
                to_string(d) + " has D.(-K) = " + anticanonical_degree(d).str());
  }
  ConicClass out{d, {}};
  for (const auto& c : negative_curve_inventory(m)) {
    if (intersect(d, c.cls) < 0) {
      throw Error(ErrorCode::NotNefAgainstInventory,
                  c.label + " . (" + to_string(d) + ") = " + intersect(d, c.cls).str());
    }
    out.nef_evidence.push_back(c.label);
  }
  // |D| is a base point free pencil, hence chi(D) = h^0(D) = 2.
  if (riemann_roch_chi(d) != 2) {
    throw std::logic_error("conic class with chi != 2: " + to_string(d));
  }
  return out;
}

/// Intersection numbers among the support curves.
inline std::vector<std::vector<Integer>> support_pairing(std::span<const FiberTerm> support) {
  const std::size_t n = support.size();
  std::vector<std::vector<Integer>> p(n, std::vector<Integer>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j)
      p[i][j] = p[j][i] = intersect(support[i].curve.cls, support[j].curve.cls);
  return p;
}

/// Number of other support curves meeting support[node] positively.
inline int neighbour_count(std::span<const FiberTerm> support, std::size_t node) {
  if (node >= support.size()) throw Error(ErrorCode::OutOfRange, "node not in support");
  int count = 0;
  for (std::size_t j = 0; j < support.size(); ++j)
    if (j != node && intersect(support[node].curve.cls, support[j].curve.cls) > 0) ++count;
  return count;
}

namespace detail {

using Classified = std::pair<FiberType, std::vector<std::size_t>>;

/// Records the reason only when the caller wants one.
template <class Reason>
std::optional<Classified> reject(std::string* why, Reason&& reason) {
  if (why) *why = reason();
  return std::nullopt;
}

/// Classifies and returns the support permutation in shape order:
/// A-types from one end section to the other (smaller label first),
/// D-types from the doubled section along the chain, fork leaves last.
inline std::optional<Classified> try_classify_with_order(std::span<const FiberTerm> support,
                                                        std::string* why) {
  const std::size_t n = support.size();
  if (n == 0) return reject(why, [&] { return "empty support"; });
  for (std::size_t i = 0; i < n; ++i) {
    const auto& t = support[i];
    if (t.multiplicity < 1) {
      return reject(why, [&] { return t.curve.label + " has nonpositive multiplicity"; });
    }
    for (std::size_t j = 0; j < i; ++j) {
      if (support[j].curve.label == t.curve.label) {
        return reject(why, [&] { return t.curve.label + " appears twice"; });
      }
    }
  }

  if (n == 1 && support[0].multiplicity == 1) {
    const auto& c = support[0].curve.cls;
    if (self_intersection(c) == 0 && intersect(c, canonical_class()) == -2 &&
        arithmetic_genus(c) == 0) {
      return Classified{FiberType::type0(), {0}};
    }
    return reject(why, [&] {
      return support[0].curve.label + " is not a smooth rational curve of square zero";
    });
  }

  // Roles and the anticanonical degree: sections count once, (-2)-curves not at all.
  int section_weight = 0;
  std::vector<std::size_t> sections;
  for (std::size_t i = 0; i < n; ++i) {
    const auto& t = support[i];
    if (t.multiplicity > 2) {
      return reject(why, [&] { return t.curve.label + " has multiplicity above 2"; });
    }
    if (t.curve.role == CurveRole::Other) {
      return reject(why, [&] { return t.curve.label + " is neither a section nor a (-2)-curve"; });
    }
    if (t.curve.role == CurveRole::Section) {
      section_weight += t.multiplicity;
      sections.push_back(i);
    }
  }
  if (section_weight != 2) {
    return reject(why, [&] { return "D.(-K) = " + std::to_string(section_weight) + ", expected 2"; });
  }

  const auto p = support_pairing(support);
  std::vector<std::vector<std::size_t>> adj(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j) continue;
      if (p[i][j] < 0) return reject(why, [&] { return "distinct curves with negative pairing"; });
      if (p[i][j] > 0) adj[i].push_back(j);
    }
  }
  {
    std::vector<bool> seen(n, false);
    std::vector<std::size_t> stack{0};
    seen[0] = true;
    std::size_t count = 1;
    while (!stack.empty()) {
      const auto v = stack.back();
      stack.pop_back();
      for (auto w : adj[v])
        if (!seen[w]) { seen[w] = true; ++count; stack.push_back(w); }
    }
    if (count != n) return reject(why, [&] { return "support is disconnected"; });
  }
  for (std::size_t i = 0; i < n; ++i) {
    Integer dc = 0;
    for (std::size_t j = 0; j < n; ++j) dc += Integer(support[j].multiplicity) * p[i][j];
    if (dc != 0) {
      return reject(why, [&] { return "D." + support[i].curve.label + " = " + dc.str() + ", expected 0"; });
    }
  }

  // Every shape is a tree with unit edges.
  std::size_t edges = 0;
  for (std::size_t i = 0; i < n; ++i) {
    for (auto j : adj[i]) {
      if (p[i][j] != 1) {
        return reject(why, [&] { return "edge of weight " + p[i][j].str() + " in the support"; });
      }
      if (j > i) ++edges;
    }
  }
  if (edges != n - 1) return reject(why, [&] { return "support graph has a cycle"; });

  auto other = [&adj](std::size_t v, std::size_t prev) {
    for (auto w : adj[v])
      if (w != prev) return w;
    return v;
  };

  if (sections.size() == 2) {
    for (const auto& t : support)
      if (t.multiplicity != 1) return reject(why, [&] { return "A-type fibers are reduced"; });
    std::size_t start = sections[0], end = sections[1];
    if (support[end].curve.label < support[start].curve.label) std::swap(start, end);
    if (adj[start].size() != 1 || adj[end].size() != 1) {
      return reject(why, [&] { return "the sections are not the ends of a chain"; });
    }
    std::vector<std::size_t> order{start};
    std::size_t prev = start, cur = adj[start][0];
    while (cur != end) {
      if (adj[cur].size() != 2 || support[cur].curve.role != CurveRole::FiberComponent) {
        return reject(why, [&] { return "interior of the chain must be (-2)-curves of valence two"; });
      }
      order.push_back(cur);
      const auto next = other(cur, prev);
      prev = cur;
      cur = next;
    }
    order.push_back(end);
    if (order.size() != n) return reject(why, [&] { return "support is not a chain"; });
    return Classified{FiberType::A(static_cast<int>(n)), order};
  }

  if (sections.size() != 1 || support[sections[0]].multiplicity != 2) {
    return reject(why, [&] { return "expected two sections or one doubled section"; });
  }
  const std::size_t root = sections[0];
  if (n == 3) {
    if (adj[root].size() != 2) {
      return reject(why, [&] { return "D3: the section must meet both (-2)-curves"; });
    }
    std::vector<std::size_t> leaves = adj[root];
    for (auto v : leaves) {
      if (support[v].multiplicity != 1 || adj[v].size() != 1) {
        return reject(why, [&] { return "D3: the (-2)-curves must be simple leaves"; });
      }
    }
    std::sort(leaves.begin(), leaves.end(), [&](auto a, auto b) {
      return support[a].curve.label < support[b].curve.label;
    });
    return Classified{FiberType::D(3), {root, leaves[0], leaves[1]}};
  }

  if (adj[root].size() != 1) {
    return reject(why, [&] { return "Dm: the doubled section must be an extremity"; });
  }
  std::vector<std::size_t> order{root};
  std::size_t prev = root, cur = adj[root][0];
  while (true) {
    if (support[cur].multiplicity != 2) {
      return reject(why, [&] { return "Dm: chain from the section must be doubled"; });
    }
    order.push_back(cur);
    if (adj[cur].size() == 3) break;
    if (adj[cur].size() != 2) return reject(why, [&] { return "Dm: chain node of wrong valence"; });
    const auto next = other(cur, prev);
    prev = cur;
    cur = next;
  }
  std::vector<std::size_t> leaves;
  for (auto w : adj[cur])
    if (w != prev) leaves.push_back(w);
  for (auto v : leaves) {
    if (support[v].multiplicity != 1 || adj[v].size() != 1) {
      return reject(why, [&] { return "Dm: the fork must end in two simple leaves"; });
    }
  }
  std::sort(leaves.begin(), leaves.end(), [&](auto a, auto b) {
    return support[a].curve.label < support[b].curve.label;
  });
  order.insert(order.end(), leaves.begin(), leaves.end());
  if (order.size() != n) {
    return reject(why, [&] { return "Dm: support is not a doubled chain with a fork"; });
  }
  return Classified{FiberType::D(static_cast<int>(n)), order};
}

inline Classified classify_with_order(std::span<const FiberTerm> support) {
  std::string why;
  auto result = try_classify_with_order(support, &why);
  if (!result) throw Error(ErrorCode::NotAConicFiber, why);
  return std::move(*result);
}

}  // namespace detail

/// Shape of a candidate conic-bundle fiber; throws NotAConicFiber.
inline FiberType classify_fiber(std::span<const FiberTerm> support) {
  return detail::classify_with_order(support).first;
}

/// Same test without the exception, for bulk screening.
inline std::optional<FiberType> try_classify_fiber(std::span<const FiberTerm> support) {
  auto result = detail::try_classify_with_order(support, nullptr);
  if (!result) return std::nullopt;
  return result->first;
}

/// Classified fiber with its support in shape order.
inline SingularConicFiber make_fiber(std::span<const FiberTerm> support) {
  auto [type, order] = detail::classify_with_order(support);
  SingularConicFiber f;
  f.type = type;
  for (auto i : order) {
    f.support.push_back(support[i]);
    f.cls += Integer(support[i].multiplicity) * support[i].curve.cls;
  }
  return f;
}

/// Fibers sort by type, then by their sorted support labels.
inline bool fiber_order(const SingularConicFiber& a, const SingularConicFiber& b) {
  if (!(a.type == b.type)) return a.type < b.type;
  auto la = a.labels(), lb = b.labels();
  std::sort(la.begin(), la.end());
  std::sort(lb.begin(), lb.end());
  if (la != lb) return la < lb;
  std::vector<int> ma, mb;
  for (const auto& t : a.support) ma.push_back(t.multiplicity);
  for (const auto& t : b.support) mb.push_back(t.multiplicity);
  return ma < mb;
}

/// Every divisor over `curves` fitting the A2, An, D3 or Dm template,
/// classified and deduplicated. Chains and forks are grown along unit edges;
/// the classifier then checks the full intersection pattern.
inline std::vector<SingularConicFiber> enumerate_shaped_divisors(std::span<const NamedCurve> curves) {
  const std::size_t n = curves.size();
  std::vector<std::vector<int>> unit(n, std::vector<int>(n, 0));
  std::vector<std::vector<bool>> touches(n, std::vector<bool>(n, false));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const Integer v = intersect(curves[i].cls, curves[j].cls);
      unit[i][j] = unit[j][i] = v == 1;
      touches[i][j] = touches[j][i] = v != 0;
    }
  }
  std::vector<std::size_t> sections, roots2;
  for (std::size_t i = 0; i < n; ++i) {
    if (curves[i].role == CurveRole::Section) sections.push_back(i);
    if (curves[i].role == CurveRole::FiberComponent) roots2.push_back(i);
  }

  std::map<std::vector<std::pair<std::string, int>>, SingularConicFiber> found;
  auto offer = [&](const std::vector<std::pair<std::size_t, int>>& terms) {
    std::vector<FiberTerm> support;
    std::vector<std::pair<std::string, int>> key;
    for (const auto& [i, mult] : terms) {
      support.push_back({curves[i], mult});
      key.emplace_back(curves[i].label, mult);
    }
    std::sort(key.begin(), key.end());
    if (found.count(key)) return;
    try {
      found.emplace(std::move(key), make_fiber(support));
    } catch (const Error& e) {
      if (e.code() != ErrorCode::NotAConicFiber) throw;
    }
  };
  // Induced path: the new node meets the last node once and nothing earlier.
  auto extends = [&](const std::vector<std::size_t>& path, std::size_t v) {
    if (std::find(path.begin(), path.end(), v) != path.end()) return false;
    if (!unit[path.back()][v]) return false;
    for (std::size_t k = 0; k + 1 < path.size(); ++k)
      if (touches[path[k]][v]) return false;
    return true;
  };

  for (auto s : sections) {
    // A-types: s, C1..Ck, s'.
    auto grow_chain = [&](auto&& self, std::vector<std::size_t>& path) -> void {
      for (auto t : sections) {
        if (t <= s || !extends(path, t)) continue;
        std::vector<std::pair<std::size_t, int>> terms;
        for (auto v : path) terms.emplace_back(v, 1);
        terms.emplace_back(t, 1);
        offer(terms);
      }
      for (auto c : roots2) {
        if (!extends(path, c)) continue;
        path.push_back(c);
        self(self, path);
        path.pop_back();
      }
    };
    std::vector<std::size_t> path{s};
    grow_chain(grow_chain, path);

    // D3: 2s + C1 + C2.
    for (std::size_t a = 0; a < roots2.size(); ++a) {
      for (std::size_t b = a + 1; b < roots2.size(); ++b) {
        const auto c1 = roots2[a], c2 = roots2[b];
        if (unit[s][c1] && unit[s][c2] && !touches[c1][c2]) offer({{s, 2}, {c1, 1}, {c2, 1}});
      }
    }

    // Dm: 2s + 2C1 + ... + 2Cl + leaves.
    auto grow_doubled = [&](auto&& self, std::vector<std::size_t>& chain) -> void {
      if (chain.size() >= 2) {
        std::vector<std::size_t> leaves;
        for (auto c : roots2)
          if (extends(chain, c)) leaves.push_back(c);
        for (std::size_t a = 0; a < leaves.size(); ++a) {
          for (std::size_t b = a + 1; b < leaves.size(); ++b) {
            if (touches[leaves[a]][leaves[b]]) continue;
            std::vector<std::pair<std::size_t, int>> terms;
            for (auto v : chain) terms.emplace_back(v, 2);
            terms.emplace_back(leaves[a], 1);
            terms.emplace_back(leaves[b], 1);
            offer(terms);
          }
        }
      }
      for (auto c : roots2) {
        if (!extends(chain, c)) continue;
        chain.push_back(c);
        self(self, chain);
        chain.pop_back();
      }
    };
    std::vector<std::size_t> chain{s};
    grow_doubled(grow_doubled, chain);
  }

  std::vector<SingularConicFiber> out;
  for (auto& [key, fiber] : found) out.push_back(std::move(fiber));
  std::sort(out.begin(), out.end(), fiber_order);
  return out;
}

/// All reducible fibers of the conic bundle |target| supported on the
/// model's inventory. Complete relative to the inventory: support curves are
/// orthogonal to the target, multiplicities are at most two, and the four
/// reducible templates are exhaustive.
inline std::vector<SingularConicFiber> enumerate_singular_fibers(const SurfaceModel& m,
                                                                 const ConicClass& target) {
  std::vector<NamedCurve> orthogonal;
  for (const auto& c : negative_curve_inventory(m))
    if (intersect(c.cls, target.cls) == 0) orthogonal.push_back(c);
  std::vector<SingularConicFiber> out;
  for (auto& f : enumerate_shaped_divisors(orthogonal))
    if (f.cls == target.cls) out.push_back(std::move(f));
  return out;
}

/// Classes a*l - sum b_i e_i with 1 <= a <= bound, 0 <= b_i <= a,
/// sum b_i = 3a - 2 and sum b_i^2 = a^2 (the numeric conic conditions).
inline std::vector<DivisorClass> numeric_conic_classes_in_box(int bound) {
  std::vector<DivisorClass> out;
  std::array<long long, kBlownUpPoints> b{};
  for (long long a = 1; a <= bound; ++a) {
    const long long want_sum = 3 * a - 2, want_sq = a * a;
    auto fill = [&](auto&& self, std::size_t i, long long sum, long long sq) -> void {
      if (sum > want_sum || sq > want_sq) return;
      if (i == kBlownUpPoints) {
        if (sum == want_sum && sq == want_sq) {
          std::array<Integer, kLatticeRank> c;
          c[0] = a;
          for (std::size_t k = 0; k < kBlownUpPoints; ++k) c[k + 1] = b[k];
          out.emplace_back(c);
        }
        return;
      }
      const auto left = static_cast<long long>(kBlownUpPoints - i);
      if (sum + left * a < want_sum) return;
      for (long long v = 0; v <= a; ++v) {
        b[i] = v;
        self(self, i + 1, sum + v, sq + v * v);
      }
      b[i] = 0;
    };
    fill(fill, 0, 0, 0);
  }
  return out;
}

/// Conic classes with l-degree in [0, bound]: the coefficient box plus any
/// class realised as a shape sum over the inventory, each with its fibers.
inline std::vector<ConicBundle> enumerate_conic_bundles(const SurfaceModel& m, int bound) {
  if (bound < 0) throw Error(ErrorCode::OutOfRange, "search bound must be nonnegative");
  const auto inventory = negative_curve_inventory(m);
  std::set<DivisorClass> candidates;
  for (auto& d : numeric_conic_classes_in_box(bound)) candidates.insert(std::move(d));
  for (const auto& f : enumerate_shaped_divisors(inventory)) {
    if (f.cls.degree() >= 0 && f.cls.degree() <= bound) candidates.insert(f.cls);
  }

  std::vector<ConicBundle> out;
  for (const auto& d : candidates) {
    if (!is_conic_class_numeric(d) || !is_nef_against(d, inventory)) continue;
    ConicBundle bundle{verify_conic_class(d, m), {}};
    bundle.fibers = enumerate_singular_fibers(m, bundle.conic);
    out.push_back(std::move(bundle));
  }
  return out;
}

/// Graphviz rendering of a fiber: sections as circles, (-2)-curves as
/// filled discs, a type-0 curve as a star; doubled components say so.
inline std::string to_dot(const SingularConicFiber& f, const std::string& name = "fiber") {
  std::ostringstream os;
  os << "graph \"" << name << "\" {\n";
  os << "  label=\"" << to_string(f.type) << ": " << to_string(f.cls) << "\";\n";
  for (const auto& t : f.support) {
    os << "  \"" << t.curve.label << "\" [label=\""
       << (t.multiplicity > 1 ? std::to_string(t.multiplicity) + " " : "") << t.curve.label
       << "\"";
    switch (t.curve.role) {
      case CurveRole::Section: os << ", shape=circle"; break;
      case CurveRole::FiberComponent:
        os << ", shape=circle, style=filled, fillcolor=black, fontcolor=white";
        break;
      case CurveRole::Other: os << ", shape=star"; break;
    }
    os << "];\n";
  }
  for (std::size_t i = 0; i < f.support.size(); ++i) {
    for (std::size_t j = i + 1; j < f.support.size(); ++j) {
      const Integer v = intersect(f.support[i].curve.cls, f.support[j].curve.cls);
      if (v <= 0) continue;
      os << "  \"" << f.support[i].curve.label << "\" -- \"" << f.support[j].curve.label << "\"";
      if (v > 1) os << " [label=\"" << v.str() << "\"]";
      os << ";\n";
    }
  }
  os << "}\n";
  return os.str();
}

}  // namespace conic
