#pragma once

/**
 * @file kodaira.hpp
 * @brief Kodaira fiber types, their extended Dynkin graphs, and fiber
 *        configurations of a rational elliptic fibration.
 *
 * Node orders are fixed so multiplicity vectors are reproducible:
 *   I_n          cycle c0..c(n-1)
 *   I_n*         central chain c0..cn, then the two leaves at c0, then the
 *                two leaves at cn (I_0*: centre, then four leaves)
 *   IV*, III*, II*: the long chain first, the branch last
 *                (II*: 1,2,3,4,5,6,4,2 then 3 on the node of multiplicity 6)
 */

#include <algorithm>
#include <cctype>
#include <cstddef>
#include <map>
#include <numeric>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "conic/error.hpp"
#include "conic/ns_lattice.hpp"

namespace conic {

enum class KodairaFamily { I, IStar, II, III, IV, IIStar, IIIStar, IVStar };

struct KodairaType {
  KodairaFamily family = KodairaFamily::I;
  int n = 1;  // only meaningful for I_n and I_n*

  static KodairaType In(int n) {
    if (n < 1) throw Error(ErrorCode::OutOfRange, "I_n needs n >= 1");
    return {KodairaFamily::I, n};
  }
  static KodairaType InStar(int n) {
    if (n < 0) throw Error(ErrorCode::OutOfRange, "I_n* needs n >= 0");
    return {KodairaFamily::IStar, n};
  }
  static KodairaType of(KodairaFamily f) {
    if (f == KodairaFamily::I || f == KodairaFamily::IStar) {
      throw Error(ErrorCode::OutOfRange, "I_n families need a parameter");
    }
    return {f, 0};
  }

  friend bool operator==(const KodairaType&, const KodairaType&) = default;
  friend bool operator<(const KodairaType& a, const KodairaType& b) {
    if (a.family != b.family) return a.family < b.family;
    return a.n < b.n;
  }
};

inline void check_parameter(const KodairaType& t) {
  if (t.family == KodairaFamily::I && t.n < 1)
    throw Error(ErrorCode::OutOfRange, "I_n needs n >= 1, got " + std::to_string(t.n));
  if (t.family == KodairaFamily::IStar && t.n < 0)
    throw Error(ErrorCode::OutOfRange, "I_n* needs n >= 0, got " + std::to_string(t.n));
}

inline std::string to_string(const KodairaType& t) {
  switch (t.family) {
    case KodairaFamily::I: return "I" + std::to_string(t.n);
    case KodairaFamily::IStar: return "I" + std::to_string(t.n) + "*";
    case KodairaFamily::II: return "II";
    case KodairaFamily::III: return "III";
    case KodairaFamily::IV: return "IV";
    case KodairaFamily::IIStar: return "II*";
    case KodairaFamily::IIIStar: return "III*";
    case KodairaFamily::IVStar: return "IV*";
  }
  return "?";
}

/// Parses "I7", "I2*", "II", "III", "IV", "II*", "III*", "IV*".
inline KodairaType parse_kodaira(const std::string& tag) {
  static const std::map<std::string, KodairaFamily> fixed = {
      {"II", KodairaFamily::II},         {"III", KodairaFamily::III},
      {"IV", KodairaFamily::IV},         {"II*", KodairaFamily::IIStar},
      {"III*", KodairaFamily::IIIStar},  {"IV*", KodairaFamily::IVStar}};
  if (auto it = fixed.find(tag); it != fixed.end()) return KodairaType::of(it->second);

  const bool starred = !tag.empty() && tag.back() == '*';
  const std::string body = starred ? tag.substr(0, tag.size() - 1) : tag;
  if (body.size() < 2 || body[0] != 'I' ||
      !std::all_of(body.begin() + 1, body.end(),
                   [](unsigned char c) { return std::isdigit(c) != 0; }) ||
      body.size() > 6) {
    throw Error(ErrorCode::Schema, "unknown Kodaira tag '" + tag + "'");
  }
  const int n = std::stoi(body.substr(1));
  return starred ? KodairaType::InStar(n) : KodairaType::In(n);
}

inline int component_count(const KodairaType& t) {
  check_parameter(t);
  switch (t.family) {
    case KodairaFamily::I: return t.n;
    case KodairaFamily::IStar: return t.n + 5;
    case KodairaFamily::II: return 1;
    case KodairaFamily::III: return 2;
    case KodairaFamily::IV: return 3;
    case KodairaFamily::IVStar: return 7;
    case KodairaFamily::IIIStar: return 8;
    case KodairaFamily::IIStar: return 9;
  }
  return 0;
}

/// Euler number of the singular fiber (standard Kodaira table).
inline int euler_number(const KodairaType& t) {
  check_parameter(t);
  switch (t.family) {
    case KodairaFamily::I: return t.n;
    case KodairaFamily::IStar: return t.n + 6;
    case KodairaFamily::II: return 2;
    case KodairaFamily::III: return 3;
    case KodairaFamily::IV: return 4;
    case KodairaFamily::IVStar: return 8;
    case KodairaFamily::IIIStar: return 9;
    case KodairaFamily::IIStar: return 10;
  }
  return 0;
}

inline bool is_reducible(const KodairaType& t) { return component_count(t) >= 2; }

inline bool is_reduced(const KodairaType& t) {
  switch (t.family) {
    case KodairaFamily::I:
    case KodairaFamily::II:
    case KodairaFamily::III:
    case KodairaFamily::IV: return true;
    default: return false;
  }
}

/// Symmetric matrix of intersection numbers; the diagonal holds
/// self-intersections.
using IntersectionMatrix = std::vector<std::vector<int>>;

struct FiberNode {
  std::string id;
  int self_intersection = -2;
  int multiplicity = 1;
};

struct FiberGraph {
  KodairaType type;
  std::vector<FiberNode> nodes;
  IntersectionMatrix pairing;

  std::size_t size() const { return nodes.size(); }

  std::vector<int> multiplicities() const {
    std::vector<int> m;
    m.reserve(nodes.size());
    for (const auto& node : nodes) m.push_back(node.multiplicity);
    return m;
  }

  /// Multiplicity-one components: the only places a section can meet the fiber.
  std::vector<std::size_t> simple_components() const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < nodes.size(); ++i)
      if (nodes[i].multiplicity == 1) out.push_back(i);
    return out;
  }
};

namespace detail {

inline bool is_connected(const IntersectionMatrix& g) {
  const std::size_t n = g.size();
  if (n == 0) return false;
  std::vector<bool> seen(n, false);
  std::vector<std::size_t> stack{0};
  seen[0] = true;
  std::size_t count = 1;
  while (!stack.empty()) {
    const std::size_t v = stack.back();
    stack.pop_back();
    for (std::size_t w = 0; w < n; ++w) {
      if (w != v && g[v][w] > 0 && !seen[w]) {
        seen[w] = true;
        ++count;
        stack.push_back(w);
      }
    }
  }
  return count == n;
}

/// Basis of the rational null space of a square integer matrix.
inline std::vector<std::vector<Rational>> null_space(const IntersectionMatrix& g) {
  const std::size_t n = g.size();
  std::vector<std::vector<Rational>> a(n, std::vector<Rational>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) a[i][j] = g[i][j];

  std::vector<std::size_t> pivot_col;
  std::size_t row = 0;
  for (std::size_t col = 0; col < n && row < n; ++col) {
    std::size_t p = row;
    while (p < n && a[p][col] == 0) ++p;
    if (p == n) continue;
    std::swap(a[p], a[row]);
    const Rational inv = 1 / a[row][col];
    for (auto& x : a[row]) x *= inv;
    for (std::size_t r = 0; r < n; ++r) {
      if (r == row || a[r][col] == 0) continue;
      const Rational f = a[r][col];
      for (std::size_t c = 0; c < n; ++c) a[r][c] -= f * a[row][c];
    }
    pivot_col.push_back(col);
    ++row;
  }

  std::vector<bool> is_pivot(n, false);
  for (auto c : pivot_col) is_pivot[c] = true;
  std::vector<std::vector<Rational>> basis;
  for (std::size_t free = 0; free < n; ++free) {
    if (is_pivot[free]) continue;
    std::vector<Rational> v(n);
    v[free] = 1;
    for (std::size_t r = 0; r < pivot_col.size(); ++r) v[pivot_col[r]] = -a[r][free];
    basis.push_back(std::move(v));
  }
  return basis;
}

inline void connect(IntersectionMatrix& g, std::size_t a, std::size_t b, int w = 1) {
  g[a][b] = w;
  g[b][a] = w;
}

}  // namespace detail

/// The unique primitive positive integer vector m with G*m = 0.
/// Throws NotAFiberGraph when the graph is disconnected, when the kernel is
/// not one-dimensional, or when its generator is not of one sign.
inline std::vector<int> fiber_multiplicities(const IntersectionMatrix& g) {
  const std::size_t n = g.size();
  for (const auto& row : g)
    if (row.size() != n) throw Error(ErrorCode::NotAFiberGraph, "matrix is not square");
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < i; ++j)
      if (g[i][j] != g[j][i]) throw Error(ErrorCode::NotAFiberGraph, "matrix is not symmetric");
  if (!detail::is_connected(g)) throw Error(ErrorCode::NotAFiberGraph, "graph is not connected");
  if (n > 1) {
    for (std::size_t i = 0; i < n; ++i)
      if (g[i][i] != -2)
        throw Error(ErrorCode::NotAFiberGraph,
                    "components of a reducible fiber must be (-2)-curves");
  }

  const auto basis = detail::null_space(g);
  if (basis.size() != 1) {
    throw Error(ErrorCode::NotAFiberGraph,
                "kernel has dimension " + std::to_string(basis.size()) + ", expected 1");
  }
  Integer lcm = 1;
  for (const auto& x : basis[0]) {
    const Integer d = boost::multiprecision::denominator(x);
    lcm = lcm / boost::multiprecision::gcd(lcm, d) * d;
  }
  std::vector<Integer> v;
  Integer g_all = 0;
  for (const auto& x : basis[0]) {
    v.push_back(boost::multiprecision::numerator(x) * (lcm / boost::multiprecision::denominator(x)));
    g_all = boost::multiprecision::gcd(g_all, v.back());
  }
  const bool negative = v.front() < 0;
  std::vector<int> out;
  for (auto& x : v) {
    x /= g_all;
    if (negative) x = -x;
    if (x <= 0) throw Error(ErrorCode::NotAFiberGraph, "kernel vector is not positive");
    out.push_back(x.convert_to<int>());
  }
  return out;
}

/// Extended Dynkin graph of a Kodaira type with its null-vector multiplicities.
inline FiberGraph build_fiber_graph(const KodairaType& t) {
  check_parameter(t);
  const auto n = static_cast<std::size_t>(component_count(t));
  FiberGraph fg{t, {}, IntersectionMatrix(n, std::vector<int>(n, 0))};
  auto& g = fg.pairing;
  for (std::size_t i = 0; i < n; ++i) g[i][i] = -2;

  switch (t.family) {
    case KodairaFamily::II:
      g[0][0] = 0;
      break;
    case KodairaFamily::I:
      if (n == 1) {
        g[0][0] = 0;
      } else if (n == 2) {
        detail::connect(g, 0, 1, 2);
      } else {
        for (std::size_t i = 0; i < n; ++i) detail::connect(g, i, (i + 1) % n);
      }
      break;
    case KodairaFamily::III:
      detail::connect(g, 0, 1, 2);
      break;
    case KodairaFamily::IV:
      detail::connect(g, 0, 1);
      detail::connect(g, 1, 2);
      detail::connect(g, 0, 2);
      break;
    case KodairaFamily::IStar: {
      const auto chain = static_cast<std::size_t>(t.n) + 1;
      for (std::size_t i = 0; i + 1 < chain; ++i) detail::connect(g, i, i + 1);
      detail::connect(g, 0, chain);
      detail::connect(g, 0, chain + 1);
      detail::connect(g, chain - 1, chain + 2);
      detail::connect(g, chain - 1, chain + 3);
      break;
    }
    case KodairaFamily::IVStar:
      for (std::size_t i = 0; i + 1 < 5; ++i) detail::connect(g, i, i + 1);
      detail::connect(g, 2, 5);
      detail::connect(g, 5, 6);
      break;
    case KodairaFamily::IIIStar:
      for (std::size_t i = 0; i + 1 < 7; ++i) detail::connect(g, i, i + 1);
      detail::connect(g, 3, 7);
      break;
    case KodairaFamily::IIStar:
      for (std::size_t i = 0; i + 1 < 8; ++i) detail::connect(g, i, i + 1);
      detail::connect(g, 5, 8);
      break;
  }

  const auto mult = fiber_multiplicities(g);
  for (std::size_t i = 0; i < n; ++i)
    fg.nodes.push_back({"c" + std::to_string(i), g[i][i], mult[i]});
  return fg;
}

/// Graphviz rendering with multiplicity labels; edge weights above one are
/// printed on the edge.
inline std::string to_dot(const FiberGraph& fg) {
  std::ostringstream os;
  os << "graph \"" << to_string(fg.type) << "\" {\n";
  for (std::size_t i = 0; i < fg.size(); ++i) {
    os << "  \"" << fg.nodes[i].id << "\" [label=\"" << fg.nodes[i].id
       << " (m=" << fg.nodes[i].multiplicity << ")\"];\n";
  }
  for (std::size_t i = 0; i < fg.size(); ++i) {
    for (std::size_t j = i + 1; j < fg.size(); ++j) {
      const int w = fg.pairing[i][j];
      if (w <= 0) continue;
      os << "  \"" << fg.nodes[i].id << "\" -- \"" << fg.nodes[j].id << "\"";
      if (w > 1) os << " [label=\"" << w << "\"]";
      os << ";\n";
    }
  }
  os << "}\n";
  return os.str();
}

/// Multiset of Kodaira types of the singular fibers.
using FiberConfiguration = std::vector<KodairaType>;

/// Parses config entries; "10I1" means ten I1 fibers.
inline FiberConfiguration parse_configuration(const std::vector<std::string>& entries) {
  FiberConfiguration config;
  for (const auto& raw : entries) {
    std::size_t digits = 0;
    while (digits < raw.size() && std::isdigit(static_cast<unsigned char>(raw[digits]))) ++digits;
    int count = 1;
    if (digits > 0) {
      if (digits > 3) throw Error(ErrorCode::Schema, "fiber count too large in '" + raw + "'");
      count = std::stoi(raw.substr(0, digits));
      if (count < 1) throw Error(ErrorCode::Schema, "fiber count must be positive in '" + raw + "'");
    }
    const auto t = parse_kodaira(raw.substr(digits));
    for (int k = 0; k < count; ++k) config.push_back(t);
  }
  std::sort(config.begin(), config.end());
  return config;
}

/// "(II*, II)", "(II, 10I1)": repeated types are grouped with a count.
inline std::string to_string(const FiberConfiguration& config) {
  std::vector<KodairaType> sorted = config;
  std::stable_sort(sorted.begin(), sorted.end(), [](const auto& a, const auto& b) {
    // Largest Euler number first, then the canonical order.
    const int ea = euler_number(a), eb = euler_number(b);
    if (ea != eb) return ea > eb;
    return a < b;
  });
  std::string out = "(";
  for (std::size_t i = 0; i < sorted.size();) {
    std::size_t j = i;
    while (j < sorted.size() && sorted[j] == sorted[i]) ++j;
    if (i > 0) out += ", ";
    if (j - i > 1) out += std::to_string(j - i);
    out += to_string(sorted[i]);
    i = j;
  }
  return out + ")";
}

/// Shioda-Tate: 8 - sum over fibers of (components - 1). Throws NegativeRank.
inline int mw_rank(const FiberConfiguration& config) {
  int rank = 8;
  for (const auto& t : config) rank -= component_count(t) - 1;
  if (rank < 0) {
    throw Error(ErrorCode::NegativeRank,
                "configuration " + to_string(config) + " has trivial lattice of rank > 10");
  }
  return rank;
}

inline bool is_extremal(const FiberConfiguration& config) { return mw_rank(config) == 0; }

struct ConfigReport {
  int euler = 0;
  std::optional<int> rank;  // empty when the Shioda-Tate count goes negative
  std::vector<KodairaType> reducible;
  std::vector<KodairaType> nonreduced;
  std::vector<std::string> failures;

  bool ok() const { return failures.empty(); }
};

inline ConfigReport validate_config(const FiberConfiguration& config) {
  ConfigReport report;
  int rank = 8;
  for (const auto& t : config) {
    report.euler += euler_number(t);
    rank -= component_count(t) - 1;
    if (is_reducible(t)) report.reducible.push_back(t);
    if (!is_reduced(t)) report.nonreduced.push_back(t);
  }
  if (report.euler != 12) {
    report.failures.push_back("Euler numbers sum to " + std::to_string(report.euler) +
                              ", expected 12");
  }
  if (rank < 0) {
    report.failures.push_back("Shioda-Tate rank would be " + std::to_string(rank));
  } else {
    report.rank = rank;
  }
  return report;
}

}  // namespace conic
