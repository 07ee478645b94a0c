#pragma once

/**
 * @file fixtures.hpp
 * @brief Worked rational elliptic surfaces shipped with the library, each
 *        with a conic class and the complete list of its reducible fibers.
 *
 * Every curve meeting the target class negatively or orthogonally is
 * declared, so the expected fiber lists are complete, not just relative to
 * the inventory.
 */

#include <string>
#include <utility>
#include <vector>

#include "conic/admissibility.hpp"
#include "conic/kodaira.hpp"
#include "conic/ns_lattice.hpp"
#include "conic/surface_model.hpp"

namespace conic {

struct ExpectedFiber {
  std::string type;
  std::vector<std::pair<std::string, int>> support;  // shape order
};

struct Fixture {
  std::string id;
  ModelSpec spec;
  DivisorClass target;
  std::vector<ExpectedFiber> fibers;  // complete, sorted as enumerated
  int rank = 0;
  A2Verdict a2 = A2Verdict::Possible;
  bool an = false, d3 = false, dm = false;
};

namespace detail {

inline CurveSpec line_through(std::string label, std::initializer_list<int> pts) {
  PointMultiplicities through;
  for (int p : pts) through.emplace_back(p, 1);
  return CurveSpec::plane(std::move(label), CurveKind::Line, std::move(through));
}

inline PlanePencil lines_through(int p) { return {PencilKind::Lines, {{p, 1}}}; }

inline BasePointForest forest_with(std::initializer_list<std::pair<int, int>> near_pairs) {
  std::array<std::optional<int>, kBlownUpPoints> near{};
  for (const auto& [child, parent] : near_pairs) near[static_cast<std::size_t>(child - 1)] = parent;
  return BasePointForest(near);
}

inline DivisorClass l_minus_e1() { return DivisorClass{1, 1, 0, 0, 0, 0, 0, 0, 0, 0}; }

/// Nine infinitely near points in a chain; a single II* fiber.
inline ModelSpec only_type_d_spec(std::vector<std::string> config) {
  ModelSpec s;
  s.name = "only-type-D";
  s.notes = "Nine infinitely near points on a cuspidal cubic; E9 is the only section.";
  s.forest = BasePointForest::chain();
  for (int i = 1; i <= 9; ++i) s.curves.push_back(CurveSpec::exceptional("E" + std::to_string(i), i));
  s.curves.push_back(line_through("L", {1, 2, 3}));
  s.config = parse_configuration(config);
  s.fibers.push_back({"II*", KodairaType::of(KodairaFamily::IIStar),
                      {{"L", 3}, {"E1", 2}, {"E2", 4}, {"E3", 6}, {"E4", 5},
                       {"E5", 4}, {"E6", 3}, {"E7", 2}, {"E8", 1}}});
  s.pencils.push_back(lines_through(1));
  return s;
}

}  // namespace detail

inline Fixture fixture_only_type_d() {
  Fixture f;
  f.id = "only-type-D";
  f.spec = detail::only_type_d_spec({"II*", "II"});
  f.target = detail::l_minus_e1();
  f.fibers = {{"D9", {{"E9", 2}, {"E8", 2}, {"E7", 2}, {"E6", 2}, {"E5", 2}, {"E4", 2},
                      {"E3", 2}, {"E2", 1}, {"L", 1}}}};
  f.rank = 0;
  f.a2 = A2Verdict::Excluded;
  f.dm = true;
  return f;
}

/// Same surface with the cuspidal fiber II replaced by two nodal fibers.
inline Fixture fixture_only_type_d_nodal() {
  Fixture f = fixture_only_type_d();
  f.id = "only-type-D-nodal";
  f.spec = detail::only_type_d_spec({"II*", "I1", "I1"});
  f.spec.name = f.id;
  return f;
}

inline Fixture fixture_only_type_a2() {
  Fixture f;
  f.id = "only-type-A2";
  f.spec.name = f.id;
  f.spec.notes = "Nine general points; the lines L1i through P1 and Pi are declared.";
  for (int i = 1; i <= 9; ++i) f.spec.curves.push_back(CurveSpec::exceptional("E" + std::to_string(i), i));
  for (int i = 2; i <= 9; ++i) f.spec.curves.push_back(detail::line_through("L1" + std::to_string(i), {1, i}));
  f.spec.config = parse_configuration({"II", "10I1"});
  f.spec.pencils.push_back(detail::lines_through(1));
  f.target = detail::l_minus_e1();
  for (int i = 2; i <= 9; ++i) {
    f.fibers.push_back({"A2", {{"E" + std::to_string(i), 1}, {"L1" + std::to_string(i), 1}}});
  }
  f.rank = 8;
  return f;
}

inline Fixture fixture_types_a2_a3() {
  Fixture f;
  f.id = "types-A2-A3";
  f.spec.name = f.id;
  f.spec.notes = "Fiber IV = L1 + L2 + L3 with L1 through P1, P6, P9.";
  for (int i = 1; i <= 9; ++i) f.spec.curves.push_back(CurveSpec::exceptional("E" + std::to_string(i), i));
  for (int i : {2, 3, 4, 5, 7, 8}) {
    f.spec.curves.push_back(detail::line_through("L1" + std::to_string(i), {1, i}));
  }
  f.spec.curves.push_back(detail::line_through("L1", {1, 6, 9}));
  f.spec.curves.push_back(detail::line_through("L2", {2, 3, 4}));
  f.spec.curves.push_back(detail::line_through("L3", {5, 7, 8}));
  f.spec.config = parse_configuration({"IV", "II", "6I1"});
  f.spec.fibers.push_back({"IV", KodairaType::of(KodairaFamily::IV), {{"L1", 1}, {"L2", 1}, {"L3", 1}}});
  f.spec.pencils.push_back(detail::lines_through(1));
  f.target = detail::l_minus_e1();
  for (int i : {2, 3, 4, 5, 7, 8}) {
    f.fibers.push_back({"A2", {{"E" + std::to_string(i), 1}, {"L1" + std::to_string(i), 1}}});
  }
  f.fibers.push_back({"A3", {{"E6", 1}, {"L1", 1}, {"E9", 1}}});
  f.rank = 6;
  f.an = true;
  return f;
}

inline Fixture fixture_i7() {
  Fixture f;
  f.id = "I7-II-3I1";
  f.spec.name = f.id;
  f.spec.notes =
      "Points 1..9 are E1, F1, E2, F2, G2, E3, F3, E4, E5 in blowup order; "
      "T is the tangent line at P1.";
  f.spec.forest = detail::forest_with({{2, 1}, {4, 3}, {5, 4}, {7, 6}});
  const std::pair<const char*, int> exc[] = {{"E1", 1}, {"F1", 2}, {"E2", 3}, {"F2", 4}, {"G2", 5},
                                             {"E3", 6}, {"F3", 7}, {"E4", 8}, {"E5", 9}};
  for (const auto& [label, p] : exc) f.spec.curves.push_back(CurveSpec::exceptional(label, p));
  f.spec.curves.push_back(detail::line_through("L", {1, 3, 4}));
  f.spec.curves.push_back(detail::line_through("L'", {1, 6, 8}));
  f.spec.curves.push_back(detail::line_through("L3", {3, 6, 9}));
  f.spec.curves.push_back(detail::line_through("L''", {1, 9}));
  f.spec.curves.push_back(detail::line_through("T", {1, 2}));
  f.spec.config = parse_configuration({"I7", "II", "3I1"});
  f.spec.fibers.push_back({"I7", KodairaType::In(7),
                           {{"L", 1}, {"E1", 1}, {"L'", 1}, {"E3", 1}, {"L3", 1}, {"E2", 1}, {"F2", 1}}});
  f.spec.pencils.push_back(detail::lines_through(1));
  f.target = detail::l_minus_e1();
  f.fibers = {{"A2", {{"E5", 1}, {"L''", 1}}},
              {"A2", {{"F1", 1}, {"T", 1}}},
              {"A4", {{"E4", 1}, {"L'", 1}, {"E3", 1}, {"F3", 1}}},
              {"D4", {{"G2", 2}, {"F2", 2}, {"E2", 1}, {"L", 1}}}};
  f.rank = 2;
  f.an = true;
  f.dm = true;
  return f;
}

inline Fixture fixture_i2star() {
  Fixture f;
  f.id = "I2star-III-I1";
  f.spec.name = f.id;
  f.spec.notes = "Points 1..9 are E1, F1, G1, H1, I1, E2, E3, E4, F4 in blowup order.";
  f.spec.forest = detail::forest_with({{2, 1}, {3, 2}, {4, 3}, {5, 4}, {9, 8}});
  const std::pair<const char*, int> exc[] = {{"E1", 1}, {"F1", 2}, {"G1", 3}, {"H1", 4}, {"I1", 5},
                                             {"E2", 6}, {"E3", 7}, {"E4", 8}, {"F4", 9}};
  for (const auto& [label, p] : exc) f.spec.curves.push_back(CurveSpec::exceptional(label, p));
  f.spec.curves.push_back(detail::line_through("L''", {1, 2, 3}));
  f.spec.curves.push_back(detail::line_through("L'", {1, 8, 9}));
  f.spec.curves.push_back(detail::line_through("L", {1, 6, 7}));
  f.spec.curves.push_back(CurveSpec::plane(
      "C", CurveKind::Cubic, {{1, 1}, {2, 1}, {3, 1}, {4, 1}, {5, 1}, {6, 1}, {7, 1}, {8, 2}}));
  f.spec.config = parse_configuration({"I2*", "III", "I1"});
  f.spec.fibers.push_back({"I2*", KodairaType::InStar(2),
                           {{"L''", 1}, {"L'", 1}, {"L", 1}, {"E1", 2}, {"F1", 2}, {"G1", 2}, {"H1", 1}}});
  f.spec.fibers.push_back({"III", KodairaType::of(KodairaFamily::III), {{"C", 1}, {"E4", 1}}});
  f.spec.pencils.push_back(detail::lines_through(1));
  f.target = detail::l_minus_e1();
  f.fibers = {{"A3", {{"E2", 1}, {"L", 1}, {"E3", 1}}},
              {"D3", {{"F4", 2}, {"E4", 1}, {"L'", 1}}},
              {"D5", {{"I1", 2}, {"H1", 2}, {"G1", 2}, {"F1", 1}, {"L''", 1}}}};
  f.rank = 1;
  f.an = true;
  f.d3 = true;
  f.dm = true;
  return f;
}

/// The five worked examples, in order.
inline std::vector<Fixture> corpus_fixtures() {
  return {fixture_only_type_d(), fixture_only_type_a2(), fixture_types_a2_a3(), fixture_i7(),
          fixture_i2star()};
}

/// Nine general points with a IV fiber and a pencil of conics through
/// P1..P4 whose members split as L13 + L24, L14 + L23 and E5 + L1 + L3 + E9.
inline ModelSpec illustration_spec() {
  ModelSpec s;
  s.name = "conic-pencil";
  s.notes = "Fiber IV = L1 + L2 + L3; pencil of conics through P1, P2, P3, P4.";
  for (int i = 1; i <= 9; ++i) s.curves.push_back(CurveSpec::exceptional("E" + std::to_string(i), i));
  s.curves.push_back(detail::line_through("L1", {1, 2, 5}));
  s.curves.push_back(detail::line_through("L2", {6, 7, 8}));
  s.curves.push_back(detail::line_through("L3", {3, 4, 9}));
  s.curves.push_back(detail::line_through("L13", {1, 3}));
  s.curves.push_back(detail::line_through("L24", {2, 4}));
  s.curves.push_back(detail::line_through("L14", {1, 4}));
  s.curves.push_back(detail::line_through("L23", {2, 3}));
  s.config = parse_configuration({"IV", "8I1"});
  s.fibers.push_back({"IV", KodairaType::of(KodairaFamily::IV), {{"L1", 1}, {"L2", 1}, {"L3", 1}}});
  s.pencils.push_back({PencilKind::Conics, {{1, 1}, {2, 1}, {3, 1}, {4, 1}}});
  return s;
}

}  // namespace conic
