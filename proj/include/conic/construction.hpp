#pragma once

/**
 * @file construction.hpp
 * @brief Conic classes from plane pencils of lines or conics whose base
 *        points are among the nine blown-up points.
 */

#include <string>

#include "conic/conic_bundles.hpp"
#include "conic/error.hpp"
#include "conic/ns_lattice.hpp"
#include "conic/surface_model.hpp"

namespace conic {

/// d*l - sum m_i e_i for the pencil, certified as a conic class.
///
/// Smoothness of the general member is not checked separately: a pencil of
/// lines is always smooth, and a pencil of conics with four simple base
/// points has an irreducible general member because the class is nef and
/// primitive of square zero.
inline ConicClass conic_class_from_pencil(const SurfaceModel& m, const PlanePencil& q) {
  for (const auto& [id, mult] : q.base) {
    if (!BasePointForest::contains(id)) {
      throw Error(ErrorCode::BaseLocusNotContained,
                  "base point " + std::to_string(id) + " is not one of the nine points");
    }
    if (mult != 1) {
      throw Error(ErrorCode::BaseLocusNotContained,
                  "base point " + std::to_string(id) + " must be simple");
    }
  }

  int d = 0;
  if (q.kind == PencilKind::Lines) {
    d = 1;
    const bool single = q.base.size() == 1;
    const bool tangent = q.base.size() == 2 && m.forest().near(q.base[1].first) == q.base[0].first;
    if (!single && !tangent) {
      throw Error(ErrorCode::BaseLocusNotContained,
                  "a pencil of lines has one base point, optionally with one direction "
                  "infinitely near it");
    }
  } else {
    d = 2;
    if (q.base.size() != 4) {
      throw Error(ErrorCode::BaseLocusNotContained,
                  "a pencil of conics needs four base points, got " +
                      std::to_string(q.base.size()));
    }
  }
  try {
    check_proximity(m.forest(), q.base, "pencil");
  } catch (const Error& e) {
    throw Error(ErrorCode::BaseLocusNotContained, e.detail());
  }

  int sum = 0, sum_sq = 0;
  DivisorClass cls = d * DivisorClass::line();
  for (const auto& [id, mult] : q.base) {
    sum += mult;
    sum_sq += mult * mult;
    cls -= mult * DivisorClass::exceptional(static_cast<std::size_t>(id));
  }
  if (d * d != sum_sq) {
    throw Error(ErrorCode::NotSquareZero, "pencil class " + to_string(cls) + " has nonzero square");
  }
  if (3 * d != sum + 2) {
    throw Error(ErrorCode::WrongAnticanonicalDegree,
                "pencil class " + to_string(cls) + " has anticanonical degree " +
                    std::to_string(3 * d - sum));
  }
  return verify_conic_class(cls, m);
}

}  // namespace conic
