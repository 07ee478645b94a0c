#pragma once

/**
 * @file admissibility.hpp
 * @brief Which conic-bundle fiber types a Kodaira configuration can carry.
 *
 * Only necessary conditions are known for A2, so that verdict is two-valued:
 * excluded when the fibration is extremal, otherwise merely possible.
 */

#include <string>
#include <vector>

#include "conic/error.hpp"
#include "conic/kodaira.hpp"

namespace conic {

enum class A2Verdict { Excluded, Possible };

inline std::string to_string(A2Verdict v) {
  return v == A2Verdict::Excluded ? "excluded" : "possible";
}

struct AdmissibilityReport {
  A2Verdict a2 = A2Verdict::Possible;
  bool an = false;
  bool d3 = false;
  bool dm = false;
  int rank = 0;
  struct Reasons {
    std::string a2, an, d3, dm;
  } reasons;
};

namespace detail {

inline std::string join_tags(const std::vector<KodairaType>& ts) {
  std::string out;
  for (const auto& t : ts) {
    if (!out.empty()) out += ", ";
    out += to_string(t);
  }
  return out;
}

}  // namespace detail

inline AdmissibilityReport admits(const FiberConfiguration& config) {
  const ConfigReport cr = validate_config(config);
  if (!cr.ok()) {
    std::string why;
    for (const auto& f : cr.failures) why += (why.empty() ? "" : "; ") + f;
    throw Error(ErrorCode::InvalidConfiguration, why);
  }
  AdmissibilityReport r;
  r.rank = *cr.rank;

  if (r.rank == 0) {
    r.a2 = A2Verdict::Excluded;
    r.reasons.a2 = "extremal: Mordell-Weil rank 0, sections are pairwise disjoint";
  } else {
    r.a2 = A2Verdict::Possible;
    r.reasons.a2 = "Mordell-Weil rank " + std::to_string(r.rank) +
                   "; necessary condition only, existence not decided";
  }

  std::vector<KodairaType> an_witness, dm_witness;
  for (const auto& t : cr.reducible) {
    if (t.family != KodairaFamily::IIStar) an_witness.push_back(t);
  }
  for (const auto& t : config) {
    if (!is_reduced(t) || (t.family == KodairaFamily::I && t.n >= 4)) dm_witness.push_back(t);
  }

  r.an = !an_witness.empty();
  r.reasons.an = r.an ? "reducible fiber other than II*: " + detail::join_tags(an_witness)
                      : "no reducible fiber other than II*";
  r.d3 = cr.reducible.size() >= 2;
  r.reasons.d3 = r.d3 ? "two reducible fibers: " + detail::join_tags(cr.reducible)
                      : "fewer than two reducible fibers";
  r.dm = !dm_witness.empty();
  r.reasons.dm = r.dm ? "nonreduced fiber or I_n with n >= 4: " + detail::join_tags(dm_witness)
                      : "no nonreduced fiber and no I_n with n >= 4";
  return r;
}

}  // namespace conic
