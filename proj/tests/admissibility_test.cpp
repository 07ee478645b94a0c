#include <random>
#include <set>

#include <gtest/gtest.h>

#include "conic/admissibility.hpp"
#include "conic/conic_bundles.hpp"
#include "conic/fixtures.hpp"

using namespace conic;

namespace {

struct Verdict {
  A2Verdict a2;
  bool an, d3, dm;
};

void expect_verdict(const std::vector<std::string>& config, Verdict v, int rank) {
  const auto r = admits(parse_configuration(config));
  EXPECT_EQ(r.a2, v.a2) << to_string(parse_configuration(config));
  EXPECT_EQ(r.an, v.an) << to_string(parse_configuration(config));
  EXPECT_EQ(r.d3, v.d3) << to_string(parse_configuration(config));
  EXPECT_EQ(r.dm, v.dm) << to_string(parse_configuration(config));
  EXPECT_EQ(r.rank, rank);
}

// Random configuration with Euler sum 12 and nonnegative rank.
FiberConfiguration random_config(std::mt19937_64& rng) {
  const std::vector<KodairaType> pool{
      KodairaType::In(1), KodairaType::In(2), KodairaType::In(3), KodairaType::In(4),
      KodairaType::In(5), KodairaType::In(6), KodairaType::In(7), KodairaType::In(8),
      KodairaType::InStar(0), KodairaType::InStar(1), KodairaType::InStar(2),
      KodairaType::of(KodairaFamily::II), KodairaType::of(KodairaFamily::III),
      KodairaType::of(KodairaFamily::IV), KodairaType::of(KodairaFamily::IVStar),
      KodairaType::of(KodairaFamily::IIIStar), KodairaType::of(KodairaFamily::IIStar)};
  while (true) {
    FiberConfiguration c;
    int euler = 0;
    while (euler < 12) {
      const auto t = pool[rng() % pool.size()];
      if (euler + euler_number(t) > 12) continue;
      c.push_back(t);
      euler += euler_number(t);
    }
    if (validate_config(c).ok()) return c;
  }
}

}  // namespace

TEST(Admits, ReferenceTable) {
  expect_verdict({"II*", "II"}, {A2Verdict::Excluded, false, false, true}, 0);
  expect_verdict({"II", "10I1"}, {A2Verdict::Possible, false, false, false}, 8);
  expect_verdict({"I7", "II", "3I1"}, {A2Verdict::Possible, true, false, true}, 2);
  expect_verdict({"I2*", "III", "I1"}, {A2Verdict::Possible, true, true, true}, 1);
  expect_verdict({"III*", "3I1"}, {A2Verdict::Possible, true, false, true}, 1);
  expect_verdict({"IV", "II", "6I1"}, {A2Verdict::Possible, true, false, false}, 6);
}

TEST(Admits, Reasons) {
  const auto r = admits(parse_configuration({"I2*", "III", "I1"}));
  EXPECT_NE(r.reasons.d3.find("I2*, III"), std::string::npos);
  EXPECT_NE(r.reasons.dm.find("I2*"), std::string::npos);
  const auto e = admits(parse_configuration({"II*", "II"}));
  EXPECT_NE(e.reasons.a2.find("rank 0"), std::string::npos);
  EXPECT_NE(e.reasons.an.find("II*"), std::string::npos);
}

TEST(Admits, InvalidConfiguration) {
  try {
    admits(parse_configuration({"II*", "II*"}));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::InvalidConfiguration);
  }
  EXPECT_THROW(admits(parse_configuration({"I9", "I9"})), Error);
}

TEST(Admits, DefiningConditionsOnRandomConfigs) {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 2000; ++trial) {
    const auto c = random_config(rng);
    const auto r = admits(c);
    EXPECT_EQ(r.a2 == A2Verdict::Excluded, mw_rank(c) == 0);
    int reducible = 0;
    bool non_e8 = false, dm = false;
    for (const auto& t : c) {
      if (component_count(t) >= 2) {
        ++reducible;
        non_e8 = non_e8 || t.family != KodairaFamily::IIStar;
      }
      const auto mults = build_fiber_graph(t).multiplicities();
      dm = dm || *std::max_element(mults.begin(), mults.end()) > 1 ||
           (t.family == KodairaFamily::I && t.n >= 4);
    }
    EXPECT_EQ(r.an, non_e8);
    EXPECT_EQ(r.d3, reducible >= 2);
    EXPECT_EQ(r.dm, dm);
  }
}

TEST(Admits, Monotonicity) {
  // Merging k nodal fibers into one I_k keeps the Euler sum and adds a
  // reducible fiber; no verdict may switch from true to false.
  std::mt19937_64 rng(23);
  int merges = 0;
  for (int trial = 0; trial < 2000; ++trial) {
    const auto c = random_config(rng);
    const auto before = admits(c);
    const auto ones = std::count(c.begin(), c.end(), KodairaType::In(1));
    for (int k = 2; k <= ones; ++k) {
      FiberConfiguration d;
      int dropped = 0;
      for (const auto& t : c) {
        if (t == KodairaType::In(1) && dropped < k) { ++dropped; continue; }
        d.push_back(t);
      }
      d.push_back(KodairaType::In(k));
      if (!validate_config(d).ok()) continue;
      ++merges;
      const auto after = admits(d);
      EXPECT_TRUE(after.an);
      EXPECT_TRUE(!before.an || after.an);
      EXPECT_TRUE(!before.d3 || after.d3);
      EXPECT_TRUE(!before.dm || after.dm);
      if (k >= 4) {
        EXPECT_TRUE(after.dm);
      }
    }
  }
  EXPECT_GT(merges, 100);
}

TEST(Admits, ConsistentWithEnumeration) {
  auto fixtures = corpus_fixtures();
  fixtures.push_back(fixture_only_type_d_nodal());
  for (const auto& fx : fixtures) {
    const SurfaceModel m(fx.spec);
    const auto r = admits(m.config());
    std::set<std::string> seen;
    for (const auto& b : enumerate_conic_bundles(m, 2)) {
      for (const auto& f : b.fibers) {
        seen.insert(f.type.kind == FiberKind::A ? (f.type.nodes == 2 ? "A2" : "An")
                                                : (f.type.nodes == 3 ? "D3" : "Dm"));
      }
    }
    EXPECT_TRUE(r.a2 == A2Verdict::Possible || !seen.count("A2")) << fx.id;
    EXPECT_TRUE(r.an || !seen.count("An")) << fx.id;
    EXPECT_TRUE(r.d3 || !seen.count("D3")) << fx.id;
    EXPECT_TRUE(r.dm || !seen.count("Dm")) << fx.id;
    // These inventories realise every admissible An, D3, Dm.
    EXPECT_EQ(seen.count("An") == 1, r.an) << fx.id;
    EXPECT_EQ(seen.count("D3") == 1, r.d3) << fx.id;
    EXPECT_EQ(seen.count("Dm") == 1, r.dm) << fx.id;
  }
}
