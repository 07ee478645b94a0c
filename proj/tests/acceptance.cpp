// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on failure.

#include <array>
#include <chrono>
#include <cstdint>
#include <cstdio>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>
#include <sys/wait.h>

#include "conic.hpp"
#include "conic/cli.hpp"

using namespace conic;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct Outcome {
  bool pass = true;
  std::string detail;
  void fail(const std::string& why) {
    if (pass) detail.clear();
    pass = false;
    detail += (detail.empty() ? "" : "; ") + why;
  }
};

int failures = 0;

void report(int number, const std::string& title, const std::function<Outcome()>& body) {
  Outcome o;
  const auto t0 = Clock::now();
  try {
    o = body();
  } catch (const std::exception& e) {
    o.fail(std::string("exception: ") + e.what());
  }
  std::ostringstream line;
  line << (o.pass ? "PASS" : "FAIL") << " [" << number << "] " << title;
  if (!o.detail.empty()) line << ": " << o.detail;
  line << " (" << std::fixed;
  line.precision(2);
  line << seconds_since(t0) << " s)";
  std::cout << line.str() << std::endl;
  if (!o.pass) ++failures;
}

std::vector<Fixture> fixtures_with_variant() {
  auto out = corpus_fixtures();
  out.push_back(fixture_only_type_d_nodal());
  return out;
}

// ---- criterion 1 -----------------------------------------------------------

Outcome corpus_reproduction() {
  Outcome o;
  std::ostringstream summary;
  for (const auto& fx : corpus_fixtures()) {
    const auto t0 = Clock::now();
    const SurfaceModel m(fx.spec);
    const auto fibers = enumerate_singular_fibers(m, verify_conic_class(fx.target, m));
    const double elapsed = seconds_since(t0);
    std::set<std::pair<std::string, std::vector<std::pair<std::string, int>>>> got, want;
    for (const auto& f : fibers) {
      std::vector<std::pair<std::string, int>> s;
      for (const auto& t : f.support) s.emplace_back(t.curve.label, t.multiplicity);
      std::sort(s.begin(), s.end());
      got.emplace(to_string(f.type), s);
    }
    for (const auto& f : fx.fibers) {
      auto s = f.support;
      std::sort(s.begin(), s.end());
      want.emplace(f.type, s);
    }
    if (got != want) o.fail(fx.id + " fiber set differs");
    if (elapsed >= 1.0) o.fail(fx.id + " took " + std::to_string(elapsed) + " s");
    summary << fx.id << "=" << fibers.size() << " ";
  }
  if (o.pass) o.detail = summary.str();
  return o;
}

// ---- criterion 2 -----------------------------------------------------------

Outcome admissibility_table() {
  Outcome o;
  struct Row {
    std::vector<std::string> config;
    A2Verdict a2;
    bool an, d3, dm;
    std::optional<int> rank;
  };
  const std::vector<Row> rows{
      {{"II*", "II"}, A2Verdict::Excluded, false, false, true, 0},
      {{"II", "10I1"}, A2Verdict::Possible, false, false, false, 8},
      {{"I7", "II", "3I1"}, A2Verdict::Possible, true, false, true, std::nullopt},
      {{"I2*", "III", "I1"}, A2Verdict::Possible, true, true, true, std::nullopt},
      {{"III*", "3I1"}, A2Verdict::Possible, true, false, true, 1},
  };
  for (const auto& row : rows) {
    const auto c = parse_configuration(row.config);
    const auto r = admits(c);
    if (r.a2 != row.a2 || r.an != row.an || r.d3 != row.d3 || r.dm != row.dm) {
      o.fail(to_string(c) + " verdicts differ");
    }
    if (row.rank && r.rank != *row.rank) o.fail(to_string(c) + " rank " + std::to_string(r.rank));
  }
  if (o.pass) o.detail = "5 rows incl. (III*, 3I1) rank 1";
  return o;
}

// ---- criterion 3 -----------------------------------------------------------

// Connected vertex subsets of size <= limit, each once (ESU enumeration).
void connected_subsets(const std::vector<std::vector<int>>& adj, std::size_t limit,
                       const std::function<void(const std::vector<int>&)>& visit) {
  const int n = static_cast<int>(adj.size());
  std::vector<int> subset;
  std::vector<char> in_subset(n, 0), in_neighbourhood(n, 0);
  std::function<void(std::vector<int>, int)> extend = [&](std::vector<int> ext, int root) {
    visit(subset);
    if (subset.size() == limit) return;
    while (!ext.empty()) {
      const int w = ext.back();
      ext.pop_back();
      // Exclusive neighbours of w: above root, not in or next to the subset.
      std::vector<int> next = ext;
      std::vector<int> added;
      for (int u : adj[w]) {
        if (u <= root || in_subset[u] || in_neighbourhood[u]) continue;
        next.push_back(u);
        added.push_back(u);
      }
      for (int u : added) in_neighbourhood[u] = 1;
      subset.push_back(w);
      in_subset[w] = 1;
      extend(next, root);
      in_subset[w] = 0;
      subset.pop_back();
      for (int u : added) in_neighbourhood[u] = 0;
    }
  };
  for (int v = 0; v < n; ++v) {
    std::vector<int> ext;
    std::vector<int> added;
    for (int u : adj[v]) {
      if (u > v) {
        ext.push_back(u);
        added.push_back(u);
      }
    }
    in_neighbourhood.assign(n, 0);
    in_neighbourhood[v] = 1;
    for (int u : added) in_neighbourhood[u] = 1;
    subset = {v};
    in_subset[v] = 1;
    extend(ext, v);
    in_subset[v] = 0;
  }
}

using Key = std::vector<std::pair<std::string, int>>;

Outcome oracle_equivalence() {
  Outcome o;
  std::ostringstream summary;
  const auto t0 = Clock::now();
  for (const auto& fx : fixtures_with_variant()) {
    const SurfaceModel m(fx.spec);
    const auto inv = negative_curve_inventory(m);
    const int n = static_cast<int>(inv.size());
    std::vector<std::vector<std::int64_t>> gram(n, std::vector<std::int64_t>(n));
    std::vector<std::int64_t> minus_k(n);
    std::vector<std::vector<int>> adj(n);
    for (int i = 0; i < n; ++i) {
      minus_k[i] = anticanonical_degree(inv[i].cls).convert_to<std::int64_t>();
      for (int j = 0; j < n; ++j) {
        gram[i][j] = intersect(inv[i].cls, inv[j].cls).convert_to<std::int64_t>();
        if (i != j && gram[i][j] > 0) adj[i].push_back(j);
      }
    }

    std::set<Key> oracle, accepted;
    std::size_t subsets = 0, candidates = 0;
    connected_subsets(adj, 10, [&](const std::vector<int>& s) {
      ++subsets;
      const std::size_t k = s.size();
      std::vector<FiberTerm> support;
      for (int v : s) support.push_back({inv[static_cast<std::size_t>(v)], 1});
      for (std::uint32_t mask = 0; mask < (1u << k); ++mask) {
        ++candidates;
        std::int64_t degree = 0;
        for (std::size_t a = 0; a < k; ++a) {
          support[a].multiplicity = (mask >> a) & 1u ? 2 : 1;
          degree += support[a].multiplicity * minus_k[static_cast<std::size_t>(s[a])];
        }
        bool numeric = degree == 2;
        std::int64_t square = 0;
        for (std::size_t a = 0; a < k && numeric; ++a) {
          std::int64_t dc = 0;
          for (std::size_t b = 0; b < k; ++b)
            dc += support[b].multiplicity * gram[static_cast<std::size_t>(s[a])][static_cast<std::size_t>(s[b])];
          numeric = dc == 0;
          square += support[a].multiplicity * dc;
        }
        numeric = numeric && square == 0;
        Key key;
        auto make_key = [&] {
          for (const auto& t : support) key.emplace_back(t.curve.label, t.multiplicity);
          std::sort(key.begin(), key.end());
        };
        if (numeric) {
          make_key();
          oracle.insert(key);
        }
        if (try_classify_fiber(support)) {
          if (key.empty()) make_key();
          accepted.insert(key);
        }
      }
    });

    // The template-growth enumerator must find the same divisors.
    std::set<Key> grown;
    for (const auto& f : enumerate_shaped_divisors(inv)) {
      Key key;
      for (const auto& t : f.support) key.emplace_back(t.curve.label, t.multiplicity);
      std::sort(key.begin(), key.end());
      grown.insert(key);
    }
    if (oracle != accepted) o.fail(fx.id + ": oracle and classifier disagree");
    if (oracle != grown) o.fail(fx.id + ": oracle and shape enumerator disagree");
    summary << fx.id << " " << oracle.size() << "/" << candidates << " ";
  }
  const double elapsed = seconds_since(t0);
  if (elapsed >= 30.0) o.fail("took " + std::to_string(elapsed) + " s");
  if (o.pass) o.detail = "divisors/candidates " + summary.str();
  return o;
}

// ---- criteria 4 and 5 ------------------------------------------------------

std::vector<KodairaType> graph_types() {
  std::vector<KodairaType> out;
  for (int n = 1; n <= 9; ++n) out.push_back(KodairaType::In(n));
  for (int n = 0; n <= 4; ++n) out.push_back(KodairaType::InStar(n));
  for (auto f : {KodairaFamily::II, KodairaFamily::III, KodairaFamily::IV, KodairaFamily::IVStar,
                 KodairaFamily::IIIStar, KodairaFamily::IIStar})
    out.push_back(KodairaType::of(f));
  return out;
}

Outcome null_vectors() {
  Outcome o;
  int checked = 0;
  for (const auto& t : graph_types()) {
    const auto g = build_fiber_graph(t);
    const auto stored = g.multiplicities();
    if (fiber_multiplicities(g.pairing) != stored) o.fail(to_string(t) + " multiplicities");
    std::int64_t f_squared = 0;
    for (std::size_t i = 0; i < g.size(); ++i) {
      std::int64_t fc = 0;
      for (std::size_t j = 0; j < g.size(); ++j) fc += std::int64_t{stored[j]} * g.pairing[i][j];
      if (fc != 0) o.fail(to_string(t) + " F.C != 0");
      f_squared += stored[i] * fc;
    }
    if (f_squared != 0) o.fail(to_string(t) + " F^2 != 0");
    ++checked;
  }
  if (o.pass) o.detail = std::to_string(checked) + " Kodaira graphs";
  return o;
}

Outcome zariski() {
  Outcome o;
  std::int64_t divisors = 0;
  for (const auto& t : graph_types()) {
    const auto g = build_fiber_graph(t);
    const auto f = g.multiplicities();
    const std::size_t n = g.size();
    std::vector<int> e(n, 0);
    std::int64_t total = 1;
    for (std::size_t i = 0; i < n; ++i) total *= 4;
    for (std::int64_t code = 1; code < total; ++code) {
      std::int64_t c = code;
      for (std::size_t i = 0; i < n; ++i) {
        e[i] = static_cast<int>(c % 4);
        c /= 4;
      }
      std::int64_t sq = 0;
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) sq += std::int64_t{e[i]} * e[j] * g.pairing[i][j];
      bool multiple = true;
      for (std::size_t i = 0; i < n && multiple; ++i)
        for (std::size_t j = 0; j < n && multiple; ++j)
          multiple = std::int64_t{e[i]} * f[j] == std::int64_t{e[j]} * f[i];
      if (sq > 0) o.fail(to_string(t) + " positive square");
      if ((sq == 0) != multiple) o.fail(to_string(t) + " square zero off the fiber line");
      ++divisors;
      if (!o.pass) return o;
    }
  }
  o.detail = std::to_string(divisors) + " divisors";
  return o;
}

// ---- criterion 6 -----------------------------------------------------------

Outcome adjunction_and_chi() {
  Outcome o;
  std::mt19937_64 rng(99);
  std::uniform_int_distribution<long long> small(-1000, 1000), big(-1000000000, 1000000000);
  const Integer scale = boost::multiprecision::pow(Integer(10), 30);
  const int samples = 20000;
  for (int trial = 0; trial < samples; ++trial) {
    std::array<Integer, kLatticeRank> c;
    for (auto& x : c) x = trial % 4 == 0 ? Integer(big(rng)) * scale + big(rng) : Integer(small(rng));
    const DivisorClass d(c);
    // Independent recomputation from coordinates.
    Integer sq = c[0] * c[0], dk = -3 * c[0];
    for (std::size_t i = 1; i < kLatticeRank; ++i) {
      sq -= c[i] * c[i];
      dk += c[i];
    }
    const Rational g = arithmetic_genus(d);
    if (2 * g - 2 != Rational(sq + dk)) o.fail("adjunction identity");
    if (Rational(riemann_roch_chi(d)) != 1 + Rational(sq - dk, Integer(2))) o.fail("chi identity");
    if (!o.pass) return o;
  }
  int conics = 0;
  std::vector<SurfaceModel> models;
  for (const auto& fx : fixtures_with_variant()) models.emplace_back(fx.spec);
  models.emplace_back(illustration_spec());
  for (const auto& m : models) {
    for (const auto& b : enumerate_conic_bundles(m, 3)) {
      ++conics;
      if (riemann_roch_chi(b.conic.cls) != 2) o.fail(to_string(b.conic.cls) + " chi != 2");
    }
  }
  if (o.pass) {
    o.detail = std::to_string(samples) + " random classes, " + std::to_string(conics) +
               " certified conic classes";
  }
  return o;
}

// ---- criterion 7 -----------------------------------------------------------

Outcome extremality() {
  Outcome o;
  int models = 0, fibers = 0;
  for (const auto& fx : fixtures_with_variant()) {
    const SurfaceModel m(fx.spec);
    if (mw_rank(m.config()) != 0) continue;
    ++models;
    for (const auto& b : enumerate_conic_bundles(m, 3)) {
      for (const auto& f : b.fibers) {
        ++fibers;
        if (f.type == FiberType::A(2)) o.fail(fx.id + " has an A2 fiber");
      }
    }
  }
  if (models < 2) o.fail("expected two rank-0 fixtures");
  if (o.pass) o.detail = std::to_string(models) + " rank-0 models, " + std::to_string(fibers) + " fibers, no A2";
  return o;
}

// ---- criterion 8 -----------------------------------------------------------

std::pair<int, std::string> run_binary(const std::string& args) {
  const std::string cmd = std::string(CONIC_CLI) + " " + args;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return {-1, ""};
  std::string out;
  std::array<char, 4096> buf{};
  std::size_t n = 0;
  while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) out.append(buf.data(), n);
  const int status = pclose(pipe);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

Outcome determinism() {
  Outcome o;
  const auto a = cli::cmd_corpus(cli::Format::Text);
  const auto b = cli::cmd_corpus(cli::Format::Text);
  if (a.output != b.output) o.fail("in-process runs differ");
  if (a.exit_code != 0) o.fail("corpus reports failures");
  const auto ja = cli::cmd_corpus(cli::Format::Json), jb = cli::cmd_corpus(cli::Format::Json);
  if (ja.output != jb.output) o.fail("JSON runs differ");
  const auto [s1, out1] = run_binary("corpus");
  const auto [s2, out2] = run_binary("corpus");
  if (s1 != 0 || s2 != 0) o.fail("binary exit status");
  if (out1 != out2) o.fail("binary runs differ");
  if (out1 != a.output) o.fail("binary output differs from in-process output");
  if (o.pass) o.detail = "two in-process and two process runs byte-identical";
  return o;
}

}  // namespace

int main() {
  report(1, "corpus reproduction", corpus_reproduction);
  report(2, "admissibility table", admissibility_table);
  report(3, "classifier and brute-force oracle agree", oracle_equivalence);
  report(4, "null-vector multiplicities", null_vectors);
  report(5, "Zariski property", zariski);
  report(6, "adjunction and chi identities", adjunction_and_chi);
  report(7, "no A2 fibers on extremal fibrations", extremality);
  report(8, "determinism of corpus output", determinism);
  std::cout << (failures == 0 ? "all 8 criteria pass" : std::to_string(failures) + " criteria fail")
            << std::endl;
  return failures == 0 ? 0 : 1;
}
