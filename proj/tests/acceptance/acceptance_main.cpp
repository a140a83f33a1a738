// Acceptance gate: one pass/fail line per criterion, exit status 0 only when
// every line passes. Tolerances and trial counts are fixed here.

#include <chrono>
#include <cstdio>
#include <functional>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "cli.hpp"
#include "ejakit/composite.hpp"
#include "ejakit/pet_suite.hpp"
#include "ejakit/serialize.hpp"

using namespace ejakit;

namespace {

constexpr int kSeeds = 5;
constexpr int kGridTrials = 200;
constexpr double kAxiomLimit = 1e-8;
constexpr double kIsometryLimit = 1e-9;
constexpr double kAssertLimit = 1e-8;
constexpr int kDiagTrials = 500;
constexpr double kEigLimit = 1e-8;  // eigenvalues; enforced inside the checks
constexpr double kProjectionLimit = 1e-7;  // projections and reconstruction
constexpr int kTransitionTrials = 1000;
constexpr double kTransitionLimit = 1e-10;
constexpr int kDualityTrials = 500;
constexpr double kImageLimit = 1e-8;
constexpr double kAtomNormLimit = 1e-9;
constexpr double kGridSeconds = 300.0;
constexpr double kScanSeconds = 1.0;
constexpr double kBicomplementLimit = 1e-8;
constexpr double kDualitySlack = 1e-8;

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

struct Verdict {
  bool pass = true;
  std::string detail;
};

std::string sci(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2e", x);
  return buf;
}

// Reports of the full grid for seeds 1..kSeeds, keyed by check id.
struct GridRuns {
  std::map<std::string, std::vector<CheckReport>> by_check;
  double slowest_seconds = 0.0;
};

const GridRuns& grid_runs() {
  static const GridRuns runs = [] {
    GridRuns g;
    for (int seed = 1; seed <= kSeeds; ++seed) {
      const auto start = Clock::now();
      for (CheckReport& r : run_grid(static_cast<std::uint64_t>(seed), kGridTrials)) {
        g.by_check[r.check_id].push_back(std::move(r));
      }
      g.slowest_seconds = std::max(g.slowest_seconds, seconds_since(start));
    }
    return g;
  }();
  return runs;
}

// Folds reports into a verdict: every report passed and worst <= limit.
struct Tally {
  int reports = 0;
  int failures = 0;
  double worst = 0.0;
  std::string first_failure;

  void add(const CheckReport& r, double limit) {
    ++reports;
    worst = std::max(worst, r.worst_residual);
    if (!r.passed() || !(r.worst_residual <= limit)) {
      failures += std::max(1, r.failures);
      if (first_failure.empty()) first_failure = r.check_id + " on " + r.spec.name();
    }
  }
  bool ok() const { return failures == 0; }
  std::string summary() const {
    std::string s = std::to_string(reports) + " reports, " + std::to_string(failures) + " failures, worst " + sci(worst);
    if (!first_failure.empty()) s += ", first failure " + first_failure;
    return s;
  }
};

// Both sides of every tallied biconditional occurred across `reports`.
bool both_sides(const std::vector<CheckReport>& reports, std::string& missing) {
  std::map<std::string, std::pair<int, int>> sides;
  for (const CheckReport& r : reports) {
    if (!r.details.contains("sides")) continue;
    for (const auto& [what, counts] : r.details["sides"].items()) {
      sides[what].first += counts.at("true").get<int>();
      sides[what].second += counts.at("false").get<int>();
    }
  }
  if (sides.empty()) {
    missing = "no biconditional tallies recorded";
    return false;
  }
  for (const auto& [what, counts] : sides) {
    if (counts.first == 0 || counts.second == 0) {
      missing = what + " (true " + std::to_string(counts.first) + ", false " + std::to_string(counts.second) + ")";
      return false;
    }
  }
  return true;
}

std::string side_counts(const std::vector<CheckReport>& reports) {
  std::map<std::string, std::pair<int, int>> sides;
  for (const CheckReport& r : reports) {
    if (!r.details.contains("sides")) continue;
    for (const auto& [what, counts] : r.details["sides"].items()) {
      sides[what].first += counts.at("true").get<int>();
      sides[what].second += counts.at("false").get<int>();
    }
  }
  std::string s;
  for (const auto& [what, counts] : sides) {
    if (!s.empty()) s += "; ";
    s += "[" + what + "] " + std::to_string(counts.first) + "/" + std::to_string(counts.second);
  }
  return s;
}

Verdict axioms() {
  const GridRuns& g = grid_runs();
  Tally all;
  Tally isometry;
  for (const CheckInfo& c : check_catalog()) {
    if (c.group != CheckGroup::axiom) continue;
    for (const CheckReport& r : g.by_check.at(c.id)) all.add(r, kAxiomLimit);
  }
  for (const CheckReport& r : g.by_check.at("sharp_compression_isometry")) isometry.add(r, kIsometryLimit);
  const bool fast = g.slowest_seconds < kGridSeconds;
  return {all.ok() && isometry.ok() && fast,
          "seeds 1-" + std::to_string(kSeeds) + " x " + std::to_string(kGridTrials) + " trials: " + all.summary() +
              " (limit " + sci(kAxiomLimit) + "); sharp isometry worst " + sci(isometry.worst) + " (limit " +
              sci(kIsometryLimit) + "); slowest full grid " + sci(g.slowest_seconds) + " s (limit " +
              sci(kGridSeconds) + " s)"};
}

Verdict assert_maps() {
  const std::vector<CheckReport>& reports = grid_runs().by_check.at("assert_maps");
  Tally t;
  for (const CheckReport& r : reports) t.add(r, kAssertLimit);
  std::string missing;
  const bool sides = both_sides(reports, missing);
  return {t.ok() && sides, t.summary() + " (limit " + sci(kAssertLimit) + "); true/false sides " +
                               side_counts(reports) + (sides ? "" : "; missing side: " + missing)};
}

Verdict diagonalization() {
  Tally peel;
  Tally unique;
  for (const AlgebraSpec& spec : default_grid()) {
    peel.add(run_check("diag_peel", spec, 1, kDiagTrials), kProjectionLimit);
    unique.add(run_check("diag_uniqueness", spec, 1, kDiagTrials), kProjectionLimit);
  }
  return {peel.ok() && unique.ok(), std::to_string(kDiagTrials) + " effects per system, eigenvalues within " +
                                        sci(kEigLimit) + ", projections within " + sci(kProjectionLimit) +
                                        "; peel vs eigensolver " +
                                        peel.summary() + "; re-peel uniqueness " + unique.summary()};
}

Verdict transitions() {
  Tally sym;
  Tally orth;
  for (const AlgebraSpec& spec : default_grid()) {
    sym.add(run_check("transition_symmetry", spec, 1, kTransitionTrials), kTransitionLimit);
    orth.add(run_check("pure_distinguish", spec, 1, kTransitionTrials), kTransitionLimit);
  }
  return {sym.ok() && orth.ok(), std::to_string(kTransitionTrials) + " pairs per system; symmetry " + sym.summary() +
                                     "; orthogonal pairs " + orth.summary() + " (limit " + sci(kTransitionLimit) + ")"};
}

Verdict self_duality() {
  Tally t;
  for (const AlgebraSpec& spec : default_grid()) t.add(run_check("self_duality", spec, 1, kDualityTrials), kDualitySlack);
  return {t.ok(), std::to_string(kDualityTrials) + " elements per system, 200 samples each, slack 1e-8: " + t.summary()};
}

Verdict images() {
  Tally t;
  for (const CheckReport& r : grid_runs().by_check.at("images")) t.add(r, kImageLimit);
  const std::vector<CheckReport>& reports = grid_runs().by_check.at("images");
  return {t.ok(), std::to_string(kGridTrials) + " maps per system and seed, all frame subsets for rank <= 4: " +
                      t.summary() + "; defining-equation sides " + side_counts(reports)};
}

Verdict composites() {
  Tally t;
  for (const CheckReport& r : run_composite_suite(1, kGridTrials)) {
    if (r.check_id == "composite_properties" || r.check_id == "composite_dimensions") t.add(r, kAtomNormLimit);
  }
  bool ok = t.ok();
  std::string detail = t.summary();

  const AlgebraSpec r2({FactorKind::real(2)}), r3({FactorKind::real(3)});
  const long long real_dim = tensor_matrix(r2, r3).spec.dim();
  ok = ok && r2.dim() * r3.dim() == 18 && real_dim == 21;
  detail += "; M2(R) x M3(R): " + std::to_string(r2.dim() * r3.dim()) + " < " + std::to_string(real_dim);
  for (int n = 1; n <= 4; ++n)
    for (int m = 1; m <= 4; ++m) {
      const AlgebraSpec a({FactorKind::complex(n)}), b({FactorKind::complex(m)});
      const TensorComposite c = tensor_matrix(a, b);
      ok = ok && c.spec.dim() == a.dim() * b.dim() && c.spec.rank() == a.rank() * b.rank();
    }
  detail += "; complex dims and ranks multiply for n, m <= 4";
  return {ok, detail};
}

Verdict scan() {
  const auto start = Clock::now();
  const ScanResult s = scan_closure(8, 4);
  const double elapsed = seconds_since(start);
  bool ok = elapsed < kScanSeconds;
  std::string problems;
  auto require = [&](bool cond, const std::string& what) {
    if (!cond) {
      ok = false;
      problems += " " + what;
    }
  };
  for (const ScanRow& r : s.rows) {
    const std::string name = std::string(catalog_kind_name(r.entry.kind)) + "(rank " + std::to_string(r.entry.rank) +
                             ", dim " + std::to_string(r.entry.dim) + ")";
    switch (r.entry.kind) {
      case CatalogKind::quaternion:
      case CatalogKind::exceptional:
        require(r.excluded_at_power == 2, name);
        break;
      case CatalogKind::spin:
        if (r.entry.dim >= 5) require(r.excluded_at_power >= 2 && r.excluded_at_power <= 3, name);
        break;
      case CatalogKind::real:
      case CatalogKind::complex:
        require(r.excluded_at_power == 0, name);
        break;
    }
  }
  for (const MixedPairing& p : s.mixed) {
    require(p.tensor_rejected && p.excluded,
            "mixed(" + std::to_string(p.real_rank) + "," + std::to_string(p.complex_rank) + ")");
  }
  return {ok, std::to_string(s.rows.size()) + " catalog rows, " + std::to_string(s.mixed.size()) +
                  " mixed pairings, " + sci(elapsed) + " s (limit " + sci(kScanSeconds) + " s)" +
                  (problems.empty() ? "" : "; wrong:" + problems)};
}

Verdict bicomplement() {
  const std::vector<CheckReport>& reports = grid_runs().by_check.at("assert_bicomplement");
  Tally t;
  for (const CheckReport& r : reports) t.add(r, kBicomplementLimit);
  std::string missing;
  const bool sides = both_sides(reports, missing);
  return {t.ok() && sides, "200 effect and state probes per sharp p: " + t.summary() + "; sides " +
                               side_counts(reports) + (sides ? "" : "; missing side: " + missing)};
}

Verdict determinism() {
  const char* argv[] = {"ejakit", "check", "--grid", "--seed", "42"};
  std::string outputs[2];
  int codes[2];
  double slowest = 0.0;
  for (int i = 0; i < 2; ++i) {
    std::ostringstream out, err;
    const auto start = Clock::now();
    codes[i] = cli_main(5, argv, out, err);
    slowest = std::max(slowest, seconds_since(start));
    outputs[i] = out.str();
  }
  const bool same = outputs[0] == outputs[1];
  return {same && !outputs[0].empty() && codes[0] == kExitOk && codes[1] == kExitOk,
          "check --grid --seed 42 twice: " + std::to_string(outputs[0].size()) + " bytes, " +
              (same ? "identical" : "different") + ", exit codes " + std::to_string(codes[0]) + "/" +
              std::to_string(codes[1]) + ", slowest " + sci(slowest) + " s"};
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Verdict()>>> criteria = {
      {"C1 axioms hold on the grid", axioms},
      {"C2 assert-map characterizations", assert_maps},
      {"C3 peeling agrees with the eigensolver", diagonalization},
      {"C4 transition symmetry and orthogonality", transitions},
      {"C5 self-duality of the cone", self_duality},
      {"C6 image formula and minimality", images},
      {"C7 composite laws", composites},
      {"C8 classification scan", scan},
      {"C9 assert bicomplement", bicomplement},
      {"C10 deterministic grid report", determinism},
  };
  int failed = 0;
  for (const auto& [name, run] : criteria) {
    Verdict v;
    try {
      v = run();
    } catch (const std::exception& e) {
      v = {false, std::string("exception: ") + e.what()};
    }
    if (!v.pass) ++failed;
    std::printf("%s  %s: %s\n", v.pass ? "PASS" : "FAIL", name.c_str(), v.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
