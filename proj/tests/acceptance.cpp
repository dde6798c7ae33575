// Acceptance gate. Runs every preset, folds the metric rows into one verdict
// per criterion, prints a line per criterion, and exits zero only when the
// outcome matches the documented expectation:
//
//   C1-C6 and C8-C14 pass; C7 fails on exactly one check,
//   one_sided_c_nd4_growth.
//
// The one-sided certificate's uniform residual bound c scales like
// 1/(N-D)^3, one power short of what that check demands, so c*(N-D)^4 grows
// linearly with size instead of staying flat. The companion diagnostics
// (c*(N-D)^3 and the per-site residual coefficient times (N-D)^4, both flat)
// pin the gap to the uniform-over-sites aggregation of the residual, not to
// the profile itself. The gate treats any drift from this pattern -
// including C7 accidentally going green - as a failure, so the known
// limitation cannot silently rot.

#include <cstdio>
#include <exception>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "xlab/harness.hpp"
#include "xlab/io.hpp"

using namespace xlab;

namespace {

struct Verdict {
  bool pass = false;
  int checks = 0;
  std::vector<std::string> failing;
};

using Feed = std::map<std::string, std::vector<std::pair<std::string, MetricRow>>>;

Verdict verdict_of(const Feed& feed, const std::string& criterion) {
  Verdict v;
  auto it = feed.find(criterion);
  if (it == feed.end()) return v;
  for (const auto& [preset, m] : it->second) {
    if (!m.pass.has_value()) continue;  // exploratory row
    ++v.checks;
    if (!*m.pass) v.failing.push_back(m.name);
  }
  v.pass = v.checks > 0 && v.failing.empty();
  return v;
}

bool run_gated_preset(const std::string& name, Feed& feed) {
  try {
    ExperimentSpec spec;
    spec.preset = name;
    spec.out_dir = "acceptance_out/" + name;
    const ResultRecord rec = run_preset(spec);
    for (const MetricRow& m : rec.metrics) feed[m.criterion].emplace_back(name, m);
    std::printf("   %-24s %8.1f s   %2zu metric rows\n", name.c_str(), rec.wall_clock_s,
                rec.metrics.size());
    std::fflush(stdout);
    return true;
  } catch (const std::exception& e) {
    std::printf("   %-24s ERROR: %s\n", name.c_str(), e.what());
    std::fflush(stdout);
    return false;
  }
}

// C14: one seed, two runs, every output file byte-identical. kac-return
// exercises the parallel replica path; wilson-lower-bound the pure-analysis
// path.
bool byte_identity_probe(Feed& feed) {
  try {
    bool identical = true;
    std::string note;
    for (const std::string& name : {std::string("kac-return"), std::string("wilson-lower-bound")}) {
      ExperimentSpec spec;
      spec.preset = name;
      if (name == "kac-return") spec.replicas = 2000;
      spec.out_dir = "acceptance_out/identity_a/" + name;
      const ResultRecord ra = run_preset(spec);
      spec.out_dir = "acceptance_out/identity_b/" + name;
      run_preset(spec);
      std::vector<std::string> files = ra.csv_files;
      files.push_back("summary.json");
      for (const std::string& f : files) {
        const std::string fa = read_text_file("acceptance_out/identity_a/" + name + "/" + f);
        const std::string fb = read_text_file("acceptance_out/identity_b/" + name + "/" + f);
        if (fa != fb) {
          identical = false;
          note += " " + name + "/" + f;
        }
      }
    }
    if (!identical) std::printf("   byte-identity mismatch in%s\n", note.c_str());
    MetricRow row;
    row.name = "rerun_byte_identity";
    row.estimate = identical ? 1.0 : 0.0;
    row.criterion = "C14";
    row.pass = identical;
    feed["C14"].emplace_back("gate", row);
    std::printf("   %-24s            byte compare %s\n", "identity probe",
                identical ? "clean" : "MISMATCH");
    std::fflush(stdout);
    return true;
  } catch (const std::exception& e) {
    std::printf("   identity probe ERROR: %s\n", e.what());
    return false;
  }
}

void run_exploratory_preset(const std::string& name) {
  try {
    ExperimentSpec spec;
    spec.preset = name;
    spec.out_dir = "acceptance_out/" + name;
    const ResultRecord rec = run_preset(spec);
    std::printf("   %-24s %8.1f s   (exploratory)\n", name.c_str(), rec.wall_clock_s);
    for (const MetricRow& m : rec.metrics)
      std::printf("      %-32s %.6g\n", m.name.c_str(), m.estimate);
    std::fflush(stdout);
  } catch (const std::exception& e) {
    std::printf("   %-24s exploratory run failed: %s\n", name.c_str(), e.what());
  }
}

}  // namespace

int main() {
  Feed feed;
  bool runs_ok = true;

  std::printf("== acceptance gate: running presets ==\n");
  std::fflush(stdout);
  for (const char* name :
       {"stationary-exact", "flux-phase-sweep", "halfline-current", "cutoff-one-blocked",
        "reverse-bias-scaling", "wilson-lower-bound", "triple-point-bound", "monotone-coupling",
        "censoring-exact", "blocking-confinement", "kac-return", "four-process"})
    runs_ok = run_gated_preset(name, feed) && runs_ok;
  runs_ok = byte_identity_probe(feed) && runs_ok;

  std::printf("\n== exploratory companions (no pass/fail semantics) ==\n");
  std::fflush(stdout);
  for (const char* name : {"shock-front", "hd-constant-conjecture", "max-current-scaling"})
    run_exploratory_preset(name);

  const std::vector<std::pair<std::string, std::string>> catalog = {
      {"C1", "dense stationary law matches the product form across the size sweep"},
      {"C2", "sealed-left stationary law passes detailed balance and matches its closed form"},
      {"C3", "long-run boundary current matches the closed-form flux in each phase cell"},
      {"C4", "half-line current from empty matches the saturating law at three fugacities"},
      {"C5", "extremal coupling time per site lands on the drainage constant"},
      {"C6", "blocked-entry mixing times grow at the predicted exponential rate"},
      {"C7", "symmetric-chain certificates: bulk residual, scaled-residual flatness, lower bounds"},
      {"C8", "triple-point TV bound holds and the symmetrized gap scales like 1/N^2"},
      {"C9", "shared-clock coupling preserves the componentwise and height orders"},
      {"C10", "censored exact TV curves never fall below the free ones"},
      {"C11", "interface exceedance times grow geometrically under the blocking measure"},
      {"C12", "mean return time to empty agrees across formula, linear solve, and simulation"},
      {"C13", "multispecies coupling conserves the current identity and co-locates the exits"},
      {"C14", "reruns with one seed are byte-identical across all output files"},
  };
  const std::set<std::string> expected_fail = {"C7"};
  const std::set<std::string> documented_c7_failures = {"one_sided_c_nd4_growth"};

  std::printf("\n== criterion verdicts ==\n");
  bool deviation = !runs_ok;
  for (const auto& [cid, text] : catalog) {
    const Verdict v = verdict_of(feed, cid);
    const bool want_pass = expected_fail.count(cid) == 0;
    std::string failing;
    for (const std::string& f : v.failing) failing += (failing.empty() ? ", failing: " : ", ") + f;
    std::printf("%-4s %-4s (%d checks%s) %s\n", cid.c_str(), v.pass ? "PASS" : "FAIL", v.checks,
                failing.c_str(), text.c_str());
    if (v.pass != want_pass) deviation = true;
  }

  // C7's failure must be exactly the documented one, in either direction.
  const Verdict v7 = verdict_of(feed, "C7");
  const std::set<std::string> got7(v7.failing.begin(), v7.failing.end());
  if (got7 != documented_c7_failures) deviation = true;
  std::printf("\nC7 detail (documented limitation):\n");
  if (feed.count("C7")) {
    for (const auto& [preset, m] : feed["C7"]) {
      const char* flag = !m.pass.has_value() ? "exploratory" : (*m.pass ? "pass" : "FAIL");
      std::printf("   %-32s %12.6g   %s%s\n", m.name.c_str(), m.estimate, flag,
                  m.name == "one_sided_c_nd4_growth" ? "   <- expected to fail" : "");
    }
  }

  if (deviation) {
    std::printf(
        "\nRESULT: DEVIATION from the documented expectation (13 criteria passing, C7 failing "
        "on one_sided_c_nd4_growth only). Inspect the verdicts above.\n");
    return 1;
  }
  std::printf(
      "\nRESULT: outcome matches the documented expectation: 13 criteria pass; C7 fails "
      "honestly on the known one-sided scaled-residual gap (see README).\n");
  return 0;
}
