#include <cstdio>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "xlab/exact.hpp"
#include "xlab/harness.hpp"
#include "xlab/io.hpp"
#include "xlab/params.hpp"

namespace {

void apply_config_knobs(const xlab::KeyValueConfig& cfg, xlab::ExperimentSpec& spec) {
  spec.params = cfg.apply_params(spec.params);
  if (cfg.has("sizes")) {
    spec.sizes.clear();
    std::string s = cfg.get_str("sizes", "");
    size_t pos = 0;
    while (pos < s.size()) {
      size_t next = s.find(',', pos);
      if (next == std::string::npos) next = s.size();
      spec.sizes.push_back(std::stoi(s.substr(pos, next - pos)));
      pos = next + 1;
    }
  }
  spec.replicas = static_cast<int>(cfg.get_int("replicas", spec.replicas));
  spec.horizon = cfg.get_double("horizon", spec.horizon);
  spec.seed = static_cast<uint64_t>(cfg.get_int("seed", static_cast<long long>(spec.seed)));
}

void print_record(const xlab::ResultRecord& rec) {
  std::printf("preset %s: %zu metrics, %zu csv files, wall clock %.2f s\n", rec.preset.c_str(),
              rec.metrics.size(), rec.csv_files.size(), rec.wall_clock_s);
  for (const xlab::MetricRow& m : rec.metrics) {
    std::string tail;
    if (m.std_error) tail += "  s.e. " + xlab::format_g17(*m.std_error);
    if (m.pass)
      tail += *m.pass ? "  [pass]" : "  [FAIL]";
    else
      tail += "  [exploratory]";
    std::printf("  %-4s %-36s %s%s\n", m.criterion.c_str(), m.name.c_str(),
                xlab::format_g17(m.estimate).c_str(), tail.c_str());
  }
  std::printf("outputs in %s: summary.json", rec.spec.out_dir.c_str());
  for (const std::string& f : rec.csv_files) std::printf(", %s", f.c_str());
  std::printf("\n");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"xlab: simulation and exact analysis of the open-boundary exclusion process"};
  app.require_subcommand(1);

  auto* run = app.add_subcommand("run", "execute an experiment preset");
  std::string preset, config_path, out_dir = "out";
  uint64_t seed = 1;
  std::vector<int> sizes;
  int replicas = -1;
  double horizon = -1.0;
  run->add_option("--preset", preset, "preset name, see `xlab list`")->required();
  run->add_option("--config", config_path, "key=value file; keys: p alpha beta gamma delta "
                                           "sizes replicas horizon seed");
  run->add_option("--seed", seed, "master seed (default 1)");
  run->add_option("--out", out_dir, "output directory (default ./out)");
  run->add_option("--sizes", sizes, "system sizes, overrides the preset default");
  run->add_option("--replicas", replicas, "replica count, overrides the preset default");
  run->add_option("--horizon", horizon, "time horizon, overrides the preset default");

  app.add_subcommand("list", "print the preset catalog");

  auto* exact = app.add_subcommand("exact", "small-system exact computations (N <= 12)");
  int n = 4;
  xlab::Params pr;
  pr.p = 0.6;
  pr.alpha = 0.5;
  pr.beta = 0.4;
  pr.gamma = 0.1;
  pr.delta = 0.2;
  std::string ex_config, stationary_path;
  double mixing_eps = -1.0;
  std::vector<double> tv_grid;
  int tv_from = -1;
  bool want_gap = false;
  exact->add_option("--n", n, "number of sites")->required()->check(CLI::Range(1, 12));
  exact->add_option("--p", pr.p, "drift parameter");
  exact->add_option("--alpha", pr.alpha, "left entry rate");
  exact->add_option("--beta", pr.beta, "right exit rate");
  exact->add_option("--gamma", pr.gamma, "left exit rate");
  exact->add_option("--delta", pr.delta, "right entry rate");
  exact->add_option("--config", ex_config, "key=value file overriding the rates");
  exact->add_option("--stationary", stationary_path, "write the stationary law to this CSV");
  exact->add_option("--mixing", mixing_eps, "print the worst-case mixing time at this level");
  exact->add_option("--tv", tv_grid, "print TV to stationarity at these times");
  exact->add_option("--from", tv_from, "initial state index for --tv (default all ones)");
  exact->add_flag("--gap", want_gap, "print the symmetrized spectral gap (triple point)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (run->parsed()) {
      xlab::ExperimentSpec spec;
      spec.preset = preset;
      spec.seed = seed;
      spec.out_dir = out_dir;
      if (!config_path.empty()) apply_config_knobs(xlab::KeyValueConfig::load(config_path), spec);
      if (!sizes.empty()) spec.sizes = sizes;
      if (run->count("--replicas")) spec.replicas = replicas;
      if (run->count("--horizon")) spec.horizon = horizon;
      if (run->count("--seed")) spec.seed = seed;
      print_record(xlab::run_preset(spec));
      return 0;
    }
    if (exact->parsed()) {
      if (!ex_config.empty()) pr = xlab::KeyValueConfig::load(ex_config).apply_params(pr);
      const xlab::Generator g = xlab::build_generator(pr, n);
      if (!stationary_path.empty()) {
        xlab::write_stationary_csv(stationary_path, n, xlab::stationary_exact(g));
        std::printf("stationary law written to %s\n", stationary_path.c_str());
      }
      if (mixing_eps > 0.0) {
        std::printf("t_mix(%s) = %s\n", xlab::format_g17(mixing_eps).c_str(),
                    xlab::format_g17(xlab::mixing_time_exact(g, mixing_eps)).c_str());
      }
      if (!tv_grid.empty()) {
        const int from = tv_from >= 0 ? tv_from : (1 << n) - 1;
        const std::vector<double> tv = xlab::tv_curve_from_state(g, from, tv_grid);
        std::printf("t,tv_from_%d\n", from);
        for (size_t i = 0; i < tv_grid.size(); ++i)
          std::printf("%s,%s\n", xlab::format_g17(tv_grid[i]).c_str(),
                      xlab::format_g17(tv[i]).c_str());
      }
      if (want_gap) {
        const xlab::SymmetrizationReport rep = xlab::adjoint_and_symmetrize(pr, n);
        std::printf("gap = %s\n", xlab::format_g17(rep.gap).c_str());
      }
      if (stationary_path.empty() && mixing_eps <= 0.0 && tv_grid.empty() && !want_gap)
        std::printf("nothing to do: pass --stationary, --mixing, --tv, or --gap\n");
      return 0;
    }
    // list
    for (const xlab::PresetInfo& info : xlab::list_presets()) {
      std::string crits;
      for (const std::string& c : info.criteria) crits += (crits.empty() ? "" : ",") + c;
      std::printf("%-26s [%s]%s\n    %s\n", info.name.c_str(), crits.c_str(),
                  info.exploratory ? " (exploratory)" : "", info.summary.c_str());
    }
    return 0;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
}
