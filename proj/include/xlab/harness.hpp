#pragma once
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "xlab/params.hpp"

namespace xlab {

// A runnable experiment. Fields left at their sentinel (-1 sizes empty,
// replicas -1, horizon < 0) are filled from the preset's defaults; an
// explicit replica count of 0 is rejected.
struct ExperimentSpec {
  std::string preset;
  Params params;  // base rates; presets that pin their own rates ignore these
  std::vector<int> sizes;
  int replicas = -1;
  double horizon = -1.0;
  uint64_t seed = 1;
  std::string out_dir = "out";
};

struct MetricRow {
  std::string name;
  double estimate = 0.0;
  std::optional<double> std_error;
  std::string criterion;     // acceptance-criterion id this metric feeds (C1..C14)
  std::optional<bool> pass;  // empty for exploratory metrics
};

struct ResultRecord {
  std::string preset;
  ExperimentSpec spec;  // inputs echo with defaults resolved
  std::vector<MetricRow> metrics;
  std::vector<std::string> csv_files;
  double wall_clock_s = 0.0;  // stdout reporting only; never written to files
};

struct PresetInfo {
  std::string name;
  std::string summary;
  std::vector<std::string> criteria;  // acceptance-criterion ids
  bool exploratory = false;           // outputs carry no pass/fail semantics
};

const std::vector<PresetInfo>& list_presets();

// Executes the preset across its sizes and replicas (replicas run in
// parallel; aggregation is an ordered reduce by replica index), writes one
// CSV per metric family plus summary.json into spec.out_dir, and returns the
// record. Throws on an unknown preset or a replica count of 0.
ResultRecord run_preset(const ExperimentSpec& spec);

// Deterministic summary text (no wall-clock or other timing fields).
std::string summary_json(const ResultRecord& rec);

}  // namespace xlab
