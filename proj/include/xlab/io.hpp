#pragma once
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "xlab/engine.hpp"
#include "xlab/params.hpp"

namespace xlab {

// Flat `key = value` configuration file. One pair per line; '#' starts a
// comment; blank lines are ignored. Values keep their raw text until a typed
// getter is called.
struct KeyValueConfig {
  std::map<std::string, std::string> values;

  static KeyValueConfig parse(const std::string& text);
  static KeyValueConfig load(const std::string& path);

  bool has(const std::string& key) const { return values.count(key) != 0; }
  std::string get_str(const std::string& key, const std::string& fallback) const;
  double get_double(const std::string& key, double fallback) const;
  long long get_int(const std::string& key, long long fallback) const;

  // Overlay the rate keys (p, alpha, beta, gamma, delta) onto `base`.
  Params apply_params(Params base) const;
};

// %.17g: shortest text that round-trips a double exactly.
std::string format_g17(double v);

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;
};

void write_csv(const std::string& path, const CsvTable& table);

// Stationary-law table: `bitstring,weight` rows sorted by bitstring. The
// bitstring lists sites left to right; weights are printed with %.17g.
void write_stationary_csv(const std::string& path, int nsites, const std::vector<double>& law);

void write_text_file(const std::string& path, const std::string& text);
std::string read_text_file(const std::string& path);
void ensure_directory(const std::string& path);

// Binary checkpoint of a segment run. Carries everything needed to resume:
// rates, size, seed, and the full snapshot including per-clock counters.
struct Checkpoint {
  Params params;
  int nsites = 0;
  uint64_t seed = 0;
  SegmentProcess::Snapshot snap;
};

void save_checkpoint(const std::string& path, const Params& pr, int nsites, uint64_t seed,
                     const SegmentProcess::Snapshot& snap);
Checkpoint load_checkpoint(const std::string& path);

}  // namespace xlab
