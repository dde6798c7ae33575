#include "xlab/io.hpp"

#include <algorithm>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace xlab {

namespace {

std::string trim(const std::string& s) {
  size_t b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return {};
  size_t e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

}  // namespace

KeyValueConfig KeyValueConfig::parse(const std::string& text) {
  KeyValueConfig cfg;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    size_t hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::string t = trim(line);
    if (t.empty()) continue;
    size_t eq = t.find('=');
    if (eq == std::string::npos)
      throw Error("config line " + std::to_string(lineno) + ": expected key = value");
    std::string key = trim(t.substr(0, eq));
    std::string val = trim(t.substr(eq + 1));
    if (key.empty()) throw Error("config line " + std::to_string(lineno) + ": empty key");
    cfg.values[key] = val;
  }
  return cfg;
}

KeyValueConfig KeyValueConfig::load(const std::string& path) {
  return parse(read_text_file(path));
}

std::string KeyValueConfig::get_str(const std::string& key, const std::string& fallback) const {
  auto it = values.find(key);
  return it == values.end() ? fallback : it->second;
}

double KeyValueConfig::get_double(const std::string& key, double fallback) const {
  auto it = values.find(key);
  if (it == values.end()) return fallback;
  try {
    size_t pos = 0;
    double v = std::stod(it->second, &pos);
    if (pos != it->second.size()) throw Error("");
    return v;
  } catch (...) {
    throw Error("config key '" + key + "': not a number: " + it->second);
  }
}

long long KeyValueConfig::get_int(const std::string& key, long long fallback) const {
  auto it = values.find(key);
  if (it == values.end()) return fallback;
  try {
    size_t pos = 0;
    long long v = std::stoll(it->second, &pos);
    if (pos != it->second.size()) throw Error("");
    return v;
  } catch (...) {
    throw Error("config key '" + key + "': not an integer: " + it->second);
  }
}

Params KeyValueConfig::apply_params(Params base) const {
  base.p = get_double("p", base.p);
  base.alpha = get_double("alpha", base.alpha);
  base.beta = get_double("beta", base.beta);
  base.gamma = get_double("gamma", base.gamma);
  base.delta = get_double("delta", base.delta);
  base.validate();
  return base;
}

std::string format_g17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

void write_csv(const std::string& path, const CsvTable& table) {
  std::ostringstream out;
  for (size_t i = 0; i < table.header.size(); ++i) {
    if (i) out << ',';
    out << table.header[i];
  }
  out << '\n';
  for (const auto& row : table.rows) {
    if (row.size() != table.header.size())
      throw Error("csv row width does not match the header: " + path);
    for (size_t i = 0; i < row.size(); ++i) {
      if (i) out << ',';
      out << format_g17(row[i]);
    }
    out << '\n';
  }
  write_text_file(path, out.str());
}

void write_stationary_csv(const std::string& path, int nsites, const std::vector<double>& law) {
  if (law.size() != (size_t{1} << nsites))
    throw Error("stationary csv: law size does not match the site count");
  std::vector<std::pair<std::string, double>> rows;
  rows.reserve(law.size());
  for (size_t idx = 0; idx < law.size(); ++idx) {
    std::string bits(static_cast<size_t>(nsites), '0');
    for (int x = 0; x < nsites; ++x)
      if ((idx >> x) & 1u) bits[static_cast<size_t>(x)] = '1';
    rows.emplace_back(std::move(bits), law[idx]);
  }
  std::sort(rows.begin(), rows.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  std::ostringstream out;
  out << "bitstring,weight\n";
  for (const auto& [bits, w] : rows) out << bits << ',' << format_g17(w) << '\n';
  write_text_file(path, out.str());
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot open for writing: " + path);
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  if (!out) throw Error("write failed: " + path);
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open: " + path);
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

void ensure_directory(const std::string& path) {
  std::error_code ec;
  std::filesystem::create_directories(path, ec);
  if (ec) throw Error("cannot create directory " + path + ": " + ec.message());
}

namespace {

constexpr char kMagic[5] = {'X', 'L', 'A', 'B', '1'};

template <typename T>
void put(std::string& out, const T& v) {
  static_assert(std::is_trivially_copyable_v<T>);
  const char* p = reinterpret_cast<const char*>(&v);
  out.append(p, sizeof(T));
}

template <typename T>
void put_vec(std::string& out, const std::vector<T>& v) {
  put(out, static_cast<uint64_t>(v.size()));
  if (!v.empty())
    out.append(reinterpret_cast<const char*>(v.data()), v.size() * sizeof(T));
}

struct Cursor {
  const std::string& data;
  size_t pos = 0;

  template <typename T>
  T get() {
    static_assert(std::is_trivially_copyable_v<T>);
    if (pos + sizeof(T) > data.size()) throw Error("checkpoint truncated");
    T v;
    std::memcpy(&v, data.data() + pos, sizeof(T));
    pos += sizeof(T);
    return v;
  }

  template <typename T>
  std::vector<T> get_vec() {
    uint64_t count = get<uint64_t>();
    if (pos + count * sizeof(T) > data.size()) throw Error("checkpoint truncated");
    std::vector<T> v(count);
    if (count) std::memcpy(v.data(), data.data() + pos, count * sizeof(T));
    pos += count * sizeof(T);
    return v;
  }
};

}  // namespace

void save_checkpoint(const std::string& path, const Params& pr, int nsites, uint64_t seed,
                     const SegmentProcess::Snapshot& snap) {
  if (snap.cfg.topology() != Topology::Segment)
    throw Error("checkpoint: only segment runs are checkpointable");
  std::string out;
  out.append(kMagic, sizeof(kMagic));
  put(out, uint32_t{1});  // layout version
  put(out, pr.p);
  put(out, pr.alpha);
  put(out, pr.beta);
  put(out, pr.gamma);
  put(out, pr.delta);
  put(out, int32_t{nsites});
  put(out, seed);
  put(out, snap.now);
  put_vec(out, snap.cfg.words());
  for (long long ctr : snap.counters) put(out, ctr);
  put_vec(out, snap.clocks.counters);
  put_vec(out, snap.clocks.tnext);
  put_vec(out, snap.clocks.unext);
  write_text_file(path, out);
}

Checkpoint load_checkpoint(const std::string& path) {
  const std::string data = read_text_file(path);
  if (data.size() < sizeof(kMagic) || std::memcmp(data.data(), kMagic, sizeof(kMagic)) != 0)
    throw Error("checkpoint: bad magic in " + path);
  Cursor cur{data, sizeof(kMagic)};
  if (cur.get<uint32_t>() != 1) throw Error("checkpoint: unknown layout version");
  Checkpoint ck;
  ck.params.p = cur.get<double>();
  ck.params.alpha = cur.get<double>();
  ck.params.beta = cur.get<double>();
  ck.params.gamma = cur.get<double>();
  ck.params.delta = cur.get<double>();
  ck.nsites = cur.get<int32_t>();
  ck.seed = cur.get<uint64_t>();
  ck.snap.now = cur.get<double>();
  ck.snap.cfg = Configuration::segment(ck.nsites);
  ck.snap.cfg.mutable_words() = cur.get_vec<uint64_t>();
  if (ck.snap.cfg.words().size() != (static_cast<size_t>(ck.nsites) + 63) / 64)
    throw Error("checkpoint: configuration width mismatch");
  for (long long& ctr : ck.snap.counters) ctr = cur.get<long long>();
  ck.snap.clocks.counters = cur.get_vec<uint64_t>();
  ck.snap.clocks.tnext = cur.get_vec<double>();
  ck.snap.clocks.unext = cur.get_vec<double>();
  if (cur.pos != data.size()) throw Error("checkpoint: trailing bytes in " + path);
  ck.params.validate();
  return ck;
}

}  // namespace xlab
