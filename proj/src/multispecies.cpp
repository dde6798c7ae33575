#include "xlab/multispecies.hpp"

#include <algorithm>

namespace xlab {

namespace {
// occupancy masks of the four coupled chains, bit i = chain i+1
constexpr uint8_t kMask[kSpeciesCount] = {
    0b0000,  // Empty
    0b1111,  // First
    0b0001,  // Type1: chain 1 only
    0b0101,  // Type2: chains 1,3
    0b1101,  // Type3: chains 1,3,4
    0b0111,  // Type4: chains 1,2,3
    0b1111,  // Type5
    0b0101,  // Second: same occupancies as Type2
};

uint8_t component(uint8_t mask, int lobit) {
  const bool hi = (mask >> lobit) & 1, lo = (mask >> (lobit + 1)) & 1;
  if (hi && lo) return 1;
  if (hi && !lo) return 2;
  if (!hi && !lo) return 0;
  throw Error("chain pair out of order");
}

Species label_from_mask(uint8_t mask, bool inherited_ones) {
  switch (mask) {
    case 0b0000: return Species::Empty;
    case 0b0001: return Species::Type1;
    case 0b0101: return Species::Type2;
    case 0b1101: return Species::Type3;
    case 0b0111: return Species::Type4;
    case 0b1111: return inherited_ones ? Species::First : Species::Type5;
  }
  throw Error("invalid chain mask");
}
}  // namespace

SpeciesPair species_pair(Species s) {
  const uint8_t m = kMask[static_cast<int>(s)];
  return {component(m, 2), component(m, 0)};
}

bool is_second_class(Species s) { return s != Species::Empty && s != Species::First; }
bool is_xi_second(Species s) { return species_pair(s).xi == 2; }
bool is_zeta_second(Species s) { return species_pair(s).zeta == 2; }

MultiConfiguration MultiConfiguration::segment(int n) {
  if (n < 1) throw Error("segment needs at least one site");
  MultiConfiguration m;
  m.labels_.assign(static_cast<size_t>(n), 0);
  return m;
}

int MultiConfiguration::count(Species s) const {
  return static_cast<int>(std::count(labels_.begin(), labels_.end(), static_cast<uint8_t>(s)));
}

int MultiConfiguration::count_xi_second() const {
  int c = 0;
  for (uint8_t l : labels_) c += is_xi_second(static_cast<Species>(l));
  return c;
}

int MultiConfiguration::count_zeta_second() const {
  int c = 0;
  for (uint8_t l : labels_) c += is_zeta_second(static_cast<Species>(l));
  return c;
}

std::string MultiConfiguration::to_string() const {
  static const char* kGlyph[kSpeciesCount] = {
      "\xc2\xb7", "1", "2\xe2\x82\x81", "2\xe2\x82\x82", "2\xe2\x82\x83",
      "2\xe2\x82\x84", "2\xe2\x82\x85", "2"};
  std::string out;
  for (uint8_t l : labels_) out += kGlyph[l];
  return out;
}

MultiConfiguration disagreement(const Configuration& top, const Configuration& bottom) {
  if (top.topology() != Topology::Segment || bottom.topology() != Topology::Segment ||
      top.size() != bottom.size())
    throw Error("disagreement needs segment configurations of equal length");
  MultiConfiguration out = MultiConfiguration::segment(top.size());
  for (int x = 1; x <= top.size(); ++x) {
    const bool t = top.at(x), b = bottom.at(x);
    if (b && !t) throw Error("disagreement needs an ordered pair");
    out.set(x, t ? (b ? Species::First : Species::Second) : Species::Empty);
  }
  return out;
}

MultiConfiguration compose_typed(const MultiConfiguration& zeta, const MultiConfiguration& xi) {
  if (zeta.size() != xi.size()) throw Error("component lengths differ");
  MultiConfiguration out = MultiConfiguration::segment(zeta.size());
  for (int x = 1; x <= zeta.size(); ++x) {
    const uint8_t z = species_pair(zeta.at(x)).zeta;
    const uint8_t s = species_pair(xi.at(x)).xi;
    Species lab;
    if (z == 0 && s == 0) lab = Species::Empty;
    else if (z == 1 && s == 1) lab = Species::First;
    else if (z == 0 && s == 2) lab = Species::Type1;
    else if (z == 2 && s == 2) lab = Species::Type2;
    else if (z == 1 && s == 2) lab = Species::Type3;
    else if (z == 2 && s == 1) lab = Species::Type4;
    else throw Error("component pair is not realizable");
    out.set(x, lab);
  }
  return out;
}

std::pair<MultiConfiguration, MultiConfiguration> split_components(const MultiConfiguration& chi) {
  MultiConfiguration zeta = MultiConfiguration::segment(chi.size());
  MultiConfiguration xi = MultiConfiguration::segment(chi.size());
  auto untype = [](uint8_t v) {
    return v == 0 ? Species::Empty : (v == 1 ? Species::First : Species::Second);
  };
  for (int x = 1; x <= chi.size(); ++x) {
    const SpeciesPair pr = species_pair(chi.at(x));
    zeta.set(x, untype(pr.zeta));
    xi.set(x, untype(pr.xi));
  }
  return {zeta, xi};
}

const PairTable& PairTable::instance() {
  static const PairTable table = [] {
    PairTable t{};
    for (int l = 0; l < kSpeciesCount; ++l) {
      for (int r = 0; r < kSpeciesCount; ++r) {
        const uint8_t ml = kMask[l], mr = kMask[r];
        for (int branch = 0; branch < 2; ++branch) {
          // branch 1: every chain hops right where it can, so the left site
          // keeps the AND and the right site the OR of the occupancies
          const uint8_t nl = branch ? (ml & mr) : (ml | mr);
          const uint8_t nr = branch ? (ml | mr) : (ml & mr);
          const bool l_ones = kMask[l] == 0b1111, r_ones = kMask[r] == 0b1111;
          Species sl, sr;
          if (nl == 0b1111 && nr == 0b1111) {
            sl = static_cast<Species>(l);  // both already saturated; nothing moves
            sr = static_cast<Species>(r);
          } else if (nl == 0b1111) {
            sl = l_ones ? static_cast<Species>(l)
                        : (r_ones ? static_cast<Species>(r) : Species::Type5);
            sr = label_from_mask(nr, false);
          } else if (nr == 0b1111) {
            sr = r_ones ? static_cast<Species>(r)
                        : (l_ones ? static_cast<Species>(l) : Species::Type5);
            sl = label_from_mask(nl, false);
          } else {
            sl = label_from_mask(nl, false);
            sr = label_from_mask(nr, false);
          }
          // the untyped tag travels with its second-class content, which has
          // Type2 occupancies; when neither site changed, tags stay in place
          const bool lu = l == static_cast<int>(Species::Second);
          const bool ru = r == static_cast<int>(Species::Second);
          if (lu || ru) {
            if (sl == Species::Type2 && sr == Species::Type2) {
              if (lu) sl = Species::Second;
              if (ru) sr = Species::Second;
            } else {
              if (sl == Species::Type2) sl = Species::Second;
              if (sr == Species::Type2) sr = Species::Second;
            }
          }
          t.next[l][r][branch] =
              static_cast<uint8_t>(static_cast<uint8_t>(sl) | (static_cast<uint8_t>(sr) << 4));
        }
      }
    }
    return t;
  }();
  return table;
}

namespace {
Projection embed(const std::vector<uint8_t>& values, const std::vector<int>& adjacency,
                 int window) {
  const int k = static_cast<int>(values.size());
  if (window < k + 2) throw Error("projection window too small");
  int zeros = 0;
  for (uint8_t v : values) zeros += (v == 0);
  const int start = 1 - zeros;  // element i sits at start + i
  Projection out;
  out.line = Configuration::line(window);
  for (int x = k - zeros + 1; x <= window; ++x) out.line.set(x, true);
  for (int i = 0; i < k; ++i) out.line.set(start + i, values[static_cast<size_t>(i)] != 0);
  for (int x = -window; x < window; ++x) {
    const int i = x - start;  // edge (x, x+1) joins elements i and i+1
    const bool open = i >= 0 && i + 1 < k && adjacency[static_cast<size_t>(i)] != 0;
    if (!open) out.censored.push_back(x);
  }
  return out;
}
}  // namespace

Projection project_xi_star(const MultiConfiguration& xi, int window) {
  std::vector<uint8_t> values;
  std::vector<int> positions;
  for (int x = 1; x <= xi.size(); ++x) {
    const Species s = xi.at(x);
    if (s == Species::Empty) continue;
    values.push_back(s == Species::First ? 1 : 0);
    positions.push_back(x);
  }
  std::vector<int> adjacency;
  for (size_t i = 0; i + 1 < positions.size(); ++i)
    adjacency.push_back(positions[i + 1] == positions[i] + 1);
  return embed(values, adjacency, window);
}

Projection project_chi_star(const MultiConfiguration& chi, const std::vector<uint8_t>& v,
                            int window) {
  std::vector<uint8_t> values(v.begin(), v.end());
  std::vector<int> adjacency(v.empty() ? 0 : v.size() - 1, 0);  // exited block: all censored
  if (!v.empty()) adjacency.push_back(0);                       // junction to the kept block
  std::vector<int> positions;
  for (int x = 1; x <= chi.size(); ++x) {
    const Species s = chi.at(x);
    if (!is_second_class(s)) continue;
    values.push_back((s == Species::Type4 || s == Species::Type5) ? 1 : 0);
    positions.push_back(x);
  }
  for (size_t i = 0; i + 1 < positions.size(); ++i)
    adjacency.push_back(positions[i + 1] == positions[i] + 1);
  if (positions.empty() && !v.empty()) adjacency.pop_back();  // no kept block to join
  return embed(values, adjacency, window);
}

}  // namespace xlab
