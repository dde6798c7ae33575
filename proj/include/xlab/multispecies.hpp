#pragma once
#include <array>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "xlab/config.hpp"

namespace xlab {

// Site labels of the coupled multispecies process. A site carries the pair
// (zeta, xi) of the two disagreement processes; the pair (1,1) is split into
// First (a common first-class particle) and Type5 (a second-class particle
// that looks first-class in both components). Second is the untyped
// second-class label of a standalone disagreement process.
enum class Species : uint8_t {
  Empty = 0,   // (0,0)
  First = 1,   // (1,1)
  Type1 = 2,   // (0,2)
  Type2 = 3,   // (2,2)
  Type3 = 4,   // (1,2)
  Type4 = 5,   // (2,1)
  Type5 = 6,   // (1,1), created in Type3/Type4 collisions
  Second = 7,  // untyped second class, dynamics of Type2
};
constexpr int kSpeciesCount = 8;

struct SpeciesPair {
  uint8_t zeta;  // 0 empty, 1 first class, 2 second class
  uint8_t xi;
};
SpeciesPair species_pair(Species s);
bool is_second_class(Species s);  // types 1..5 and the untyped label
bool is_xi_second(Species s);
bool is_zeta_second(Species s);

class MultiConfiguration {
 public:
  MultiConfiguration() = default;
  static MultiConfiguration segment(int n);

  int size() const { return static_cast<int>(labels_.size()); }
  Species at(int x) const { return static_cast<Species>(labels_[static_cast<size_t>(x - 1)]); }
  void set(int x, Species s) { labels_[static_cast<size_t>(x - 1)] = static_cast<uint8_t>(s); }

  bool operator==(const MultiConfiguration& o) const { return labels_ == o.labels_; }

  int count(Species s) const;
  int count_xi_second() const;
  int count_zeta_second() const;

  // middle dot for empties, '1' for first class, '2' plus a subscript digit
  // for typed second class, plain '2' for the untyped label
  std::string to_string() const;

 private:
  std::vector<uint8_t> labels_;
};

// Three-species disagreement configuration of an ordered pair top >= bottom
// (componentwise): First where both occupied, Empty where both empty,
// Second where they differ. Throws if the pair is not ordered.
MultiConfiguration disagreement(const Configuration& top, const Configuration& bottom);

// Typed composition of the two disagreement components; every (1,1) site is
// labelled First (only the dynamics creates Type5).
MultiConfiguration compose_typed(const MultiConfiguration& zeta, const MultiConfiguration& xi);

// Component extraction: zeta/xi as untyped three-species configurations.
std::pair<MultiConfiguration, MultiConfiguration> split_components(const MultiConfiguration& chi);

// Edge update table of the coupled dynamics. Under the shared uniform, every
// replica chain hops right on branch 1 (u <= p) and left on branch 0, which
// reduces to AND/OR of the chain occupancies; the table folds that plus the
// first-class/Type5 bookkeeping into one lookup. Rate-independent.
struct PairTable {
  // [left label][right label][branch] -> packed (left' | right' << 4)
  std::array<std::array<std::array<uint8_t, 2>, kSpeciesCount>, kSpeciesCount> next;
  static const PairTable& instance();
};

// Line-embedded second-class tracking state of the xi process: delete the
// empties, demote second class to holes, pad with holes on the left and
// particles on the right, balance at the origin.
struct Projection {
  Configuration line;         // embedded configuration on a line window
  std::vector<int> censored;  // censored line edges, by left endpoint
};

Projection project_xi_star(const MultiConfiguration& xi, int window);

// Same construction for the typed process: v records the second-class
// particles that exited on the left (1 = type 4/5, 0 = type 1/2/3), oldest
// first; types 1,2,3 map to holes and 4,5 to particles.
Projection project_chi_star(const MultiConfiguration& chi, const std::vector<uint8_t>& v, int window);

}  // namespace xlab
