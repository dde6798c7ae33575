#include <array>

#include <doctest.h>

#include "xlab/blocking.hpp"
#include "xlab/config.hpp"
#include "xlab/multispecies.hpp"

using namespace xlab;

namespace {
Configuration seg(std::initializer_list<int> bits) {
  Configuration c = Configuration::segment(static_cast<int>(bits.size()));
  int x = 1;
  for (int b : bits) c.set(x++, b != 0);
  return c;
}

constexpr std::array<Species, kSpeciesCount> kAll = {
    Species::Empty, Species::First, Species::Type1, Species::Type2,
    Species::Type3, Species::Type4, Species::Type5, Species::Second};
}  // namespace

TEST_CASE("species labels carry their component pair") {
  auto pair_of = [](Species s) { return species_pair(s); };
  CHECK(pair_of(Species::Empty).zeta == 0);
  CHECK(pair_of(Species::Empty).xi == 0);
  CHECK(pair_of(Species::First).zeta == 1);
  CHECK(pair_of(Species::First).xi == 1);
  CHECK(pair_of(Species::Type1).zeta == 0);
  CHECK(pair_of(Species::Type1).xi == 2);
  CHECK(pair_of(Species::Type2).zeta == 2);
  CHECK(pair_of(Species::Type2).xi == 2);
  CHECK(pair_of(Species::Type3).zeta == 1);
  CHECK(pair_of(Species::Type3).xi == 2);
  CHECK(pair_of(Species::Type4).zeta == 2);
  CHECK(pair_of(Species::Type4).xi == 1);
  CHECK(pair_of(Species::Type5).zeta == 1);
  CHECK(pair_of(Species::Type5).xi == 1);

  CHECK_FALSE(is_second_class(Species::Empty));
  CHECK_FALSE(is_second_class(Species::First));
  for (Species s : {Species::Type1, Species::Type2, Species::Type3, Species::Type4,
                    Species::Type5, Species::Second})
    CHECK(is_second_class(s));
  CHECK(is_xi_second(Species::Type3));
  CHECK_FALSE(is_xi_second(Species::Type4));
  CHECK(is_zeta_second(Species::Type4));
  CHECK_FALSE(is_zeta_second(Species::Type3));
}

TEST_CASE("disagreement configuration of an ordered pair") {
  const MultiConfiguration d = disagreement(seg({1, 1, 0, 1}), seg({1, 0, 0, 0}));
  CHECK(d.at(1) == Species::First);
  CHECK(d.at(2) == Species::Second);
  CHECK(d.at(3) == Species::Empty);
  CHECK(d.at(4) == Species::Second);
  CHECK(d.count(Species::Second) == 2);
  CHECK(d.count_xi_second() == 2);
  CHECK_THROWS_AS(disagreement(seg({0, 1}), seg({1, 0})), Error);
}

TEST_CASE("typed composition and component split") {
  MultiConfiguration zeta = MultiConfiguration::segment(4);
  MultiConfiguration xi = MultiConfiguration::segment(4);
  zeta.set(1, Species::Second);
  xi.set(1, Species::Second);  // both second -> Type2
  zeta.set(2, Species::Second);
  xi.set(2, Species::First);  // zeta-only -> Type4
  zeta.set(3, Species::First);
  xi.set(3, Species::Second);  // xi-only -> Type3
  zeta.set(4, Species::Empty);
  xi.set(4, Species::Second);  // empty zeta -> Type1
  const MultiConfiguration chi = compose_typed(zeta, xi);
  CHECK(chi.at(1) == Species::Type2);
  CHECK(chi.at(2) == Species::Type4);
  CHECK(chi.at(3) == Species::Type3);
  CHECK(chi.at(4) == Species::Type1);

  const auto [z2, x2] = split_components(chi);
  CHECK(z2 == zeta);
  CHECK(x2 == xi);

  // the hidden second-class label splits into two first-class components
  MultiConfiguration t5 = MultiConfiguration::segment(1);
  t5.set(1, Species::Type5);
  const auto [z5, x5] = split_components(t5);
  CHECK(z5.at(1) == Species::First);
  CHECK(x5.at(1) == Species::First);
}

TEST_CASE("pair table conserves every component class") {
  const PairTable& table = PairTable::instance();
  for (Species l : kAll) {
    for (Species r : kAll) {
      for (int branch = 0; branch < 2; ++branch) {
        const uint8_t packed =
            table.next[static_cast<size_t>(l)][static_cast<size_t>(r)][static_cast<size_t>(branch)];
        const Species nl = static_cast<Species>(packed & 0xf);
        const Species nr = static_cast<Species>(packed >> 4);
        const SpeciesPair before_l = species_pair(l), before_r = species_pair(r);
        const SpeciesPair after_l = species_pair(nl), after_r = species_pair(nr);
        for (int cls = 1; cls <= 2; ++cls) {
          const int before = (before_l.zeta == cls) + (before_r.zeta == cls);
          const int after = (after_l.zeta == cls) + (after_r.zeta == cls);
          CHECK(before == after);
          const int before_xi = (before_l.xi == cls) + (before_r.xi == cls);
          const int after_xi = (after_l.xi == cls) + (after_r.xi == cls);
          CHECK(before_xi == after_xi);
        }
      }
    }
  }
}

TEST_CASE("pair table moves particles with the branch direction") {
  const PairTable& table = PairTable::instance();
  auto step = [&](Species l, Species r, int branch) {
    const uint8_t packed =
        table.next[static_cast<size_t>(l)][static_cast<size_t>(r)][static_cast<size_t>(branch)];
    return std::pair<Species, Species>(static_cast<Species>(packed & 0xf),
                                       static_cast<Species>(packed >> 4));
  };
  // branch 1 hops right, branch 0 hops left
  CHECK(step(Species::First, Species::Empty, 1) ==
        std::pair<Species, Species>(Species::Empty, Species::First));
  CHECK(step(Species::First, Species::Empty, 0) ==
        std::pair<Species, Species>(Species::First, Species::Empty));
  CHECK(step(Species::Empty, Species::First, 0) ==
        std::pair<Species, Species>(Species::First, Species::Empty));
  CHECK(step(Species::Empty, Species::First, 1) ==
        std::pair<Species, Species>(Species::Empty, Species::First));
  // first class treats second class as a hole
  CHECK(step(Species::First, Species::Second, 1) ==
        std::pair<Species, Species>(Species::Second, Species::First));
  CHECK(step(Species::Second, Species::First, 0) ==
        std::pair<Species, Species>(Species::First, Species::Second));
  // second class treats empties as holes of its own chain
  CHECK(step(Species::Second, Species::Empty, 1) ==
        std::pair<Species, Species>(Species::Empty, Species::Second));
  // blocked moves stand still
  CHECK(step(Species::First, Species::First, 1) ==
        std::pair<Species, Species>(Species::First, Species::First));
  CHECK(step(Species::Empty, Species::Empty, 0) ==
        std::pair<Species, Species>(Species::Empty, Species::Empty));
}

TEST_CASE("line projection balances at the origin") {
  const int window = 10;
  MultiConfiguration xi = MultiConfiguration::segment(4);
  const Projection empty_proj = project_xi_star(xi, window);
  CHECK(empty_proj.line == ground_state(0, window));
  // nothing embedded: every window edge is frozen
  CHECK(empty_proj.censored.size() == 2 * window);

  xi.set(1, Species::Second);
  xi.set(3, Species::Second);  // the empty between them is deleted, so their
                               // new adjacency stays censored
  const Projection pr = project_xi_star(xi, window);
  CHECK(balance_defect(pr.line, 0) == 0);
  CHECK_FALSE(pr.line.at(-1));
  CHECK_FALSE(pr.line.at(0));
  CHECK(pr.line.at(1));
  CHECK(pr.censored.size() == 2 * window);

  xi.set(2, Species::First);  // originally adjacent triple: two open edges
  const Projection pr2 = project_xi_star(xi, window);
  CHECK(balance_defect(pr2.line, 0) == 0);
  CHECK(pr2.censored.size() == 2 * window - 2);
  CHECK_FALSE(pr2.line.at(-1));  // demoted second class
  CHECK(pr2.line.at(0));         // first class survives
  CHECK_FALSE(pr2.line.at(1));
}

TEST_CASE("typed projection folds the exit record") {
  MultiConfiguration chi = MultiConfiguration::segment(3);
  chi.set(1, Species::Type4);
  chi.set(2, Species::First);  // not second class: dropped by the projection
  chi.set(3, Species::Type1);
  const std::vector<uint8_t> exits = {1, 0};  // one high exit, one low exit
  const Projection pr = project_chi_star(chi, exits, 10);
  CHECK(balance_defect(pr.line, 0) == 0);
  // embedded order: exit record first, then the kept labels
  CHECK(pr.line.at(-1));       // exited type 4/5
  CHECK_FALSE(pr.line.at(0));  // exited type 1/2/3
  CHECK(pr.line.at(1));        // type 4 maps to a particle
  CHECK_FALSE(pr.line.at(2));  // type 1 maps to a hole
  CHECK(pr.censored.size() == 2 * 10);
}
