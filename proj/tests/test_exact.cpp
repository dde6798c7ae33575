#include <cmath>
#include <cstdint>
#include <vector>

#include <doctest.h>

#include "xlab/clocks.hpp"
#include "xlab/error.hpp"
#include "xlab/exact.hpp"
#include "xlab/params.hpp"

using namespace xlab;

namespace {

Params generic() {
  Params pr;
  pr.p = 0.6;
  pr.alpha = 0.5;
  pr.beta = 0.4;
  pr.gamma = 0.1;
  pr.delta = 0.2;
  return pr;
}

Params triple_point() {
  Params pr;
  pr.p = 0.75;
  pr.gamma = 0.25;
  pr.delta = 0.25;
  pr.alpha = alpha_for_a(1.0, pr.p, pr.gamma);
  pr.beta = beta_for_b(1.0, pr.p, pr.delta);
  return pr;
}

std::vector<double> delta_at(int dim, int state) {
  std::vector<double> law(static_cast<size_t>(dim), 0.0);
  law[static_cast<size_t>(state)] = 1.0;
  return law;
}

double worst_tv_at(const Generator& g, double t) {
  double worst = 0.0;
  for (int s = 0; s < g.dim; ++s)
    worst = std::max(worst, tv_curve_from_state(g, s, {t}).front());
  return worst;
}

}  // namespace

TEST_CASE("generator rows balance and the dimension is 2^n") {
  const Generator g = build_generator(generic(), 4);
  CHECK(g.nsites == 4);
  CHECK(g.dim == 16);
  CHECK(g.offdiag.rows == 16);
  CHECK(g.diag.size() == 16);
  for (int i = 0; i < g.dim; ++i) {
    double row = 0.0;
    for (int e = g.offdiag.ptr[static_cast<size_t>(i)];
         e < g.offdiag.ptr[static_cast<size_t>(i) + 1]; ++e) {
      CHECK(g.offdiag.val[static_cast<size_t>(e)] > 0.0);
      CHECK(g.offdiag.idx[static_cast<size_t>(e)] != i);
      row += g.offdiag.val[static_cast<size_t>(e)];
    }
    CHECK(row == doctest::Approx(-g.diag[static_cast<size_t>(i)]).epsilon(1e-13));
  }
  CHECK_THROWS_AS(build_generator(generic(), 0), Error);
  CHECK_THROWS_AS(build_generator(generic(), 15), Error);
}

TEST_CASE("single-site occupation balances the boundary rates") {
  const Params pr = generic();
  const Generator g = build_generator(pr, 1);
  const std::vector<double> mu = stationary_exact(g);
  const double up = pr.alpha + pr.delta;
  const double down = pr.beta + pr.gamma;
  CHECK(mu[1] == doctest::Approx(up / (up + down)).epsilon(1e-12));
  CHECK(mu[0] + mu[1] == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("product law matches the exact solve on the a*b = 1 manifold") {
  Params pr;
  pr.p = 0.75;
  pr.gamma = 0.2;
  pr.delta = 0.2;
  pr.alpha = alpha_for_a(2.0, pr.p, pr.gamma);
  pr.beta = beta_for_b(0.5, pr.p, pr.delta);
  const int n = 5;
  const std::vector<double> prod = stationary_product(pr, n);
  const std::vector<double> exact = stationary_exact(build_generator(pr, n));
  double worst = 0.0, mass = 0.0;
  for (size_t i = 0; i < prod.size(); ++i) {
    worst = std::max(worst, std::abs(prod[i] - exact[i]));
    mass += prod[i];
  }
  CHECK(worst <= 1e-12);
  CHECK(mass == doctest::Approx(1.0).epsilon(1e-12));
  // each weight is rho^k (1-rho)^{n-k} with rho = 1/(1+a) = 1/3
  const double rho = 1.0 / 3.0;
  const int s = 0b01101;
  CHECK(prod[s] == doctest::Approx(rho * rho * rho * (1 - rho) * (1 - rho)).epsilon(1e-12));

  Params off = pr;
  off.beta = beta_for_b(0.7, pr.p, pr.delta);  // a*b != 1
  CHECK_THROWS_AS(stationary_product(off, n), Error);
  Params sealed = pr;
  sealed.alpha = 0.0;
  sealed.gamma = 0.0;
  CHECK_THROWS_AS(stationary_product(sealed, n), Error);
}

TEST_CASE("sealed-left chain is reversible and matches its closed form") {
  Params pr;
  pr.p = 0.7;
  pr.beta = 0.6;
  pr.delta = 0.3;
  const int n = 5;
  const Generator g = build_generator(pr, n);
  const std::vector<double> rev = stationary_reversible(pr, n);
  const std::vector<double> exact = stationary_exact(g);
  double worst = 0.0;
  for (size_t i = 0; i < rev.size(); ++i) worst = std::max(worst, std::abs(rev[i] - exact[i]));
  CHECK(worst <= 1e-12);
  CHECK(detailed_balance_residual(g, rev) <= 1e-12);

  Params drain = pr;
  drain.delta = 0.0;  // only exits open: absorbs at empty
  const std::vector<double> d0 = stationary_reversible(drain, 3);
  CHECK(d0[0] == 1.0);
  for (size_t i = 1; i < d0.size(); ++i) CHECK(d0[i] == 0.0);
  CHECK_THROWS_AS(stationary_exact(build_generator(drain, 3)), Error);

  Params fill = pr;
  fill.beta = 0.0;  // only fills: absorbs at the full configuration
  const std::vector<double> d1 = stationary_reversible(fill, 3);
  CHECK(d1[7] == 1.0);

  Params open_left = pr;
  open_left.alpha = 0.2;
  CHECK_THROWS_AS(stationary_reversible(open_left, 3), Error);
  Params dead = pr;
  dead.beta = 0.0;
  dead.delta = 0.0;
  CHECK_THROWS_AS(stationary_reversible(dead, 3), Error);
}

TEST_CASE("evolution conserves mass and relaxes to the stationary law") {
  const Generator g = build_generator(generic(), 4);
  const std::vector<double> pi = stationary_exact(g);
  std::vector<double> law = evolve_law(g, delta_at(g.dim, 0), 3.0);
  double mass = 0.0;
  for (double v : law) {
    CHECK(v >= -1e-15);
    mass += v;
  }
  CHECK(mass == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(evolve_law(g, delta_at(g.dim, 5), 0.0) == delta_at(g.dim, 5));
  law = evolve_law(g, std::move(law), 150.0);
  CHECK(tv_distance(law, pi) <= 1e-5);
}

TEST_CASE("tv curves agree across entry points and are eventually monotone") {
  const Generator g = build_generator(generic(), 4);
  const std::vector<double> grid{0.5, 1.0, 2.0, 4.0, 8.0, 16.0, 32.0};
  const std::vector<double> c1 = tv_curve(g, delta_at(g.dim, 5), grid);
  const std::vector<double> c2 = tv_curve_from_state(g, 5, grid);
  REQUIRE(c1.size() == grid.size());
  for (size_t i = 0; i < grid.size(); ++i) CHECK(c1[i] == c2[i]);
  for (size_t i = 0; i + 1 < grid.size(); ++i) CHECK(c2[i + 1] <= c2[i] + 1e-12);
  CHECK(c2.back() <= 1e-2);
  CHECK_THROWS_AS(tv_curve_from_state(g, 5, {2.0, 1.0}), Error);
}

TEST_CASE("censored curve reduces to the free one and splits evolution correctly") {
  const Params pr = generic();
  const int n = 4, state = 9;
  const std::vector<double> grid{0.5, 2.0, 5.0};
  const Generator g = build_generator(pr, n);
  const std::vector<double> free_curve = tv_curve_from_state(g, state, grid);

  const std::vector<double> none_curve =
      tv_curve_censored(pr, n, CensoringSchedule::none(), state, grid);
  REQUIRE(none_curve.size() == grid.size());
  for (size_t i = 0; i < grid.size(); ++i)
    CHECK(none_curve[i] == doctest::Approx(free_curve[i]).epsilon(1e-13));

  // a schedule that bans nothing only splits the semigroup at its boundaries
  CensoringSchedule trivial;
  trivial.starts = {1.0};
  trivial.banned = {{}};
  const std::vector<double> split_curve = tv_curve_censored(pr, n, trivial, state, grid);
  for (size_t i = 0; i < grid.size(); ++i)
    CHECK(split_curve[i] == doctest::Approx(free_curve[i]).epsilon(1e-10));

  // replay a real schedule by hand: left reservoir banned on [0, 3)
  CensoringSchedule sched;
  sched.starts = {0.0, 3.0};
  sched.banned = {{0}, {}};
  const std::vector<double> grid2{1.0, 2.5, 3.0, 7.0};
  const std::vector<double> curve = tv_curve_censored(pr, n, sched, state, grid2);

  const Generator gb = build_generator(pr, n, {0});
  const std::vector<double> pi = stationary_exact(g);
  std::vector<double> law = delta_at(g.dim, state);
  law = evolve_law(gb, std::move(law), 1.0);
  CHECK(curve[0] == doctest::Approx(tv_distance(law, pi)).epsilon(1e-13));
  law = evolve_law(gb, std::move(law), 1.5);
  CHECK(curve[1] == doctest::Approx(tv_distance(law, pi)).epsilon(1e-13));
  law = evolve_law(gb, std::move(law), 0.5);  // to the segment boundary
  CHECK(curve[2] == doctest::Approx(tv_distance(law, pi)).epsilon(1e-13));
  law = evolve_law(g, std::move(law), 4.0);
  CHECK(curve[3] == doctest::Approx(tv_distance(law, pi)).epsilon(1e-13));

  CensoringSchedule bad;
  bad.starts = {1.0, 0.5};
  bad.banned = {{}, {}};
  CHECK_THROWS_AS(tv_curve_censored(pr, n, bad, state, grid), Error);
}

TEST_CASE("worst-case mixing time matches its definition") {
  const Generator g = build_generator(generic(), 5);
  const double eps = 0.1;
  const double tm = mixing_time_exact(g, eps);
  CHECK(tm > 0.0);
  CHECK(worst_tv_at(g, tm) == doctest::Approx(eps).epsilon(0.02));
  CHECK(worst_tv_at(g, 0.99 * tm) > eps);
  CHECK(worst_tv_at(g, 1.01 * tm) < eps);

  const Generator g2 = build_generator(generic(), 2);
  CHECK(mixing_time_exact(g2, 0.999) == 0.0);

  CHECK_THROWS_AS(mixing_time_exact(g, 0.0), Error);
  CHECK_THROWS_AS(mixing_time_exact(g, 1.0), Error);
  CHECK_THROWS_AS(mixing_time_exact(g, -0.2), Error);
  const Generator g13 = build_generator(generic(), 13);
  CHECK_THROWS_AS(mixing_time_exact(g13, 0.25), Error);
}

TEST_CASE("adjoint swap and additive symmetrization at the triple point") {
  const Params pr = triple_point();
  REQUIRE(classify_phase(pr).phase == Phase::TriplePoint);
  const SymmetrizationReport rep = adjoint_and_symmetrize(pr, 5);
  CHECK(rep.adjoint.p == doctest::Approx(1.0 - pr.p));
  CHECK(rep.adjoint.alpha == pr.gamma);
  CHECK(rep.adjoint.beta == pr.delta);
  CHECK(rep.adjoint.gamma == pr.alpha);
  CHECK(rep.adjoint.delta == pr.beta);
  CHECK(rep.symmetrized.p == 0.5);
  CHECK(rep.symmetrized.alpha == doctest::Approx(0.5 * (pr.alpha + pr.gamma)));
  CHECK(rep.symmetrized.gamma == rep.symmetrized.alpha);
  CHECK(rep.symmetrized.beta == doctest::Approx(0.5 * (pr.beta + pr.delta)));
  CHECK(rep.symmetrized.delta == rep.symmetrized.beta);
  CHECK(rep.gap > 0.0);
  // the gap shrinks with the system size
  CHECK(adjoint_and_symmetrize(pr, 7).gap < rep.gap);
  CHECK_THROWS_AS(adjoint_and_symmetrize(generic(), 5), Error);
}

TEST_CASE("spectral upper bound holds across the grid") {
  const DiaconisReport rep =
      diaconis_bound_check(triple_point(), 4, {0.5, 1.0, 2.0, 4.0, 8.0, 16.0, 32.0});
  CHECK(rep.gap > 0.0);
  CHECK(rep.violations == 0);
  CHECK(rep.max_ratio <= 1.0 + 1e-9);
  CHECK(rep.max_ratio > 0.0);
}

TEST_CASE("mean return time to the empty state, three ways") {
  const KacReport rep = kac_check(generic(), 3, 4000, 77);
  CHECK(rep.replicas == 4000);
  CHECK(std::abs(rep.kac_value - rep.linear_solve_value) <= 1e-10);
  CHECK(rep.mc_se > 0.0);
  CHECK(std::abs(rep.mc_mean - rep.kac_value) <= 4.0 * rep.mc_se);
  CHECK_THROWS_AS(kac_check(generic(), 3, 1, 77), Error);
}

TEST_CASE("poisson weights sum to one and recover the mean") {
  int jmin = -1;
  const std::vector<double> w = poisson_weights(3.7, jmin);
  CHECK(jmin == 0);
  double sum = 0.0, mean = 0.0;
  for (size_t i = 0; i < w.size(); ++i) {
    sum += w[i];
    mean += (jmin + static_cast<double>(i)) * w[i];
  }
  CHECK(sum == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(mean == doctest::Approx(3.7).epsilon(1e-6));

  int jmin2 = -1;
  const std::vector<double> w2 = poisson_weights(400.0, jmin2);
  CHECK(jmin2 > 0);
  CHECK(jmin2 < 400);
  CHECK(jmin2 + static_cast<int>(w2.size()) > 400);
}
