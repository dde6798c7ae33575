#include <cmath>
#include <cstdint>
#include <numbers>
#include <vector>

#include <doctest.h>

#include "xlab/error.hpp"
#include "xlab/params.hpp"
#include "xlab/wilson.hpp"

using namespace xlab;

namespace {

Params two_sided_params() {
  Params pr;
  pr.p = 0.5;
  pr.gamma = 0.8;
  pr.beta = 0.8;
  return pr;
}

Params one_sided_params() {
  Params pr;
  pr.p = 0.5;
  pr.beta = 0.55;
  pr.delta = 0.05;
  return pr;
}

// sup over {0,1}^n of |c0 + sum_x coef[x] eta(x)|; coef is 1-indexed
double affine_sup(double c0, const std::vector<double>& coef) {
  double hi = c0, lo = c0;
  for (size_t x = 1; x < coef.size(); ++x) {
    hi += std::max(coef[x], 0.0);
    lo += std::min(coef[x], 0.0);
  }
  return std::max(hi, -lo);
}

// exhaustive quadratic-variation rate at p = 1/2: discordant edges swap at
// rate 1/2 with jump w[x+1]-w[x]; boundary sites flip at their state's rate
double brute_qv_sup(const Params& pr, const std::vector<double>& w, int n) {
  double best = 0.0;
  for (uint32_t s = 0; s < (1u << n); ++s) {
    double qv = 0.0;
    for (int x = 1; x < n; ++x)
      if (((s >> (x - 1)) & 1u) != ((s >> x) & 1u)) {
        const double j = w[static_cast<size_t>(x) + 1] - w[static_cast<size_t>(x)];
        qv += 0.5 * j * j;
      }
    qv += ((s & 1u) ? pr.gamma : pr.alpha) * w[1] * w[1];
    qv += (((s >> (n - 1)) & 1u) ? pr.beta : pr.delta) * w[static_cast<size_t>(n)] *
          w[static_cast<size_t>(n)];
    best = std::max(best, qv);
  }
  return best;
}

}  // namespace

TEST_CASE("two-sided certificate agrees with the generator-applied profile") {
  const Params pr = two_sided_params();
  const int n = 8;
  const WilsonProfile prof = wilson_profile(pr, n, WilsonVariant::TwoSided);
  const WilsonCertificate cert = wilson_residual(pr, n, WilsonVariant::TwoSided);

  // effective length n + 1/(2*0.8) + 1/(2*0.8) - 1 = n + 0.25
  const double omega = std::numbers::pi / (n + 0.25);
  const double half = std::sin(0.5 * omega);
  CHECK(cert.lambda == doctest::Approx(2.0 * half * half).epsilon(1e-14));
  CHECK(prof.lambda == cert.lambda);

  for (int x = 2; x <= n - 1; ++x) CHECK(std::abs(prof.resid[static_cast<size_t>(x)]) <= 1e-13);
  CHECK(std::abs(prof.resid_constant) <= 1e-13);  // alpha = delta = 0 here
  for (int x = 1; x <= n; ++x) CHECK(prof.w[static_cast<size_t>(x)] > 0.0);

  CHECK(affine_sup(prof.resid_constant, prof.resid) == doctest::Approx(cert.c).epsilon(1e-9));
  CHECK(affine_sup(prof.constant, prof.w) == doctest::Approx(cert.F_inf).epsilon(1e-9));
  CHECK(cert.valid);
  CHECK(cert.lambda >= cert.c);

  const WilsonProfile big = wilson_profile(pr, 200, WilsonVariant::TwoSided);
  for (int x = 2; x <= 199; ++x) CHECK(std::abs(big.resid[static_cast<size_t>(x)]) <= 1e-13);
}

TEST_CASE("one-sided certificate agrees with the generator-applied profile") {
  const Params pr = one_sided_params();
  const int n = 8;
  const WilsonProfile prof = wilson_profile(pr, n, WilsonVariant::OneSided);
  const WilsonCertificate cert = wilson_residual(pr, n, WilsonVariant::OneSided);

  // quarter wave over n - 1/2 + 1/(2*0.6) = n + 1/3
  const double theta = std::numbers::pi / (2.0 * (n + 1.0 / 3.0));
  const double half = std::sin(0.5 * theta);
  CHECK(cert.lambda == doctest::Approx(2.0 * half * half).epsilon(1e-14));
  CHECK(prof.lambda == cert.lambda);

  // the right-edge coefficient is killed by the choice of the last value;
  // every other site carries one and the same bulk residual
  CHECK(std::abs(prof.resid[static_cast<size_t>(n)]) <= 1e-12);
  for (int x = 2; x <= n - 1; ++x)
    CHECK(std::abs(prof.resid[static_cast<size_t>(x)] - prof.resid[1]) <= 1e-12);
  CHECK(std::abs(prof.resid[1]) ==
        doctest::Approx(2.0 * cert.c / (n - 1)).epsilon(1e-8));
  CHECK(std::abs(prof.resid_constant + 0.5 * (n - 1) * prof.resid[1]) <= 1e-12);
  for (int x = 1; x <= n; ++x) CHECK(prof.w[static_cast<size_t>(x)] > 0.0);

  CHECK(affine_sup(prof.resid_constant, prof.resid) == doctest::Approx(cert.c).epsilon(1e-9));
  CHECK(affine_sup(prof.constant, prof.w) == doctest::Approx(cert.F_inf).epsilon(1e-9));
  CHECK(cert.valid);
}

TEST_CASE("rate bound is sharp when an alternating state aligns with both ends") {
  // odd sizes let the alternating configuration collect every edge and the
  // larger flip rate at both boundaries at once
  for (const WilsonVariant variant : {WilsonVariant::TwoSided, WilsonVariant::OneSided}) {
    const Params pr =
        variant == WilsonVariant::TwoSided ? two_sided_params() : one_sided_params();
    const WilsonProfile p7 = wilson_profile(pr, 7, variant);
    const WilsonCertificate c7 = wilson_residual(pr, 7, variant);
    CHECK(c7.R == doctest::Approx(brute_qv_sup(pr, p7.w, 7)).epsilon(1e-12));

    const WilsonProfile p6 = wilson_profile(pr, 6, variant);
    const WilsonCertificate c6 = wilson_residual(pr, 6, variant);
    CHECK(c6.R >= brute_qv_sup(pr, p6.w, 6) - 1e-12);
  }
}

TEST_CASE("lower bound reaches the expected fraction of the diffusive scale") {
  const double eps = 0.75;
  const double pi2 = std::numbers::pi * std::numbers::pi;

  const WilsonCertificate t5 = wilson_residual(two_sided_params(), 100000, WilsonVariant::TwoSided);
  const WilsonCertificate t6 =
      wilson_residual(two_sided_params(), 1000000, WilsonVariant::TwoSided);
  REQUIRE(t5.valid);
  REQUIRE(t6.valid);
  // diffusive-times-log scale: t_mix / (N^2 ln N)
  const double r5 = wilson_lower_bound(t5, eps) / (1e5 * 1e5 * std::log(1e5));
  const double r6 = wilson_lower_bound(t6, eps) / (1e6 * 1e6 * std::log(1e6));
  const double target_two = 1.0 / pi2;
  CHECK(r6 > 0.7 * target_two);
  CHECK(r6 < 1.3 * target_two);
  CHECK(std::abs(r6 - target_two) < std::abs(r5 - target_two));
  CHECK(r6 == doctest::Approx(0.07734).epsilon(2e-3));

  const WilsonCertificate o5 = wilson_residual(one_sided_params(), 100000, WilsonVariant::OneSided);
  const WilsonCertificate o6 =
      wilson_residual(one_sided_params(), 1000000, WilsonVariant::OneSided);
  REQUIRE(o5.valid);
  REQUIRE(o6.valid);
  const double q5 = wilson_lower_bound(o5, eps) / (1e5 * 1e5 * std::log(1e5));
  const double q6 = wilson_lower_bound(o6, eps) / (1e6 * 1e6 * std::log(1e6));
  const double target_one = 4.0 / pi2;
  CHECK(q6 > 0.7 * target_one);
  CHECK(q6 < 1.3 * target_one);
  CHECK(std::abs(q6 - target_one) < std::abs(q5 - target_one));
  CHECK(q6 == doctest::Approx(0.30424).epsilon(2e-3));
}

TEST_CASE("regime mismatches and degenerate certificates are rejected") {
  Params biased = two_sided_params();
  biased.p = 0.6;
  CHECK_THROWS_AS(wilson_residual(biased, 8, WilsonVariant::TwoSided), Error);

  Params open_left = one_sided_params();
  open_left.alpha = 0.2;
  CHECK_THROWS_AS(wilson_residual(open_left, 8, WilsonVariant::OneSided), Error);
  open_left.alpha = 0.0;
  open_left.gamma = 0.1;
  CHECK_THROWS_AS(wilson_residual(open_left, 8, WilsonVariant::OneSided), Error);

  Params sealed_right = two_sided_params();
  sealed_right.beta = 0.0;
  CHECK_THROWS_AS(wilson_residual(sealed_right, 8, WilsonVariant::TwoSided), Error);
  Params sealed_left = two_sided_params();
  sealed_left.gamma = 0.0;
  CHECK_THROWS_AS(wilson_residual(sealed_left, 8, WilsonVariant::TwoSided), Error);

  CHECK_THROWS_AS(wilson_profile(two_sided_params(), 1, WilsonVariant::TwoSided), Error);

  // unit boundary rates put the half-site offsets at zero: the edge residuals
  // cancel identically, so c = 0 and the certificate cannot be used
  Params unit = two_sided_params();
  unit.gamma = 1.0;
  unit.beta = 1.0;
  const WilsonCertificate degenerate = wilson_residual(unit, 16, WilsonVariant::TwoSided);
  CHECK(std::abs(degenerate.c) <= 1e-15);
  CHECK_FALSE(degenerate.valid);
  CHECK_THROWS_AS(wilson_lower_bound(degenerate, 0.75), Error);

  const WilsonCertificate good = wilson_residual(two_sided_params(), 64, WilsonVariant::TwoSided);
  CHECK_THROWS_AS(wilson_lower_bound(good, 0.0), Error);
  CHECK_THROWS_AS(wilson_lower_bound(good, 1.0), Error);
  CHECK_THROWS_AS(wilson_lower_bound(good, -0.5), Error);
  CHECK(wilson_lower_bound(good, 0.9) > wilson_lower_bound(good, 0.1));
}
