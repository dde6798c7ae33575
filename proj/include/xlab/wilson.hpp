#pragma once
#include <vector>

#include "xlab/params.hpp"

namespace xlab {

// Mixing-time lower bounds for the symmetric (p = 1/2) chain via approximate
// eigenfunctions. An affine observable Phi(eta) = sum_x w_x eta(x) + K is
// built so that (-L)Phi = lambda Phi up to a residual that is itself affine;
// the residual's coefficients are tiny, and the certificate (lambda, c, R, F)
// feeds a martingale argument that lower-bounds the mixing time.

enum class WilsonVariant {
  TwoSided,  // both boundaries open: alpha+gamma > 0 and beta+delta > 0
  OneSided,  // left boundary closed: alpha = gamma = 0, beta+delta > 0
};

struct WilsonCertificate {
  WilsonVariant variant = WilsonVariant::TwoSided;
  int nsites = 0;
  double lambda = 0.0;  // approximate eigenvalue, 2 sin^2(angle/2) form
  double c = 0.0;       // uniform residual bound: sup_eta |(-L)Phi - lambda Phi|
  double R = 0.0;       // quadratic-variation rate bound: sup_eta sum rate*(dPhi)^2
  double F_inf = 0.0;   // sup_eta |Phi|; exact since Phi is monotone affine
  bool valid = false;   // lambda >= c > 0 (plus variant-specific sanity)
  double bound_value = 0.0;  // filled by wilson_lower_bound
};

// Site coefficients of Phi and of its residual, computed directly from the
// generator action on the affine profile. Everything is 1-indexed; slot 0 is
// unused. resid[x] multiplies eta(x) in (-L)Phi - lambda Phi; resid_constant
// is the state-independent part.
struct WilsonProfile {
  int nsites = 0;
  double lambda = 0.0;
  std::vector<double> w;      // size nsites+1
  double constant = 0.0;      // K
  std::vector<double> resid;  // size nsites+1
  double resid_constant = 0.0;
};

// O(n). Builds the affine observable and evaluates its residual coefficients
// by applying the generator directly (tridiagonal action plus boundary terms).
// Independent of the closed forms used by wilson_residual; the two must agree.
WilsonProfile wilson_profile(const Params& pr, int n, WilsonVariant variant);

// O(n). Certificate from cancellation-free closed forms, stable up to n ~ 1e6:
// lambda = 2 sin^2(half-angle); c from the signed sums of the edge residuals
// (TwoSided; bulk coefficients vanish identically) or of the uniform bulk
// residual (OneSided; the right-edge coefficient vanishes identically);
// R as the exact per-edge jump-sum bound; F_inf from the affine extremes.
// Throws on a regime mismatch (wrong zero pattern in the boundary rates or
// p != 1/2) and flags lambda < c as an invalid certificate instead of lying.
WilsonCertificate wilson_residual(const Params& pr, int n, WilsonVariant variant);

// Lower bound on the mixing time t_mix(1-epsilon):
//   (1/lambda) log F - (1/(2 lambda)) log(16 (3 c F + max(R,c)) / (lambda epsilon)).
// Throws if the certificate is invalid or epsilon is outside (0,1).
double wilson_lower_bound(const WilsonCertificate& cert, double epsilon);

}  // namespace xlab
