#include "xlab/params.hpp"

#include <algorithm>
#include <cmath>

namespace xlab {

namespace {
constexpr double kTieTol = 1e-12;

// Positive root of  r x^2 - (2p-1-r+s) x - s = 0  for entry/exit rate r and
// opposing rate s; this is the fugacity of the boundary reservoir.
double fugacity(double r, double s, double p, const char* which) {
  if (r <= 0.0) throw Error(std::string(which) + " undefined: boundary rate is zero");
  const double drift = 2.0 * p - 1.0;
  const double m = drift - r + s;
  const double root = (m + std::sqrt(m * m + 4.0 * r * s)) / (2.0 * r);
  return std::max(root, 0.0);
}
}  // namespace

void Params::validate() const {
  if (!(p >= 0.0 && p <= 1.0)) throw Error("p must lie in [0, 1]");
  if (alpha < 0 || beta < 0 || gamma < 0 || delta < 0)
    throw Error("boundary rates must be nonnegative");
}

const char* phase_name(Phase ph) {
  switch (ph) {
    case Phase::LowDensity: return "LowDensity";
    case Phase::HighDensity: return "HighDensity";
    case Phase::MaxCurrent: return "MaxCurrent";
    case Phase::TriplePoint: return "TriplePoint";
    case Phase::CoexistenceLine: return "CoexistenceLine";
    case Phase::OneBlockedEntry: return "OneBlockedEntry";
    case Phase::ReverseBias: return "ReverseBias";
    case Phase::SymmetricBulk: return "SymmetricBulk";
  }
  return "?";
}

double compute_a(const Params& pr) { return fugacity(pr.alpha, pr.gamma, pr.p, "a"); }
double compute_b(const Params& pr) { return fugacity(pr.beta, pr.delta, pr.p, "b"); }

double alpha_for_a(double a, double p, double gamma) {
  if (a <= 0.0) throw Error("fugacity must be positive");
  return (2.0 * p - 1.0) / (a + 1.0) + gamma / a;
}

double beta_for_b(double b, double p, double delta) {
  if (b <= 0.0) throw Error("fugacity must be positive");
  return (2.0 * p - 1.0) / (b + 1.0) + delta / b;
}

PhaseDescriptor classify_phase(const Params& pr) {
  pr.validate();
  if (pr.p < 0.5 - kTieTol) throw Error("phase diagram is stated for p >= 1/2");
  PhaseDescriptor d;
  if (pr.alpha > 0.0) d.a = compute_a(pr);
  if (pr.beta > 0.0) d.b = compute_b(pr);

  if (std::abs(pr.p - 0.5) <= kTieTol) {
    d.phase = Phase::SymmetricBulk;
    return d;
  }
  if (pr.alpha == 0.0 && pr.beta == 0.0) {
    d.phase = Phase::ReverseBias;
    return d;
  }
  if (pr.alpha == 0.0 || pr.beta == 0.0) {
    d.phase = Phase::OneBlockedEntry;
    return d;
  }
  const double a = *d.a, b = *d.b;
  if (std::abs(a - 1.0) <= kTieTol && std::abs(b - 1.0) <= kTieTol)
    d.phase = Phase::TriplePoint;
  else if (std::abs(a - b) <= kTieTol && a > 1.0 + kTieTol)
    d.phase = Phase::CoexistenceLine;
  else if (a <= 1.0 + kTieTol && b <= 1.0 + kTieTol)
    d.phase = Phase::MaxCurrent;
  else if (a > b)
    d.phase = Phase::LowDensity;
  else
    d.phase = Phase::HighDensity;
  return d;
}

double theoretical_flux(const PhaseDescriptor& desc, double p) {
  const double drift = 2.0 * p - 1.0;
  switch (desc.phase) {
    case Phase::SymmetricBulk:
      return 0.0;
    case Phase::MaxCurrent:
    case Phase::TriplePoint:
      return drift / 4.0;
    case Phase::LowDensity:
    case Phase::CoexistenceLine: {
      const double a = *desc.a;
      return drift * a / ((1.0 + a) * (1.0 + a));
    }
    case Phase::HighDensity: {
      const double b = *desc.b;
      return drift * b / ((1.0 + b) * (1.0 + b));
    }
    default:
      throw Error("flux has no closed form when an entry is blocked");
  }
}

double cutoff_constant(double b, double p) {
  if (!(p > 0.5)) throw Error("cutoff constant requires p > 1/2");
  const double bh = std::max(b, 1.0);
  return (bh + 1.0) * (bh + 1.0) / ((2.0 * p - 1.0) * bh);
}

double reverse_bias_rate(const Params& pr) {
  if (!(pr.p > 0.5 && pr.p < 1.0))
    throw Error("reverse bias rate requires 1/2 < p < 1");
  const int open = (pr.gamma > 0.0) + (pr.delta > 0.0);
  if (open == 0) return 0.0;
  const double rate = std::log(pr.p / (1.0 - pr.p));
  return open == 2 ? 0.5 * rate : rate;
}

double conjectured_high_density_constant(double a, double b, double p) {
  if (!(p > 0.5)) throw Error("requires p > 1/2");
  const double ah = std::max(a, 1.0);
  if (!(b > ah)) throw Error("requires b > max(a, 1)");
  return (b + 1.0) * (ah * ah * (2.0 * b - 1.0) + ah * (b - 3.0) + b) /
         ((b - ah) * (2.0 * p - 1.0));
}

}  // namespace xlab
