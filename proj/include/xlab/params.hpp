#pragma once
#include <optional>

#include "xlab/error.hpp"

namespace xlab {

// Open-boundary exclusion process on {1..N}.
// Bulk: each edge carries a rate-1 clock; a particle at x hops right with
// probability p, a particle at x+1 hops left with probability 1-p.
// Boundary: site 1 fills at rate alpha, empties at rate gamma;
// site N fills at rate delta, empties at rate beta.
struct Params {
  double p = 0.5;
  double alpha = 0.0;
  double beta = 0.0;
  double gamma = 0.0;
  double delta = 0.0;

  void validate() const;
};

enum class Phase {
  LowDensity,
  HighDensity,
  MaxCurrent,
  TriplePoint,
  CoexistenceLine,
  OneBlockedEntry,
  ReverseBias,
  SymmetricBulk,
};

const char* phase_name(Phase ph);

struct PhaseDescriptor {
  std::optional<double> a;  // defined iff alpha > 0
  std::optional<double> b;  // defined iff beta > 0
  Phase phase;
};

// Boundary fugacities. a is the positive root of
//   alpha a^2 - (2p-1-alpha+gamma) a - gamma = 0,
// clamped to 0 when the root is negative; b is the (beta,delta) mirror.
double compute_a(const Params& pr);
double compute_b(const Params& pr);

// Inversions: the entry rate that produces fugacity a at given (p, gamma),
// and the exit rate that produces fugacity b at given (p, delta).
double alpha_for_a(double a, double p, double gamma);
double beta_for_b(double b, double p, double delta);

// Total on valid params; ties at phase boundaries resolved with tolerance 1e-12.
PhaseDescriptor classify_phase(const Params& pr);

// Steady-state particle flux through the system. Defined for the ergodic
// phases with both entries open and for the symmetric bulk; throws otherwise.
double theoretical_flux(const PhaseDescriptor& desc, double p);

// Mixing-time/N limit for one blocked entry: (max(b,1)+1)^2 / ((2p-1) max(b,1)).
double cutoff_constant(double b, double p);

// Exponential rate of the mixing time when both entries are blocked:
// log(p/(1-p)) if exactly one of gamma, delta is positive, half that if both
// are, 0 if neither. Requires 1/2 < p < 1.
double reverse_bias_rate(const Params& pr);

// Conjectured prefactor for the high-density mixing time, a-hat = max(a,1):
// (b+1) (a-hat^2 (2b-1) + a-hat (b-3) + b) / ((b - a-hat)(2p-1)).
double conjectured_high_density_constant(double a, double b, double p);

}  // namespace xlab
