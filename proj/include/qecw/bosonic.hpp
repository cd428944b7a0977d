#pragma once

#include <vector>

#include "qecw/core.hpp"
#include "qecw/qubit_codes.hpp"

// Truncated-Fock-space oscillator machinery: the exact damped-oscillator
// Kraus family, a Lindblad integrator used as its independent oracle, the
// displaced-frame driven-oscillator identity, binomial (kitten) codes with
// recovery, the two-mode code, and break-even analysis.
namespace qecw::bosonic {

struct FockSpace {
  int dim = 0;

  explicit FockSpace(int d);

  Operator a() const;        // a|n> = sqrt(n)|n-1>
  Operator a_dag() const;
  Operator n() const;
  Operator parity() const;   // diag((-1)^n)
  Operator x() const;        // (a + a^dag)/sqrt(2)
  Operator p() const;        // i(a^dag - a)/sqrt(2)

  StateVector fock(int n) const;
  // Normalized truncated coherent state.
  StateVector coherent(Complex alpha) const;

  // Throws GuardError if the top Fock level carries more than `bound`
  // probability.
  void leakage_guard(const StateVector& psi, double bound = 1e-8) const;
  void leakage_guard(const DensityMatrix& rho, double bound = 1e-8) const;
};

struct DampingParams {
  double kappa = 0.0;
  double t = 0.0;
  int ellmax = 4;  // highest retained loss count
};

// K_l(t) = sqrt((1-e^{-kappa t})^l / l!) e^{-(kappa/2) n t} a^l for
// l = 0..ellmax.  Resolves the identity exactly on Fock states n <= ellmax;
// the declared defect is the binomial tail at n = dim-1.
KrausChannel damped_kraus(const FockSpace& fs, const DampingParams& dp);

// Fixed-step RK4 integration of drho/dt = kappa D[a] rho.
DensityMatrix lindblad_evolve(const FockSpace& fs, const DensityMatrix& rho0,
                              double kappa, double t, int steps);

// Integrates the driven Lindblad equation with drive envelope eps(t)
// (uniformly sampled over [0,t]; the sampling must resolve the fastest
// envelope feature, i.e. several samples per pulse width) and, separately,
// the undriven equation in the displaced frame alpha(t) solving
// alpha' = -i eps - (kappa/2) alpha.  Returns the max trace distance
// between the two reconstructions over the integration checkpoints.
double driven_frame_check(const FockSpace& fs, const DensityMatrix& rho0,
                          const std::vector<Complex>& drive_samples,
                          double kappa, double t, int steps);

struct BinomialCode {
  int n_param = 0;   // N
  int s_param = 0;   // S = spacing - 1
  int losses = 0;    // correctable photon losses L
  int gains = 0;     // G
  int dephasings = 0;  // D
  int fock_dim = 0;
  StateVector word0;  // Fock support on even multiples of S+1
  StateVector word1;  // odd multiples

  qubit::CodeSpace code_space() const;
};

// Codewords sum_p sqrt(C(N+1,p)/2^N) |p(S+1)>, p even -> word0, odd -> word1.
BinomialCode binomial_code(int n_param, int s_param, int fock_dim = 0);

// N = S = 1: |0_L> = (|0>+|4>)/sqrt(2), |1_L> = |2>.
BinomialCode kitten_code();

struct KittenRecovery {
  Operator jump_unitary;     // |3> -> |0_L>, |1> -> |1_L>
  Operator no_jump_unitary;  // rotation by theta, sin(theta/2) = kappa t
};

KittenRecovery kitten_recovery(const FockSpace& fs, double kappa_t);

// Parity measurement followed by the conditional unitaries, as one CPTP map.
KrausChannel kitten_recovery_channel(const FockSpace& fs, double kappa_t);

// --- two-mode code |0_L> = (|04>+|40>)/sqrt(2), |1_L> = |22> ---

qubit::CodeSpace two_mode_code(int dim_each);

struct TwoModeInvariance {
  double deviation = 0;            // max codeword distance under K0 (x) K0
  double infidelity = 0;           // max codeword infidelity
  double infidelity_exponent = 0;  // fitted scaling exponent in (kappa1-kappa2)
};

TwoModeInvariance two_mode_nojump_invariance(int dim_each, double kappa1,
                                             double kappa2, double t);

// --- break-even comparison ---

struct BreakEvenResult {
  std::vector<double> corrected_fidelity;  // per cycle, averaged over the 6
  std::vector<double> trivial_fidelity;    // cardinal logical states
  double corrected_rate = 0;  // fitted decay rate per cycle
  double trivial_rate = 0;
  double gain = 0;            // trivial_rate / corrected_rate
  double photon_rate_ratio = 0;  // kitten vs 0/1 mean photon number ratio
};

BreakEvenResult break_even_compare(double kappa, double cycle_time,
                                   int n_cycles, int fock_dim = 16,
                                   int ellmax = 4);

// The 6 cardinal logical states (+-Z, +-X, +-Y) of a two-word code.
std::vector<StateVector> cardinal_states(const StateVector& w0,
                                         const StateVector& w1);

}  // namespace qecw::bosonic
