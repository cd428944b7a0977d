#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "qecw/core.hpp"

// Qubit error correction: the 3-qubit repetition code with measured and
// measurement-free recovery, coherent and bath-entangled error trials, the
// generic Knill-Laflamme engine with recovery construction, and the 4-qubit
// amplitude-damping code.
namespace qecw::qubit {

struct CodeSpace {
  int host_dim = 0;
  StateVector word0;  // |W_down>
  StateVector word1;  // |W_up>
  std::vector<Operator> stabilizers;

  // Validates orthonormality and that every stabilizer fixes both words.
  static CodeSpace make(StateVector w0, StateVector w1,
                        std::vector<Operator> stabilizers = {},
                        double tol = kTolExact);

  Operator code_projector() const;
};

enum class KlVerdict { exact, approximate, fail };

std::string to_string(KlVerdict v);

struct KLReport {
  CMatrix alpha_down;          // <W0| K_l^dag K_k |W0>
  CMatrix alpha_up;            // <W1| K_l^dag K_k |W1>
  double max_cross_block = 0;  // max |<W_s| K_l^dag K_k |W_s'>|, s != s'
  double max_word_dependence = 0;
  double violation = 0;        // max(max_cross_block, max_word_dependence)
  RVector beta;                // eigenvalues of the symmetrized alpha
  std::vector<Operator> f_basis;  // rotated Kraus set diagonalizing alpha
  KlVerdict verdict = KlVerdict::fail;
  // Ratio violation(x)/violation(x/2) when scaling in an order parameter was
  // tested; NaN otherwise.  ~4 indicates quadratic vanishing, ~2 linear.
  double scaling_ratio = std::numeric_limits<double>::quiet_NaN();
};

KLReport kl_check(const CodeSpace& code, const KrausChannel& errs,
                  double exact_tol = 1e-9);

// Decides exact/approximate/fail by evaluating the violation at `param` and
// `param/2`: quadratic-or-faster vanishing (ratio >= 3) is approximate.
KLReport kl_check_scaled(const CodeSpace& code,
                         const std::function<KrausChannel(double)>& factory,
                         double param, double exact_tol = 1e-9);

struct RecoveryChannel {
  KrausChannel channel;                   // R_l = beta_l^{-1/2} P_c F_l^dag + completion
  std::vector<Operator> error_projectors; // P_m = beta_m^{-1} F_m P_c F_m^dag
};

RecoveryChannel build_recovery(const CodeSpace& code, const KrausChannel& errs,
                               bool allow_approximate = false,
                               double beta_tol = 1e-12);

// --- 3-qubit repetition code ---

CodeSpace repetition3_code();

// alpha|000> + beta|111> built from the two-CNOT encoding circuit.
StateVector encode_repetition3(Complex alpha, Complex beta);

struct Syndrome3 {
  int s1 = 0;  // +1 or -1
  int s2 = 0;
  StateVector post;
};

Syndrome3 syndrome_repetition3(const StateVector& psi, Rng& rng);

enum class CorrectionMode { measured, measurement_free };

StateVector correct_repetition3(const StateVector& psi, CorrectionMode mode,
                                Rng& rng);

// The same corrections as deterministic CPTP channels on the 8-dim space.
// measured: the four syndrome-conditioned Kraus ops; measurement_free: the
// 5-qubit CNOT/Toffoli network with the two ancillae traced out.
KrausChannel repetition3_correction_channel(CorrectionMode mode);

struct CoherentTrialResult {
  int s1 = 0, s2 = 0;
  double fidelity = 0;  // to the pre-error codeword after correction
};

// Applies exp(-i theta2 X_2) to alpha|000>+beta|111>, measures both
// stabilizers, applies the table correction.
CoherentTrialResult coherent_error_trial(double theta2, Rng& rng,
                                         Complex alpha = Complex(0.6, 0.0),
                                         Complex beta = Complex(0.8, 0.0));

struct BathBranches {
  double prob_plus = 0;            // S1=S2=+1 branch
  double prob_minus = 0;           // S1=S2=-1 branch
  double schmidt_residual_plus = 0;   // second Schmidt coefficient
  double schmidt_residual_minus = 0;
};

// sqrt(1-|eps|^2)|Psi0>|Bath0> + eps X_2|Psi0>|Bath2> with an orthonormal
// one-qubit bath; both post-measurement branches must be product states.
BathBranches bath_error_trial(Complex eps, Complex alpha = Complex(0.6, 0.0),
                              Complex beta = Complex(0.8, 0.0));

// --- error channels ---

// {sqrt(1-3p) I, sqrt(p) X_1, sqrt(p) X_2, sqrt(p) X_3} on 3 qubits.
KrausChannel bitflip3_channel(double px);
// Single-qubit amplitude damping {K0, K-} with jump probability p_minus.
KrausChannel amp_damp_channel(double p_minus);
// Full 2^n-operator product of per-qubit amplitude damping.
KrausChannel product_amp_damp(int n_qubits, double p_minus);

// --- 4-qubit amplitude-damping code ---

CodeSpace leung4_code();
// Truncated error set {E0, E-^(1), ..., E-^(4)} (at most one decay).
KrausChannel leung4_error_set(double p_minus);
RecoveryChannel leung4_first_order_recovery(double p_minus);

}  // namespace qecw::qubit
