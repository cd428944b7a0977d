#pragma once

#include "qecw/bosonic.hpp"
#include "qecw/core.hpp"

// Phase-space geometry and square-lattice GKP codes.  Units hbar = 1
// (h = 2 pi), x = (a + a^dag)/sqrt(2), so the lattice constants are the
// literal sqrt(pi) multiples of the stabilizer displacements.
namespace qecw::gkp {

struct PhaseVector {
  double dx = 0.0;  // position shift
  double dp = 0.0;  // momentum shift
};

// u^T Omega v with Omega = ((0, 1), (-1, 0)).
double symplectic_form(const PhaseVector& u, const PhaseVector& v);

// T(v) = exp(i (dp x - dx p)) as a matrix on the truncated Fock space;
// exactly unitary by construction (eigendecomposition of the generator).
Operator displacement(const bosonic::FockSpace& fs, const PhaseVector& v);

// T(u) T(v) = composition_phase(u, v) * T(u + v); the phase is
// exp(i/2 v^T Omega u).
Complex composition_phase(const PhaseVector& u_left, const PhaseVector& v_right);

// Phase picked up commuting T(u) past T(v): T(u)T(v) = phase * T(v)T(u).
Complex commutation_phase(const PhaseVector& u, const PhaseVector& v);

struct PauliFrame {
  PhaseVector s_x;  // (2 sqrt(pi), 0)
  PhaseVector s_p;  // (0, 2 sqrt(pi))
  PhaseVector x_l;  // (sqrt(pi), 0)
  PhaseVector z_l;  // (0, sqrt(pi))
  PhaseVector y_l;  // (sqrt(pi), sqrt(pi)), carried with scalar i
  Complex y_scalar; // Y_L = y_scalar * T(y_l)
};

PauliFrame gkp_pauli_frame();

// Defaults calibrated so that both stabilizer expectations exceed 0.9, the
// codeword overlap stays below 1e-3 and the truncation guards hold with
// margin.  Stronger squeezing is not representable at this dimension (the
// squeezed-vacuum Fock tail decays like tanh(r)^n) and a heavier envelope
// drags the stabilizer expectations down.
struct GkpParams {
  double lambda = 0.008;  // e^{-lambda n} envelope
  int s_comb = 4;         // comb half-width
  double squeeze_r = 2.05;
  int fock_dim = 180;
};

// Finite-energy codeword mu = 0 or 1: Gaussian-weighted comb of displaced
// x-squeezed vacua on the (2s + mu) sqrt(pi) lattice, then the e^{-lambda n}
// envelope.
StateVector make_gkp_state(const GkpParams& gp, int mu);

struct StabilizerResidual {
  double s_x_residual;  // || S^Lambda |psi> - |psi> ||
  double s_p_residual;
};

// Residuals of the similarity-transformed finite-energy stabilizers
// S^Lambda = e^{-Lambda n} S e^{+Lambda n}.
StabilizerResidual finite_energy_stabilizer_check(const GkpParams& gp, int mu);

enum class Stabilizer { s_x, s_p };

Complex syndrome_phase(const bosonic::FockSpace& fs, const StateVector& psi,
                       Stabilizer which);

struct ShiftEstimate {
  double dx = 0.0;  // = arg<S_p> / (2 sqrt(pi))
  double dp = 0.0;  // = -arg<S_x> / (2 sqrt(pi))
  bool reliable = true;  // false when |<S>| < 0.1
};

ShiftEstimate estimate_shift(const bosonic::FockSpace& fs,
                             const StateVector& psi);

struct CorrectionResult {
  StateVector state;
  ShiftEstimate estimate;
};

// Steane-style shift-back: T(-dx, 0) then T(0, -dp) from the syndrome
// phases.  An unreliable syndrome is propagated in the flag, not corrected.
CorrectionResult correct_displacement(const bosonic::FockSpace& fs,
                                      const StateVector& psi);

}  // namespace qecw::gkp
