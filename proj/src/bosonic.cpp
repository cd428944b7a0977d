#include "qecw/bosonic.hpp"

#include <cmath>

namespace qecw::bosonic {

FockSpace::FockSpace(int d) : dim(d) {
  if (d < 2) throw DimensionError("Fock truncation must be >= 2");
}

Operator FockSpace::a() const {
  CMatrix m = CMatrix::Zero(dim, dim);
  for (int n = 1; n < dim; ++n) m(n - 1, n) = std::sqrt(static_cast<double>(n));
  return Operator(std::move(m));
}

Operator FockSpace::a_dag() const { return Operator(CMatrix(a().m.adjoint())); }

Operator FockSpace::n() const {
  CMatrix m = CMatrix::Zero(dim, dim);
  for (int k = 0; k < dim; ++k) m(k, k) = k;
  return Operator(std::move(m));
}

Operator FockSpace::parity() const {
  CMatrix m = CMatrix::Zero(dim, dim);
  for (int k = 0; k < dim; ++k) m(k, k) = (k % 2 == 0) ? 1.0 : -1.0;
  return Operator(std::move(m));
}

Operator FockSpace::x() const {
  return Operator(CMatrix((a().m + a_dag().m) / std::sqrt(2.0)));
}

Operator FockSpace::p() const {
  return Operator(CMatrix(Complex(0, 1) * (a_dag().m - a().m) / std::sqrt(2.0)));
}

StateVector FockSpace::fock(int n) const {
  if (n < 0 || n >= dim) throw DimensionError("Fock index outside truncation");
  return StateVector::basis(dim, n);
}

StateVector FockSpace::coherent(Complex alpha) const {
  CVector v(dim);
  v(0) = 1.0;
  for (int n = 1; n < dim; ++n) v(n) = v(n - 1) * alpha / std::sqrt(static_cast<double>(n));
  return StateVector(std::move(v)).normalized();
}

void FockSpace::leakage_guard(const StateVector& psi, double bound) const {
  if (std::norm(psi.v(dim - 1)) >= bound)
    throw GuardError("state leaks into the top Fock level; enlarge truncation");
}

void FockSpace::leakage_guard(const DensityMatrix& rho, double bound) const {
  if (rho.m(dim - 1, dim - 1).real() >= bound)
    throw GuardError("state leaks into the top Fock level; enlarge truncation");
}

namespace {

double log_factorial(int n) { return std::lgamma(n + 1.0); }

// P(Bin(n, p) > ellmax): completeness deficit of the truncated Kraus family
// on Fock state n.
double binomial_tail(int n, double p, int ellmax) {
  if (p <= 0.0) return 0.0;
  double sum = 0.0;
  for (int l = ellmax + 1; l <= n; ++l) {
    double log_term = log_factorial(n) - log_factorial(l) - log_factorial(n - l) +
                      l * std::log(p) + (n - l) * std::log1p(-p);
    sum += std::exp(log_term);
  }
  return sum;
}

}  // namespace

KrausChannel damped_kraus(const FockSpace& fs, const DampingParams& dp) {
  if (dp.kappa * dp.t < 0.0) throw InvariantError("kappa t must be >= 0");
  if (dp.ellmax < 0 || dp.ellmax >= fs.dim)
    throw DimensionError("ellmax must satisfy 0 <= ellmax < dim");
  const double kt = dp.kappa * dp.t;
  const double p_loss = -std::expm1(-kt);  // 1 - e^{-kappa t}
  const Operator a = fs.a();
  CMatrix no_jump = CMatrix::Zero(fs.dim, fs.dim);
  for (int n = 0; n < fs.dim; ++n) no_jump(n, n) = std::exp(-0.5 * kt * n);
  std::vector<Operator> ops;
  std::vector<std::string> labels;
  CMatrix a_pow = CMatrix::Identity(fs.dim, fs.dim);
  for (int l = 0; l <= dp.ellmax; ++l) {
    double coeff = l == 0 ? 1.0
                          : std::exp(0.5 * (l * std::log(p_loss) - log_factorial(l)));
    ops.emplace_back(CMatrix(coeff * no_jump * a_pow));
    labels.push_back(l == 0 ? "no-jump" : "loss x" + std::to_string(l));
    a_pow = a.m * a_pow;
  }
  KrausChannel ch;
  ch.dim = fs.dim;
  ch.ops = std::move(ops);
  ch.labels = std::move(labels);
  ch.declared_defect = binomial_tail(fs.dim - 1, p_loss, dp.ellmax) + 1e-12;
  return ch;
}

namespace {

CMatrix lindblad_rhs(const CMatrix& a, const CMatrix& n_op, double kappa,
                     const CMatrix& rho) {
  return kappa * (a * rho * a.adjoint() - 0.5 * (n_op * rho + rho * n_op));
}

}  // namespace

DensityMatrix lindblad_evolve(const FockSpace& fs, const DensityMatrix& rho0,
                              double kappa, double t, int steps) {
  if (steps < 1) throw InvariantError("steps must be >= 1");
  if (rho0.dim() != fs.dim) throw DimensionError("state/space dimension mismatch");
  fs.leakage_guard(rho0, 1e-6);
  const CMatrix a = fs.a().m;
  const CMatrix n_op = fs.n().m;
  const double h = t / steps;
  CMatrix rho = rho0.m;
  for (int s = 0; s < steps; ++s) {
    CMatrix k1 = lindblad_rhs(a, n_op, kappa, rho);
    CMatrix k2 = lindblad_rhs(a, n_op, kappa, rho + 0.5 * h * k1);
    CMatrix k3 = lindblad_rhs(a, n_op, kappa, rho + 0.5 * h * k2);
    CMatrix k4 = lindblad_rhs(a, n_op, kappa, rho + h * k3);
    rho += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
  }
  return DensityMatrix::make_unchecked(std::move(rho));
}

double driven_frame_check(const FockSpace& fs, const DensityMatrix& rho0,
                          const std::vector<Complex>& drive_samples,
                          double kappa, double t, int steps) {
  if (drive_samples.size() < 2)
    throw InvariantError("drive must be sampled at two or more points");
  if (steps < 8) throw InvariantError("use at least 8 integration steps");
  const CMatrix a = fs.a().m;
  const CMatrix ad = a.adjoint();
  const CMatrix n_op = fs.n().m;
  const double h = t / steps;

  // linear interpolation of the tabulated envelope
  auto eps_at = [&](double s) -> Complex {
    double u = s / t * (drive_samples.size() - 1);
    int i = std::min(static_cast<int>(u), static_cast<int>(drive_samples.size()) - 2);
    double w = u - i;
    return (1.0 - w) * drive_samples[i] + w * drive_samples[i + 1];
  };

  auto driven_rhs = [&](double s, const CMatrix& rho) {
    Complex e = eps_at(s);
    CMatrix v = e * ad + std::conj(e) * a;
    return CMatrix(Complex(0, -1) * (v * rho - rho * v) +
                   lindblad_rhs(a, n_op, kappa, rho));
  };
  auto alpha_rhs = [&](double s, Complex alpha) {
    return Complex(0, -1) * eps_at(s) - 0.5 * kappa * alpha;
  };

  CMatrix rho_driven = rho0.m;
  CMatrix rho_frame = rho0.m;  // undriven master equation in displaced frame
  Complex alpha = 0.0;
  double worst = 0.0;
  const int checkpoints = 8;
  for (int s = 0; s < steps; ++s) {
    const double s0 = s * h;
    CMatrix k1 = driven_rhs(s0, rho_driven);
    CMatrix k2 = driven_rhs(s0 + 0.5 * h, rho_driven + 0.5 * h * k1);
    CMatrix k3 = driven_rhs(s0 + 0.5 * h, rho_driven + 0.5 * h * k2);
    CMatrix k4 = driven_rhs(s0 + h, rho_driven + h * k3);
    rho_driven += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);

    CMatrix m1 = lindblad_rhs(a, n_op, kappa, rho_frame);
    CMatrix m2 = lindblad_rhs(a, n_op, kappa, rho_frame + 0.5 * h * m1);
    CMatrix m3 = lindblad_rhs(a, n_op, kappa, rho_frame + 0.5 * h * m2);
    CMatrix m4 = lindblad_rhs(a, n_op, kappa, rho_frame + h * m3);
    rho_frame += (h / 6.0) * (m1 + 2.0 * m2 + 2.0 * m3 + m4);

    Complex a1 = alpha_rhs(s0, alpha);
    Complex a2 = alpha_rhs(s0 + 0.5 * h, alpha + 0.5 * h * a1);
    Complex a3 = alpha_rhs(s0 + 0.5 * h, alpha + 0.5 * h * a2);
    Complex a4 = alpha_rhs(s0 + h, alpha + h * a3);
    alpha += (h / 6.0) * (a1 + 2.0 * a2 + 2.0 * a3 + a4);

    if ((s + 1) % std::max(1, steps / checkpoints) == 0 || s + 1 == steps) {
      // displace the driven solution back: rho_tilde = D^dag(alpha) rho D(alpha)
      CMatrix gen = alpha * ad - std::conj(alpha) * a;  // anti-Hermitian
      Operator d = expm_i_hermitian(Operator(CMatrix(Complex(0, -1) * gen)));
      CMatrix rho_tilde = d.m.adjoint() * rho_driven * d.m;
      worst = std::max(worst,
                       trace_distance(DensityMatrix::make_unchecked(rho_tilde),
                                      DensityMatrix::make_unchecked(rho_frame)));
    }
  }
  DensityMatrix final_driven = DensityMatrix::make_unchecked(rho_driven);
  fs.leakage_guard(final_driven, 1e-6);
  return worst;
}

qubit::CodeSpace BinomialCode::code_space() const {
  std::vector<Operator> stab;
  // photon-number parity stabilizes the code when the spacing S+1 is even
  if (s_param % 2 == 1) stab.push_back(FockSpace(fock_dim).parity());
  return qubit::CodeSpace::make(word0, word1, std::move(stab));
}

BinomialCode binomial_code(int n_param, int s_param, int fock_dim) {
  if (n_param < 1 || s_param < 1)
    throw InvariantError("binomial code requires N >= 1 and S >= 1");
  const int top = (n_param + 1) * (s_param + 1);
  if (fock_dim == 0) fock_dim = 4 * top;  // default truncation with guard margin
  if (fock_dim < (n_param + 2) * (s_param + 1))
    throw DimensionError("Fock truncation too small for the binomial code");
  CVector w0 = CVector::Zero(fock_dim), w1 = CVector::Zero(fock_dim);
  const double norm = std::pow(2.0, -0.5 * n_param);
  for (int p = 0; p <= n_param + 1; ++p) {
    double c = 1.0;
    for (int i = 0; i < p; ++i) c = c * (n_param + 1 - i) / (i + 1);
    double amp = norm * std::sqrt(c);
    (p % 2 == 0 ? w0 : w1)(p * (s_param + 1)) = amp;
  }
  BinomialCode code;
  code.n_param = n_param;
  code.s_param = s_param;
  code.losses = s_param;  // S = L + G with G = 0 in this workbench
  code.gains = 0;
  code.dephasings = 0;
  code.fock_dim = fock_dim;
  code.word0 = StateVector(std::move(w0));
  code.word1 = StateVector(std::move(w1));
  return code;
}

BinomialCode kitten_code() { return binomial_code(1, 1, 16); }

KittenRecovery kitten_recovery(const FockSpace& fs, double kappa_t) {
  if (kappa_t < 0.0 || kappa_t >= 0.5)
    throw InvariantError("kitten recovery is first order; require kappa t < 0.5");
  if (fs.dim < 6) throw DimensionError("kitten recovery needs dim >= 6");
  BinomialCode kitten = binomial_code(1, 1, fs.dim);
  KittenRecovery out;
  out.jump_unitary = unitary_rotation_from_basis_pairs(
      fs.dim, {{fs.fock(3), kitten.word0}, {fs.fock(1), kitten.word1}});
  // rotation in the {|0_L>, |E2>} plane, |E2> = (|0>-|4>)/sqrt(2)
  CVector e2 = CVector::Zero(fs.dim);
  e2(0) = 1.0 / std::sqrt(2.0);
  e2(4) = -1.0 / std::sqrt(2.0);
  const CVector& w0 = kitten.word0.v;
  const double half_theta = std::asin(kappa_t);
  const double c = std::cos(half_theta), s = std::sin(half_theta);
  CMatrix u = CMatrix::Identity(fs.dim, fs.dim);
  u += (c - 1.0) * (w0 * w0.adjoint() + e2 * e2.adjoint());
  u += s * (w0 * e2.adjoint() - e2 * w0.adjoint());
  out.no_jump_unitary = Operator(std::move(u));
  return out;
}

KrausChannel kitten_recovery_channel(const FockSpace& fs, double kappa_t) {
  KittenRecovery rec = kitten_recovery(fs, kappa_t);
  const CMatrix pi = fs.parity().m;
  const CMatrix id = CMatrix::Identity(fs.dim, fs.dim);
  CMatrix p_even = 0.5 * (id + pi), p_odd = 0.5 * (id - pi);
  return KrausChannel::make(
      {Operator(CMatrix(rec.no_jump_unitary.m * p_even)),
       Operator(CMatrix(rec.jump_unitary.m * p_odd))},
      {"no-jump", "jump"});
}

qubit::CodeSpace two_mode_code(int dim_each) {
  if (dim_each < 5) throw DimensionError("two-mode code needs dim_each >= 5");
  FockSpace fs(dim_each);
  StateVector w0(CVector((tensor(fs.fock(0), fs.fock(4)).v +
                          tensor(fs.fock(4), fs.fock(0)).v) /
                         std::sqrt(2.0)));
  StateVector w1 = tensor(fs.fock(2), fs.fock(2));
  std::vector<Operator> stab{tensor(fs.parity(), Operator::identity(dim_each)),
                             tensor(Operator::identity(dim_each), fs.parity())};
  return qubit::CodeSpace::make(std::move(w0), std::move(w1), std::move(stab));
}

namespace {

double nojump_infidelity(int dim_each, double kappa1, double kappa2, double t) {
  FockSpace fs(dim_each);
  auto k0 = [&](double kappa) {
    CMatrix m = CMatrix::Zero(dim_each, dim_each);
    for (int n = 0; n < dim_each; ++n) m(n, n) = std::exp(-0.5 * kappa * t * n);
    return Operator(std::move(m));
  };
  Operator k00 = tensor(k0(kappa1), k0(kappa2));
  qubit::CodeSpace code = two_mode_code(dim_each);
  double worst = 0.0;
  for (const StateVector* w : {&code.word0, &code.word1}) {
    StateVector evolved = StateVector(CVector(k00.m * w->v)).normalized();
    worst = std::max(worst, 1.0 - std::norm(w->v.dot(evolved.v)));
  }
  return worst;
}

}  // namespace

TwoModeInvariance two_mode_nojump_invariance(int dim_each, double kappa1,
                                             double kappa2, double t) {
  auto k0 = [&](double kappa) {
    CMatrix m = CMatrix::Zero(dim_each, dim_each);
    for (int n = 0; n < dim_each; ++n) m(n, n) = std::exp(-0.5 * kappa * t * n);
    return Operator(std::move(m));
  };
  Operator k00 = tensor(k0(kappa1), k0(kappa2));
  qubit::CodeSpace code = two_mode_code(dim_each);
  TwoModeInvariance out;
  for (const StateVector* w : {&code.word0, &code.word1}) {
    StateVector evolved = StateVector(CVector(k00.m * w->v)).normalized();
    out.deviation = std::max(out.deviation, (evolved.v - w->v).norm());
    out.infidelity = std::max(out.infidelity, 1.0 - std::norm(w->v.dot(evolved.v)));
  }
  const double delta = kappa1 - kappa2;
  if (std::abs(delta) > 0.0) {
    double inf_half =
        nojump_infidelity(dim_each, kappa2 + 0.5 * delta, kappa2, t);
    if (out.infidelity > 1e-300 && inf_half > 1e-300)
      out.infidelity_exponent = std::log2(out.infidelity / inf_half);
  }
  return out;
}

std::vector<StateVector> cardinal_states(const StateVector& w0,
                                         const StateVector& w1) {
  const double r = 1.0 / std::sqrt(2.0);
  const Complex i(0, 1);
  std::vector<StateVector> out;
  out.push_back(w0);
  out.push_back(w1);
  out.emplace_back(CVector(r * (w0.v + w1.v)));
  out.emplace_back(CVector(r * (w0.v - w1.v)));
  out.emplace_back(CVector(r * (w0.v + i * w1.v)));
  out.emplace_back(CVector(r * (w0.v - i * w1.v)));
  return out;
}

namespace {

// least-squares slope of -log F against cycle index
double fitted_decay_rate(const std::vector<double>& fidelity) {
  int n = static_cast<int>(fidelity.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (int k = 0; k < n; ++k) {
    double x = k + 1.0, y = -std::log(std::max(fidelity[k], 1e-300));
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

}  // namespace

BreakEvenResult break_even_compare(double kappa, double cycle_time,
                                   int n_cycles, int fock_dim, int ellmax) {
  if (n_cycles < 2) throw InvariantError("need at least two cycles for a fit");
  FockSpace fs(fock_dim);
  BinomialCode kitten = binomial_code(1, 1, fock_dim);
  DampingParams dp{kappa, cycle_time, ellmax};
  KrausChannel damping = damped_kraus(fs, dp);
  KrausChannel recovery = kitten_recovery_channel(fs, kappa * cycle_time);
  KrausChannel corrected_cycle = compose(recovery, damping);

  std::vector<StateVector> kitten_cards = cardinal_states(kitten.word0, kitten.word1);
  std::vector<StateVector> trivial_cards = cardinal_states(fs.fock(0), fs.fock(1));

  BreakEvenResult out;
  std::vector<DensityMatrix> rho_c, rho_t;
  for (const auto& s : kitten_cards) rho_c.push_back(DensityMatrix::pure(s));
  for (const auto& s : trivial_cards) rho_t.push_back(DensityMatrix::pure(s));
  for (int c = 0; c < n_cycles; ++c) {
    double f_c = 0, f_t = 0;
    for (std::size_t k = 0; k < rho_c.size(); ++k) {
      rho_c[k] = apply_channel(corrected_cycle, rho_c[k]);
      rho_t[k] = apply_channel(damping, rho_t[k]);
      f_c += fidelity(rho_c[k], kitten_cards[k]);
      f_t += fidelity(rho_t[k], trivial_cards[k]);
    }
    out.corrected_fidelity.push_back(f_c / rho_c.size());
    out.trivial_fidelity.push_back(f_t / rho_t.size());
  }
  out.corrected_rate = fitted_decay_rate(out.corrected_fidelity);
  out.trivial_rate = fitted_decay_rate(out.trivial_fidelity);
  out.gain = out.trivial_rate / out.corrected_rate;

  // analytic mean photon number averaged over the logical Bloch sphere
  const CMatrix n_op = fs.n().m;
  auto mean_n = [&](const std::vector<StateVector>& cards) {
    double sum = 0;
    for (const auto& s : cards) sum += std::real(s.v.dot(n_op * s.v));
    return sum / cards.size();
  };
  out.photon_rate_ratio = mean_n(kitten_cards) / mean_n(trivial_cards);
  return out;
}

}  // namespace qecw::bosonic
