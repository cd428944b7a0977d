#include "qecw/qubit_codes.hpp"

#include <cmath>

namespace qecw::qubit {

CodeSpace CodeSpace::make(StateVector w0, StateVector w1,
                          std::vector<Operator> stabilizers, double tol) {
  CodeSpace cs;
  cs.host_dim = w0.dim();
  if (w1.dim() != cs.host_dim) throw DimensionError("codeword dimension mismatch");
  if (std::abs(w0.norm() - 1.0) > tol || std::abs(w1.norm() - 1.0) > tol)
    throw InvariantError("codewords must be normalized");
  if (std::abs(w0.v.dot(w1.v)) > tol)
    throw InvariantError("codewords must be orthogonal");
  for (const auto& s : stabilizers) {
    if (s.dim() != cs.host_dim) throw DimensionError("stabilizer dimension mismatch");
    if ((s.m * w0.v - w0.v).norm() > tol || (s.m * w1.v - w1.v).norm() > tol)
      throw InvariantError("stabilizer does not fix the codewords");
  }
  cs.word0 = std::move(w0);
  cs.word1 = std::move(w1);
  cs.stabilizers = std::move(stabilizers);
  return cs;
}

Operator CodeSpace::code_projector() const {
  return Operator(word0.v * word0.v.adjoint() + word1.v * word1.v.adjoint());
}

std::string to_string(KlVerdict v) {
  switch (v) {
    case KlVerdict::exact: return "exact";
    case KlVerdict::approximate: return "approximate";
    default: return "fail";
  }
}

KLReport kl_check(const CodeSpace& code, const KrausChannel& errs,
                  double exact_tol) {
  if (errs.dim != code.host_dim) throw DimensionError("code/channel dimension mismatch");
  const int n = static_cast<int>(errs.ops.size());
  KLReport rep;
  rep.alpha_down = CMatrix(n, n);
  rep.alpha_up = CMatrix(n, n);
  double cross = 0.0;
  for (int l = 0; l < n; ++l) {
    CVector k_l0 = errs.ops[l].m * code.word0.v;
    CVector k_l1 = errs.ops[l].m * code.word1.v;
    for (int k = 0; k < n; ++k) {
      CVector k_k0 = errs.ops[k].m * code.word0.v;
      CVector k_k1 = errs.ops[k].m * code.word1.v;
      rep.alpha_down(l, k) = k_l0.dot(k_k0);
      rep.alpha_up(l, k) = k_l1.dot(k_k1);
      cross = std::max(cross, std::abs(k_l0.dot(k_k1)));
      cross = std::max(cross, std::abs(k_l1.dot(k_k0)));
    }
  }
  rep.max_cross_block = cross;
  rep.max_word_dependence = (rep.alpha_up - rep.alpha_down).cwiseAbs().maxCoeff();
  rep.violation = std::max(rep.max_cross_block, rep.max_word_dependence);

  CMatrix alpha = 0.5 * (rep.alpha_up + rep.alpha_down);
  alpha = 0.5 * (alpha + alpha.adjoint());
  // F_j = sum_k U_jk K_k with U A^T U^dag diagonal diagonalizes the form.
  Eigen::SelfAdjointEigenSolver<CMatrix> es(alpha.transpose().eval());
  rep.beta = es.eigenvalues();
  CMatrix u = es.eigenvectors().adjoint();
  for (int j = 0; j < n; ++j) {
    CMatrix f = CMatrix::Zero(errs.dim, errs.dim);
    for (int k = 0; k < n; ++k) f += u(j, k) * errs.ops[k].m;
    rep.f_basis.emplace_back(std::move(f));
  }
  rep.verdict = rep.violation < exact_tol ? KlVerdict::exact : KlVerdict::fail;
  return rep;
}

KLReport kl_check_scaled(const CodeSpace& code,
                         const std::function<KrausChannel(double)>& factory,
                         double param, double exact_tol) {
  KLReport rep = kl_check(code, factory(param), exact_tol);
  if (rep.verdict == KlVerdict::exact) return rep;
  KLReport half = kl_check(code, factory(0.5 * param), exact_tol);
  if (half.violation < exact_tol) {
    // violation already below the exact threshold at param/2
    rep.verdict = KlVerdict::approximate;
    return rep;
  }
  rep.scaling_ratio = rep.violation / half.violation;
  // quadratic (ratio 4) or faster vanishing counts as approximate QEC;
  // linear scaling (ratio 2) does not.
  rep.verdict = rep.scaling_ratio >= 3.0 ? KlVerdict::approximate : KlVerdict::fail;
  return rep;
}

RecoveryChannel build_recovery(const CodeSpace& code, const KrausChannel& errs,
                               bool allow_approximate, double beta_tol) {
  KLReport rep = kl_check(code, errs);
  if (rep.verdict != KlVerdict::exact && !allow_approximate)
    throw InvariantError(
        "Knill-Laflamme conditions not met exactly; pass allow_approximate "
        "to build a first-order recovery");
  const int dim = code.host_dim;
  const Operator pc = code.code_projector();
  RecoveryChannel out;
  std::vector<Operator> ops;
  std::vector<std::string> labels;
  for (int l = 0; l < static_cast<int>(rep.f_basis.size()); ++l) {
    double beta = rep.beta(l);
    if (beta < -1e-9) throw InvariantError("beta matrix not PSD beyond tolerance");
    if (beta < beta_tol) continue;  // null error, e.g. annihilates both words
    ops.emplace_back(CMatrix(pc.m * rep.f_basis[l].m.adjoint() / std::sqrt(beta)));
    labels.push_back("recover[" + std::to_string(l) + "]");
    out.error_projectors.emplace_back(
        CMatrix(rep.f_basis[l].m * pc.m * rep.f_basis[l].m.adjoint() / beta));
  }
  // Completion: map whatever the recovery ops do not account for onto the
  // sink codeword |W0>.  M = I - sum R^dag R is an exact projector for exact
  // codes and deviates at the violation order for approximate ones.
  CMatrix m = CMatrix::Identity(dim, dim);
  for (const auto& r : ops) m -= r.m.adjoint() * r.m;
  Eigen::SelfAdjointEigenSolver<CMatrix> es(0.5 * (m + m.adjoint()));
  double min_ev = es.eigenvalues().minCoeff();
  if (min_ev < -0.2) throw InvariantError("recovery completion defect too large");
  for (int i = 0; i < dim; ++i) {
    double ev = es.eigenvalues()(i);
    if (ev < beta_tol) continue;
    CVector dir = es.eigenvectors().col(i);
    ops.emplace_back(CMatrix(std::sqrt(ev) * code.word0.v * dir.adjoint()));
    labels.push_back("completion");
  }
  KrausChannel ch;
  ch.dim = dim;
  ch.ops = std::move(ops);
  ch.labels = std::move(labels);
  ch.declared_defect = ch.completeness_defect() * 1.0001 + 1e-12;
  out.channel = std::move(ch);
  return out;
}

// --- repetition-3 ---

namespace {

StateVector basis3(int b) { return StateVector::basis(8, b); }

Operator stabilizer_s1() {
  return Operator(CMatrix(embed_qubit_op(pauli_z(), 1, 3).m *
                          embed_qubit_op(pauli_z(), 2, 3).m));
}

Operator stabilizer_s2() {
  return Operator(CMatrix(embed_qubit_op(pauli_z(), 2, 3).m *
                          embed_qubit_op(pauli_z(), 3, 3).m));
}

Operator plus_projector(const Operator& s) {
  return Operator(CMatrix(0.5 * (CMatrix::Identity(s.dim(), s.dim()) + s.m)));
}

}  // namespace

CodeSpace repetition3_code() {
  std::vector<Operator> stab{stabilizer_s1(), stabilizer_s2()};
  return CodeSpace::make(basis3(0), basis3(7), std::move(stab));
}

StateVector encode_repetition3(Complex alpha, Complex beta) {
  double norm2 = std::norm(alpha) + std::norm(beta);
  if (std::abs(norm2 - 1.0) > kTolExact)
    throw InvariantError("encode_repetition3 requires |alpha|^2+|beta|^2 = 1");
  CVector q(2);
  q << alpha, beta;
  StateVector psi = tensor(StateVector(std::move(q)),
                           tensor(StateVector::basis(2, 0), StateVector::basis(2, 0)));
  CVector out = cnot(1, 3, 3).m * (cnot(1, 2, 3).m * psi.v);
  return StateVector(std::move(out));
}

Syndrome3 syndrome_repetition3(const StateVector& psi, Rng& rng) {
  if (psi.dim() != 8) throw DimensionError("repetition-3 state must have dim 8");
  auto m1 = measure_projector(plus_projector(stabilizer_s1()), psi, rng);
  auto m2 = measure_projector(plus_projector(stabilizer_s2()), m1.post, rng);
  Syndrome3 out;
  out.s1 = m1.outcome ? 1 : -1;
  out.s2 = m2.outcome ? 1 : -1;
  out.post = m2.post;
  return out;
}

namespace {

// Syndrome table: (+,+) -> I, (-,+) -> X1, (-,-) -> X2, (+,-) -> X3.
Operator correction_for(int s1, int s2) {
  if (s1 > 0 && s2 > 0) return Operator::identity(8);
  if (s1 < 0 && s2 > 0) return embed_qubit_op(pauli_x(), 1, 3);
  if (s1 < 0 && s2 < 0) return embed_qubit_op(pauli_x(), 2, 3);
  return embed_qubit_op(pauli_x(), 3, 3);
}

// 5-qubit correction network: CNOTs copy the two joint parities onto the
// ancillae (qubits 4,5), then Toffolis conditioned on the ancilla pattern
// apply the table Pauli.
Operator measurement_free_network() {
  Operator u = Operator::identity(32);
  auto apply = [&u](const Operator& g) { u = Operator(CMatrix(g.m * u.m)); };
  apply(cnot(1, 4, 5));
  apply(cnot(2, 4, 5));  // ancilla 4 records Z1 Z2
  apply(cnot(2, 5, 5));
  apply(cnot(3, 5, 5));  // ancilla 5 records Z2 Z3
  const Operator x4 = embed_qubit_op(pauli_x(), 4, 5);
  const Operator x5 = embed_qubit_op(pauli_x(), 5, 5);
  // pattern (1,0): X1
  apply(x5);
  apply(toffoli(4, 5, 1, 5));
  apply(x5);
  // pattern (1,1): X2
  apply(toffoli(4, 5, 2, 5));
  // pattern (0,1): X3
  apply(x4);
  apply(toffoli(4, 5, 3, 5));
  apply(x4);
  return u;
}

}  // namespace

StateVector correct_repetition3(const StateVector& psi, CorrectionMode mode,
                                Rng& rng) {
  if (psi.dim() != 8) throw DimensionError("repetition-3 state must have dim 8");
  if (mode == CorrectionMode::measured) {
    Syndrome3 syn = syndrome_repetition3(psi, rng);
    return StateVector(CVector(correction_for(syn.s1, syn.s2).m * syn.post.v));
  }
  StateVector full = tensor(psi, tensor(StateVector::basis(2, 0),
                                        StateVector::basis(2, 0)));
  StateVector evolved(CVector(measurement_free_network().m * full.v));
  // ancilla reset: measure both ancillae (equivalent unraveling of trace-out)
  auto m4 = measure_projector(
      Operator(CMatrix(0.5 * (CMatrix::Identity(32, 32) -
                              embed_qubit_op(pauli_z(), 4, 5).m))),
      evolved, rng);
  auto m5 = measure_projector(
      Operator(CMatrix(0.5 * (CMatrix::Identity(32, 32) -
                              embed_qubit_op(pauli_z(), 5, 5).m))),
      m4.post, rng);
  // project the 5-qubit state onto the measured ancilla pattern
  CVector sys = CVector::Zero(8);
  int anc = (m4.outcome << 1) | m5.outcome;
  for (int i = 0; i < 8; ++i) sys(i) = m5.post.v(i * 4 + anc);
  return StateVector(std::move(sys)).normalized();
}

KrausChannel repetition3_correction_channel(CorrectionMode mode) {
  std::vector<Operator> ops;
  std::vector<std::string> labels;
  if (mode == CorrectionMode::measured) {
    const Operator pi1 = plus_projector(stabilizer_s1());
    const Operator pi2 = plus_projector(stabilizer_s2());
    const CMatrix i8 = CMatrix::Identity(8, 8);
    ops.emplace_back(CMatrix(pi1.m * pi2.m));
    ops.emplace_back(CMatrix(embed_qubit_op(pauli_x(), 1, 3).m * (i8 - pi1.m) * pi2.m));
    ops.emplace_back(CMatrix(embed_qubit_op(pauli_x(), 2, 3).m * (i8 - pi1.m) * (i8 - pi2.m)));
    ops.emplace_back(CMatrix(embed_qubit_op(pauli_x(), 3, 3).m * pi1.m * (i8 - pi2.m)));
    labels = {"R0", "R1", "R2", "R3"};
  } else {
    const Operator u = measurement_free_network();
    // K_b = (I (x) <b|) U (I (x) |00>) over the ancilla basis = trace-out
    for (int b = 0; b < 4; ++b) {
      CMatrix k(8, 8);
      for (int i = 0; i < 8; ++i)
        for (int j = 0; j < 8; ++j) k(i, j) = u.m(i * 4 + b, j * 4 + 0);
      ops.emplace_back(std::move(k));
      labels.push_back("anc" + std::to_string(b));
    }
  }
  return KrausChannel::make(std::move(ops), std::move(labels));
}

CoherentTrialResult coherent_error_trial(double theta2, Rng& rng,
                                         Complex alpha, Complex beta) {
  StateVector psi0 = encode_repetition3(alpha, beta);
  // exp(-i theta X2) = cos(theta) I - i sin(theta) X2
  const Operator x2 = embed_qubit_op(pauli_x(), 2, 3);
  CVector erred = std::cos(theta2) * psi0.v -
                  Complex(0, 1) * std::sin(theta2) * (x2.m * psi0.v);
  Syndrome3 syn = syndrome_repetition3(StateVector(std::move(erred)), rng);
  StateVector corrected(CVector(correction_for(syn.s1, syn.s2).m * syn.post.v));
  CoherentTrialResult out;
  out.s1 = syn.s1;
  out.s2 = syn.s2;
  out.fidelity = std::norm(psi0.v.dot(corrected.v));
  return out;
}

BathBranches bath_error_trial(Complex eps, Complex alpha, Complex beta) {
  if (std::abs(eps) > 1.0) throw InvariantError("|eps| must be <= 1");
  StateVector psi0 = encode_repetition3(alpha, beta);
  const Operator x2 = embed_qubit_op(pauli_x(), 2, 3);
  StateVector bath0 = StateVector::basis(2, 0);
  StateVector bath2 = StateVector::basis(2, 1);
  double amp0 = std::sqrt(1.0 - std::norm(eps));
  CVector full = amp0 * tensor(psi0, bath0).v +
                 eps * tensor(StateVector(CVector(x2.m * psi0.v)), bath2).v;
  // stabilizers act on the system factor only
  const Operator s1 = tensor(stabilizer_s1(), Operator::identity(2));
  const Operator s2 = tensor(stabilizer_s2(), Operator::identity(2));
  const CMatrix i16 = CMatrix::Identity(16, 16);
  CMatrix p_plus = 0.25 * (i16 + s1.m) * (i16 + s2.m);
  CMatrix p_minus = 0.25 * (i16 - s1.m) * (i16 - s2.m);
  BathBranches out;
  CVector b_plus = p_plus * full;
  CVector b_minus = p_minus * full;
  out.prob_plus = b_plus.squaredNorm();
  out.prob_minus = b_minus.squaredNorm();
  auto residual = [](const CVector& branch) {
    if (branch.norm() < 1e-15) return 0.0;
    RVector sv = schmidt_coefficients(StateVector(CVector(branch / branch.norm())), 8, 2);
    return sv.size() > 1 ? sv(1) : 0.0;
  };
  out.schmidt_residual_plus = residual(b_plus);
  out.schmidt_residual_minus = residual(b_minus);
  return out;
}

// --- error channels ---

KrausChannel bitflip3_channel(double px) {
  if (px < 0.0 || px > 1.0 / 3.0)
    throw InvariantError("bitflip3 channel requires 0 <= p <= 1/3");
  std::vector<Operator> ops;
  ops.emplace_back(CMatrix(std::sqrt(1.0 - 3.0 * px) * CMatrix::Identity(8, 8)));
  for (int q = 1; q <= 3; ++q)
    ops.emplace_back(CMatrix(std::sqrt(px) * embed_qubit_op(pauli_x(), q, 3).m));
  return KrausChannel::make(std::move(ops), {"I", "X1", "X2", "X3"});
}

KrausChannel amp_damp_channel(double p_minus) {
  if (p_minus < 0.0 || p_minus > 1.0)
    throw InvariantError("jump probability must lie in [0,1]");
  CMatrix k0 = CMatrix::Zero(2, 2);
  k0(0, 0) = 1.0;
  k0(1, 1) = std::sqrt(1.0 - p_minus);
  CMatrix km = CMatrix::Zero(2, 2);
  km(0, 1) = std::sqrt(p_minus);
  return KrausChannel::make({Operator(std::move(k0)), Operator(std::move(km))},
                            {"no-jump", "decay"});
}

KrausChannel product_amp_damp(int n_qubits, double p_minus) {
  KrausChannel single = amp_damp_channel(p_minus);
  std::vector<Operator> ops{Operator::identity(1)};
  std::vector<std::string> labels{""};
  for (int q = 0; q < n_qubits; ++q) {
    std::vector<Operator> next;
    std::vector<std::string> next_labels;
    for (std::size_t i = 0; i < ops.size(); ++i)
      for (std::size_t j = 0; j < single.ops.size(); ++j) {
        next.push_back(tensor(ops[i], single.ops[j]));
        next_labels.push_back(labels[i] + (j == 0 ? "0" : "-"));
      }
    ops = std::move(next);
    labels = std::move(next_labels);
  }
  return KrausChannel::make(std::move(ops), std::move(labels));
}

// --- Leung et al. 4-qubit code ---

CodeSpace leung4_code() {
  auto b = [](int i) { return StateVector::basis(16, i); };
  CVector w0 = (b(0b0000).v + b(0b1111).v) / std::sqrt(2.0);
  CVector w1 = (b(0b1100).v + b(0b0011).v) / std::sqrt(2.0);
  std::vector<Operator> stab;
  stab.emplace_back(CMatrix(embed_qubit_op(pauli_z(), 1, 4).m *
                            embed_qubit_op(pauli_z(), 2, 4).m));
  stab.emplace_back(CMatrix(embed_qubit_op(pauli_z(), 3, 4).m *
                            embed_qubit_op(pauli_z(), 4, 4).m));
  CMatrix xxxx = CMatrix::Identity(16, 16);
  for (int q = 1; q <= 4; ++q) xxxx = embed_qubit_op(pauli_x(), q, 4).m * xxxx;
  stab.emplace_back(std::move(xxxx));
  return CodeSpace::make(StateVector(std::move(w0)), StateVector(std::move(w1)),
                         std::move(stab));
}

KrausChannel leung4_error_set(double p_minus) {
  if (p_minus < 0.0 || p_minus >= 0.5)
    throw InvariantError("leung4 error set is a first-order model; p- must be < 0.5");
  KrausChannel single = amp_damp_channel(p_minus);
  const Operator& k0 = single.ops[0];
  const Operator& km = single.ops[1];
  std::vector<Operator> ops;
  std::vector<std::string> labels;
  // E0: no qubit decays
  Operator e0 = Operator::identity(1);
  for (int q = 0; q < 4; ++q) e0 = tensor(e0, k0);
  ops.push_back(std::move(e0));
  labels.emplace_back("no-jump");
  for (int d = 1; d <= 4; ++d) {
    Operator e = Operator::identity(1);
    for (int q = 1; q <= 4; ++q) e = tensor(e, q == d ? km : k0);
    ops.push_back(std::move(e));
    labels.push_back("decay" + std::to_string(d));
  }
  return KrausChannel::make_error_set(std::move(ops), std::move(labels));
}

RecoveryChannel leung4_first_order_recovery(double p_minus) {
  return build_recovery(leung4_code(), leung4_error_set(p_minus),
                        /*allow_approximate=*/true);
}

}  // namespace qecw::qubit
