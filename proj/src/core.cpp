#include "qecw/core.hpp"

#include <algorithm>
#include <cmath>

#include <nlohmann/json.hpp>

namespace qecw {

namespace {

void require_finite(const CMatrix& m) {
  if (!m.allFinite()) throw InvariantError("operator entries must be finite");
}

}  // namespace

Operator::Operator(CMatrix mat) : m(std::move(mat)) {
  if (m.rows() != m.cols()) throw DimensionError("operator must be square");
  if (m.rows() < 1) throw DimensionError("operator dimension must be >= 1");
  require_finite(m);
}

bool Operator::is_hermitian(double tol) const {
  return (m - m.adjoint()).cwiseAbs().maxCoeff() < tol;
}

bool Operator::is_unitary(double tol) const {
  CMatrix d = m.adjoint() * m - CMatrix::Identity(m.rows(), m.cols());
  return d.cwiseAbs().maxCoeff() < tol;
}

bool Operator::is_projector(double tol) const {
  return is_hermitian(tol) && (m * m - m).cwiseAbs().maxCoeff() < tol;
}

Operator Operator::identity(int d) { return Operator(CMatrix::Identity(d, d)); }
Operator Operator::zero(int d) { return Operator(CMatrix::Zero(d, d)); }

StateVector::StateVector(CVector vec) : v(std::move(vec)) {
  if (v.size() < 1) throw DimensionError("state dimension must be >= 1");
  if (!v.allFinite()) throw InvariantError("state amplitudes must be finite");
}

StateVector StateVector::normalized() const {
  double n = v.norm();
  if (n < 1e-300) throw InvariantError("cannot normalize zero state");
  return StateVector(v / n);
}

StateVector StateVector::basis(int d, int index) {
  CVector v = CVector::Zero(d);
  v(index) = 1.0;
  return StateVector(std::move(v));
}

DensityMatrix DensityMatrix::make(CMatrix mat, double tol) {
  if (mat.rows() != mat.cols()) throw DimensionError("density matrix must be square");
  require_finite(mat);
  CMatrix sym = 0.5 * (mat + mat.adjoint());
  if ((mat - sym).cwiseAbs().maxCoeff() > tol)
    throw InvariantError("density matrix not Hermitian within tolerance");
  double tr = sym.trace().real();
  if (std::abs(tr - 1.0) > tol)
    throw InvariantError("density matrix trace differs from 1 beyond tolerance");
  Eigen::SelfAdjointEigenSolver<CMatrix> es(sym, Eigen::EigenvaluesOnly);
  if (es.eigenvalues().minCoeff() < -tol)
    throw InvariantError("density matrix has negative eigenvalue beyond tolerance");
  DensityMatrix rho;
  rho.m = std::move(sym);
  return rho;
}

DensityMatrix DensityMatrix::make_unchecked(CMatrix mat) {
  DensityMatrix rho;
  rho.m = 0.5 * (mat + mat.adjoint());
  return rho;
}

DensityMatrix DensityMatrix::pure(const StateVector& psi) {
  DensityMatrix rho;
  rho.m = psi.v * psi.v.adjoint();
  return rho;
}

DensityMatrix DensityMatrix::maximally_mixed(int d) {
  DensityMatrix rho;
  rho.m = CMatrix::Identity(d, d) / static_cast<double>(d);
  return rho;
}

double KrausChannel::completeness_defect() const {
  CMatrix s = CMatrix::Zero(dim, dim);
  for (const auto& k : ops) s += k.m.adjoint() * k.m;
  s -= CMatrix::Identity(dim, dim);
  return s.cwiseAbs().maxCoeff();
}

KrausChannel KrausChannel::make(std::vector<Operator> ops,
                                std::vector<std::string> labels, double tol) {
  if (ops.empty()) throw DimensionError("channel needs at least one Kraus op");
  KrausChannel ch;
  ch.dim = ops.front().dim();
  for (const auto& k : ops)
    if (k.dim() != ch.dim) throw DimensionError("Kraus op dimension mismatch");
  if (labels.empty()) labels.resize(ops.size());
  if (labels.size() != ops.size())
    throw DimensionError("one label per Kraus op required");
  ch.ops = std::move(ops);
  ch.labels = std::move(labels);
  ch.declared_defect = tol;
  double defect = ch.completeness_defect();
  if (defect > tol)
    throw InvariantError("Kraus channel completeness defect " +
                         std::to_string(defect) + " exceeds tolerance");
  return ch;
}

KrausChannel KrausChannel::make_error_set(std::vector<Operator> ops,
                                          std::vector<std::string> labels) {
  if (ops.empty()) throw DimensionError("error set needs at least one op");
  KrausChannel ch;
  ch.dim = ops.front().dim();
  for (const auto& k : ops)
    if (k.dim() != ch.dim) throw DimensionError("Kraus op dimension mismatch");
  if (labels.empty()) labels.resize(ops.size());
  ch.ops = std::move(ops);
  ch.labels = std::move(labels);
  ch.declared_defect = ch.completeness_defect() * 1.0001 + 1e-15;
  return ch;
}

Operator tensor(const Operator& a, const Operator& b) {
  const int da = a.dim(), db = b.dim();
  CMatrix out(da * db, da * db);
  for (int i = 0; i < da; ++i)
    for (int j = 0; j < da; ++j)
      out.block(i * db, j * db, db, db) = a.m(i, j) * b.m;
  return Operator(std::move(out));
}

StateVector tensor(const StateVector& a, const StateVector& b) {
  const int da = a.dim(), db = b.dim();
  CVector out(da * db);
  for (int i = 0; i < da; ++i) out.segment(i * db, db) = a.v(i) * b.v;
  return StateVector(std::move(out));
}

DensityMatrix apply_channel(const KrausChannel& ch, const DensityMatrix& rho) {
  if (ch.dim != rho.dim()) throw DimensionError("channel/state dimension mismatch");
  if (ch.completeness_defect() > ch.declared_defect * 1.01 + 1e-15)
    throw InvariantError("channel violates its declared trace-preservation bound");
  CMatrix out = CMatrix::Zero(ch.dim, ch.dim);
  for (const auto& k : ch.ops) out += k.m * rho.m * k.m.adjoint();
  // symmetrize roundoff
  return DensityMatrix::make_unchecked(std::move(out));
}

KrausChannel compose(const KrausChannel& n2, const KrausChannel& n1) {
  if (n1.dim != n2.dim) throw DimensionError("channel dimension mismatch");
  std::vector<Operator> ops;
  std::vector<std::string> labels;
  ops.reserve(n1.ops.size() * n2.ops.size());
  for (std::size_t i = 0; i < n2.ops.size(); ++i)
    for (std::size_t j = 0; j < n1.ops.size(); ++j) {
      ops.emplace_back(CMatrix(n2.ops[i].m * n1.ops[j].m));
      labels.push_back(n2.labels[i] + "*" + n1.labels[j]);
    }
  KrausChannel ch;
  ch.dim = n1.dim;
  ch.ops = std::move(ops);
  ch.labels = std::move(labels);
  ch.declared_defect = n1.declared_defect + n2.declared_defect + 1e-14;
  return ch;
}

MeasureResult measure_projector(const Operator& p, const StateVector& psi,
                                Rng& rng, double tol) {
  if (p.dim() != psi.dim()) throw DimensionError("projector/state dimension mismatch");
  if (!p.is_projector(tol)) throw InvariantError("operator is not a projector");
  CVector proj = p.m * psi.v;
  double prob = proj.squaredNorm();
  prob = std::clamp(prob, 0.0, 1.0);
  MeasureResult r;
  r.prob_one = prob;
  int outcome = rng.uniform() < prob ? 1 : 0;
  // Reject zero-probability branches that sampling can never legitimately hit.
  if (outcome == 1 && prob < 1e-300) outcome = 0;
  if (outcome == 0 && 1.0 - prob < 1e-300) outcome = 1;
  r.outcome = outcome;
  CVector post = outcome ? proj : (psi.v - proj).eval();
  r.post = StateVector(std::move(post)).normalized();
  return r;
}

double fidelity(const DensityMatrix& rho, const StateVector& psi) {
  if (rho.dim() != psi.dim()) throw DimensionError("fidelity dimension mismatch");
  return std::real(psi.v.dot(rho.m * psi.v));
}

namespace {

// Extends `have` (orthonormal) to a full orthonormal basis, drawing new
// directions from the canonical basis in index order.
std::vector<CVector> complete_basis(int dim, std::vector<CVector> have) {
  for (int j = 0; j < dim && static_cast<int>(have.size()) < dim; ++j) {
    CVector cand = CVector::Zero(dim);
    cand(j) = 1.0;
    for (const auto& u : have) cand -= u.dot(cand) * u;
    double n = cand.norm();
    if (n > 1e-7) have.push_back(cand / n);
  }
  if (static_cast<int>(have.size()) != dim)
    throw InvariantError("basis completion failed");
  return have;
}

}  // namespace

Operator unitary_rotation_from_basis_pairs(
    int dim, const std::vector<std::pair<StateVector, StateVector>>& pairs) {
  std::vector<CVector> sources, targets;
  for (const auto& [s, t] : pairs) {
    if (s.dim() != dim || t.dim() != dim)
      throw DimensionError("pair dimension mismatch");
    sources.push_back(s.v);
    targets.push_back(t.v);
  }
  auto check_orthonormal = [](const std::vector<CVector>& vs) {
    for (std::size_t i = 0; i < vs.size(); ++i)
      for (std::size_t j = 0; j <= i; ++j) {
        Complex g = vs[i].dot(vs[j]);
        double want = i == j ? 1.0 : 0.0;
        if (std::abs(g - want) > 1e-8)
          throw InvariantError("basis pairs are not orthonormal");
      }
  };
  check_orthonormal(sources);
  check_orthonormal(targets);
  auto full_src = complete_basis(dim, sources);
  auto full_tgt = complete_basis(dim, targets);
  CMatrix u = CMatrix::Zero(dim, dim);
  for (int k = 0; k < dim; ++k) u += full_tgt[k] * full_src[k].adjoint();
  return Operator(std::move(u));
}

Operator expm_i_hermitian(const Operator& h) {
  if (!h.is_hermitian(1e-8))
    throw InvariantError("expm_i_hermitian requires a Hermitian generator");
  Eigen::SelfAdjointEigenSolver<CMatrix> es(0.5 * (h.m + h.m.adjoint()));
  CVector phases(h.dim());
  for (int i = 0; i < h.dim(); ++i)
    phases(i) = std::exp(Complex(0.0, es.eigenvalues()(i)));
  CMatrix out = es.eigenvectors() * phases.asDiagonal() *
                es.eigenvectors().adjoint();
  return Operator(std::move(out));
}

double trace_distance(const DensityMatrix& a, const DensityMatrix& b) {
  if (a.dim() != b.dim()) throw DimensionError("trace distance dimension mismatch");
  Eigen::SelfAdjointEigenSolver<CMatrix> es(a.m - b.m, Eigen::EigenvaluesOnly);
  return 0.5 * es.eigenvalues().cwiseAbs().sum();
}

DensityMatrix partial_trace_last(const DensityMatrix& rho, int dim_a,
                                 int dim_b) {
  if (rho.dim() != dim_a * dim_b)
    throw DimensionError("partial trace dimensions do not factor the state");
  CMatrix out = CMatrix::Zero(dim_a, dim_a);
  for (int i = 0; i < dim_a; ++i)
    for (int j = 0; j < dim_a; ++j)
      for (int k = 0; k < dim_b; ++k) out(i, j) += rho.m(i * dim_b + k, j * dim_b + k);
  return DensityMatrix::make_unchecked(std::move(out));
}

RVector schmidt_coefficients(const StateVector& psi, int dim_a, int dim_b) {
  if (psi.dim() != dim_a * dim_b)
    throw DimensionError("Schmidt cut does not factor the state");
  CMatrix m(dim_a, dim_b);
  for (int i = 0; i < dim_a; ++i)
    for (int k = 0; k < dim_b; ++k) m(i, k) = psi.v(i * dim_b + k);
  Eigen::JacobiSVD<CMatrix> svd(m);
  return svd.singularValues();
}

Operator pauli_x() {
  CMatrix m(2, 2);
  m << 0, 1, 1, 0;
  return Operator(std::move(m));
}

Operator pauli_y() {
  CMatrix m(2, 2);
  m << Complex(0, 0), Complex(0, -1), Complex(0, 1), Complex(0, 0);
  return Operator(std::move(m));
}

Operator pauli_z() {
  CMatrix m(2, 2);
  m << 1, 0, 0, -1;
  return Operator(std::move(m));
}

Operator hadamard() {
  CMatrix m(2, 2);
  m << 1, 1, 1, -1;
  return Operator(CMatrix(m / std::sqrt(2.0)));
}

Operator sigma_minus() {
  CMatrix m = CMatrix::Zero(2, 2);
  m(0, 1) = 1.0;
  return Operator(std::move(m));
}

Operator embed_qubit_op(const Operator& op, int qubit, int n_qubits) {
  if (qubit < 1 || qubit > n_qubits) throw DimensionError("qubit index out of range");
  Operator out = Operator::identity(1);
  for (int q = 1; q <= n_qubits; ++q)
    out = tensor(out, q == qubit ? op : Operator::identity(2));
  return out;
}

namespace {

Operator controlled(const std::vector<int>& controls, int target, int n_qubits,
                    const Operator& gate) {
  const int dim = 1 << n_qubits;
  CMatrix m = CMatrix::Zero(dim, dim);
  for (int b = 0; b < dim; ++b) {
    bool fire = true;
    for (int c : controls)
      if (((b >> (n_qubits - c)) & 1) == 0) fire = false;
    if (!fire) {
      m(b, b) += 1.0;
      continue;
    }
    int tbit = n_qubits - target;
    int tval = (b >> tbit) & 1;
    for (int t2 = 0; t2 < 2; ++t2) {
      int b2 = (b & ~(1 << tbit)) | (t2 << tbit);
      m(b2, b) += gate.m(t2, tval);
    }
  }
  return Operator(std::move(m));
}

}  // namespace

Operator cnot(int control, int target, int n_qubits) {
  return controlled({control}, target, n_qubits, pauli_x());
}

Operator toffoli(int control1, int control2, int target, int n_qubits) {
  return controlled({control1, control2}, target, n_qubits, pauli_x());
}

namespace {

nlohmann::json matrix_to_json_parts(const CMatrix& m) {
  nlohmann::json re = nlohmann::json::array(), im = nlohmann::json::array();
  for (int i = 0; i < m.rows(); ++i) {
    nlohmann::json rrow = nlohmann::json::array(), irow = nlohmann::json::array();
    for (int j = 0; j < m.cols(); ++j) {
      rrow.push_back(m(i, j).real());
      irow.push_back(m(i, j).imag());
    }
    re.push_back(std::move(rrow));
    im.push_back(std::move(irow));
  }
  return nlohmann::json{{"re", std::move(re)}, {"im", std::move(im)}};
}

}  // namespace

std::string operator_to_json(const Operator& op) {
  nlohmann::json j = matrix_to_json_parts(op.m);
  j["dim"] = op.dim();
  return j.dump();
}

Operator operator_from_json(const std::string& text) {
  nlohmann::json j = nlohmann::json::parse(text);
  int d = j.at("dim").get<int>();
  CMatrix m(d, d);
  const auto& re = j.at("re");
  const auto& im = j.at("im");
  if (static_cast<int>(re.size()) != d || static_cast<int>(im.size()) != d)
    throw DimensionError("operator JSON row count mismatch");
  for (int i = 0; i < d; ++i)
    for (int k = 0; k < d; ++k)
      m(i, k) = Complex(re[i][k].get<double>(), im[i][k].get<double>());
  return Operator(std::move(m));
}

std::string state_to_json(const StateVector& psi) {
  nlohmann::json re = nlohmann::json::array(), im = nlohmann::json::array();
  for (int i = 0; i < psi.dim(); ++i) {
    re.push_back(psi.v(i).real());
    im.push_back(psi.v(i).imag());
  }
  nlohmann::json j{{"dim", psi.dim()}, {"re", std::move(re)}, {"im", std::move(im)}};
  return j.dump();
}

StateVector state_from_json(const std::string& text) {
  nlohmann::json j = nlohmann::json::parse(text);
  int d = j.at("dim").get<int>();
  CVector v(d);
  for (int i = 0; i < d; ++i)
    v(i) = Complex(j.at("re")[i].get<double>(), j.at("im")[i].get<double>());
  return StateVector(std::move(v));
}

}  // namespace qecw
