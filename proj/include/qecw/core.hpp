#pragma once

#include <Eigen/Dense>

#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

// Dense complex linear algebra for small Hilbert spaces: states, operators,
// density matrices, Kraus channels and the generic machinery (tensor
// products, projective measurement, channel application) shared by every
// code family in the workbench.
namespace qecw {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RMatrix = Eigen::MatrixXd;
using RVector = Eigen::VectorXd;

inline constexpr double kTolExact = 1e-10;  // exact finite-dim identities
inline constexpr double kTolFock = 1e-6;    // truncated-Fock identities

struct DimensionError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Numeric guard violations: truncation leakage, tolerance breaches.
struct GuardError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct InvariantError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Deterministic counter-free PRNG (splitmix64).  Monte Carlo trial i always
// draws from Rng::stream(seed, i), so results do not depend on scheduling.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  static Rng stream(std::uint64_t seed, std::uint64_t index) {
    Rng r(seed ^ (0x9e3779b97f4a7c15ULL * (index + 1)));
    r.next();
    r.next();
    return r;
  }

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // Uniform double in [0,1) with 53 random bits.
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  bool bernoulli(double p) { return uniform() < p; }

 private:
  std::uint64_t state_;
};

struct Operator {
  CMatrix m;

  Operator() = default;
  explicit Operator(CMatrix mat);

  int dim() const { return static_cast<int>(m.rows()); }
  Operator dagger() const { return Operator(m.adjoint()); }

  bool is_hermitian(double tol = kTolExact) const;
  bool is_unitary(double tol = kTolExact) const;
  bool is_projector(double tol = kTolExact) const;

  static Operator identity(int d);
  static Operator zero(int d);
};

struct StateVector {
  CVector v;

  StateVector() = default;
  explicit StateVector(CVector vec);

  int dim() const { return static_cast<int>(v.size()); }
  double norm() const { return v.norm(); }
  StateVector normalized() const;

  static StateVector basis(int d, int index);
};

struct DensityMatrix {
  CMatrix m;

  DensityMatrix() = default;

  int dim() const { return static_cast<int>(m.rows()); }
  double trace() const { return m.trace().real(); }

  // Validates Hermiticity, unit trace and positive semidefiniteness.
  static DensityMatrix make(CMatrix mat, double tol = kTolExact);
  // Symmetrizes but skips the eigenvalue check (hot paths with known input).
  static DensityMatrix make_unchecked(CMatrix mat);
  static DensityMatrix pure(const StateVector& psi);
  static DensityMatrix maximally_mixed(int d);
};

struct KrausChannel {
  int dim = 0;
  std::vector<Operator> ops;
  std::vector<std::string> labels;
  // Declared bound on ||sum K^dag K - I||_max.  1e-9 for exact channels,
  // the computed truncation defect for bosonic ones.
  double declared_defect = 1e-9;

  double completeness_defect() const;

  // Verifies the completeness defect against `tol` at construction.
  static KrausChannel make(std::vector<Operator> ops,
                           std::vector<std::string> labels, double tol = 1e-9);
  // For truncated error sets used in Knill-Laflamme analysis where the ops
  // intentionally do not resolve the identity.
  static KrausChannel make_error_set(std::vector<Operator> ops,
                                     std::vector<std::string> labels);
};

// --- generic operations ---

Operator tensor(const Operator& a, const Operator& b);
StateVector tensor(const StateVector& a, const StateVector& b);

DensityMatrix apply_channel(const KrausChannel& ch, const DensityMatrix& rho);

// Composition n2 after n1 as a single Kraus channel.
KrausChannel compose(const KrausChannel& n2, const KrausChannel& n1);

struct MeasureResult {
  int outcome = 0;         // 1 if the projector fired
  StateVector post;        // normalized post-measurement state
  double prob_one = 0.0;   // exact Born probability of outcome 1
};

MeasureResult measure_projector(const Operator& p, const StateVector& psi,
                                Rng& rng, double tol = 1e-8);

double fidelity(const DensityMatrix& rho, const StateVector& psi);

// Unitary with U source_i = target_i; completion on the orthogonal
// complement is deterministic (Gram-Schmidt over the canonical basis on
// both sides, paired in order).
Operator unitary_rotation_from_basis_pairs(
    int dim, const std::vector<std::pair<StateVector, StateVector>>& pairs);

// exp(i H) for Hermitian H via eigendecomposition; exactly unitary.
Operator expm_i_hermitian(const Operator& h);

// Trace distance (1/2)||a - b||_1.
double trace_distance(const DensityMatrix& a, const DensityMatrix& b);

// Partial trace over the trailing (least significant) factor of dimension
// dim_b; input dimension must be dim_a*dim_b.
DensityMatrix partial_trace_last(const DensityMatrix& rho, int dim_a,
                                 int dim_b);

// Singular values of psi reshaped as a dim_a x dim_b matrix (the Schmidt
// coefficients across that cut), descending.
RVector schmidt_coefficients(const StateVector& psi, int dim_a, int dim_b);

// --- multi-qubit operator builders (qubit 1 = most significant factor) ---

Operator pauli_x();
Operator pauli_y();
Operator pauli_z();
Operator hadamard();
Operator sigma_minus();  // |g><e| = |0><1|

// Single-qubit op embedded at 1-based position `qubit` of an n-qubit register.
Operator embed_qubit_op(const Operator& op, int qubit, int n_qubits);
// CNOT with 1-based control/target positions.
Operator cnot(int control, int target, int n_qubits);
// Toffoli (CC-NOT) with 1-based controls/target.
Operator toffoli(int control1, int control2, int target, int n_qubits);

// --- JSON serialization (operator {"dim","re":[[..]],"im":[[..]]},
//     state {"dim","re":[..],"im":[..]}) ---

std::string operator_to_json(const Operator& op);
Operator operator_from_json(const std::string& text);
std::string state_to_json(const StateVector& psi);
StateVector state_from_json(const std::string& text);

}  // namespace qecw
