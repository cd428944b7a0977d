#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "qecw/core.hpp"

// Classical coding and fault-tolerance analytics: parity checks, repetition
// codes, the [7,4,3] Hamming code, triple-modular-redundancy reliability for
// memory and NAND circuits, the corrected-memory wait-time optimum, and the
// concatenation recursion map.  Each closed-form evaluator has a Monte Carlo
// or exhaustive oracle beside it in the tests.
namespace qecw::classical {

struct NoiseParams {
  double eps = 0.0;    // per-bit flip probability
  double eps_m = 0.0;  // majority-voter failure probability
  double kappa = 0.0;  // memory flip rate (1/time)
  double t0 = 0.0;     // wait time between corrections
};

struct RecursionParams {
  double c_n = 3.0;
  double lambda = 0.0;
  double eps0 = 0.0;
  int levels = 0;
};

struct ParityProbs {
  double p0, p1, p2;
};

// Probabilities of 0, 1, 2 flips among m data bits plus one parity bit.
ParityProbs parity_detect_probs(int m, double eps);

// Exact binomial tail: probability that majority vote over 2m+1 bits fails.
double repetition_logical_error(int m, double eps);

// Root of eps_logical(eps) = eps in (0,1), located by bisection.
double repetition_break_even(int m, double tol = 1e-13);

// Relative transition width sigma/N at eps = 1/2: sqrt(1/4 / (2m+1)).
double repetition_transition_width(int m);

// 2^R >= M + R + 1.
bool redundancy_bound_ok(long long m_data, int r_ancilla);

struct ShannonResult {
  double entropy_bits;     // S = -N [eps log2 eps + (1-eps) log2 (1-eps)]
  double rate_exact;       // 1 - S/N
  double rate_small_eps;   // 1 - eps log2(2/eps)
};

ShannonResult shannon_redundancy(double n_bits, double eps);

// --- GF(2) machinery (64-bit word-packed rows) ---

class BinaryMatrix {
 public:
  BinaryMatrix(int rows, int cols);
  int rows() const { return rows_; }
  int cols() const { return cols_; }
  int get(int r, int c) const;
  void set(int r, int c, int value);
  void xor_row_into(int src, int dst);  // dst ^= src
  int rank() const;                     // Gaussian elimination
  std::vector<std::uint64_t>& row_words(int r) { return words_[r]; }

 private:
  int rows_, cols_;
  std::vector<std::vector<std::uint64_t>> words_;
};

struct BinaryCode {
  int n = 0, k = 0, d = 0;
  BinaryMatrix h{1, 1};                       // (n-k) x n parity checks
  std::vector<std::vector<int>> codewords;    // 2^k bit vectors of length n
};

// --- Hamming [7,4,3] ---

std::array<int, 7> hamming_encode(const std::array<int, 4>& data);

struct HammingDecode {
  std::array<int, 4> data;
  int corrected_position;      // 0 if no correction
  std::array<int, 3> syndrome; // (P1, P2, P3)
};

HammingDecode hamming_decode(const std::array<int, 7>& word);

BinaryCode hamming_code();

// --- triple modular redundancy ---

enum class TmrKind { memory, nand_gate };

struct TmrReliability {
  double exact;             // R = R_M0^3 + 3 R_M0^2 (1 - R_M0)
  double quadratic_approx;  // 1 - 3(eps+eps_M)^2  or  1 - 3(2 eps_M + eps)^2
  double r_m0;
  double r_single;          // unencoded single-unit reliability R_0
};

TmrReliability tmr_reliability(TmrKind kind, const NoiseParams& np);

// kappa*t0 values where the corrected-memory curve crosses the single-bit
// reliability; empty if no crossing is bracketed in (0, kt_max).
std::vector<double> tmr_memory_crossings(double r_m, double kt_max);

struct TmrOptimum {
  double eps_opt;          // = eps_M
  double t0_opt;           // = eps_M / kappa
  double kappa_eff_ratio;  // = 12 eps_M
  double gain;             // = 1 / (12 eps_M)
  bool degenerate_limit;   // eps_M == 0: optimum collapses to t0 -> 0
};

TmrOptimum tmr_memory_optimize(double eps_m, double kappa);

double kappa_eff_ratio(double eps, double eps_m);  // 3(eps + 2eps_M + eps_M^2/eps)

double nand_gain(double eps, double eps_m);

// --- concatenation recursion ---

struct RecursionLevel {
  int level;
  double eps;
  double hardware;    // n^level
  double gain_log10;  // log10 of cumulative gain G^(2^level - 1)
};

struct RecursionFlow {
  std::vector<RecursionLevel> levels;
  double threshold;            // (1 - lambda) / c_n
  int linear_crossover_level;  // first level with eps_j < lambda/c_n; -1 if none
};

RecursionFlow recursion_flow(const RecursionParams& rp, int n_phys = 3);

// --- Monte Carlo ---

struct TmrCycleStats {
  std::vector<double> in_correctable;  // per cycle
  std::vector<double> logical_error;   // per cycle
};

// Perfect-MAJ-then-flip voter model followed by per-bit memory flips with
// eps = (1 - exp(-2 kappa t0))/2, repeated `cycles` times.
TmrCycleStats simulate_tmr_memory(const NoiseParams& np, int cycles,
                                  long trials, std::uint64_t seed);

// Fraction of trials where the NAND output bundle leaves the correctable
// space; component semantics match the series-reliability model
// (a line fails if any of its two voters or its NAND failed).
double simulate_nand_bundle(double eps, double eps_m, long trials,
                            std::uint64_t seed);

}  // namespace qecw::classical
