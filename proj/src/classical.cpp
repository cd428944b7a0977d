#include "qecw/classical.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace qecw::classical {

namespace {

double binomial_coeff(int n, int k) {
  if (k < 0 || k > n) return 0.0;
  double c = 1.0;
  for (int i = 0; i < k; ++i) c = c * (n - i) / (i + 1);
  return std::round(c);
}

void check_prob(double p, const char* name) {
  if (p < 0.0 || p > 1.0)
    throw std::invalid_argument(std::string(name) + " must lie in [0,1]");
}

}  // namespace

ParityProbs parity_detect_probs(int m, double eps) {
  if (m < 1) throw std::invalid_argument("block size m must be >= 1");
  check_prob(eps, "eps");
  const int n = m + 1;
  ParityProbs out;
  out.p0 = std::pow(1.0 - eps, n);
  out.p1 = n * eps * std::pow(1.0 - eps, n - 1);
  out.p2 = binomial_coeff(n, 2) * eps * eps * std::pow(1.0 - eps, n - 2);
  return out;
}

double repetition_logical_error(int m, double eps) {
  if (m < 1) throw std::invalid_argument("half-width m must be >= 1");
  check_prob(eps, "eps");
  const int n = 2 * m + 1;
  double sum = 0.0;
  for (int k = m + 1; k <= n; ++k)
    sum += binomial_coeff(n, k) * std::pow(eps, k) * std::pow(1.0 - eps, n - k);
  return sum;
}

double repetition_break_even(int m, double tol) {
  double lo = 0.1, hi = 0.9;
  auto f = [m](double e) { return repetition_logical_error(m, e) - e; };
  for (int iter = 0; iter < 200 && hi - lo > tol; ++iter) {
    double mid = 0.5 * (lo + hi);
    if (f(mid) < 0.0)
      lo = mid;
    else
      hi = mid;
  }
  return 0.5 * (lo + hi);
}

double repetition_transition_width(int m) {
  if (m < 1) throw std::invalid_argument("half-width m must be >= 1");
  return std::sqrt(0.25 / (2.0 * m + 1.0));
}

bool redundancy_bound_ok(long long m_data, int r_ancilla) {
  if (m_data < 0 || r_ancilla < 0)
    throw std::invalid_argument("bit counts must be non-negative");
  if (r_ancilla >= 62) return true;
  return (1LL << r_ancilla) >= m_data + r_ancilla + 1;
}

ShannonResult shannon_redundancy(double n_bits, double eps) {
  check_prob(eps, "eps");
  double h = 0.0;
  if (eps > 0.0 && eps < 1.0)
    h = -(eps * std::log2(eps) + (1.0 - eps) * std::log2(1.0 - eps));
  ShannonResult out;
  out.entropy_bits = n_bits * h;
  out.rate_exact = 1.0 - h;
  out.rate_small_eps = eps > 0.0 ? 1.0 - eps * std::log2(2.0 / eps) : 1.0;
  return out;
}

// --- GF(2) ---

BinaryMatrix::BinaryMatrix(int rows, int cols) : rows_(rows), cols_(cols) {
  if (rows < 1 || cols < 1) throw std::invalid_argument("empty binary matrix");
  words_.assign(rows, std::vector<std::uint64_t>((cols + 63) / 64, 0));
}

int BinaryMatrix::get(int r, int c) const {
  return static_cast<int>((words_[r][c / 64] >> (c % 64)) & 1u);
}

void BinaryMatrix::set(int r, int c, int value) {
  if (value)
    words_[r][c / 64] |= (std::uint64_t{1} << (c % 64));
  else
    words_[r][c / 64] &= ~(std::uint64_t{1} << (c % 64));
}

void BinaryMatrix::xor_row_into(int src, int dst) {
  for (std::size_t w = 0; w < words_[dst].size(); ++w)
    words_[dst][w] ^= words_[src][w];
}

int BinaryMatrix::rank() const {
  BinaryMatrix work = *this;
  int rank = 0;
  for (int c = 0; c < cols_ && rank < rows_; ++c) {
    int pivot = -1;
    for (int r = rank; r < rows_; ++r)
      if (work.get(r, c)) {
        pivot = r;
        break;
      }
    if (pivot < 0) continue;
    std::swap(work.words_[rank], work.words_[pivot]);
    for (int r = 0; r < rows_; ++r)
      if (r != rank && work.get(r, c)) work.xor_row_into(rank, r);
    ++rank;
  }
  return rank;
}

// --- Hamming [7,4,3]: bit positions 1..7, parity bits at 1,2,4, data at
// 3,5,6,7; column k of H is the binary representation of k. ---

std::array<int, 7> hamming_encode(const std::array<int, 4>& data) {
  std::array<int, 7> w{};
  w[2] = data[0] & 1;
  w[4] = data[1] & 1;
  w[5] = data[2] & 1;
  w[6] = data[3] & 1;
  w[0] = w[2] ^ w[4] ^ w[6];          // P1 covers positions 3,5,7
  w[1] = w[2] ^ w[5] ^ w[6];          // P2 covers positions 3,6,7
  w[3] = w[4] ^ w[5] ^ w[6];          // P3 covers positions 5,6,7
  return w;
}

HammingDecode hamming_decode(const std::array<int, 7>& word) {
  std::array<int, 7> w = word;
  int p1 = 0, p2 = 0, p3 = 0;
  for (int pos = 1; pos <= 7; ++pos) {
    if (!(w[pos - 1] & 1)) continue;
    p1 ^= pos & 1;
    p2 ^= (pos >> 1) & 1;
    p3 ^= (pos >> 2) & 1;
  }
  HammingDecode out;
  out.syndrome = {p1, p2, p3};
  out.corrected_position = p1 + 2 * p2 + 4 * p3;
  if (out.corrected_position != 0) w[out.corrected_position - 1] ^= 1;
  out.data = {w[2], w[4], w[5], w[6]};
  return out;
}

BinaryCode hamming_code() {
  BinaryCode code;
  code.n = 7;
  code.k = 4;
  code.d = 3;
  code.h = BinaryMatrix(3, 7);
  for (int pos = 1; pos <= 7; ++pos) {
    if (pos & 1) code.h.set(0, pos - 1, 1);
    if ((pos >> 1) & 1) code.h.set(1, pos - 1, 1);
    if ((pos >> 2) & 1) code.h.set(2, pos - 1, 1);
  }
  for (int d = 0; d < 16; ++d) {
    std::array<int, 4> bits{(d >> 3) & 1, (d >> 2) & 1, (d >> 1) & 1, d & 1};
    auto w = hamming_encode(bits);
    code.codewords.emplace_back(w.begin(), w.end());
  }
  return code;
}

// --- TMR ---

TmrReliability tmr_reliability(TmrKind kind, const NoiseParams& np) {
  check_prob(np.eps_m, "eps_M");
  const double r_m = 1.0 - np.eps_m;
  double r0, quad;
  if (kind == TmrKind::memory) {
    if (np.kappa < 0.0 || np.t0 < 0.0)
      throw std::invalid_argument("kappa and t0 must be non-negative");
    r0 = 0.5 * (1.0 + std::exp(-2.0 * np.kappa * np.t0));
    const double eps = 1.0 - r0;
    quad = 1.0 - 3.0 * (eps + np.eps_m) * (eps + np.eps_m);
  } else {
    check_prob(np.eps, "eps");
    r0 = 1.0 - np.eps;
    quad = 1.0 - 3.0 * (2.0 * np.eps_m + np.eps) * (2.0 * np.eps_m + np.eps);
  }
  TmrReliability out;
  out.r_single = r0;
  out.r_m0 = kind == TmrKind::memory ? r_m * r0 : r_m * r_m * r0;
  out.exact = out.r_m0 * out.r_m0 * (3.0 - 2.0 * out.r_m0);
  out.quadratic_approx = quad;
  return out;
}

std::vector<double> tmr_memory_crossings(double r_m, double kt_max) {
  auto diff = [r_m](double kt) {
    NoiseParams np;
    np.eps_m = 1.0 - r_m;
    np.kappa = 1.0;
    np.t0 = kt;
    auto r = tmr_reliability(TmrKind::memory, np);
    return r.exact - r.r_single;
  };
  std::vector<double> roots;
  const int grid = 4000;
  double prev = diff(1e-9);
  for (int i = 1; i <= grid; ++i) {
    double kt = kt_max * i / grid;
    double cur = diff(kt);
    if ((prev < 0.0) != (cur < 0.0)) {
      double lo = kt_max * (i - 1) / static_cast<double>(grid), hi = kt;
      for (int it = 0; it < 80; ++it) {
        double mid = 0.5 * (lo + hi);
        if ((diff(mid) < 0.0) == (diff(lo) < 0.0))
          lo = mid;
        else
          hi = mid;
      }
      roots.push_back(0.5 * (lo + hi));
    }
    prev = cur;
  }
  return roots;
}

double kappa_eff_ratio(double eps, double eps_m) {
  if (eps <= 0.0) throw std::invalid_argument("eps must be positive");
  return 3.0 * (eps + 2.0 * eps_m + eps_m * eps_m / eps);
}

TmrOptimum tmr_memory_optimize(double eps_m, double kappa) {
  check_prob(eps_m, "eps_M");
  TmrOptimum out;
  out.degenerate_limit = eps_m == 0.0;
  out.eps_opt = eps_m;
  out.t0_opt = kappa > 0.0 ? eps_m / kappa : 0.0;
  out.kappa_eff_ratio = 12.0 * eps_m;
  out.gain = eps_m > 0.0 ? 1.0 / (12.0 * eps_m)
                         : std::numeric_limits<double>::infinity();
  return out;
}

double nand_gain(double eps, double eps_m) {
  check_prob(eps, "eps");
  check_prob(eps_m, "eps_M");
  const double denom = 3.0 * (2.0 * eps_m + eps) * (2.0 * eps_m + eps);
  if (denom <= 0.0) throw std::invalid_argument("gain denominator vanishes");
  return eps / denom;
}

RecursionFlow recursion_flow(const RecursionParams& rp, int n_phys) {
  if (rp.c_n <= 0.0) throw std::invalid_argument("c_n must be positive");
  if (rp.lambda < 0.0 || rp.lambda >= 1.0)
    throw std::invalid_argument("lambda must lie in [0,1)");
  if (rp.levels < 0) throw std::invalid_argument("levels must be >= 0");
  RecursionFlow out;
  out.threshold = (1.0 - rp.lambda) / rp.c_n;
  out.linear_crossover_level = -1;
  double eps = rp.eps0;
  for (int j = 0; j <= rp.levels; ++j) {
    RecursionLevel lv;
    lv.level = j;
    lv.eps = eps;
    lv.hardware = std::pow(static_cast<double>(n_phys), j);
    lv.gain_log10 = eps > 0.0 ? std::log10(rp.eps0 / eps) : 0.0;
    out.levels.push_back(lv);
    if (out.linear_crossover_level < 0 && rp.lambda > 0.0 &&
        eps < rp.lambda / rp.c_n)
      out.linear_crossover_level = j;
    eps = rp.lambda * eps + rp.c_n * eps * eps;
  }
  return out;
}

TmrCycleStats simulate_tmr_memory(const NoiseParams& np, int cycles,
                                  long trials, std::uint64_t seed) {
  if (trials < 1) throw std::invalid_argument("trials must be >= 1");
  check_prob(np.eps_m, "eps_M");
  const double eps = 0.5 * (1.0 - std::exp(-2.0 * np.kappa * np.t0));
  std::vector<long> correctable(cycles, 0), logical(cycles, 0);
  for (long t = 0; t < trials; ++t) {
    Rng rng = Rng::stream(seed, static_cast<std::uint64_t>(t));
    int bits[3] = {0, 0, 0};  // intended value is 0
    for (int c = 0; c < cycles; ++c) {
      // perfect majority vote, then independent voter-output flips
      int maj = bits[0] + bits[1] + bits[2] >= 2 ? 1 : 0;
      for (int b = 0; b < 3; ++b) {
        bits[b] = maj;
        if (rng.bernoulli(np.eps_m)) bits[b] ^= 1;
      }
      // memory wait
      for (int b = 0; b < 3; ++b)
        if (rng.bernoulli(eps)) bits[b] ^= 1;
      int wrong = bits[0] + bits[1] + bits[2];
      if (wrong <= 1) ++correctable[c];
      if (wrong >= 2) ++logical[c];
    }
  }
  TmrCycleStats out;
  for (int c = 0; c < cycles; ++c) {
    out.in_correctable.push_back(static_cast<double>(correctable[c]) / trials);
    out.logical_error.push_back(static_cast<double>(logical[c]) / trials);
  }
  return out;
}

double simulate_nand_bundle(double eps, double eps_m, long trials,
                            std::uint64_t seed) {
  if (trials < 1) throw std::invalid_argument("trials must be >= 1");
  check_prob(eps, "eps");
  check_prob(eps_m, "eps_M");
  long failures = 0;
  for (long t = 0; t < trials; ++t) {
    Rng rng = Rng::stream(seed, static_cast<std::uint64_t>(t));
    int bad_lines = 0;
    for (int line = 0; line < 3; ++line) {
      bool voter_a = rng.bernoulli(eps_m);
      bool voter_b = rng.bernoulli(eps_m);
      bool nand_fail = rng.bernoulli(eps);  // failed NAND outputs the complement
      if (voter_a || voter_b || nand_fail) ++bad_lines;
    }
    if (bad_lines >= 2) ++failures;
  }
  return static_cast<double>(failures) / static_cast<double>(trials);
}

}  // namespace qecw::classical
