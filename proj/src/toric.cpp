#include "qecw/toric.hpp"

#include <algorithm>
#include <stdexcept>

#include "qecw/classical.hpp"
#include "qecw/core.hpp"

namespace qecw::toric {

int ToricLattice::bond(int i, int j, int dir) const {
  i = ((i % lx) + lx) % lx;
  j = ((j % ly) + ly) % ly;
  return 2 * (j * lx + i) + dir;
}

ToricLattice ToricLattice::build(int lx, int ly) {
  if (lx < 2 || ly < 2) throw std::invalid_argument("torus needs lx, ly >= 2");
  ToricLattice lat;
  lat.lx = lx;
  lat.ly = ly;
  for (int j = 0; j < ly; ++j)
    for (int i = 0; i < lx; ++i) {
      lat.stars.push_back({lat.bond(i, j, 0), lat.bond(i - 1, j, 0),
                           lat.bond(i, j, 1), lat.bond(i, j - 1, 1)});
      lat.plaquettes.push_back({lat.bond(i, j, 0), lat.bond(i, j + 1, 0),
                                lat.bond(i, j, 1), lat.bond(i + 1, j, 1)});
    }
  // incidence invariant: every bond in exactly 2 stars and 2 plaquettes
  std::vector<int> star_count(lat.n_qubits(), 0), plaq_count(lat.n_qubits(), 0);
  for (const auto& s : lat.stars)
    for (int b : s) ++star_count[b];
  for (const auto& p : lat.plaquettes)
    for (int b : p) ++plaq_count[b];
  for (int b = 0; b < lat.n_qubits(); ++b)
    if (star_count[b] != 2 || plaq_count[b] != 2)
      throw std::logic_error("toric incidence invariant violated");
  return lat;
}

PauliPattern PauliPattern::empty(const ToricLattice& lat) {
  PauliPattern p;
  p.x_support.assign(lat.n_qubits(), 0);
  p.z_support.assign(lat.n_qubits(), 0);
  return p;
}

void PauliPattern::xor_with(const PauliPattern& other) {
  for (std::size_t i = 0; i < x_support.size(); ++i) {
    x_support[i] ^= other.x_support[i];
    z_support[i] ^= other.z_support[i];
  }
}

StabilizerStructure stabilizer_structure(const ToricLattice& lat) {
  StabilizerStructure out;
  // A_s are Z-type and B_p are X-type; commutation is the parity of the
  // shared support, which must be even for every star/plaquette pair.
  out.commutation_ok = true;
  for (const auto& s : lat.stars)
    for (const auto& p : lat.plaquettes) {
      int shared = 0;
      for (int bs : s)
        for (int bp : p)
          if (bs == bp) ++shared;
      if (shared % 2 != 0) out.commutation_ok = false;
    }
  const int n = lat.n_qubits();
  const int rows = static_cast<int>(lat.stars.size() + lat.plaquettes.size());
  classical::BinaryMatrix m(rows, 2 * n);  // symplectic (z|x) layout
  int r = 0;
  for (const auto& s : lat.stars) {
    for (int b : s) m.set(r, b, 1);
    ++r;
  }
  for (const auto& p : lat.plaquettes) {
    for (int b : p) m.set(r, n + b, 1);
    ++r;
  }
  out.independent_count = m.rank();
  out.logical_qubits = n - out.independent_count;
  out.degeneracy = 1L << out.logical_qubits;
  return out;
}

SyndromeResult syndrome(const ToricLattice& lat, const PauliPattern& err) {
  SyndromeResult out;
  for (std::size_t s = 0; s < lat.stars.size(); ++s) {
    int parity = 0;
    for (int b : lat.stars[s]) parity ^= err.x_support[b];
    if (parity) out.star_defects.push_back(static_cast<int>(s));
  }
  for (std::size_t p = 0; p < lat.plaquettes.size(); ++p) {
    int parity = 0;
    for (int b : lat.plaquettes[p]) parity ^= err.z_support[b];
    if (parity) out.plaquette_defects.push_back(static_cast<int>(p));
  }
  return out;
}

namespace {

int torus_dist_1d(int a, int b, int l) {
  int d = std::abs(a - b) % l;
  return std::min(d, l - d);
}

// Steps from a to b along the shorter wrap (ties towards +1), returning the
// per-step direction.
int step_dir(int a, int b, int l) {
  int fwd = ((b - a) % l + l) % l;
  return fwd <= l - fwd ? 1 : -1;
}

struct Pairing {
  std::vector<std::pair<int, int>> pairs;
};

Pairing greedy_pairing(std::vector<int> defects, const ToricLattice& lat) {
  Pairing out;
  auto dist = [&](int a, int b) {
    int ia = a % lat.lx, ja = a / lat.lx;
    int ib = b % lat.lx, jb = b / lat.lx;
    return torus_dist_1d(ia, ib, lat.lx) + torus_dist_1d(ja, jb, lat.ly);
  };
  while (!defects.empty()) {
    int best_a = 0, best_b = 1, best_d = -1;
    for (std::size_t a = 0; a < defects.size(); ++a)
      for (std::size_t b = a + 1; b < defects.size(); ++b) {
        int d = dist(defects[a], defects[b]);
        if (best_d < 0 || d < best_d) {
          best_d = d;
          best_a = static_cast<int>(a);
          best_b = static_cast<int>(b);
        }
      }
    out.pairs.emplace_back(defects[best_a], defects[best_b]);
    defects.erase(defects.begin() + best_b);
    defects.erase(defects.begin() + best_a);
  }
  return out;
}

}  // namespace

PauliPattern greedy_decode(const ToricLattice& lat,
                           const std::vector<int>& star_defects,
                           const std::vector<int>& plaquette_defects) {
  if (star_defects.size() % 2 != 0 || plaquette_defects.size() % 2 != 0)
    throw std::invalid_argument("defect counts must be even");
  PauliPattern corr = PauliPattern::empty(lat);
  // charges: X corrections along primal paths (x first, then y)
  for (auto [a, b] : greedy_pairing(star_defects, lat).pairs) {
    int i = a % lat.lx, j = a / lat.lx;
    const int ib = b % lat.lx, jb = b / lat.lx;
    int dir = step_dir(i, ib, lat.lx);
    while (i != ib) {
      // +x step uses bond(i, j, 0); -x step uses bond(i-1, j, 0)
      corr.x_support[lat.bond(dir > 0 ? i : i - 1, j, 0)] ^= 1;
      i = ((i + dir) % lat.lx + lat.lx) % lat.lx;
    }
    dir = step_dir(j, jb, lat.ly);
    while (j != jb) {
      corr.x_support[lat.bond(i, dir > 0 ? j : j - 1, 1)] ^= 1;
      j = ((j + dir) % lat.ly + lat.ly) % lat.ly;
    }
  }
  // fluxes: Z corrections along dual paths; moving from plaquette (i,j) to
  // (i+1,j) crosses bond v(i+1,j), to (i,j+1) crosses bond h(i,j+1)
  for (auto [a, b] : greedy_pairing(plaquette_defects, lat).pairs) {
    int i = a % lat.lx, j = a / lat.lx;
    const int ib = b % lat.lx, jb = b / lat.lx;
    int dir = step_dir(i, ib, lat.lx);
    while (i != ib) {
      corr.z_support[lat.bond(dir > 0 ? i + 1 : i, j, 1)] ^= 1;
      i = ((i + dir) % lat.lx + lat.lx) % lat.lx;
    }
    dir = step_dir(j, jb, lat.ly);
    while (j != jb) {
      corr.z_support[lat.bond(i, dir > 0 ? j + 1 : j, 0)] ^= 1;
      j = ((j + dir) % lat.ly + lat.ly) % lat.ly;
    }
  }
  return corr;
}

LogicalClass logical_error_check(const ToricLattice& lat,
                                 const PauliPattern& residual) {
  SyndromeResult syn = syndrome(lat, residual);
  if (!syn.star_defects.empty() || !syn.plaquette_defects.empty())
    throw std::invalid_argument("residual pattern still has a syndrome");
  LogicalClass out;
  // X residual: winding parities from overlaps with the two dual
  // non-contractible Z cycles {h(i0, j): j} and {v(i, j0): i}.
  for (int j = 0; j < lat.ly; ++j) out.x_wind_h ^= residual.x_support[lat.bond(0, j, 0)];
  for (int i = 0; i < lat.lx; ++i) out.x_wind_v ^= residual.x_support[lat.bond(i, 0, 1)];
  // Z residual: overlaps with the two primal non-contractible X cycles
  // {h(i, j0): i} and {v(i0, j): j}.
  for (int i = 0; i < lat.lx; ++i) out.z_wind_h ^= residual.z_support[lat.bond(i, 0, 0)];
  for (int j = 0; j < lat.ly; ++j) out.z_wind_v ^= residual.z_support[lat.bond(0, j, 1)];
  out.is_stabilizer =
      !(out.x_wind_h || out.x_wind_v || out.z_wind_h || out.z_wind_v);
  if (out.is_stabilizer) {
    out.label = "I";
  } else {
    std::string l;
    if (out.x_wind_h) l += "X1";
    if (out.x_wind_v) l += std::string(l.empty() ? "" : "*") + "X2";
    if (out.z_wind_h) l += std::string(l.empty() ? "" : "*") + "Z1";
    if (out.z_wind_v) l += std::string(l.empty() ? "" : "*") + "Z2";
    out.label = l;
  }
  return out;
}

MonteCarloResult monte_carlo(const ToricLattice& lat, double p, long trials,
                             std::uint64_t seed) {
  if (p < 0.0 || p > 1.0) throw std::invalid_argument("p must lie in [0,1]");
  if (trials < 1) throw std::invalid_argument("trials must be >= 1");
  long x_fail = 0, z_fail = 0;
  for (long t = 0; t < trials; ++t) {
    Rng rng = Rng::stream(seed, static_cast<std::uint64_t>(t));
    PauliPattern err = PauliPattern::empty(lat);
    for (int b = 0; b < lat.n_qubits(); ++b) {
      if (rng.bernoulli(p)) err.x_support[b] = 1;
      if (rng.bernoulli(p)) err.z_support[b] = 1;
    }
    SyndromeResult syn = syndrome(lat, err);
    PauliPattern corr = greedy_decode(lat, syn.star_defects, syn.plaquette_defects);
    corr.xor_with(err);
    LogicalClass cls = logical_error_check(lat, corr);
    if (cls.x_wind_h || cls.x_wind_v) ++x_fail;
    if (cls.z_wind_h || cls.z_wind_v) ++z_fail;
  }
  MonteCarloResult out;
  out.logical_x_rate = static_cast<double>(x_fail) / trials;
  out.logical_z_rate = static_cast<double>(z_fail) / trials;
  out.trials = trials;
  out.seed = seed;
  return out;
}

}  // namespace qecw::toric
