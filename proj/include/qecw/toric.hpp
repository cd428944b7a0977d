#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

// Kitaev toric code as a GF(2) stabilizer model on a torus: lattice
// construction, stabilizer rank/degeneracy, syndrome extraction for Pauli
// error patterns, a greedy pairing decoder, and logical-class detection via
// winding parities.  All section-5 claims tested here are algebraic, so no
// dense Hilbert space is built.
namespace qecw::toric {

struct ToricLattice {
  int lx = 0, ly = 0;
  // bond qubits: index 2*(j*lx + i) + dir, dir 0 = +x bond at site (i,j),
  // dir 1 = +y bond.
  std::vector<std::array<int, 4>> stars;       // one per site
  std::vector<std::array<int, 4>> plaquettes;  // one per square

  int n_qubits() const { return 2 * lx * ly; }
  int bond(int i, int j, int dir) const;
  int site(int i, int j) const { return j * lx + i; }

  static ToricLattice build(int lx, int ly);
};

struct PauliPattern {
  std::vector<std::uint8_t> x_support;
  std::vector<std::uint8_t> z_support;

  static PauliPattern empty(const ToricLattice& lat);
  void xor_with(const PauliPattern& other);
};

struct StabilizerStructure {
  bool commutation_ok = false;
  int independent_count = 0;
  int logical_qubits = 0;
  long degeneracy = 0;
};

StabilizerStructure stabilizer_structure(const ToricLattice& lat);

struct SyndromeResult {
  std::vector<int> star_defects;       // sites with A_s = -1 ("charges")
  std::vector<int> plaquette_defects;  // squares with B_p = -1 ("fluxes")
};

SyndromeResult syndrome(const ToricLattice& lat, const PauliPattern& err);

// Pairs defects greedily by torus Manhattan distance (ties by lowest index
// pair) and joins each pair along a shortest path; clears every syndrome,
// possibly at the cost of a logical error.
PauliPattern greedy_decode(const ToricLattice& lat,
                           const std::vector<int>& star_defects,
                           const std::vector<int>& plaquette_defects);

struct LogicalClass {
  bool is_stabilizer = false;
  int x_wind_h = 0, x_wind_v = 0;  // winding parities of the X residual
  int z_wind_h = 0, z_wind_v = 0;
  std::string label;  // e.g. "I", "X1", "Z2", "X1*Z1"
};

// Requires the residual pattern to have an empty syndrome.
LogicalClass logical_error_check(const ToricLattice& lat,
                                 const PauliPattern& residual);

struct MonteCarloResult {
  double logical_x_rate = 0;
  double logical_z_rate = 0;
  long trials = 0;
  std::uint64_t seed = 0;
};

// i.i.d. X and Z noise with probability p per qubit, decoded independently.
MonteCarloResult monte_carlo(const ToricLattice& lat, double p, long trials,
                             std::uint64_t seed);

}  // namespace qecw::toric
