#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>

#include "qecw/core.hpp"
#include "qecw/toric.hpp"

using namespace qecw::toric;

TEST_CASE("lattice construction and incidence") {
  auto lat22 = ToricLattice::build(2, 2);
  CHECK(lat22.n_qubits() == 8);
  CHECK(lat22.stars.size() == 4);
  CHECK(lat22.plaquettes.size() == 4);
  CHECK(ToricLattice::build(3, 3).n_qubits() == 18);
  CHECK_NOTHROW(ToricLattice::build(2, 3));  // incidence scan runs in build
  CHECK_THROWS(ToricLattice::build(1, 4));
}

TEST_CASE("stabilizer structure: rank, degeneracy, commutation") {
  struct Case {
    int l, rank;
  };
  for (auto c : {Case{2, 6}, Case{3, 16}, Case{4, 30}}) {
    auto lat = ToricLattice::build(c.l, c.l);
    auto s = stabilizer_structure(lat);
    CHECK(s.commutation_ok);
    CHECK(s.independent_count == c.rank);  // 2 L^2 - 2
    CHECK(s.logical_qubits == 2);
    CHECK(s.degeneracy == 4);
  }
  // every star/plaquette pair shares 0 or 2 bonds
  auto lat = ToricLattice::build(3, 4);
  for (const auto& st : lat.stars)
    for (const auto& pl : lat.plaquettes) {
      int shared = 0;
      for (int a : st)
        for (int b : pl)
          if (a == b) ++shared;
      CHECK((shared == 0 || shared == 2));
    }
}

TEST_CASE("syndrome extraction") {
  auto lat = ToricLattice::build(4, 4);
  SUBCASE("single X makes two adjacent charges") {
    PauliPattern err = PauliPattern::empty(lat);
    err.x_support[lat.bond(1, 2, 0)] = 1;  // horizontal bond at (1,2)
    auto syn = syndrome(lat, err);
    CHECK(syn.plaquette_defects.empty());
    REQUIRE(syn.star_defects.size() == 2);
    CHECK(syn.star_defects[0] == lat.site(1, 2));
    CHECK(syn.star_defects[1] == lat.site(2, 2));
  }
  SUBCASE("closed contractible loop has no defects") {
    // boundary of the plaquette at (1,1)
    PauliPattern err = PauliPattern::empty(lat);
    for (int b : lat.plaquettes[lat.site(1, 1)]) err.x_support[b] = 1;
    auto syn = syndrome(lat, err);
    CHECK(syn.star_defects.empty());
  }
  SUBCASE("non-contractible loop: no defects but a logical operator") {
    PauliPattern err = PauliPattern::empty(lat);
    for (int i = 0; i < 4; ++i) err.x_support[lat.bond(i, 1, 0)] = 1;
    auto syn = syndrome(lat, err);
    CHECK(syn.star_defects.empty());
    auto cls = logical_error_check(lat, err);
    CHECK_FALSE(cls.is_stabilizer);
    CHECK(cls.label == "X1");
  }
  SUBCASE("syndrome is linear under pattern XOR") {
    qecw::Rng rng(5);
    PauliPattern e1 = PauliPattern::empty(lat), e2 = PauliPattern::empty(lat);
    for (int b = 0; b < lat.n_qubits(); ++b) {
      e1.x_support[b] = rng.bernoulli(0.3);
      e2.x_support[b] = rng.bernoulli(0.3);
      e1.z_support[b] = rng.bernoulli(0.3);
      e2.z_support[b] = rng.bernoulli(0.3);
    }
    auto s1 = syndrome(lat, e1);
    auto s2 = syndrome(lat, e2);
    PauliPattern sum = e1;
    sum.xor_with(e2);
    auto s12 = syndrome(lat, sum);
    // star defects of the sum = symmetric difference of the defect sets
    std::vector<int> expect;
    for (int s : s1.star_defects)
      if (std::find(s2.star_defects.begin(), s2.star_defects.end(), s) ==
          s2.star_defects.end())
        expect.push_back(s);
    for (int s : s2.star_defects)
      if (std::find(s1.star_defects.begin(), s1.star_defects.end(), s) ==
          s1.star_defects.end())
        expect.push_back(s);
    std::sort(expect.begin(), expect.end());
    CHECK(s12.star_defects == expect);
  }
}

TEST_CASE("greedy decoder") {
  auto lat = ToricLattice::build(4, 4);
  SUBCASE("zero defects give an empty correction") {
    auto corr = greedy_decode(lat, {}, {});
    for (auto b : corr.x_support) CHECK(b == 0);
  }
  SUBCASE("two adjacent charges need one bond") {
    PauliPattern err = PauliPattern::empty(lat);
    err.x_support[lat.bond(2, 1, 0)] = 1;
    auto syn = syndrome(lat, err);
    auto corr = greedy_decode(lat, syn.star_defects, syn.plaquette_defects);
    int weight = 0;
    for (auto b : corr.x_support) weight += b;
    CHECK(weight == 1);
    CHECK(corr.x_support[lat.bond(2, 1, 0)] == 1);
  }
  SUBCASE("decoder always clears the syndrome") {
    qecw::Rng rng(9);
    for (int rep = 0; rep < 200; ++rep) {
      PauliPattern err = PauliPattern::empty(lat);
      for (int b = 0; b < lat.n_qubits(); ++b) {
        err.x_support[b] = rng.bernoulli(0.15);
        err.z_support[b] = rng.bernoulli(0.15);
      }
      auto syn = syndrome(lat, err);
      auto corr = greedy_decode(lat, syn.star_defects, syn.plaquette_defects);
      corr.xor_with(err);
      auto final_syn = syndrome(lat, corr);
      CHECK(final_syn.star_defects.empty());
      CHECK(final_syn.plaquette_defects.empty());
    }
  }
  SUBCASE("odd defect count rejected") {
    CHECK_THROWS(greedy_decode(lat, {0}, {}));
  }
}

TEST_CASE("logical classification") {
  auto lat = ToricLattice::build(4, 4);
  SUBCASE("stabilizer products are trivial") {
    // stars are Z-type, plaquettes X-type
    PauliPattern res = PauliPattern::empty(lat);
    for (int b : lat.stars[lat.site(2, 2)]) res.z_support[b] ^= 1;
    for (int b : lat.stars[lat.site(1, 2)]) res.z_support[b] ^= 1;
    for (int b : lat.plaquettes[lat.site(0, 3)]) res.x_support[b] ^= 1;
    auto cls = logical_error_check(lat, res);
    CHECK(cls.is_stabilizer);
  }
  SUBCASE("two copies of the same non-contractible loop are trivial") {
    PauliPattern res = PauliPattern::empty(lat);
    for (int i = 0; i < 4; ++i) res.x_support[lat.bond(i, 0, 0)] ^= 1;
    for (int i = 0; i < 4; ++i) res.x_support[lat.bond(i, 2, 0)] ^= 1;
    // two parallel loops = product of the plaquettes between them
    auto cls = logical_error_check(lat, res);
    CHECK(cls.is_stabilizer);
  }
  SUBCASE("vertical X loop and dual Z loops classify independently") {
    PauliPattern res = PauliPattern::empty(lat);
    for (int j = 0; j < 4; ++j) res.x_support[lat.bond(2, j, 1)] = 1;
    auto cls = logical_error_check(lat, res);
    CHECK(cls.label == "X2");
    PauliPattern resz = PauliPattern::empty(lat);
    for (int j = 0; j < 4; ++j) resz.z_support[lat.bond(1, j, 0)] = 1;
    auto clsz = logical_error_check(lat, resz);
    CHECK_FALSE(clsz.is_stabilizer);
    CHECK(clsz.label == "Z1");
  }
  SUBCASE("nonempty syndrome rejected") {
    PauliPattern res = PauliPattern::empty(lat);
    res.x_support[0] = 1;
    CHECK_THROWS(logical_error_check(lat, res));
  }
}

TEST_CASE("braiding parity: loop around an enclosed defect anticommutes") {
  // dragging a charge around one flux picks up -1: the X loop bounding a
  // region anticommutes with a Z string ending inside it (odd crossing
  // parity), and commutes when both string endpoints are outside
  auto lat = ToricLattice::build(4, 4);
  PauliPattern x_loop = PauliPattern::empty(lat);
  for (int b : lat.plaquettes[lat.site(1, 1)]) x_loop.x_support[b] ^= 1;
  // Z string entering the enclosed plaquette from outside: crosses the loop once
  PauliPattern z_string = PauliPattern::empty(lat);
  z_string.z_support[lat.bond(1, 1, 1)] = 1;  // shared with plaquette (1,1) boundary... crossing bond
  int overlap = 0;
  for (int b = 0; b < lat.n_qubits(); ++b)
    overlap ^= x_loop.x_support[b] & z_string.z_support[b];
  CHECK(overlap == 1);  // odd: anticommute, Berry phase -1
  // string passing through (flux endpoints at (0,1) and (1,2), both
  // outside): even crossing parity
  PauliPattern z_through = PauliPattern::empty(lat);
  z_through.z_support[lat.bond(1, 1, 1)] = 1;
  z_through.z_support[lat.bond(1, 2, 0)] = 1;
  overlap = 0;
  for (int b = 0; b < lat.n_qubits(); ++b)
    overlap ^= x_loop.x_support[b] & z_through.z_support[b];
  CHECK(overlap == 0);
}

TEST_CASE("Monte Carlo logical rates") {
  auto lat = ToricLattice::build(4, 4);
  SUBCASE("p = 0 never fails") {
    auto r = monte_carlo(lat, 0.0, 2000, 3);
    CHECK(r.logical_x_rate == 0.0);
    CHECK(r.logical_z_rate == 0.0);
  }
  SUBCASE("deterministic under a fixed seed") {
    auto a = monte_carlo(lat, 0.05, 20000, 7);
    auto b = monte_carlo(lat, 0.05, 20000, 7);
    CHECK(a.logical_x_rate == b.logical_x_rate);
    CHECK(a.logical_z_rate == b.logical_z_rate);
  }
  SUBCASE("rate decreases when p drops") {
    const long n = 30000;
    auto hi = monte_carlo(lat, 0.05, n, 11);
    auto lo = monte_carlo(lat, 0.02, n, 11);
    CHECK(lo.logical_x_rate < hi.logical_x_rate);
  }
}
