#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "qecw/wigner.hpp"

using namespace qecw;
using namespace qecw::bosonic;
using namespace qecw::wigner;

TEST_CASE("Wigner point values") {
  FockSpace fs(40);
  SUBCASE("vacuum and |1> at the origin (parity identity, no displacement)") {
    CHECK(wigner_point(fs, DensityMatrix::pure(fs.fock(0)), 0, 0) ==
          doctest::Approx(1.0 / M_PI).epsilon(1e-12));
    CHECK(wigner_point(fs, DensityMatrix::pure(fs.fock(1)), 0, 0) ==
          doctest::Approx(-1.0 / M_PI).epsilon(1e-12));
  }
  SUBCASE("vacuum matches the analytic Gaussian") {
    FockSpace big(60);
    DensityMatrix vac = DensityMatrix::pure(big.fock(0));
    for (double x : {-2.0, -0.7, 0.3, 1.9})
      for (double p : {-1.5, 0.0, 1.1}) {
        double want = std::exp(-(x * x + p * p)) / M_PI;
        CHECK(wigner_point(big, vac, x, p) == doctest::Approx(want).epsilon(1e-6));
      }
  }
  SUBCASE("linearity in the density matrix") {
    Rng rng(3);
    DensityMatrix a = DensityMatrix::pure(fs.coherent(0.8));
    DensityMatrix b = DensityMatrix::pure(fs.fock(2));
    for (int i = 0; i < 4; ++i) {
      double lam = rng.uniform();
      CMatrix mix = lam * a.m + (1 - lam) * b.m;
      double w_mix = wigner_point(fs, DensityMatrix::make_unchecked(mix), 0.4, -0.2);
      double w_parts = lam * wigner_point(fs, a, 0.4, -0.2) +
                       (1 - lam) * wigner_point(fs, b, 0.4, -0.2);
      CHECK(w_mix == doctest::Approx(w_parts).epsilon(1e-10));
    }
  }
}

TEST_CASE("Wigner grids") {
  SUBCASE("vacuum grid is reflection symmetric") {
    FockSpace fs(30);
    auto grid = wigner_grid(fs, DensityMatrix::pure(fs.fock(0)), -2, 2, 21, -2, 2, 21);
    for (int ix = 0; ix < 21; ++ix)
      for (int ip = 0; ip < 21; ++ip) {
        CHECK(grid.values(ix, ip) ==
              doctest::Approx(grid.values(20 - ix, ip)).epsilon(1e-8));
        CHECK(grid.values(ix, ip) ==
              doctest::Approx(grid.values(ix, 20 - ip)).epsilon(1e-8));
      }
  }
  SUBCASE("cat state shows interference fringes along p at x = 0") {
    FockSpace fs(40);
    const Complex alpha = 2.0;
    CVector cat = fs.coherent(alpha).v + fs.coherent(-alpha).v;
    DensityMatrix rho = DensityMatrix::pure(StateVector(cat).normalized());
    auto grid = wigner_grid(fs, rho, -0.01, 0.01, 2, -3, 3, 61);
    int sign_flips = 0;
    for (int ip = 1; ip < 61; ++ip)
      if (grid.values(0, ip) * grid.values(0, ip - 1) < 0) ++sign_flips;
    CHECK(sign_flips >= 2);
  }
  SUBCASE("grid normalization within 1e-3") {
    FockSpace fs(40);
    for (const DensityMatrix& rho :
         {DensityMatrix::pure(fs.coherent(Complex(0.9, 0.5))),
          DensityMatrix::pure(fs.fock(3))}) {
      auto grid = wigner_grid(fs, rho, -5, 5, 81, -5, 5, 81);
      double total = 0.0;
      double dx = 10.0 / 80, dp = 10.0 / 80;
      for (int ix = 0; ix < 81; ++ix)
        for (int ip = 0; ip < 81; ++ip) {
          double w = (ix == 0 || ix == 80 ? 0.5 : 1.0) *
                     (ip == 0 || ip == 80 ? 0.5 : 1.0);
          total += w * grid.values(ix, ip);
        }
      CHECK(total * dx * dp == doctest::Approx(1.0).epsilon(1e-3));
    }
  }
}

TEST_CASE("marginals against the Hermite oracle") {
  FockSpace fs(40);
  SUBCASE("vacuum position density") {
    auto grid = wigner_grid(fs, DensityMatrix::pure(fs.fock(0)), -5, 5, 101, -5, 5, 101);
    auto m = marginals(grid);
    CHECK(m.coverage_ok);
    for (int ix = 20; ix < 81; ix += 10) {
      double x = m.x_values(ix);
      CHECK(m.rho_x(ix) ==
            doctest::Approx(std::exp(-x * x) / std::sqrt(M_PI)).epsilon(1e-3));
    }
  }
  SUBCASE("|1> has a node at the origin") {
    auto grid = wigner_grid(fs, DensityMatrix::pure(fs.fock(1)), -5, 5, 101, -5, 5, 101);
    auto m = marginals(grid);
    CHECK(std::abs(m.rho_x(50)) < 1e-6);
  }
  SUBCASE("marginal norms and Hermite-expansion agreement for a mixed state") {
    FockSpace big(60);
    CMatrix mix = 0.55 * DensityMatrix::pure(big.coherent(Complex(0.7, -0.3))).m +
                  0.45 * DensityMatrix::pure(big.fock(2)).m;
    DensityMatrix rho = DensityMatrix::make_unchecked(std::move(mix));
    auto grid = wigner_grid(big, rho, -5.5, 5.5, 111, -5.5, 5.5, 111);
    auto m = marginals(grid);
    CHECK(m.coverage_ok);
    double norm_x = 0.0;
    double dx = 11.0 / 110;
    for (int ix = 0; ix < 111; ++ix)
      norm_x += (ix == 0 || ix == 110 ? 0.5 : 1.0) * m.rho_x(ix);
    CHECK(norm_x * dx == doctest::Approx(1.0).epsilon(1e-3));
    for (int ix = 15; ix < 100; ix += 7) {
      double x = m.x_values(ix);
      CHECK(m.rho_x(ix) == doctest::Approx(position_density(rho, x)).epsilon(1e-3));
    }
  }
  SUBCASE("insufficient coverage is flagged") {
    auto grid = wigner_grid(fs, DensityMatrix::pure(fs.coherent(2.5)), -1, 1, 11, -1, 1, 11);
    auto m = marginals(grid);
    CHECK_FALSE(m.coverage_ok);
  }
}

TEST_CASE("Hermiticity keeps W real") {
  FockSpace fs(25);
  Rng rng(21);
  CMatrix raw(25, 25);
  for (int i = 0; i < 25; ++i)
    for (int j = 0; j < 25; ++j)
      raw(i, j) = Complex(rng.uniform() - 0.5, rng.uniform() - 0.5) *
                  std::exp(-0.4 * (i + j));
  CMatrix rho_m = raw * raw.adjoint();
  rho_m /= rho_m.trace();
  DensityMatrix rho = DensityMatrix::make_unchecked(std::move(rho_m));
  // wigner_point throws if the parity trace drifts off the real axis
  for (double x : {-1.0, 0.5})
    CHECK_NOTHROW(wigner_point(fs, rho, x, 0.7));
}
