#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "qecw/gkp.hpp"

using namespace qecw;
using namespace qecw::gkp;

namespace {

const double kRootPi = std::sqrt(M_PI);

// phase error of M1 = phase * M2 probed on low-energy states
double phase_error(const bosonic::FockSpace& fs, const CMatrix& m1,
                   const CMatrix& m2, Complex phase) {
  double worst = 0.0;
  std::vector<StateVector> probes{fs.fock(0), fs.fock(1), fs.coherent(0.7),
                                  fs.coherent(Complex(-0.4, 0.6))};
  for (const auto& psi : probes) {
    Complex overlap = psi.v.dot(m2.adjoint() * (m1 * psi.v));
    worst = std::max(worst, std::abs(overlap - phase));
  }
  return worst;
}

}  // namespace

TEST_CASE("displacement basics") {
  bosonic::FockSpace fs(60);
  SUBCASE("zero displacement is the identity") {
    Operator d = displacement(fs, {0.0, 0.0});
    CHECK((d.m - CMatrix::Identity(60, 60)).cwiseAbs().maxCoeff() < 1e-12);
  }
  SUBCASE("unitary and inverse composition") {
    PhaseVector v{0.8, -1.3};
    Operator d = displacement(fs, v);
    CHECK(d.is_unitary(1e-8));
    Operator dinv = displacement(fs, {-v.dx, -v.dp});
    CHECK(phase_error(fs, CMatrix(d.m * dinv.m), CMatrix::Identity(60, 60), 1.0) < 1e-6);
  }
  SUBCASE("displaces the vacuum to the expected quadratures") {
    PhaseVector v{0.9, 0.5};
    Operator d = displacement(fs, v);
    CVector psi = d.m * fs.fock(0).v;
    Complex x_mean = psi.dot(fs.x().m * psi);
    Complex p_mean = psi.dot(fs.p().m * psi);
    CHECK(std::abs(x_mean - v.dx) < 1e-9);
    CHECK(std::abs(p_mean - v.dp) < 1e-9);
  }
}

TEST_CASE("symplectic composition law") {
  bosonic::FockSpace fs(80);
  Rng rng(23);
  for (int rep = 0; rep < 25; ++rep) {
    PhaseVector u{3.0 * rng.uniform() - 1.5, 3.0 * rng.uniform() - 1.5};
    PhaseVector v{3.0 * rng.uniform() - 1.5, 3.0 * rng.uniform() - 1.5};
    CMatrix lhs = displacement(fs, u).m * displacement(fs, v).m;
    CMatrix rhs = displacement(fs, {u.dx + v.dx, u.dp + v.dp}).m;
    CHECK(phase_error(fs, lhs, rhs, composition_phase(u, v)) < 1e-5);
  }
  SUBCASE("commuting case: symplectic form an integer multiple of h") {
    PhaseVector u{2.0 * kRootPi, 0.0};   // S_x
    PhaseVector v{0.0, 2.0 * kRootPi};   // S_p
    CHECK(std::abs(commutation_phase(u, v) - 1.0) < 1e-12);
    CMatrix ab = displacement(fs, u).m * displacement(fs, v).m;
    CMatrix ba = displacement(fs, v).m * displacement(fs, u).m;
    CHECK(phase_error(fs, ab, ba, 1.0) < 1e-4);
  }
}

TEST_CASE("loop phase e^{i dx dp}") {
  bosonic::FockSpace fs(80);
  const double dx = 1.0, dp = 1.0;
  CMatrix loop = displacement(fs, {0.0, -dp}).m * displacement(fs, {-dx, 0.0}).m *
                 displacement(fs, {0.0, dp}).m * displacement(fs, {dx, 0.0}).m;
  CHECK(phase_error(fs, loop, CMatrix::Identity(80, 80),
                    std::exp(Complex(0.0, dx * dp))) < 1e-5);
}

TEST_CASE("Pauli frame algebra from the symplectic form") {
  PauliFrame f = gkp_pauli_frame();
  // stabilizers commute
  CHECK(std::abs(commutation_phase(f.s_x, f.s_p) - 1.0) < 1e-12);
  // Z_L X_L = - X_L Z_L
  CHECK(std::abs(commutation_phase(f.z_l, f.x_l) + 1.0) < 1e-12);
  // X_L^2 composes to S_x with trivial phase
  CHECK(std::abs(composition_phase(f.x_l, f.x_l) - 1.0) < 1e-12);
  CHECK(f.x_l.dx * 2 == doctest::Approx(f.s_x.dx));
  // logicals commute with the stabilizers
  for (const PhaseVector* s : {&f.s_x, &f.s_p})
    for (const PhaseVector* l : {&f.x_l, &f.z_l, &f.y_l})
      CHECK(std::abs(commutation_phase(*s, *l) - 1.0) < 1e-12);
  // matrix route agrees with the area phases on the low-energy subspace
  bosonic::FockSpace fs(80);
  CMatrix zx = displacement(fs, f.z_l).m * displacement(fs, f.x_l).m;
  CMatrix xz = displacement(fs, f.x_l).m * displacement(fs, f.z_l).m;
  CHECK(phase_error(fs, zx, xz, -1.0) < 1e-4);
}

TEST_CASE("finite-energy GKP states") {
  GkpParams gp;  // defaults: lambda 0.05, comb 4, r 1.2, dim 120
  SUBCASE("large envelope collapses to the vacuum") {
    GkpParams heavy = gp;
    heavy.lambda = 3.0;
    StateVector psi = make_gkp_state(heavy, 0);
    CHECK(std::norm(psi.v(0)) > 0.99);
  }
  SUBCASE("mu = 0 and mu = 1 are nearly orthogonal at the defaults") {
    StateVector w0 = make_gkp_state(gp, 0);
    StateVector w1 = make_gkp_state(gp, 1);
    CHECK(std::abs(w0.v.dot(w1.v)) < 1e-3);
    CHECK(std::norm(w0.v.dot(w1.v)) < 1e-3);
  }
  SUBCASE("stabilizer expectations exceed 0.9") {
    bosonic::FockSpace fs(gp.fock_dim);
    for (int mu : {0, 1}) {
      StateVector psi = make_gkp_state(gp, mu);
      CHECK(syndrome_phase(fs, psi, Stabilizer::s_x).real() > 0.9);
      CHECK(syndrome_phase(fs, psi, Stabilizer::s_p).real() > 0.9);
    }
  }
  SUBCASE("mean photon number decreases with the envelope strength") {
    bosonic::FockSpace fs(gp.fock_dim);
    double prev = 1e9;
    for (double lam : {0.008, 0.05, 0.2}) {
      GkpParams g = gp;
      g.lambda = lam;
      StateVector psi = make_gkp_state(g, 0);
      double n_mean = std::real(psi.v.dot(fs.n().m * psi.v));
      CHECK(n_mean < prev);
      prev = n_mean;
    }
  }
}

TEST_CASE("finite-energy stabilizer residuals") {
  GkpParams gp;
  SUBCASE("translation residual decreases with comb width") {
    // the S_x^Lambda residual is dominated by the comb edge; the S_p^Lambda
    // residual has a floor set by the tooth width at this squeezing
    double prev = 1e9;
    for (int comb : {2, 4, 6}) {
      GkpParams g = gp;
      g.s_comb = comb;
      auto r = finite_energy_stabilizer_check(g, 0);
      CHECK(r.s_x_residual < prev);
      prev = r.s_x_residual;
      CHECK(r.s_p_residual < 0.5);
    }
    CHECK(prev < 0.2);
  }
  SUBCASE("single squeezed peak is not grid-like") {
    GkpParams g = gp;
    g.s_comb = 0;
    auto r = finite_energy_stabilizer_check(g, 0);
    CHECK(r.s_x_residual > 0.5);
  }
}

TEST_CASE("syndrome phases and displacement correction") {
  GkpParams gp;
  bosonic::FockSpace fs(gp.fock_dim);
  StateVector code = make_gkp_state(gp, 0);
  SUBCASE("undisplaced state has arg ~ 0") {
    auto est = estimate_shift(fs, code);
    CHECK(est.reliable);
    CHECK(std::abs(est.dx) < 1e-3);
    CHECK(std::abs(est.dp) < 1e-3);
  }
  SUBCASE("round trip recovers a position shift of 0.15") {
    StateVector shifted(CVector(displacement(fs, {0.15, 0.0}).m * code.v));
    auto est = estimate_shift(fs, shifted);
    CHECK(est.dx == doctest::Approx(0.15).epsilon(0.07));
    CHECK(std::abs(est.dx - 0.15) < 0.01);
    CHECK(std::abs(est.dp) < 0.01);
  }
  SUBCASE("full lattice translation returns arg to ~ 0") {
    StateVector shifted(
        CVector(displacement(fs, {2.0 * kRootPi, 0.0}).m * code.v));
    auto est = estimate_shift(fs, shifted);
    CHECK(std::abs(est.dx) < 0.02);
  }
  SUBCASE("no error: correction leaves the state nearly unchanged") {
    auto res = correct_displacement(fs, code);
    CHECK((res.state.v - code.v).norm() < 1e-2);
    CHECK(std::norm(code.v.dot(res.state.v)) > 1.0 - 1e-6);
  }
  SUBCASE("shift (0.2, -0.1) is corrected above 0.98 fidelity") {
    StateVector shifted(CVector(displacement(fs, {0.2, -0.1}).m * code.v));
    double before = std::norm(code.v.dot(shifted.v));
    auto res = correct_displacement(fs, shifted);
    double after = std::norm(code.v.dot(res.state.v));
    CHECK(after > before);
    CHECK(after > 0.98);
  }
  SUBCASE("non-grid states are flagged unreliable and left alone") {
    StateVector vac = fs.fock(0);  // |<S>| = e^{-pi} << 0.1
    auto est = estimate_shift(fs, vac);
    CHECK_FALSE(est.reliable);
    auto res = correct_displacement(fs, vac);
    CHECK_FALSE(res.estimate.reliable);
    CHECK((res.state.v - vac.v).norm() == 0.0);
  }
  SUBCASE("half-lattice shift comes back as a logical flip") {
    StateVector other = make_gkp_state(gp, 1);
    StateVector shifted(CVector(displacement(fs, {kRootPi, 0.0}).m * code.v));
    auto res = correct_displacement(fs, shifted);
    // the corrected state is a codeword again, but the wrong one
    CHECK(std::norm(other.v.dot(res.state.v)) > 0.9);
    CHECK(std::norm(code.v.dot(res.state.v)) < 0.1);
  }
}
