#include "qecw/wigner.hpp"

#include <cmath>

namespace qecw::wigner {

namespace {

// Diagonalizations of x and p, shared by all displacements on a grid.
struct QuadratureEigen {
  Eigen::SelfAdjointEigenSolver<CMatrix> x_es;
  Eigen::SelfAdjointEigenSolver<CMatrix> p_es;

  explicit QuadratureEigen(const bosonic::FockSpace& fs)
      : x_es(fs.x().m), p_es(fs.p().m) {}

  // exp(-i dp x): momentum boost by -dp  (here used with dp = p)
  CMatrix boost(double p) const {
    CVector phases(x_es.eigenvalues().size());
    for (int i = 0; i < phases.size(); ++i)
      phases(i) = std::exp(Complex(0.0, -p * x_es.eigenvalues()(i)));
    return x_es.eigenvectors() * phases.asDiagonal() * x_es.eigenvectors().adjoint();
  }

  // exp(+i x0 p): position translation by -x0
  CMatrix translate(double x0) const {
    CVector phases(p_es.eigenvalues().size());
    for (int i = 0; i < phases.size(); ++i)
      phases(i) = std::exp(Complex(0.0, x0 * p_es.eigenvalues()(i)));
    return p_es.eigenvectors() * phases.asDiagonal() * p_es.eigenvectors().adjoint();
  }
};

double displaced_parity(const bosonic::FockSpace& fs, const DensityMatrix& rho,
                        const CMatrix& d) {
  CMatrix displaced = d * rho.m * d.adjoint();
  Complex tr = 0.0;
  const CMatrix& pi = fs.parity().m;
  for (int n = 0; n < fs.dim; ++n) tr += displaced(n, n) * pi(n, n);
  double w = tr.real() / M_PI;
  if (std::abs(tr.imag()) > 1e-8)
    throw GuardError("Wigner point has a non-real parity trace");
  return w;
}

}  // namespace

double wigner_point(const bosonic::FockSpace& fs, const DensityMatrix& rho,
                    double x, double p) {
  if (rho.dim() != fs.dim) throw DimensionError("state/space dimension mismatch");
  // D(-x,-p) up to a global phase that cancels against D^dag
  QuadratureEigen quads(fs);
  CMatrix d = quads.boost(p) * quads.translate(x);
  return displaced_parity(fs, rho, d);
}

WignerGrid wigner_grid(const bosonic::FockSpace& fs, const DensityMatrix& rho,
                       double x_min, double x_max, int nx, double p_min,
                       double p_max, int np) {
  if (nx < 2 || np < 2) throw DimensionError("grid needs at least 2x2 points");
  if (rho.dim() != fs.dim) throw DimensionError("state/space dimension mismatch");
  WignerGrid grid;
  grid.x_values = RVector::LinSpaced(nx, x_min, x_max);
  grid.p_values = RVector::LinSpaced(np, p_min, p_max);
  grid.values = RMatrix(nx, np);
  QuadratureEigen quads(fs);
  std::vector<CMatrix> translations;
  translations.reserve(nx);
  for (int ix = 0; ix < nx; ++ix)
    translations.push_back(quads.translate(grid.x_values(ix)));
  for (int ip = 0; ip < np; ++ip) {
    CMatrix boost = quads.boost(grid.p_values(ip));
    for (int ix = 0; ix < nx; ++ix) {
      CMatrix d = boost * translations[ix];
      grid.values(ix, ip) = displaced_parity(fs, rho, d);
    }
  }
  return grid;
}

Marginals marginals(const WignerGrid& grid) {
  const int nx = static_cast<int>(grid.x_values.size());
  const int np = static_cast<int>(grid.p_values.size());
  Marginals out;
  out.x_values = grid.x_values;
  out.p_values = grid.p_values;
  out.rho_x = RVector::Zero(nx);
  out.rho_p = RVector::Zero(np);
  const double dx = (grid.x_values(nx - 1) - grid.x_values(0)) / (nx - 1);
  const double dp = (grid.p_values(np - 1) - grid.p_values(0)) / (np - 1);
  for (int ix = 0; ix < nx; ++ix) {
    double sum = 0.0;
    for (int ip = 0; ip < np; ++ip) {
      double w = ip == 0 || ip == np - 1 ? 0.5 : 1.0;  // trapezoid
      sum += w * grid.values(ix, ip);
    }
    out.rho_x(ix) = sum * dp;
  }
  for (int ip = 0; ip < np; ++ip) {
    double sum = 0.0;
    for (int ix = 0; ix < nx; ++ix) {
      double w = ix == 0 || ix == nx - 1 ? 0.5 : 1.0;
      sum += w * grid.values(ix, ip);
    }
    out.rho_p(ip) = sum * dx;
  }
  double edge = 0.0;
  for (int ix = 0; ix < nx; ++ix)
    edge = std::max({edge, std::abs(grid.values(ix, 0)),
                     std::abs(grid.values(ix, np - 1))});
  for (int ip = 0; ip < np; ++ip)
    edge = std::max({edge, std::abs(grid.values(0, ip)),
                     std::abs(grid.values(nx - 1, ip))});
  out.coverage_ok = edge <= 1e-4;
  return out;
}

double position_density(const DensityMatrix& rho, double x) {
  const int dim = rho.dim();
  // psi_n(x) = (2^n n! sqrt(pi))^{-1/2} H_n(x) e^{-x^2/2} via the stable
  // normalized recurrence psi_n = x sqrt(2/n) psi_{n-1} - sqrt((n-1)/n) psi_{n-2}
  RVector psi(dim);
  psi(0) = std::pow(M_PI, -0.25) * std::exp(-0.5 * x * x);
  if (dim > 1) psi(1) = std::sqrt(2.0) * x * psi(0);
  for (int n = 2; n < dim; ++n)
    psi(n) = x * std::sqrt(2.0 / n) * psi(n - 1) -
             std::sqrt((n - 1.0) / n) * psi(n - 2);
  Complex density = 0.0;
  for (int m = 0; m < dim; ++m)
    for (int n = 0; n < dim; ++n) density += psi(m) * rho.m(m, n) * psi(n);
  return density.real();
}

}  // namespace qecw::wigner
