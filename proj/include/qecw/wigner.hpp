#pragma once

#include "qecw/bosonic.hpp"
#include "qecw/core.hpp"

// Wigner tomography via the displaced-parity identity, hbar = 1:
// W(x,p) = (1/pi) Tr{ D(-x,-p) rho D^dag(-x,-p) Pi }.
namespace qecw::wigner {

double wigner_point(const bosonic::FockSpace& fs, const DensityMatrix& rho,
                    double x, double p);

struct WignerGrid {
  RVector x_values;
  RVector p_values;
  RMatrix values;  // values(ix, ip)
};

WignerGrid wigner_grid(const bosonic::FockSpace& fs, const DensityMatrix& rho,
                       double x_min, double x_max, int nx, double p_min,
                       double p_max, int np);

struct Marginals {
  RVector x_values;
  RVector rho_x;  // integral of W over p
  RVector p_values;
  RVector rho_p;  // integral of W over x
  bool coverage_ok = true;  // false when |W| > 1e-4 on the grid boundary
};

Marginals marginals(const WignerGrid& grid);

// Position density from the Hermite-function expansion of rho; independent
// oracle for the Wigner marginals.
double position_density(const DensityMatrix& rho, double x);

}  // namespace qecw::wigner
