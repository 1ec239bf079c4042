#ifndef SG_GRID_HPP
#define SG_GRID_HPP

#include <cmath>
#include <stdexcept>
#include <vector>

#include "common.hpp"
#include "quadrature.hpp"
#include "theta.hpp"

namespace sg {

// Discretization of the continuous spectrum R \ {0}.  Nodes are uniform in
// lambda = z - 1/z on each branch (z > 0 and z < 0), which grades z toward 0
// and +/- infinity where the reflection data decays; w are contour quadrature
// weights (Simpson in lambda times dz/dlambda).  The grid is symmetric under
// z -> -z and never contains z = 0.
struct SpectralGrid {
  std::vector<double> z;    // ascending, negative branch then positive branch
  std::vector<double> w;    // int h(s) ds ~ sum w_i h(z_i)
  double lambda_max = 60.0;

  std::size_t size() const { return z.size(); }

  // Index of -z[i]; mirror symmetry of the construction makes this exact.
  std::size_t mirror(std::size_t i) const { return z.size() - 1 - i; }

  static SpectralGrid make(std::size_t n_total = 1024, double lambda_max = 60.0) {
    if (n_total < 16 || n_total % 2 != 0)
      throw std::invalid_argument("SpectralGrid: n_total must be even and >= 16");
    std::size_t m = n_total / 2;  // points per branch
    SpectralGrid g;
    g.lambda_max = lambda_max;
    double dl = 2.0 * lambda_max / double(m - 1);
    auto sw = simpson_weights(m, dl);
    std::vector<double> zp(m), wp(m);
    for (std::size_t i = 0; i < m; ++i) {
      double lam = -lambda_max + dl * double(i);
      double zi = z_of_lambda_pos(lam);
      zp[i] = zi;
      // dz/dlambda = z^2/(1+z^2)
      wp[i] = sw[i] * zi * zi / (1.0 + zi * zi);
    }
    g.z.resize(n_total);
    g.w.resize(n_total);
    for (std::size_t i = 0; i < m; ++i) {
      g.z[m + i] = zp[i];
      g.w[m + i] = wp[i];
      g.z[m - 1 - i] = -zp[i];
      g.w[m - 1 - i] = wp[i];
    }
    return g;
  }
};

}  // namespace sg

#endif
