#ifndef SG_QUADRATURE_HPP
#define SG_QUADRATURE_HPP

#include <vector>
#include <cmath>
#include <stdexcept>

#include "common.hpp"

namespace sg {

// Composite Simpson weights on a uniform grid of n points (n >= 4).  When the
// interval count is odd the last three intervals are handled by the 3/8 rule so
// the scheme stays fourth order throughout.
inline std::vector<double> simpson_weights(std::size_t n, double h) {
  if (n < 4) throw std::invalid_argument("simpson_weights: need at least 4 points");
  std::vector<double> w(n, 0.0);
  std::size_t m = n - 1;  // interval count
  std::size_t simpson_end = (m % 2 == 0) ? m : m - 3;
  for (std::size_t i = 0; i + 2 <= simpson_end; i += 2) {
    w[i] += h / 3.0;
    w[i + 1] += 4.0 * h / 3.0;
    w[i + 2] += h / 3.0;
  }
  if (m % 2 != 0) {
    std::size_t i = simpson_end;
    w[i] += 3.0 * h / 8.0;
    w[i + 1] += 9.0 * h / 8.0;
    w[i + 2] += 9.0 * h / 8.0;
    w[i + 3] += 3.0 * h / 8.0;
  }
  return w;
}

template <class F>
double simpson(const F& f, double a, double b, std::size_t n) {
  double h = (b - a) / double(n - 1);
  auto w = simpson_weights(n, h);
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) s += w[i] * f(a + h * double(i));
  return s;
}

// Nodes/weights for Gauss-Legendre on [-1,1], by Newton on Legendre roots.
struct GaussLegendre {
  std::vector<double> x, w;
  explicit GaussLegendre(std::size_t n) : x(n), w(n) {
    for (std::size_t i = 0; i < n; ++i) {
      double xi = std::cos(pi * (double(i) + 0.75) / (double(n) + 0.5));
      for (int it = 0; it < 100; ++it) {
        double p0 = 1.0, p1 = xi;
        for (std::size_t k = 2; k <= n; ++k) {
          double p2 = ((2.0 * k - 1.0) * xi * p1 - (k - 1.0) * p0) / double(k);
          p0 = p1;
          p1 = p2;
        }
        double dp = double(n) * (xi * p1 - p0) / (xi * xi - 1.0);
        double dx = p1 / dp;
        xi -= dx;
        if (std::abs(dx) < 1e-15) break;
      }
      double p0 = 1.0, p1 = xi;
      for (std::size_t k = 2; k <= n; ++k) {
        double p2 = ((2.0 * k - 1.0) * xi * p1 - (k - 1.0) * p0) / double(k);
        p0 = p1;
        p1 = p2;
      }
      double dp = double(n) * (xi * p1 - p0) / (xi * xi - 1.0);
      x[n - 1 - i] = xi;
      w[n - 1 - i] = 2.0 / ((1.0 - xi * xi) * dp * dp);
    }
  }

  template <class F>
  auto integrate(const F& f, double a, double b) const -> decltype(f(a)) {
    decltype(f(a)) s{};
    double mid = 0.5 * (a + b), half = 0.5 * (b - a);
    for (std::size_t i = 0; i < x.size(); ++i) s += w[i] * half * f(mid + half * x[i]);
    return s;
  }
};

}  // namespace sg

#endif
