#ifndef SG_DIAGNOSTICS_HPP
#define SG_DIAGNOSTICS_HPP

#include <cmath>
#include <stdexcept>
#include <vector>

#include "field.hpp"

namespace sg {

// Weighted H^1_sin x L^2 energy density:
//   int <x>^{2s} ( |f_x|^2 + |f_t|^2 + sin^2(f/2) ) dx.
// This is the quantity whose soliton-family scaling is ~ beta^{1-2s}.
inline double weighted_norm2(const FieldState& st, double s) {
  auto fx = derivative_x(st.f, st.dx());
  auto w = simpson_weights(st.xs.size(), st.dx());
  double acc = 0.0;
  for (std::size_t i = 0; i < st.xs.size(); ++i) {
    double wt = std::pow(1.0 + st.xs[i] * st.xs[i], s);
    double sf = std::sin(0.5 * st.f[i]);
    acc += w[i] * wt * (fx[i] * fx[i] + st.ft[i] * st.ft[i] + sf * sf);
  }
  return acc;
}

// Energy restricted to the moving window |x - c t| < L.
inline double localized_energy(const FieldState& st, double c, double L) {
  auto fx = derivative_x(st.f, st.dx());
  double h = st.dx(), x0 = c * st.t;
  double acc = 0.0;
  for (std::size_t i = 0; i < st.xs.size(); ++i) {
    if (std::abs(st.xs[i] - x0) >= L) continue;
    acc += h * (0.5 * st.ft[i] * st.ft[i] + 0.5 * fx[i] * fx[i] + (1.0 - std::cos(st.f[i])));
  }
  return acc;
}

struct DecayFit {
  double slope = 0.0, intercept = 0.0, stderr_slope = 0.0;
};

// Least-squares slope of log|val| vs log t; vals must be positive.
inline DecayFit fit_decay_exponent(const std::vector<double>& ts, const std::vector<double>& vals) {
  if (ts.size() != vals.size() || ts.size() < 2)
    throw std::invalid_argument("fit_decay_exponent: need >= 2 samples");
  std::size_t n = ts.size();
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < n; ++i) {
    double x = std::log(ts[i]), y = std::log(vals[i]);
    sx += x; sy += y; sxx += x * x; sxy += x * y;
  }
  double denom = n * sxx - sx * sx;
  DecayFit fit;
  fit.slope = (n * sxy - sx * sy) / denom;
  fit.intercept = (sy - fit.slope * sx) / n;
  if (n > 2) {
    double ss = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      double x = std::log(ts[i]), y = std::log(vals[i]);
      double r = y - (fit.intercept + fit.slope * x);
      ss += r * r;
    }
    fit.stderr_slope = std::sqrt(ss / double(n - 2) * double(n) / denom);
  }
  return fit;
}

struct CompareMetrics {
  double max = 0.0, l2 = 0.0, windowed_l2 = 0.0;
};

// Pointwise comparison of two states on the same grid; windowed_l2 restricts
// to [wlo, whi].
inline CompareMetrics compare_fields(const FieldState& a, const FieldState& b,
                                     double wlo = 0.0, double whi = -1.0) {
  if (a.xs.size() != b.xs.size())
    throw std::invalid_argument("compare_fields: grids differ");
  CompareMetrics m;
  double h = a.dx(), acc = 0.0, accw = 0.0;
  for (std::size_t i = 0; i < a.xs.size(); ++i) {
    double d = a.f[i] - b.f[i];
    m.max = std::max(m.max, std::abs(d));
    acc += h * d * d;
    if (wlo < whi && a.xs[i] >= wlo && a.xs[i] <= whi) accw += h * d * d;
  }
  m.l2 = std::sqrt(acc);
  m.windowed_l2 = std::sqrt(accw);
  return m;
}

}  // namespace sg

#endif
