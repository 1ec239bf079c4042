#ifndef SG_SPECIAL_HPP
#define SG_SPECIAL_HPP

#include <cmath>

#include "common.hpp"

namespace sg {

// Complex log-gamma, Lanczos approximation (g = 7, 9 terms), with the
// reflection formula for Re z < 0.5.  Accuracy ~1e-13 on the strip needed
// here (arguments +-i kappa with |kappa| < 1).
inline cx log_gamma(cx z) {
  static const double c[9] = {
      0.99999999999980993,  676.5203681218851,   -1259.1392167224028,
      771.32342877765313,   -176.61502916214059, 12.507343278686905,
      -0.13857109526572012, 9.9843695780195716e-6, 1.5056327351493116e-7};
  if (z.real() < 0.5) {
    // log Gamma(z) = log(pi / sin(pi z)) - log Gamma(1 - z)
    return std::log(pi) - std::log(std::sin(pi * z)) - log_gamma(1.0 - z);
  }
  z -= 1.0;
  cx a = c[0];
  cx t = z + 7.5;
  for (int i = 1; i < 9; ++i) a += c[i] / (z + static_cast<double>(i));
  return 0.5 * std::log(2.0 * pi) + (z + 0.5) * std::log(t) - t + std::log(a);
}

inline cx cgamma(cx z) { return std::exp(log_gamma(z)); }

}  // namespace sg

#endif
