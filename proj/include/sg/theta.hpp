#ifndef SG_THETA_HPP
#define SG_THETA_HPP

#include <cmath>
#include <stdexcept>

#include "common.hpp"

namespace sg {

// Phase functions of the lab-frame Lax problem:
//   theta(z;x,t)      = 1/4 ((z - 1/z) x + (z + 1/z) t)
//   theta_tilde(z;x,t)= 1/4 ((z + 1/z) x + (z - 1/z) t)
// The Jost/RHP oscillation is e^{2 i theta}; lambda = z - 1/z is the natural
// Fourier variable of the continuous spectrum.
inline cx theta(cx z, double x, double t) {
  return 0.25 * ((z - 1.0 / z) * x + (z + 1.0 / z) * t);
}

inline cx theta_tilde(cx z, double x, double t) {
  return 0.25 * ((z + 1.0 / z) * x + (z - 1.0 / z) * t);
}

inline double lambda_of_z(double z) { return z - 1.0 / z; }

// Positive-branch inverse of lambda = z - 1/z (z > 0).
inline double z_of_lambda_pos(double lam) {
  return 0.5 * (lam + std::sqrt(lam * lam + 4.0));
}

// Stationary point of theta in x/t < 1: z0 = sqrt((t-x)/(t+x)).
inline double stationary_point(double x, double t) {
  if (!(t > 0.0) || !(std::abs(x) < t))
    throw std::invalid_argument("stationary_point: need |x| < t, t > 0");
  return std::sqrt((t - x) / (t + x));
}

// Slow time of the model problem at the stationary points.
inline double tau_of(double t, double z0) { return t * z0 / (1.0 + z0 * z0); }

// Soliton velocity laws.
inline double kink_velocity(double zeta) { return (1.0 - zeta * zeta) / (1.0 + zeta * zeta); }
inline double breather_velocity(double rho) { return (1.0 - rho * rho) / (1.0 + rho * rho); }

enum class FrameKind { Radiation, Kink, Breather };

// A reference frame x = v t for the long-time asymptotics.  For |v| < 1 the
// stationary points +/-z0 and the slow time tau are defined.
struct AsymptoticFrame {
  double v = 0.0;
  double z0 = 0.0;
  double tau = 0.0;
  FrameKind kind = FrameKind::Radiation;

  static AsymptoticFrame at(double v, double t, FrameKind kind = FrameKind::Radiation) {
    AsymptoticFrame fr;
    fr.v = v;
    fr.kind = kind;
    fr.z0 = stationary_point(v * t, t);
    fr.tau = tau_of(t, fr.z0);
    return fr;
  }

  // A soliton with velocity vs belongs to this frame when |v - vs| < 0.5/sqrt(tau).
  bool contains_velocity(double vs) const { return std::abs(v - vs) < 0.5 / std::sqrt(tau); }
};

}  // namespace sg

#endif
