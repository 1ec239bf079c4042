#ifndef SG_ASYMPTOTICS_HPP
#define SG_ASYMPTOTICS_HPP

#include <cmath>
#include <vector>

#include "common.hpp"
#include "interp.hpp"
#include "quadrature.hpp"
#include "special.hpp"
#include "spectrum.hpp"
#include "theta.hpp"

namespace sg {

// Cubic-spline interpolant of the sampled reflection coefficient, built per
// branch in the lambda = z - 1/z variable (where the sampling is uniform).
// Returns 0 outside the sampled window, consistent with the truncation.
class ReflectionInterp {
 public:
  explicit ReflectionInterp(const ScatteringData& d) {
    std::size_t n = d.grid.size(), m = n / 2;
    auto build = [&](std::size_t off, Branch& br) {
      std::vector<double> lam(m), re(m), im(m);
      for (std::size_t i = 0; i < m; ++i) {
        lam[i] = lambda_of_z(d.grid.z[off + i]);
        re[i] = d.r[off + i].real();
        im[i] = d.r[off + i].imag();
      }
      br.lo = lam.front();
      br.hi = lam.back();
      double h = (lam.back() - lam.front()) / double(m - 1);
      br.re = CubicSpline(lam.front(), h, re);
      br.im = CubicSpline(lam.front(), h, im);
    };
    build(0, neg_);
    build(m, pos_);
  }

  cx operator()(double z) const {
    if (z == 0.0) return 0.0;
    const Branch& br = (z > 0.0) ? pos_ : neg_;
    double lam = z - 1.0 / z;
    if (lam < br.lo || lam > br.hi) return 0.0;
    return cx(br.re.value(lam), br.im.value(lam));
  }

 private:
  struct Branch {
    double lo = 0.0, hi = 0.0;
    CubicSpline re, im;
  };
  Branch neg_, pos_;
};

inline double kappa_of(cx r_z0) {
  return -std::log(1.0 + std::norm(r_z0)) / (2.0 * pi);
}

namespace detail {
template <typename F>
cx panel_integral(const F& f, double a, double b, int panels = 8) {
  static const GaussLegendre gl(20);
  cx s = 0.0;
  double h = (b - a) / panels;
  for (int p = 0; p < panels; ++p) s += gl.integrate(f, a + p * h, a + (p + 1) * h);
  return s;
}
}  // namespace detail

// chi(z) = (1/(2 pi i)) int_{-z0}^{z0} log(1 + |r(s)|^2) / (s - z) ds,
// for z off the interval [-z0, z0].
template <typename R>
cx chi_full(const R& r, double z0, cx z, int panels = 12) {
  auto f = [&](double s) { return std::log(1.0 + std::norm(r(s))) / (s - z); };
  return detail::panel_integral(f, -z0, z0, panels) / (2.0 * pi * iu);
}

// chi_breve: same integral with the log of the ratio to the value at z0, so
// the integrand is regular at the matching endpoint.  Used at z = +-z0.
template <typename R>
cx chi_breve(const R& r, double z0, double z, int panels = 12) {
  double L0 = std::log(1.0 + std::norm(r(z0)));
  auto f = [&](double s) {
    double num = std::log(1.0 + std::norm(r(s))) - L0;
    return cx(num / (s - z), 0.0);
  };
  return detail::panel_integral(f, -z0, z0, panels) / (2.0 * pi * iu);
}

// Blaschke part of the model scalar function over a chosen discrete subset:
// kinks contribute (z - conj z_k)/(z - z_k), breather quadruples contribute
// ((z - conj z_j)/(z - z_j)) ((z + z_j)/(z + conj z_j)).
inline cx blaschke(cx z, const std::vector<KinkDatum>& kinks,
                   const std::vector<BreatherDatum>& breathers) {
  cx out = 1.0;
  for (const auto& k : kinks) {
    cx zk(0.0, k.zeta);
    out *= (z - std::conj(zk)) / (z - zk);
  }
  for (const auto& b : breathers) {
    out *= (z - std::conj(b.z)) / (z - b.z);
    out *= (z + b.z) / (z + std::conj(b.z));
  }
  return out;
}

template <typename R>
cx delta_fn(const R& r, double z0, cx z, const std::vector<KinkDatum>& kinks,
            const std::vector<BreatherDatum>& breathers) {
  return blaschke(z, kinks, breathers) * std::exp(chi_full(r, z0, z));
}

// Replace each norming constant c by c * delta(z_i)^{-2}: the effect of the
// soliton/radiation interaction on the discrete data in a moving frame.
template <typename R>
ScatteringData dress_discrete(const ScatteringData& d, const R& r, double z0,
                              const std::vector<KinkDatum>& kinks_B,
                              const std::vector<BreatherDatum>& breathers_B) {
  ScatteringData out = d;
  out.r.assign(out.r.size(), cx(0.0, 0.0));
  for (auto& k : out.kinks) {
    cx del = delta_fn(r, z0, cx(0.0, k.zeta), kinks_B, breathers_B);
    k.c /= del * del;
  }
  for (auto& b : out.breathers) {
    cx del = delta_fn(r, z0, b.z, kinks_B, breathers_B);
    b.c /= del * del;
  }
  return out;
}

// Parabolic-cylinder model constants at the stationary points +-z0.
struct PcConstants {
  double kappa = 0.0, tau = 0.0;
  cx delta0_A, delta0_B;
  cx beta12, beta21;
  Mat2 mB1, mA1;
};

template <typename R>
PcConstants pc_constants(const R& r, double z0, double t,
                         const std::vector<KinkDatum>& kinks_B = {},
                         const std::vector<BreatherDatum>& breathers_B = {}) {
  PcConstants pc;
  cx r0 = r(z0);
  pc.kappa = kappa_of(r0);
  pc.tau = tau_of(t, z0);
  cx eta_p = blaschke(cx(z0, 0.0), kinks_B, breathers_B);
  cx eta_m = blaschke(cx(-z0, 0.0), kinks_B, breathers_B);
  cx chb_p = chi_breve(r, z0, z0);
  cx chb_m = chi_breve(r, z0, -z0);
  cx ik(0.0, pc.kappa);
  pc.delta0_B = std::pow(cx(8.0 * pc.tau, 0.0), -ik / 2.0) * std::exp(-iu * pc.tau) *
                std::exp(chb_p) * eta_p;
  pc.delta0_A = std::pow(cx(8.0 * pc.tau, 0.0), ik / 2.0) * std::exp(iu * pc.tau) *
                std::exp(chb_m) * eta_m;
  double s2pi = std::sqrt(2.0 * pi);
  double damp = std::exp(-pi * pc.kappa / 2.0);
  pc.beta12 = s2pi * std::exp(iu * pi / 4.0) * damp / (r0 * cgamma(-ik));
  pc.beta21 = -s2pi * std::exp(-iu * pi / 4.0) * damp / (std::conj(r0) * cgamma(ik));
  pc.mB1 = {cx(0.0), -iu * pc.beta12, iu * pc.beta21, cx(0.0)};
  // mA1 = -sigma3 conj(mB1) sigma3 (off-diagonal entries flip sign twice
  // under the conjugation, once under the minus => entrywise conj with sign)
  pc.mA1 = {-std::conj(pc.mB1.a11), std::conj(pc.mB1.a12), std::conj(pc.mB1.a21),
            -std::conj(pc.mB1.a22)};
  return pc;
}

// Phase shift entering the radiative leading order.
template <typename R>
double phase_phi(const R& r, double z0, const std::vector<KinkDatum>& kinks_B = {},
                 const std::vector<BreatherDatum>& breathers_B = {}) {
  cx r0 = r(z0);
  double kap = kappa_of(r0);
  double L0 = std::log(1.0 + std::norm(r0));
  auto f = [&](double s) {
    return cx((std::log(1.0 + std::norm(r(s))) - L0) / (s - z0), 0.0);
  };
  double pvint = detail::panel_integral(f, -z0, z0, 12).real() / pi;
  double disc = 0.0;
  for (const auto& k : kinks_B) disc += std::arg(cx(z0, 0.0) - cx(0.0, k.zeta));
  for (const auto& b : breathers_B) {
    disc += std::arg(cx(z0, 0.0) - b.z);
    disc += std::arg(cx(z0, 0.0) + std::conj(b.z));
  }
  return -std::arg(cgamma(cx(0.0, kap))) + pi / 4.0 - std::arg(std::conj(r0)) + pvint -
         4.0 * disc;
}

// Leading-order radiation field inside the light cone for solitonless data:
//   cos f = 1 - (4|kappa|/tau) cos^2(S),  sin f = sqrt(8|kappa|/tau) cos(S),
//   S = 2 tau + kappa log(8 tau) + phi(z0).
struct RadiationLead {
  double cos_f = 1.0, sin_f = 0.0, envelope = 0.0, phase = 0.0;
  double z0 = 0.0, tau = 0.0, kappa = 0.0;
};

template <typename R>
RadiationLead radiation_solitonless(const R& r, double x, double t) {
  RadiationLead out;
  out.z0 = stationary_point(x, t);
  out.tau = tau_of(t, out.z0);
  cx r0 = r(out.z0);
  out.kappa = kappa_of(r0);
  double ak = std::abs(out.kappa);
  out.phase = 2.0 * out.tau + out.kappa * std::log(8.0 * out.tau) + phase_phi(r, out.z0);
  out.envelope = std::sqrt(8.0 * ak / out.tau);
  double c = std::cos(out.phase);
  out.sin_f = out.envelope * c;
  out.cos_f = 1.0 - (4.0 * ak / out.tau) * c * c;
  return out;
}

// Subleading correction terms assembled from the local model solutions.
// m_p, m_m are the global model values at +z0 and -z0, m0 the value at the
// origin; dA, dB the scalar model constants; b12, b21 the parabolic-cylinder
// coefficients.  bb12 = conj(b12), bb21 = conj(b21).
struct Corrections {
  double R_cos = 0.0, R_sin = 0.0;
};

inline Corrections correction_terms(const Mat2& m_m, const Mat2& m_p, const Mat2& m0, cx dA,
                                    cx dB, cx b12, cx b21, double t, double z0) {
  double tau = tau_of(t, z0);
  double pref = 2.0 / std::sqrt(tau);
  cx bb12 = std::conj(b12), bb21 = std::conj(b21);
  cx A2 = dA * dA, B2 = dB * dB;
  cx iA = iu * A2 * bb12, iAi = iu * bb21 / A2;
  cx iB = iu * B2 * b12, iBi = iu * b21 / B2;
  cx term1 = (-m_m.a11 * m_m.a11 * iA - m_m.a12 * m_m.a12 * iAi + m_p.a11 * m_p.a11 * iB +
              m_p.a12 * m_p.a12 * iBi) *
             (m0.a21 * m0.a22);
  cx term2 = (m_m.a21 * m_m.a21 * iA + m_m.a12 * m_m.a12 * iAi - m_p.a21 * m_p.a21 * iB -
              m_p.a22 * m_p.a22 * iBi) *
             (m0.a11 * m0.a12);
  cx sinsum = (m_m.a21 * m_m.a21 * iA + m_m.a12 * m_m.a12 * iAi - m_p.a21 * m_p.a21 * iB -
               m_p.a22 * m_p.a22 * iBi) *
              (m0.a11 * m0.a22 + m0.a12 * m0.a21);
  Corrections c;
  c.R_cos = std::real(pref * (term1 + term2));
  c.R_sin = std::real(pref * sinsum);
  return c;
}

// Decay rates of the remainder outside the light cone, as a function of the
// weight exponent p in (1, 2).
struct ExteriorRates {
  double cos_rate, sin_rate;
};

inline ExteriorRates exterior_rates(double p = 1.9) {
  return {-3.0 + 2.0 / p, -1.5 + 1.0 / p};
}

}  // namespace sg

#endif
