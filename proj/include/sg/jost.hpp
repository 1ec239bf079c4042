#ifndef SG_JOST_HPP
#define SG_JOST_HPP

#include <array>
#include <cmath>
#include <functional>
#include <stdexcept>
#include <vector>

#include "common.hpp"
#include "field.hpp"
#include "interp.hpp"
#include "theta.hpp"

namespace sg {

// Field data as smooth callables for the spectral ODEs.  Outside the sampled
// window the field is clamped to its asymptotic values, where both Lax
// potentials vanish identically.
struct SampledPotential {
  CubicSpline sf, sft;
  double xlo = 0.0, xhi = 0.0;
  int l_minus = 0, l_plus = 0;

  static SampledPotential make(const FieldState& st) {
    st.validate();
    SampledPotential p;
    p.sf = CubicSpline(st.xs.front(), st.dx(), st.f);
    p.sft = CubicSpline(st.xs.front(), st.dx(), st.ft);
    p.xlo = st.xs.front();
    p.xhi = st.xs.back();
    p.l_minus = st.l_minus;
    p.l_plus = st.l_plus;
    return p;
  }

  double f(double x) const {
    if (x <= xlo) return 2.0 * pi * l_minus;
    if (x >= xhi) return 2.0 * pi * l_plus;
    return sf.value(x);
  }
  double fx(double x) const { return (x <= xlo || x >= xhi) ? 0.0 : sf.derivative(x); }
  double ft(double x) const { return (x <= xlo || x >= xhi) ? 0.0 : sft.value(x); }

  int sector_sign() const {
    int s = l_minus + l_plus;
    return (((s % 2) + 2) % 2 == 0) ? +1 : -1;
  }
};

// Original Lax potential U(x,z); the spectral problem is Psi_x = (-J + U) Psi
// with J = (i/4)(z - 1/z) sigma3.
inline Mat2 potential_U(const SampledPotential& p, double x, cx z) {
  double f = p.f(x), fx = p.fx(x), ft = p.ft(x);
  double c = std::cos(f), s = std::sin(f);
  cx q = iu / (4.0 * z);
  double d = 0.25 * (fx + ft);
  return {q * (c - 1.0), q * s - d, q * s + d, -q * (c - 1.0)};
}

// Gauge-transformed potential, regular at z = 0.  With Phi = R(f/2)^{-1} Psi
// (R a rotation by f/2) one gets Phi_x = (-J + Vt) Phi; since R(f/2) tends to
// (-1)^{l_pm} I, the gauge scattering matrix differs from S by the overall
// sign (-1)^{l_minus + l_plus}.
inline Mat2 potential_V(const SampledPotential& p, double x, cx z) {
  double f = p.f(x), fx = p.fx(x), ft = p.ft(x);
  double c = std::cos(f), s = std::sin(f);
  cx q = iu * z / 4.0;
  double d = 0.25 * (fx - ft);
  return {-q * (c - 1.0), q * s + d, q * s - d, q * (c - 1.0)};
}

// Hard switch between the two systems on the unit circle.
inline Mat2 lax_potential(const SampledPotential& p, double x, cx z, bool gauge) {
  return gauge ? potential_V(p, x, z) : potential_U(p, x, z);
}

inline bool use_gauge(cx z) { return std::abs(z) < 1.0; }

// ---------------------------------------------------------------------------
// Dormand-Prince RK5(4) with PI-free adaptive stepping on fixed-size complex
// state vectors.
// ---------------------------------------------------------------------------

template <std::size_t K>
using StateVec = std::array<cx, K>;

template <std::size_t K>
struct Rk45 {
  double tol = 1e-10;
  double hmax = 1.0;
  long max_steps = 2000000;

  using Rhs = std::function<void(double, const StateVec<K>&, StateVec<K>&)>;

  // Integrate y from a to b (either direction); optionally report the state at
  // interior sample points (must be ordered along the direction of travel).
  void solve(double a, double b, StateVec<K>& y, const Rhs& rhs,
             const std::vector<double>* samples = nullptr,
             std::vector<StateVec<K>>* at_samples = nullptr) const {
    static constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
    static constexpr double a21 = 1.0 / 5;
    static constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
    static constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
    static constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187,
                            a53 = 64448.0 / 6561, a54 = -212.0 / 729;
    static constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                            a64 = 49.0 / 176, a65 = -5103.0 / 18656;
    static constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
                            b5 = -2187.0 / 6784, b6 = 11.0 / 84;
    static constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                            e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;

    double dir = (b >= a) ? 1.0 : -1.0;
    double x = a;
    double h = dir * std::min(hmax, 0.1 * std::abs(b - a) + 1e-12);
    std::size_t next_sample = 0;
    StateVec<K> k1, k2, k3, k4, k5, k6, k7, yt, y5;
    rhs(x, y, k1);
    for (long n = 0; n < max_steps; ++n) {
      if (dir * (x - b) >= 0.0) break;
      if (dir * (x + h - b) > 0.0) h = b - x;
      bool sample_hit = false;
      double h_try = h;
      if (samples && next_sample < samples->size()) {
        double xs = (*samples)[next_sample];
        if (dir * (x + h - xs) >= 0.0 && dir * (xs - x) > 1e-14) {
          h_try = xs - x;
          sample_hit = true;
        } else if (dir * (xs - x) <= 1e-14) {
          if (at_samples) at_samples->push_back(y);
          ++next_sample;
          continue;
        }
      }
      double hh = h_try;
      auto stage = [&](const StateVec<K>& base) { rhs(x, base, k2); };
      (void)stage;
      for (std::size_t i = 0; i < K; ++i) yt[i] = y[i] + hh * a21 * k1[i];
      rhs(x + c2 * hh, yt, k2);
      for (std::size_t i = 0; i < K; ++i) yt[i] = y[i] + hh * (a31 * k1[i] + a32 * k2[i]);
      rhs(x + c3 * hh, yt, k3);
      for (std::size_t i = 0; i < K; ++i)
        yt[i] = y[i] + hh * (a41 * k1[i] + a42 * k2[i] + a43 * k3[i]);
      rhs(x + c4 * hh, yt, k4);
      for (std::size_t i = 0; i < K; ++i)
        yt[i] = y[i] + hh * (a51 * k1[i] + a52 * k2[i] + a53 * k3[i] + a54 * k4[i]);
      rhs(x + c5 * hh, yt, k5);
      for (std::size_t i = 0; i < K; ++i)
        yt[i] = y[i] + hh * (a61 * k1[i] + a62 * k2[i] + a63 * k3[i] + a64 * k4[i] + a65 * k5[i]);
      rhs(x + hh, yt, k6);
      for (std::size_t i = 0; i < K; ++i)
        y5[i] = y[i] + hh * (b1 * k1[i] + b3 * k3[i] + b4 * k4[i] + b5 * k5[i] + b6 * k6[i]);
      rhs(x + hh, y5, k7);
      double err = 0.0, scale = 0.0;
      for (std::size_t i = 0; i < K; ++i) {
        cx e = hh * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] + e6 * k6[i] + e7 * k7[i]);
        err += std::norm(e);
        scale += std::norm(y5[i]) + 1.0;
      }
      err = std::sqrt(err / scale);
      if (err <= tol) {
        x += hh;
        y = y5;
        k1 = k7;  // FSAL
        if (sample_hit && samples && next_sample < samples->size() &&
            std::abs(x - (*samples)[next_sample]) < 1e-12) {
          if (at_samples) at_samples->push_back(y);
          ++next_sample;
        }
      }
      double fac = 0.9 * std::pow(std::max(err, 1e-300) / tol, -0.2);
      fac = std::min(5.0, std::max(0.2, fac));
      h = dir * std::min(hmax, std::abs(h_try) * fac);
      if (std::abs(h) < 1e-14) throw std::runtime_error("Rk45: step size underflow");
    }
    // flush samples coinciding with the endpoint
    while (samples && next_sample < samples->size() &&
           std::abs(b - (*samples)[next_sample]) < 1e-9) {
      if (at_samples) at_samples->push_back(y);
      ++next_sample;
    }
  }
};

// ---------------------------------------------------------------------------
// Jost solutions and the scattering matrix on the real axis.
// ---------------------------------------------------------------------------

// S(z) = [[a, b_breve], [b, a_breve]] with Psi+ = Psi- S.
struct ScatteringMatrix {
  cx a, b, a_breve, b_breve;
  cx r() const { return -b / a_breve; }
};

struct JostOptions {
  double tol = 1e-10;
  double x_meet = 0.0;
  int force_gauge = -1;  // -1 = pick by |z|, 0 = original frame, 1 = gauged frame
};

inline bool pick_gauge(cx z, const JostOptions& opt) {
  return opt.force_gauge < 0 ? use_gauge(z) : opt.force_gauge != 0;
}

namespace detail {

// RHS for the phase-pulled full Jost matrix u with m = e^{-x ad J} u:
// u' = (e^{x ad J} W) u; off-diagonal potential entries pick up e^{+/- i lam x / 2}.
inline void jost_rhs_full(const SampledPotential& p, cx z, bool gauge, double x,
                          const StateVec<4>& u, StateVec<4>& du) {
  Mat2 W = lax_potential(p, x, z, gauge);
  cx lam = z - 1.0 / z;
  cx ph = std::exp(iu * lam * x * 0.5);  // e^{2 j x}, j = i lam / 4
  cx w12 = W.a12 * ph, w21 = W.a21 / ph;
  // u laid out row-major: u11 u12 u21 u22
  du[0] = W.a11 * u[0] + w12 * u[2];
  du[1] = W.a11 * u[1] + w12 * u[3];
  du[2] = w21 * u[0] + W.a22 * u[2];
  du[3] = w21 * u[1] + W.a22 * u[3];
}

}  // namespace detail

// Jost matrices u-(x_meet), u+(x_meet) for real z (u agrees with m at x=0).
inline std::pair<Mat2, Mat2> jost_solve(const SampledPotential& p, double z,
                                        const JostOptions& opt = {}) {
  if (z == 0.0) throw std::invalid_argument("jost_solve: z = 0");
  bool gauge = pick_gauge(cx(z), opt);
  Rk45<4> ode;
  ode.tol = opt.tol;
  auto rhs = [&](double x, const StateVec<4>& u, StateVec<4>& du) {
    detail::jost_rhs_full(p, cx(z), gauge, x, u, du);
  };
  StateVec<4> um{1.0, 0.0, 0.0, 1.0}, up{1.0, 0.0, 0.0, 1.0};
  ode.solve(p.xlo, opt.x_meet, um, rhs);
  ode.solve(p.xhi, opt.x_meet, up, rhs);
  return {Mat2{um[0], um[1], um[2], um[3]}, Mat2{up[0], up[1], up[2], up[3]}};
}

inline ScatteringMatrix scattering_matrix(const SampledPotential& p, double z,
                                          const JostOptions& opt = {}) {
  auto [um, up] = jost_solve(p, z, opt);
  // The phase factors e^{+/- j x_meet} cancel in (Psi-)^{-1} Psi+ only at
  // x_meet = 0; keep the meeting point there for the S-matrix proper.
  Mat2 S = um.inv() * up;
  double sgn = pick_gauge(cx(z), opt) ? double(p.sector_sign()) : 1.0;
  return {sgn * S.a11, sgn * S.a21, sgn * S.a22, sgn * S.a12};
}

// r on the grid nodes; computed for z > 0 and extended by r(-z) = conj r(z).
template <class Grid>
std::vector<cx> reflection_coefficient(const SampledPotential& p, const Grid& grid,
                                       const JostOptions& opt = {}) {
  std::size_t n = grid.size();
  std::vector<cx> r(n);
  std::vector<std::size_t> pos;
  for (std::size_t i = 0; i < n; ++i)
    if (grid.z[i] > 0.0) pos.push_back(i);
  parallel_for(pos.size(), [&](std::size_t k) {
    std::size_t i = pos[k];
    r[i] = scattering_matrix(p, grid.z[i], opt).r();
  });
  for (std::size_t i = 0; i < n; ++i)
    if (grid.z[i] < 0.0) r[i] = std::conj(r[grid.mirror(i)]);
  return r;
}

// ---------------------------------------------------------------------------
// Analytic continuation: a_breve(z) for Im z > 0 via the column Wronskian
//   a_breve = det [ m-_1, m+_2 ](x); column ODEs stay bounded in the stable
// integration directions.
// ---------------------------------------------------------------------------

inline cx abreve_upper(const SampledPotential& p, cx z, double x_meet = 0.0,
                       double tol = 1e-10) {
  if (z.imag() <= 0.0) throw std::invalid_argument("abreve_upper: need Im z > 0");
  bool gauge = use_gauge(z);
  cx twoj = iu * (z - 1.0 / z) * 0.5;  // 2j = i lam / 2
  Rk45<2> ode;
  ode.tol = tol;
  // m-, column 1: v' = W v + diag(0, 2j) v, v(-inf) = (1,0)
  auto rhs_m = [&](double x, const StateVec<2>& v, StateVec<2>& dv) {
    Mat2 W = lax_potential(p, x, z, gauge);
    dv[0] = W.a11 * v[0] + W.a12 * v[1];
    dv[1] = W.a21 * v[0] + (W.a22 + twoj) * v[1];
  };
  // m+, column 2: w' = W w + diag(-2j, 0) w, w(+inf) = (0,1)
  auto rhs_p = [&](double x, const StateVec<2>& w, StateVec<2>& dw) {
    Mat2 W = lax_potential(p, x, z, gauge);
    dw[0] = (W.a11 - twoj) * w[0] + W.a12 * w[1];
    dw[1] = W.a21 * w[0] + W.a22 * w[1];
  };
  StateVec<2> v{1.0, 0.0}, w{0.0, 1.0};
  ode.solve(p.xlo, x_meet, v, rhs_m);
  ode.solve(p.xhi, x_meet, w, rhs_p);
  cx det = v[0] * w[1] - v[1] * w[0];
  return gauge ? cx(double(p.sector_sign())) * det : det;
}

// Derivative by a small Cauchy contour (spectrally accurate, no cancellation);
// the radius stays inside C+.
inline cx abreve_prime(const SampledPotential& p, cx z, double tol = 1e-10) {
  double rho = std::min(0.02 * std::max(1.0, std::abs(z)), 0.45 * z.imag());
  const int n = 16;
  cx acc = 0.0;
  for (int k = 0; k < n; ++k) {
    double phi = 2.0 * pi * double(k) / n;
    cx e = std::exp(iu * phi);
    acc += abreve_upper(p, z + rho * e, 0.0, tol) / e;
  }
  return acc / (double(n) * rho);
}

}  // namespace sg

#endif
