#ifndef SG_REFLECTIONLESS_HPP
#define SG_REFLECTIONLESS_HPP

#include <Eigen/Dense>

#include <cmath>
#include <vector>

#include "common.hpp"
#include "field.hpp"
#include "spectrum.hpp"
#include "theta.hpp"

namespace sg {

// With r = 0 the Beals-Coifman equation closes on the pole values of mu and
// the reconstruction reduces to a dense linear system.  Pole bookkeeping
// (signs folded into the residue coefficients g, h so every kernel is
// coeff/(z - pole)):
//   "plus" poles  p_a in C+ driving column 1:
//       z_k with g = c_k e^{2 i theta(z_k)}
//       z_j with g = c_j e^{2 i theta(z_j)}
//      -conj z_j with g = -conj(c_j) e^{2 i theta(-conj z_j)}
//   "minus" poles q_b in C- driving column 2:
//       conj z_k with h = -conj(c_k) e^{-2 i theta(conj z_k)}
//       conj z_j with h = -conj(c_j) e^{-2 i theta(conj z_j)}
//      -z_j      with h =  c_j e^{-2 i theta(-z_j)}
struct PoleSystem {
  std::vector<cx> p, g;  // C+ poles and residue coefficients (column 1)
  std::vector<cx> q, h;  // C- poles and residue coefficients (column 2)

  static PoleSystem at(const ScatteringData& d, double x, double t) {
    PoleSystem ps;
    auto add = [&](cx z, cx c) {
      cx zb = std::conj(z), cb = std::conj(c);
      ps.p.push_back(z);
      ps.g.push_back(c * clamped_exp(2.0 * iu * theta(z, x, t)));
      ps.q.push_back(zb);
      ps.h.push_back(-cb * clamped_exp(-2.0 * iu * theta(zb, x, t)));
    };
    for (const auto& k : d.kinks) add(cx(0.0, k.zeta), k.c);
    for (const auto& b : d.breathers) {
      add(b.z, b.c);
      cx z = b.z, c = b.c, zb = std::conj(z), cb = std::conj(c);
      ps.p.push_back(-zb);
      ps.g.push_back(-cb * clamped_exp(2.0 * iu * theta(-zb, x, t)));
      ps.q.push_back(-z);
      ps.h.push_back(c * clamped_exp(-2.0 * iu * theta(-z, x, t)));
    }
    return ps;
  }

  std::size_t size() const { return p.size(); }
};

struct Reconstruction {
  double sin_f = 0.0, cos_f = 1.0;
  Mat2 m0 = Mat2::identity();
};

// Solve the two closed scalar systems
//   mu12(p_a) = 0 + sum_b h_b mu11(q_b)/(p_a - q_b),  mu11(q_b) = 1 + sum_a g_a mu12(p_a)/(q_b - p_a)
//   mu22(p_a) = 1 + sum_b h_b mu21(q_b)/(p_a - q_b),  mu21(q_b) = 0 + sum_a g_a mu22(p_a)/(q_b - p_a)
// and read off m(0) = I - sum_a g_a (mu12, mu22)(p_a)/p_a (col 1)
//                       - sum_b h_b (mu11, mu21)(q_b)/q_b (col 2).
inline Reconstruction reconstruct_reflectionless(const ScatteringData& d, double x, double t) {
  PoleSystem ps = PoleSystem::at(d, x, t);
  std::size_t P = ps.size();
  Reconstruction rec;
  if (P == 0) return rec;

  using Mat = Eigen::MatrixXcd;
  using Vec = Eigen::VectorXcd;
  Mat A = Mat::Identity(2 * P, 2 * P);
  // unknown layout: [mu1x(p_a) (P), mu1y(q_b) (P)] shared by both systems
  for (std::size_t a = 0; a < P; ++a)
    for (std::size_t b = 0; b < P; ++b) {
      A(a, P + b) -= ps.h[b] / (ps.p[a] - ps.q[b]);
      A(P + b, a) -= ps.g[a] / (ps.q[b] - ps.p[a]);
    }
  Eigen::PartialPivLU<Mat> lu(A);

  Vec rhs1 = Vec::Zero(2 * P), rhs2 = Vec::Zero(2 * P);
  for (std::size_t b = 0; b < P; ++b) rhs1(P + b) = 1.0;  // mu11 driven by identity
  for (std::size_t a = 0; a < P; ++a) rhs2(a) = 1.0;      // mu22 driven by identity
  Vec s1 = lu.solve(rhs1);  // [mu12(p), mu11(q)]
  Vec s2 = lu.solve(rhs2);  // [mu22(p), mu21(q)]

  cx m11 = 1.0, m21 = 0.0, m12 = 0.0, m22 = 1.0;
  for (std::size_t a = 0; a < P; ++a) {
    m11 -= ps.g[a] * s1(a) / ps.p[a];
    m21 -= ps.g[a] * s2(a) / ps.p[a];
  }
  for (std::size_t b = 0; b < P; ++b) {
    m12 -= ps.h[b] * s1(P + b) / ps.q[b];
    m22 -= ps.h[b] * s2(P + b) / ps.q[b];
  }
  rec.m0 = {m11, m12, m21, m22};
  rec.sin_f = std::real(2.0 * m21 * m22);
  rec.cos_f = std::real(1.0 + 2.0 * m12 * m21);
  return rec;
}

// Unwrap f = atan2(sin f, cos f) into a continuous branch starting from the
// prescribed left sector 2 pi l_minus.
inline std::vector<double> unwrap_angles(const std::vector<double>& sinf,
                                         const std::vector<double>& cosf, int l_minus) {
  std::vector<double> f(sinf.size());
  double prev = 0.0, offset = 2.0 * pi * l_minus;
  for (std::size_t i = 0; i < sinf.size(); ++i) {
    double a = std::atan2(sinf[i], cosf[i]);
    if (i == 0) {
      prev = a;
      // put the first sample on the branch closest to the asymptotic sector
      offset = 2.0 * pi * std::lround((2.0 * pi * l_minus - a) / (2.0 * pi));
    } else {
      double d = a - prev;
      while (d > pi) { d -= 2.0 * pi; }
      while (d < -pi) { d += 2.0 * pi; }
      a = prev + d;
      prev = a;
    }
    f[i] = a + offset;
  }
  return f;
}

// Pointwise N-soliton field as an ExactSolution (ft by high-order finite
// differencing of the reconstruction in t; the reconstruction itself is exact
// up to the dense-solve roundoff).
inline ExactSolution reflectionless_solution(const ScatteringData& d) {
  auto fval = [d](double x, double t) {
    Reconstruction r = reconstruct_reflectionless(d, x, t);
    return std::atan2(r.sin_f, r.cos_f);
  };
  auto f = [d](double x, double t) {
    Reconstruction r = reconstruct_reflectionless(d, x, t);
    return std::atan2(r.sin_f, r.cos_f);
  };
  auto ft = [fval](double x, double t) {
    double h = 1e-3;
    // 4th order central difference on the continuous angle: use sin/cos to
    // stay off the branch cut.
    auto s = [&](double tt) {
      return fval(x, tt);
    };
    double f1 = s(t - 2 * h), f2 = s(t - h), f3 = s(t + h), f4 = s(t + 2 * h);
    auto fix = [&](double& v, double ref) {
      while (v - ref > pi) v -= 2.0 * pi;
      while (v - ref < -pi) v += 2.0 * pi;
    };
    double ref = s(t);
    fix(f1, ref); fix(f2, ref); fix(f3, ref); fix(f4, ref);
    return (f1 - 8.0 * f2 + 8.0 * f3 - f4) / (12.0 * h);
  };
  return {f, ft};
}

inline FieldState reconstruct_reflectionless_field(const ScatteringData& d,
                                                   const std::vector<double>& xs, double t,
                                                   int l_minus = 0, bool with_ft = true) {
  std::size_t n = xs.size();
  std::vector<double> sinf(n), cosf(n), ft(n, 0.0);
  ExactSolution sol = reflectionless_solution(d);
  parallel_for(n, [&](std::size_t i) {
    Reconstruction r = reconstruct_reflectionless(d, xs[i], t);
    sinf[i] = r.sin_f;
    cosf[i] = r.cos_f;
    if (with_ft) ft[i] = sol.ft(xs[i], t);
  });
  FieldState st;
  st.xs = xs;
  st.t = t;
  st.f = unwrap_angles(sinf, cosf, l_minus);
  st.ft = ft;
  st.l_minus = l_minus;
  st.l_plus = static_cast<int>(std::lround(st.f.back() / (2.0 * pi)));
  return st;
}

}  // namespace sg

#endif
