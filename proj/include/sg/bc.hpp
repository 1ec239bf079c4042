#ifndef SG_BC_HPP
#define SG_BC_HPP

#include <Eigen/Dense>

#include <cmath>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <vector>

#include "common.hpp"
#include "field.hpp"
#include "grid.hpp"
#include "interp.hpp"
#include "reflectionless.hpp"
#include "spectrum.hpp"
#include "theta.hpp"

namespace sg {

// ---------------------------------------------------------------------------
// Discretized principal-value Cauchy transform on the truncated real contour.
//
// The grid consists of two open components (negative and positive branch of
// the lambda-uniform grid).  For a node s_i the PV integral is regularized by
// subtraction,
//   PV int phi/(s - s_i) ds
//     = int (phi(s) - phi(s_i))/(s - s_i) ds + phi(s_i) sum_c ln|(b_c - s_i)/(a_c - s_i)|,
// and the removable j = i term is filled with a finite-difference derivative.
// C_plus/minus phi = +-(1/2) phi + (1/(2 pi i)) M phi on the contour.
// ---------------------------------------------------------------------------
class CauchyOperator {
 public:
  explicit CauchyOperator(const SpectralGrid& g) : grid_(g) {
    std::size_t n = g.size();
    std::size_t m = n / 2;  // nodes per component
    Eigen::MatrixXd M = Eigen::MatrixXd::Zero(n, n);
    // Component endpoints for the PV log term, pushed half a node spacing
    // beyond the extreme nodes so the log stays finite at endpoint nodes; the
    // committed error is O(|r|) at the truncation radius, where r has decayed.
    double a0 = g.z.front() - 0.5 * (g.z[1] - g.z[0]);
    double b0 = g.z[m - 1] + 0.5 * (g.z[m - 1] - g.z[m - 2]);
    double a1 = g.z[m] - 0.5 * (g.z[m + 1] - g.z[m]);
    double b1 = g.z.back() + 0.5 * (g.z[n - 1] - g.z[n - 2]);
    for (std::size_t i = 0; i < n; ++i) {
      double si = g.z[i];
      double diag = std::log(std::abs((b0 - si) / (a0 - si))) +
                    std::log(std::abs((b1 - si) / (a1 - si)));
      for (std::size_t j = 0; j < n; ++j) {
        if (j == i) continue;
        double k = g.w[j] / (g.z[j] - si);
        M(i, j) += k;
        diag -= k;
      }
      M(i, i) += diag;
      // derivative correction for the removable j = i term, using neighbors
      // inside the same component
      std::size_t lo = (i < m) ? 0 : m, hi = (i < m) ? m - 1 : n - 1;
      std::size_t jm = (i > lo) ? i - 1 : i, jp = (i < hi) ? i + 1 : i;
      double span = g.z[jp] - g.z[jm];
      if (jp != jm) {
        M(i, jp) += g.w[i] / span;
        M(i, jm) -= g.w[i] / span;
      }
    }
    Mc_ = M.cast<cx>();
  }

  // (1/(2 pi i)) * PV integral, as a dense matrix apply
  Eigen::VectorXcd pv(const Eigen::VectorXcd& phi) const {
    return (Mc_ * phi) / (2.0 * pi * iu);
  }

  const SpectralGrid& grid() const { return grid_; }

 private:
  SpectralGrid grid_;
  Eigen::MatrixXcd Mc_;
};

// ---------------------------------------------------------------------------
// GMRES (no restart, modified Gram-Schmidt Arnoldi + Givens rotations)
// ---------------------------------------------------------------------------
struct GmresResult {
  bool converged = false;
  int iterations = 0;
  double residual = 0.0;
};

inline GmresResult gmres(const std::function<Eigen::VectorXcd(const Eigen::VectorXcd&)>& A,
                         const Eigen::VectorXcd& b, Eigen::VectorXcd& x, double tol = 1e-10,
                         int maxit = 200) {
  using Vec = Eigen::VectorXcd;
  GmresResult res;
  double bnorm = b.norm();
  if (bnorm == 0.0) {
    x.setZero(b.size());
    res.converged = true;
    return res;
  }
  Vec r = b - A(x);
  double beta = r.norm();
  if (beta / bnorm < tol) {
    res.converged = true;
    res.residual = beta / bnorm;
    return res;
  }
  std::vector<Vec> V;
  V.push_back(r / beta);
  Eigen::MatrixXcd H = Eigen::MatrixXcd::Zero(maxit + 1, maxit);
  std::vector<cx> cs(maxit), sn(maxit);
  Eigen::VectorXcd g = Eigen::VectorXcd::Zero(maxit + 1);
  g(0) = beta;
  int k = 0;
  for (; k < maxit; ++k) {
    Vec w = A(V[k]);
    for (int j = 0; j <= k; ++j) {
      H(j, k) = V[j].dot(w);  // conjugate dot
      w -= H(j, k) * V[j];
    }
    H(k + 1, k) = w.norm();
    if (std::abs(H(k + 1, k)) > 1e-300) V.push_back(w / H(k + 1, k));
    // apply accumulated rotations
    for (int j = 0; j < k; ++j) {
      cx t = cs[j] * H(j, k) + sn[j] * H(j + 1, k);
      H(j + 1, k) = -std::conj(sn[j]) * H(j, k) + std::conj(cs[j]) * H(j + 1, k);
      H(j, k) = t;
    }
    double d = std::hypot(std::abs(H(k, k)), std::abs(H(k + 1, k)));
    if (d == 0.0) { cs[k] = 1.0; sn[k] = 0.0; }
    else { cs[k] = std::conj(H(k, k)) / d; sn[k] = std::conj(H(k + 1, k)) / d; }
    H(k, k) = cs[k] * H(k, k) + sn[k] * H(k + 1, k);
    H(k + 1, k) = 0.0;
    cx t = cs[k] * g(k);
    g(k + 1) = -std::conj(sn[k]) * g(k);
    g(k) = t;
    res.residual = std::abs(g(k + 1)) / bnorm;
    if (res.residual < tol) { ++k; break; }
    if (static_cast<int>(V.size()) == k + 1) { ++k; break; }  // breakdown => solved
  }
  // back substitution
  Eigen::VectorXcd y = Eigen::VectorXcd::Zero(k);
  for (int i = k - 1; i >= 0; --i) {
    cx s = g(i);
    for (int j = i + 1; j < k; ++j) s -= H(i, j) * y(j);
    y(i) = s / H(i, i);
  }
  for (int i = 0; i < k; ++i) x += y(i) * V[i];
  res.iterations = k;
  res.converged = res.residual < tol;
  return res;
}

// ---------------------------------------------------------------------------
// Full inverse transform: solve the singular integral equation
//   mu_c1 = e1 + C_minus[mu_c2 r e^{2 i theta}] + sum_a g_a mu_c2(p_a)/(. - p_a)
//   mu_c2 = e2 + C_plus [mu_c1 rbar e^{-2 i theta}] + sum_b h_b mu_c1(q_b)/(. - q_b)
// on the truncated contour, with the pole values closed through the same
// Cauchy kernel evaluated off the contour, then read off m(x, t; 0) from
//   m(0) = I + (1/(2 pi i)) int mu w / s ds - pole terms / p
// and  sin f = 2 m21 m22,  cos f = 1 + 2 m12 m21.
// The z -> infinity coefficient additionally yields  f_x + f_t = -2i (m1)_12,
// used to recover f_t without extra time slices.
// ---------------------------------------------------------------------------
struct BcOptions {
  double gmres_tol = 1e-11;
  int gmres_maxit = 250;
  bool dense_fallback = true;  // direct solve if GMRES stalls and size permits
};

struct BcPointResult {
  double sin_f = 0.0, cos_f = 1.0;
  double fx_plus_ft = 0.0;
  Mat2 m0 = Mat2::identity();
  bool converged = true;
};

class BcSolver {
 public:
  BcSolver(const ScatteringData& data, BcOptions opt = {})
      : data_(data), cop_(data.grid), opt_(opt) {
    n_ = data.grid.size();
    if (data.r.size() != n_) throw std::runtime_error("reflection data does not match grid");
  }

  BcPointResult solve_point(double x, double t) const {
    using Vec = Eigen::VectorXcd;
    const SpectralGrid& g = data_.grid;
    std::size_t N = n_;
    PoleSystem ps = PoleSystem::at(data_, x, t);
    std::size_t P = ps.size();
    std::size_t dim = 4 * N + 4 * P;

    // phase-dressed reflection samples on the grid
    Vec rho(N), rhob(N);
    for (std::size_t j = 0; j < N; ++j) {
      cx ph = clamped_exp(2.0 * iu * theta(cx(g.z[j], 0.0), x, t));
      rho(j) = data_.r[j] * ph;
      rhob(j) = std::conj(data_.r[j]) / ph;
    }

    // unknown layout: [mu11 N | mu21 N | mu12 N | mu22 N |
    //                  mu12(p) P | mu22(p) P | mu11(q) P | mu21(q) P]
    auto seg11 = [&](Vec& v) { return v.segment(0, N); };
    (void)seg11;
    auto apply = [&](const Vec& X) {
      Vec Y(dim);
      auto m11 = X.segment(0, N), m21 = X.segment(N, N);
      auto m12 = X.segment(2 * N, N), m22 = X.segment(3 * N, N);
      // C_minus on column 1, C_plus on column 2 (half-jump + PV part)
      Vec f12 = m12.cwiseProduct(rho), f22 = m22.cwiseProduct(rho);
      Vec f11 = m11.cwiseProduct(rhob), f21 = m21.cwiseProduct(rhob);
      Vec c12 = cop_.pv(f12) - 0.5 * f12;  // C_minus
      Vec c22 = cop_.pv(f22) - 0.5 * f22;
      Vec c11 = cop_.pv(f11) + 0.5 * f11;  // C_plus
      Vec c21 = cop_.pv(f21) + 0.5 * f21;
      Y.segment(0, N) = m11 - c12;
      Y.segment(N, N) = m21 - c22;
      Y.segment(2 * N, N) = m12 - c11;
      Y.segment(3 * N, N) = m22 - c21;
      if (P > 0) {
        auto p12 = X.segment(4 * N, P), p22 = X.segment(4 * N + P, P);
        auto q11 = X.segment(4 * N + 2 * P, P), q21 = X.segment(4 * N + 3 * P, P);
        // pole kernels on the contour rows
        for (std::size_t i = 0; i < N; ++i) {
          cx s = cx(g.z[i], 0.0);
          cx a1 = 0.0, a2 = 0.0, b1 = 0.0, b2 = 0.0;
          for (std::size_t a = 0; a < P; ++a) {
            cx k = ps.g[a] / (s - ps.p[a]);
            a1 += k * p12(a);
            a2 += k * p22(a);
          }
          for (std::size_t b = 0; b < P; ++b) {
            cx k = ps.h[b] / (s - ps.q[b]);
            b1 += k * q11(b);
            b2 += k * q21(b);
          }
          Y(i) -= a1;
          Y(N + i) -= a2;
          Y(2 * N + i) -= b1;
          Y(3 * N + i) -= b2;
        }
        // pole rows: Cauchy evaluated off-contour + pole-pole coupling
        for (std::size_t a = 0; a < P; ++a) {
          cx c1 = 0.0, c2 = 0.0;
          for (std::size_t j = 0; j < N; ++j) {
            cx k = g.w[j] / (g.z[j] - ps.p[a]) / (2.0 * pi * iu);
            c1 += k * f11(j);
            c2 += k * f21(j);
          }
          for (std::size_t b = 0; b < P; ++b) {
            cx k = ps.h[b] / (ps.p[a] - ps.q[b]);
            c1 += k * q11(b);
            c2 += k * q21(b);
          }
          Y(4 * N + a) = p12(a) - c1;
          Y(4 * N + P + a) = p22(a) - c2;
        }
        for (std::size_t b = 0; b < P; ++b) {
          cx c1 = 0.0, c2 = 0.0;
          for (std::size_t j = 0; j < N; ++j) {
            cx k = g.w[j] / (g.z[j] - ps.q[b]) / (2.0 * pi * iu);
            c1 += k * f12(j);
            c2 += k * f22(j);
          }
          for (std::size_t a = 0; a < P; ++a) {
            cx k = ps.g[a] / (ps.q[b] - ps.p[a]);
            c1 += k * p12(a);
            c2 += k * p22(a);
          }
          Y(4 * N + 2 * P + b) = q11(b) - c1;
          Y(4 * N + 3 * P + b) = q21(b) - c2;
        }
      }
      return Y;
    };

    Vec rhs = Vec::Zero(dim);
    rhs.segment(0, N).setOnes();       // e1 drives mu11
    rhs.segment(3 * N, N).setOnes();   // e2 drives mu22
    for (std::size_t a = 0; a < P; ++a) rhs(4 * N + P + a) = 1.0;      // mu22(p)
    for (std::size_t b = 0; b < P; ++b) rhs(4 * N + 2 * P + b) = 1.0;  // mu11(q)

    Vec X = rhs;  // identity initial guess
    GmresResult gr = gmres(apply, rhs, X, opt_.gmres_tol, opt_.gmres_maxit);
    if (!gr.converged && opt_.dense_fallback && dim <= 2048) {
      Eigen::MatrixXcd A(dim, dim);
      Vec e = Vec::Zero(dim);
      for (std::size_t j = 0; j < dim; ++j) {
        e(j) = 1.0;
        A.col(j) = apply(e);
        e(j) = 0.0;
      }
      X = A.partialPivLu().solve(rhs);
      gr.converged = true;
    }

    BcPointResult out;
    out.converged = gr.converged;
    auto m11v = X.segment(0, N), m21v = X.segment(N, N);
    auto m12v = X.segment(2 * N, N), m22v = X.segment(3 * N, N);
    Vec rhoV(N), rhobV(N);
    for (std::size_t j = 0; j < N; ++j) {
      rhoV(j) = rho(j);
      rhobV(j) = rhob(j);
    }
    cx m11 = 1.0, m21 = 0.0, m12 = 0.0, m22 = 1.0;
    cx one21 = 0.0, one12 = 0.0;  // z^-1 coefficients (columns 1 and 2)
    for (std::size_t j = 0; j < N; ++j) {
      cx k = g.w[j] / (2.0 * pi * iu);
      m11 += k * m12v(j) * rhoV(j) / g.z[j];
      m21 += k * m22v(j) * rhoV(j) / g.z[j];
      m12 += k * m11v(j) * rhobV(j) / g.z[j];
      m22 += k * m21v(j) * rhobV(j) / g.z[j];
      one21 += -k * m22v(j) * rhoV(j);
      one12 += -k * m11v(j) * rhobV(j);
    }
    for (std::size_t a = 0; a < P; ++a) {
      m11 -= ps.g[a] * X(4 * N + a) / ps.p[a];
      m21 -= ps.g[a] * X(4 * N + P + a) / ps.p[a];
      one21 += ps.g[a] * X(4 * N + P + a);
    }
    for (std::size_t b = 0; b < P; ++b) {
      m12 -= ps.h[b] * X(4 * N + 2 * P + b) / ps.q[b];
      m22 -= ps.h[b] * X(4 * N + 3 * P + b) / ps.q[b];
      one12 += ps.h[b] * X(4 * N + 2 * P + b);
    }
    out.m0 = {m11, m12, m21, m22};
    out.sin_f = std::real(2.0 * m21 * m22);
    out.cos_f = std::real(1.0 + 2.0 * m12 * m21);
    out.fx_plus_ft = std::real(-2.0 * iu * 0.5 * (one12 + one21));
    return out;
  }

 private:
  ScatteringData data_;
  CauchyOperator cop_;
  BcOptions opt_;
  std::size_t n_ = 0;
};

// Reconstruct the field on an x-grid at time t.  f is unwrapped from its
// sin/cos pair starting at the left topological sector, f_x is obtained by
// differentiating the reconstruction in x, and f_t = (f_x + f_t) - f_x from
// the first-order coefficient of the solved problem.
inline FieldState reconstruct_full(const ScatteringData& d, const std::vector<double>& xs,
                                   double t, int l_minus = 0, BcOptions opt = {}) {
  BcSolver solver(d, opt);
  std::size_t n = xs.size();
  std::vector<double> sinf(n), cosf(n), dual(n);
  parallel_for(n, [&](std::size_t i) {
    BcPointResult r = solver.solve_point(xs[i], t);
    sinf[i] = r.sin_f;
    cosf[i] = r.cos_f;
    dual[i] = r.fx_plus_ft;
  });
  FieldState st;
  st.xs = xs;
  st.t = t;
  st.l_minus = l_minus;
  st.f = unwrap_angles(sinf, cosf, l_minus);
  st.l_plus = static_cast<int>(std::lround(st.f.back() / (2.0 * pi)));
  std::vector<double> fx = derivative_x(st.f, xs.size() > 1 ? xs[1] - xs[0] : 1.0);
  st.ft.resize(n);
  for (std::size_t i = 0; i < n; ++i) st.ft[i] = dual[i] - fx[i];
  return st;
}

}  // namespace sg

#endif
