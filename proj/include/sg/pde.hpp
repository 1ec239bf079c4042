#ifndef SG_PDE_HPP
#define SG_PDE_HPP

#include <cmath>
#include <functional>
#include <stdexcept>
#include <vector>

#include "field.hpp"

namespace sg {

// Reference finite-difference solver for f_tt - f_xx + sin f = 0.
//
// The field is split as f = R + g where R is a static profile carrying the
// topological charge (so g is localized), and g is advanced by leapfrog:
//   g^{n+1} = 2 g^n - g^{n-1} + dt^2 (D2 g^n + R'' - sin(R + g^n)).
// With KinkSubtraction the g-grid is treated as periodic, which keeps the
// discrete energy/momentum conserved; Sponge adds a damping collar instead.

enum class Boundary { KinkSubtraction, Sponge };

struct PdeOptions {
  double dt = 0.0;                     // default: 0.5 * dx (CFL <= 0.9 enforced)
  Boundary boundary = Boundary::KinkSubtraction;
  double sponge_width = 10.0;          // collar width for Boundary::Sponge
  double sponge_strength = 2.0;
};

namespace detail {

struct Reference {
  std::vector<double> R, Rxx;  // profile and its exact second derivative
};

inline Reference make_reference(const FieldState& st) {
  Reference ref;
  std::size_t n = st.xs.size();
  ref.R.assign(n, 2.0 * pi * st.l_minus);
  ref.Rxx.assign(n, 0.0);
  int dl = st.l_plus - st.l_minus;
  if (dl != 0) {
    double s = dl > 0 ? 1.0 : -1.0;
    double xc = 0.5 * (st.xs.front() + st.xs.back());
    for (std::size_t i = 0; i < n; ++i) {
      double u = st.xs[i] - xc;
      ref.R[i] += dl * 4.0 * std::atan(std::exp(u));
      // (4 atan e^u)'' = -2 sech u tanh u
      ref.Rxx[i] += -dl * 2.0 * std::tanh(u) / std::cosh(u);
      (void)s;
    }
  }
  return ref;
}

}  // namespace detail

class LeapfrogSolver {
 public:
  LeapfrogSolver(const FieldState& initial, const PdeOptions& opt = {})
      : opt_(opt), h_(initial.dx()), t_(initial.t),
        l_minus_(initial.l_minus), l_plus_(initial.l_plus), xs_(initial.xs) {
    initial.validate();
    if (opt_.dt <= 0.0) opt_.dt = 0.5 * h_;
    if (opt_.dt > 0.9 * h_)
      throw std::invalid_argument("leapfrog: dt violates CFL (dt <= 0.9 dx)");
    ref_ = detail::make_reference(initial);
    std::size_t n = xs_.size();
    g_.resize(n);
    for (std::size_t i = 0; i < n; ++i) g_[i] = initial.f[i] - ref_.R[i];
    // Taylor bootstrap, O(dt^3) local:
    //   g^1 = g^0 + dt g_t^0 + dt^2/2 (D2 g^0 + R'' - sin f^0).
    gprev_ = g_;
    std::vector<double> acc = accel(g_);
    double dt = opt_.dt;
    std::vector<double> g1(n);
    for (std::size_t i = 0; i < n; ++i)
      g1[i] = g_[i] + dt * initial.ft[i] + 0.5 * dt * dt * acc[i];
    gprev_ = g_;
    g_ = g1;
    t_ += dt;
    steps_ = 1;
  }

  double dt() const { return opt_.dt; }
  double time() const { return t_; }

  void step() {
    std::size_t n = g_.size();
    std::vector<double> acc = accel(g_);
    std::vector<double> gn(n);
    double dt = opt_.dt;
    if (opt_.boundary == Boundary::Sponge) {
      for (std::size_t i = 0; i < n; ++i) {
        double s = sigma(i);
        gn[i] = (2.0 * g_[i] - (1.0 - 0.5 * s * dt) * gprev_[i] + dt * dt * acc[i]) /
                (1.0 + 0.5 * s * dt);
      }
    } else {
      for (std::size_t i = 0; i < n; ++i)
        gn[i] = 2.0 * g_[i] - gprev_[i] + dt * dt * acc[i];
    }
    gprev_.swap(g_);
    g_.swap(gn);
    t_ += dt;
    ++steps_;
  }

  // Synchronized state at the current time level: f = R + g, ft by the
  // centered difference through the stored levels (second order).
  FieldState state() const {
    std::size_t n = g_.size();
    FieldState st;
    st.xs = xs_;
    st.t = t_;
    st.l_minus = l_minus_;
    st.l_plus = l_plus_;
    st.f.resize(n);
    st.ft.resize(n);
    std::vector<double> acc = accel(g_);
    double dt = opt_.dt;
    // virtual forward level for a centered velocity, plus a jerk correction:
    //   v = (g^{n+1} - g^{n-1})/(2 dt) - (dt^2/6) g_ttt,
    //   g_ttt ~ (a^{n+1} - a^{n-1})/(2 dt)  => fourth-order velocity.
    std::vector<double> gnext(n);
    for (std::size_t i = 0; i < n; ++i) gnext[i] = 2.0 * g_[i] - gprev_[i] + dt * dt * acc[i];
    std::vector<double> an = accel(gnext), ap = accel(gprev_);
    for (std::size_t i = 0; i < n; ++i) {
      st.f[i] = ref_.R[i] + g_[i];
      double jerk = (an[i] - ap[i]) / (2.0 * dt);
      st.ft[i] = (gnext[i] - gprev_[i]) / (2.0 * dt) - (dt * dt / 6.0) * jerk;
    }
    return st;
  }

 private:
  std::vector<double> accel(const std::vector<double>& g) const {
    std::size_t n = g.size();
    std::vector<double> a(n);
    double inv_h2 = 1.0 / (h_ * h_);
    for (std::size_t i = 0; i < n; ++i) {
      std::size_t il = (i == 0) ? n - 1 : i - 1;
      std::size_t ir = (i + 1 == n) ? 0 : i + 1;
      double d2 = (g[ir] - 2.0 * g[i] + g[il]) * inv_h2;
      a[i] = d2 + ref_.Rxx[i] - std::sin(ref_.R[i] + g[i]);
    }
    return a;
  }

  double sigma(std::size_t i) const {
    double x = xs_[i];
    double a = xs_.front() + opt_.sponge_width, b = xs_.back() - opt_.sponge_width;
    double d = 0.0;
    if (x < a) d = (a - x) / opt_.sponge_width;
    else if (x > b) d = (x - b) / opt_.sponge_width;
    return opt_.sponge_strength * d * d;
  }

  PdeOptions opt_;
  double h_, t_;
  int l_minus_, l_plus_;
  std::vector<double> xs_, g_, gprev_;
  detail::Reference ref_;
  long steps_ = 0;
};

struct EnergySample {
  double t, E, P;
};

// Advance to time T; invoke `on_checkpoint` at (approximately) the requested
// times and log (t, E, P) every `log_every` steps.
inline FieldState evolve(const FieldState& initial, double T, const PdeOptions& opt,
                         const std::vector<double>& checkpoints = {},
                         const std::function<void(const FieldState&)>& on_checkpoint = nullptr,
                         std::vector<EnergySample>* log = nullptr, long log_every = 100) {
  LeapfrogSolver solver(initial, opt);
  std::size_t next_cp = 0;
  long n = 0;
  auto maybe_log = [&]() {
    if (log && n % log_every == 0) {
      FieldState st = solver.state();
      log->push_back({st.t, energy(st), momentum(st)});
    }
  };
  while (solver.time() < T - 0.5 * solver.dt()) {
    solver.step();
    ++n;
    maybe_log();
    if (next_cp < checkpoints.size() &&
        solver.time() >= checkpoints[next_cp] - 0.5 * solver.dt()) {
      if (on_checkpoint) on_checkpoint(solver.state());
      ++next_cp;
    }
  }
  return solver.state();
}

// Discrete sine-Gordon residual of an analytic solution: centered second
// differences in x and t at matched spacing; second-order for smooth fields.
inline double residual(const ExactSolution& sol, double x, double t, double h) {
  auto f = sol.f;
  double ftt = (f(x, t + h) - 2.0 * f(x, t) + f(x, t - h)) / (h * h);
  double fxx = (f(x + h, t) - 2.0 * f(x, t) + f(x - h, t)) / (h * h);
  return ftt - fxx + std::sin(f(x, t));
}

inline double max_residual(const ExactSolution& sol, double xmin, double xmax, double t,
                           double h, std::size_t n = 201) {
  double worst = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double x = xmin + (xmax - xmin) * double(i) / double(n - 1);
    worst = std::max(worst, std::abs(residual(sol, x, t, h)));
  }
  return worst;
}

}  // namespace sg

#endif
