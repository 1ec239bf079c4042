#ifndef SG_SPECTRUM_HPP
#define SG_SPECTRUM_HPP

#include <algorithm>
#include <cmath>
#include <fstream>
#include <vector>

#include <json.hpp>

#include "grid.hpp"
#include "jost.hpp"

namespace sg {

// ---------------------------------------------------------------------------
// Discrete spectrum: zeros of a_breve in C+ by the argument principle on
// dyadic rectangles, refined by Newton.
// ---------------------------------------------------------------------------

struct EigenvalueSearch {
  double re_min = -3.0, re_max = 3.0;
  double im_min = 0.05, im_max = 2.5;
  int boundary_samples = 64;   // per edge
  double newton_residual = 1e-10;
  double ode_tol = 1e-10;
  int max_depth = 12;
};

namespace detail {

struct Box {
  double x0, x1, y0, y1;
  cx center() const { return {0.5 * (x0 + x1), 0.5 * (y0 + y1)}; }
  double diag() const { return std::hypot(x1 - x0, y1 - y0); }
};

inline int winding_number(const SampledPotential& p, const Box& b, int per_edge, double tol) {
  std::vector<cx> pts;
  pts.reserve(4 * per_edge);
  for (int i = 0; i < per_edge; ++i) {
    double s = double(i) / per_edge;
    pts.push_back({b.x0 + s * (b.x1 - b.x0), b.y0});
  }
  for (int i = 0; i < per_edge; ++i) {
    double s = double(i) / per_edge;
    pts.push_back({b.x1, b.y0 + s * (b.y1 - b.y0)});
  }
  for (int i = 0; i < per_edge; ++i) {
    double s = double(i) / per_edge;
    pts.push_back({b.x1 - s * (b.x1 - b.x0), b.y1});
  }
  for (int i = 0; i < per_edge; ++i) {
    double s = double(i) / per_edge;
    pts.push_back({b.x0, b.y1 - s * (b.y1 - b.y0)});
  }
  std::vector<cx> vals(pts.size());
  parallel_for(pts.size(), [&](std::size_t i) { vals[i] = abreve_upper(p, pts[i], 0.0, tol); });
  double total = 0.0;
  for (std::size_t i = 0; i < vals.size(); ++i) {
    cx ratio = vals[(i + 1) % vals.size()] / vals[i];
    total += std::arg(ratio);
  }
  return static_cast<int>(std::lround(total / (2.0 * pi)));
}

inline void collect_roots(const SampledPotential& p, const Box& b, const EigenvalueSearch& s,
                          int depth, std::vector<cx>& roots) {
  int w = winding_number(p, b, std::max(8, s.boundary_samples >> std::min(depth, 3)), s.ode_tol);
  if (w == 0) return;
  if (w == 1 || depth >= s.max_depth || b.diag() < 1e-4) {
    // Newton from the box center; fall back to subdivision on escape.
    cx z = b.center();
    for (int it = 0; it < 60; ++it) {
      cx v = abreve_upper(p, z, 0.0, s.ode_tol);
      if (std::abs(v) < s.newton_residual) {
        roots.push_back(z);
        return;
      }
      cx dp = abreve_prime(p, z, s.ode_tol);
      cx step = v / dp;
      // keep iterates inside C+
      cx zn = z - step;
      while (zn.imag() < 0.2 * s.im_min) {
        step *= 0.5;
        zn = z - step;
      }
      z = zn;
      // residual can floor at the ODE tolerance; accept a stagnated iterate
      // that is clearly at a zero
      if (std::abs(step) < 1e-7 && std::abs(v) < 1e-6) {
        roots.push_back(z);
        return;
      }
    }
    if (w == 1 && depth < s.max_depth) {
      // Newton failed; bisect once more.
    } else {
      return;
    }
  }
  double xm = 0.5 * (b.x0 + b.x1), ym = 0.5 * (b.y0 + b.y1);
  // nudge the split lines so they do not land on a zero
  xm += 0.043 * (b.x1 - b.x0) * 0.1;
  ym += 0.037 * (b.y1 - b.y0) * 0.1;
  collect_roots(p, {b.x0, xm, b.y0, ym}, s, depth + 1, roots);
  collect_roots(p, {xm, b.x1, b.y0, ym}, s, depth + 1, roots);
  collect_roots(p, {b.x0, xm, ym, b.y1}, s, depth + 1, roots);
  collect_roots(p, {xm, b.x1, ym, b.y1}, s, depth + 1, roots);
}

}  // namespace detail

// All zeros of a_breve inside the search box.  The Wronskian is evaluated at
// x = 0 and cross-checked at a second meeting point (x-independence of the
// determinant is a structural identity; a violation flags ODE error).
inline std::vector<cx> find_eigenvalues(const SampledPotential& p,
                                        const EigenvalueSearch& s = {}) {
  std::vector<cx> roots;
  detail::collect_roots(p, {s.re_min, s.re_max, s.im_min, s.im_max}, s, 0, roots);
  // dedupe
  std::vector<cx> out;
  for (cx z : roots) {
    bool dup = false;
    for (cx w : out)
      if (std::abs(z - w) < 1e-6) dup = true;
    if (!dup) out.push_back(z);
  }
  for (cx z : out) {
    cx d0 = abreve_upper(p, z, 0.0, s.ode_tol);
    cx d1 = abreve_upper(p, z, 0.7, s.ode_tol);
    if (std::abs(d0 - d1) > 1e-6)
      throw std::runtime_error("find_eigenvalues: Wronskian not x-independent");
  }
  std::sort(out.begin(), out.end(), [](cx a, cx b) {
    return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag();
  });
  return out;
}

// ---------------------------------------------------------------------------
// Norming constants: m-_1(x, z_i) = b_i m+_2(x, z_i) e^{2 i theta(z_i; x, 0)};
// b_i by least squares over a window of x, with the spread of the pointwise
// ratios as a consistency check; c_i = b_i / a_breve'(z_i).
// ---------------------------------------------------------------------------

struct NormingResult {
  cx b, c, aprime;
  double spread = 0.0;
};

inline NormingResult norming_constant(const SampledPotential& p, cx zi, double tol = 1e-10,
                                      double spread_tol = 1e-4) {
  bool gauge = use_gauge(zi);
  cx twoj = iu * (zi - 1.0 / zi) * 0.5;
  Rk45<2> ode;
  ode.tol = tol;
  auto rhs_m = [&](double x, const StateVec<2>& v, StateVec<2>& dv) {
    Mat2 W = lax_potential(p, x, zi, gauge);
    dv[0] = W.a11 * v[0] + W.a12 * v[1];
    dv[1] = W.a21 * v[0] + (W.a22 + twoj) * v[1];
  };
  auto rhs_p = [&](double x, const StateVec<2>& w, StateVec<2>& dw) {
    Mat2 W = lax_potential(p, x, zi, gauge);
    dw[0] = (W.a11 - twoj) * w[0] + W.a12 * w[1];
    dw[1] = W.a21 * w[0] + W.a22 * w[1];
  };
  std::vector<double> xs = {-2.0, -1.0, 0.0, 1.0, 2.0};
  std::vector<double> xs_rev(xs.rbegin(), xs.rend());
  std::vector<StateVec<2>> vs, ws_rev;
  StateVec<2> v{1.0, 0.0}, w{0.0, 1.0};
  ode.solve(p.xlo, xs.back(), v, rhs_m, &xs, &vs);
  ode.solve(p.xhi, xs_rev.back(), w, rhs_p, &xs_rev, &ws_rev);
  std::vector<StateVec<2>> ws(ws_rev.rbegin(), ws_rev.rend());
  if (vs.size() != xs.size() || ws.size() != xs.size())
    throw std::runtime_error("norming_constant: sampling failed");

  cx num = 0.0, den = 0.0;
  std::vector<cx> pointwise;
  for (std::size_t k = 0; k < xs.size(); ++k) {
    cx ph = std::exp(twoj * xs[k]);
    for (int comp = 0; comp < 2; ++comp) {
      cx mv = vs[k][comp];
      cx mw = ws[k][comp] * ph;
      num += std::conj(mw) * mv;
      den += std::conj(mw) * mw;
      if (std::abs(mw) > 1e-8) pointwise.push_back(mv / mw);
    }
  }
  NormingResult res;
  res.b = num / den;
  if (gauge) res.b *= double(p.sector_sign());
  for (cx q : pointwise) {
    double rel = std::abs((gauge ? cx(double(p.sector_sign())) * q : q) - res.b) /
                 std::max(1e-30, std::abs(res.b));
    res.spread = std::max(res.spread, rel);
  }
  if (res.spread > spread_tol)
    throw std::runtime_error("norming_constant: pointwise ratios disagree (spread " +
                             std::to_string(res.spread) + ")");
  res.aprime = abreve_prime(p, zi, tol);
  res.c = res.b / res.aprime;
  return res;
}

// ---------------------------------------------------------------------------
// ScatteringData: the full IST image of one field state, plus JSON I/O.
// ---------------------------------------------------------------------------

struct KinkDatum {
  double zeta;  // eigenvalue i*zeta
  cx c;
};

struct BreatherDatum {
  cx z;  // quadrant Re > 0, Im > 0 representative of {z, -conj z}
  cx c;
};

struct ScatteringData {
  SpectralGrid grid;
  std::vector<cx> r;
  std::vector<KinkDatum> kinks;
  std::vector<BreatherDatum> breathers;
  double tolerance = 1e-10;
  bool generic = true;

  nlohmann::json to_json() const {
    nlohmann::json j;
    j["grid"] = grid.z;
    auto& jr = j["r"] = nlohmann::json::array();
    for (cx v : r) jr.push_back({v.real(), v.imag()});
    auto& jk = j["kinks"] = nlohmann::json::array();
    for (const auto& k : kinks)
      jk.push_back({{"zeta", k.zeta}, {"c", {k.c.real(), k.c.imag()}}});
    auto& jb = j["breathers"] = nlohmann::json::array();
    for (const auto& b : breathers)
      jb.push_back({{"z", {b.z.real(), b.z.imag()}}, {"c", {b.c.real(), b.c.imag()}}});
    j["meta"] = {{"tolerances", tolerance}, {"generic", generic}};
    return j;
  }

  static ScatteringData from_json(const nlohmann::json& j) {
    ScatteringData d;
    d.grid.z = j.at("grid").get<std::vector<double>>();
    // weights are not serialized: rebuild them from the node layout, which is
    // uniform in lambda = z - 1/z on each branch with Simpson weights.
    std::size_t n = d.grid.z.size(), m = n / 2;
    d.grid.w.assign(n, 0.0);
    if (m >= 2) {
      double lam_lo = lambda_of_z(d.grid.z[m]), lam_hi = lambda_of_z(d.grid.z[n - 1]);
      d.grid.lambda_max = lam_hi;
      double dl = (lam_hi - lam_lo) / double(m - 1);
      auto sw = simpson_weights(m, dl);
      for (std::size_t i = 0; i < m; ++i) {
        double zi = d.grid.z[m + i];
        double wi = sw[i] * zi * zi / (1.0 + zi * zi);
        d.grid.w[m + i] = wi;
        d.grid.w[m - 1 - i] = wi;
      }
    }
    for (const auto& v : j.at("r")) d.r.push_back({v[0].get<double>(), v[1].get<double>()});
    for (const auto& k : j.at("kinks"))
      d.kinks.push_back({k.at("zeta").get<double>(),
                         {k.at("c")[0].get<double>(), k.at("c")[1].get<double>()}});
    for (const auto& b : j.at("breathers"))
      d.breathers.push_back({{b.at("z")[0].get<double>(), b.at("z")[1].get<double>()},
                             {b.at("c")[0].get<double>(), b.at("c")[1].get<double>()}});
    if (j.contains("meta")) {
      d.tolerance = j["meta"].value("tolerances", 1e-10);
      d.generic = j["meta"].value("generic", true);
    }
    return d;
  }

  void save(const std::string& path) const {
    std::ofstream out(path);
    out << to_json().dump(2) << "\n";
  }
  static ScatteringData load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    nlohmann::json j;
    in >> j;
    return from_json(j);
  }
};

// Full direct-scattering pipeline.
inline ScatteringData scatter(const FieldState& st, const SpectralGrid& grid,
                              const EigenvalueSearch& search = {}, bool discrete = true,
                              const JostOptions& jopt = {}) {
  SampledPotential p = SampledPotential::make(st);
  ScatteringData d;
  d.grid = grid;
  d.r = reflection_coefficient(p, grid, jopt);
  d.tolerance = jopt.tol;
  if (discrete) {
    for (cx z : find_eigenvalues(p, search)) {
      if (z.real() < -1e-6) continue;  // quadruples: keep the Re >= 0 representative
      NormingResult nr = norming_constant(p, z, jopt.tol);
      if (std::abs(z.real()) < 1e-6) {
        d.kinks.push_back({z.imag(), nr.c});
      } else {
        d.breathers.push_back({z, nr.c});
      }
    }
  }
  return d;
}

// Linear time evolution of the scattering data:
//   r(z, t) = e^{(1/2)(z + 1/z) i t} r(z, 0), and the same factor, evaluated
// at the eigenvalue, for each norming constant.
inline ScatteringData evolve_scattering(const ScatteringData& d0, double t) {
  ScatteringData d = d0;
  auto factor = [&](cx z) { return clamped_exp(0.5 * (z + 1.0 / z) * iu * t); };
  for (std::size_t i = 0; i < d.r.size(); ++i) d.r[i] *= factor(d.grid.z[i]);
  for (auto& k : d.kinks) k.c *= factor(cx(0.0, k.zeta));
  for (auto& b : d.breathers) b.c *= factor(b.z);
  return d;
}

}  // namespace sg

#endif
