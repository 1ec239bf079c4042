#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sg/field.hpp>
#include <sg/pde.hpp>
#include <sg/reflectionless.hpp>

using namespace sg;

namespace {

ScatteringData kink_data(double zeta, cx c) {
  ScatteringData d;
  d.grid = SpectralGrid::make(16, 5.0);
  d.r.assign(d.grid.size(), cx(0.0, 0.0));
  d.kinks.push_back({zeta, c});
  return d;
}

// Closed-form single kink/anti-kink written in terms of the conjugate norming
// constant c* = i b (b real): the cos/sin pair as rational functions of
// E = e^{2 i theta(i zeta)}.
std::pair<double, double> kink_closed_form(double zeta, double b, double x, double t) {
  double E = std::exp(2.0 * (iu * theta(cx(0.0, zeta), x, t)).real());
  double B = b * b * E * E / (4.0 * zeta);
  double den = (zeta + B) * (zeta + B);
  double cosf = 1.0 - 2.0 * b * b * E * E / den;
  double sinf = 2.0 * b * E * (zeta - B) / den;
  return {sinf, cosf};
}

// Closed-form one-breather for eigenvalues rho e^{iw}, -rho e^{-iw} and
// conjugate norming constant e^{p+iq}; Theta denotes the un-quartered phases.
double breather_closed_form(double rho, double w, double p, double q, double x, double t) {
  double K = std::log(std::pow(std::cos(w) / std::sin(w), 2.0) / 4.0) / 2.0;
  double Th = (rho - 1.0 / rho) * x + (rho + 1.0 / rho) * t;
  double Tt = (rho + 1.0 / rho) * x + (rho - 1.0 / rho) * t;
  double arg1 = 0.5 * std::cos(w) * Th - q - w;
  double arg2 = 0.5 * std::sin(w) * Tt - p - K;
  return -4.0 * std::atan(0.5 * std::exp(-K) * std::cos(arg1) / std::cosh(arg2));
}

}  // namespace

TEST_CASE("single kink reconstruction matches the closed form to 1e-8") {
  for (auto [zeta, gamma] : {std::pair{1.0, 2.0}, {0.6, -1.3}, {1.4, 0.35}}) {
    ScatteringData d = kink_data(zeta, iu * gamma);
    double b = -gamma;  // conjugate-constant convention
    for (double t : {0.0, 1.7}) {
      double worst = 0.0;
      for (int i = 0; i < 600; ++i) {
        double x = -12.0 + 24.0 * i / 599.0;
        Reconstruction r = reconstruct_reflectionless(d, x, t);
        auto [sinf, cosf] = kink_closed_form(zeta, b, x, t);
        worst = std::max(worst, std::abs(r.sin_f - sinf));
        worst = std::max(worst, std::abs(r.cos_f - cosf));
      }
      CHECK(worst < 1e-8);
    }
  }
}

TEST_CASE("one-breather reconstruction matches the closed form to 1e-8") {
  for (auto [w, c] : {std::pair{pi / 6.0, cx(-1.0, -0.5)}, {1.1, cx(0.4, 1.2)}}) {
    ScatteringData d;
    d.grid = SpectralGrid::make(16, 5.0);
    d.r.assign(d.grid.size(), cx(0.0, 0.0));
    d.breathers.push_back({std::exp(iu * w), c});
    double p = std::log(std::abs(c)), q = -std::arg(c);
    for (double t : {0.0, 1.3}) {
      double worst = 0.0;
      for (int i = 0; i < 600; ++i) {
        double x = -12.0 + 24.0 * i / 599.0;
        Reconstruction r = reconstruct_reflectionless(d, x, t);
        double f = breather_closed_form(1.0, w, p, q, x, t);
        worst = std::max(worst, std::abs(r.sin_f - std::sin(f)));
        worst = std::max(worst, std::abs(r.cos_f - std::cos(f)));
      }
      CHECK(worst < 1e-8);
    }
  }
}

TEST_CASE("kink-breather superposition satisfies the PDE residual at order 2") {
  ScatteringData d;
  d.grid = SpectralGrid::make(16, 5.0);
  d.r.assign(d.grid.size(), cx(0.0, 0.0));
  d.kinks.push_back({1.0, cx(0.0, 2.0)});
  d.breathers.push_back({std::exp(iu * 0.9), cx(0.7, -0.4)});
  ExactSolution sol = reflectionless_solution(d);
  double r1 = max_residual(sol, -6.0, 6.0, 0.4, 2e-3, 61);
  double r2 = max_residual(sol, -6.0, 6.0, 0.4, 1e-3, 61);
  CHECK(r1 / r2 > 3.6);
  CHECK(r1 / r2 < 4.4);
}

TEST_CASE("two-kink data carries topological charge 2") {
  ScatteringData d;
  d.grid = SpectralGrid::make(16, 5.0);
  d.r.assign(d.grid.size(), cx(0.0, 0.0));
  d.kinks.push_back({0.7, cx(0.0, 1.5)});
  d.kinks.push_back({1.5, cx(0.0, 0.9)});
  std::vector<double> xs;
  for (double x = -25.0; x <= 25.0 + 1e-9; x += 0.05) xs.push_back(x);
  FieldState st = reconstruct_reflectionless_field(d, xs, 0.0, 0, false);
  CHECK(st.l_plus - st.l_minus == 2);
  // far-field sectors are flat multiples of 2 pi
  CHECK(std::abs(st.f.front() - 2.0 * pi * st.l_minus) < 1e-6);
  CHECK(std::abs(st.f.back() - 2.0 * pi * st.l_plus) < 1e-6);
}
