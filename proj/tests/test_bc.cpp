#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sg/bc.hpp>
#include <sg/field.hpp>
#include <sg/reflectionless.hpp>

using namespace sg;

namespace {
FieldState gaussian_state(double amp) {
  FieldState st;
  for (double x = -15.0; x <= 15.0 + 1e-12; x += 0.01) {
    st.xs.push_back(x);
    st.f.push_back(amp * std::exp(-x * x / 2.0));
    st.ft.push_back(amp / 3.0 * std::exp(-x * x / 2.0));
  }
  return st;
}
}  // namespace

TEST_CASE("grid solver degenerates to the finite pole system when r = 0") {
  ScatteringData d;
  d.grid = SpectralGrid::make(64, 30.0);
  d.r.assign(d.grid.size(), cx(0.0, 0.0));
  d.kinks.push_back({0.9, cx(0.0, 1.4)});
  d.breathers.push_back({std::exp(iu * 0.8), cx(0.5, 0.6)});
  BcSolver solver(d);
  for (double x : {-2.0, 0.0, 1.5}) {
    BcPointResult full = solver.solve_point(x, 0.4);
    Reconstruction fin = reconstruct_reflectionless(d, x, 0.4);
    CHECK(std::abs(full.sin_f - fin.sin_f) < 1e-9);
    CHECK(std::abs(full.cos_f - fin.cos_f) < 1e-9);
  }
}

TEST_CASE("round trip: small Gaussian survives scatter + reconstruct_full") {
  FieldState st = gaussian_state(0.3);
  SpectralGrid g = SpectralGrid::make(1024, 60.0);
  ScatteringData d = scatter(st, g);
  CHECK(d.kinks.empty());
  CHECK(d.breathers.empty());
  std::vector<double> xs;
  for (double x = -8.0; x <= 8.0 + 1e-9; x += 0.1) xs.push_back(x);
  FieldState rec = reconstruct_full(d, xs, 0.0);
  double ef = 0.0, eft = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    double x = xs[i];
    ef = std::max(ef, std::abs(rec.f[i] - 0.3 * std::exp(-x * x / 2.0)));
    eft = std::max(eft, std::abs(rec.ft[i] - 0.1 * std::exp(-x * x / 2.0)));
  }
  CHECK(ef < 1e-4);
  CHECK(eft < 1e-4);
}

TEST_CASE("m(0) keeps unit determinant and a consistent sin/cos pair") {
  FieldState st = gaussian_state(0.5);
  SpectralGrid g = SpectralGrid::make(512, 40.0);
  ScatteringData d = scatter(st, g, {}, false);
  BcSolver solver(d);
  for (double x : {-1.0, 0.5, 2.0}) {
    BcPointResult r = solver.solve_point(x, 0.0);
    CHECK(std::abs(r.m0.det() - 1.0) < 1e-5);
    CHECK(std::abs(r.sin_f * r.sin_f + r.cos_f * r.cos_f - 1.0) < 1e-5);
  }
}

TEST_CASE("round trip with a kink plus radiation") {
  ExactSolution kink = eval_kink({0.0, 0.0, +1});
  FieldState st;
  for (double x = -20.0; x <= 20.0 + 1e-12; x += 0.01) {
    st.xs.push_back(x);
    st.f.push_back(kink.f(x, 0.0) + 0.2 * std::exp(-(x - 1.0) * (x - 1.0)));
    st.ft.push_back(kink.ft(x, 0.0));
  }
  st.l_plus = 1;
  SpectralGrid g = SpectralGrid::make(1024, 60.0);
  ScatteringData d = scatter(st, g);
  REQUIRE(d.kinks.size() == 1);
  CHECK(std::abs(d.kinks[0].zeta - 1.0) < 1e-2);
  std::vector<double> xs;
  for (double x = -6.0; x <= 6.0 + 1e-9; x += 0.5) xs.push_back(x);
  FieldState rec = reconstruct_full(d, xs, 0.0);
  double ef = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    double x = xs[i];
    double exact = kink.f(x, 0.0) + 0.2 * std::exp(-(x - 1.0) * (x - 1.0));
    ef = std::max(ef, std::abs(rec.f[i] - exact));
  }
  CHECK(ef < 5e-4);
}
