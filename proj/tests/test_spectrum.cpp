#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sg/field.hpp>
#include <sg/grid.hpp>
#include <sg/spectrum.hpp>

using namespace sg;

TEST_CASE("static kink: single eigenvalue at z = i with norming constant 4i") {
  FieldState st = sample(eval_kink({0.0, 0.0, +1}), -30.0, 30.0, 0.01, 0.0);
  SampledPotential p = SampledPotential::make(st);
  auto zs = find_eigenvalues(p);
  REQUIRE(zs.size() == 1);
  CHECK(std::abs(zs[0] - iu) < 1e-6);
  NormingResult nr = norming_constant(p, zs[0]);
  CHECK(nr.spread < 1e-4);
  // oracle: a_breve(z) = (z-i)/(z+i) gives a_breve'(i) = -i/2; in this Jost
  // normalization the unit kink has b = 1, hence c = b / a_breve'(i) = 2i.
  // (Analytically, pole data (zeta=1, c=2i) reconstructs f = 4 atan(e^x).)
  CHECK(std::abs(nr.aprime - cx(0.0, -0.5)) < 1e-5);
  CHECK(std::abs(nr.b - 1.0) < 1e-4);
  CHECK(std::abs(nr.c - 2.0 * iu) < 1e-4);
}

TEST_CASE("norming constant shift and charge laws") {
  // translating the kink by x0 scales b by e^{x0 (zeta + 1/zeta)/2}
  for (double x0 : {0.5, -0.7}) {
    FieldState st = sample(eval_kink({0.0, x0, +1}), -30.0, 30.0, 0.01, 0.0);
    NormingResult nr = norming_constant(SampledPotential::make(st), cx(0.0, 1.0));
    CHECK(std::abs(nr.b - std::exp(x0)) < 1e-4);
  }
  FieldState st = sample(eval_kink({0.0, 0.0, -1}), -30.0, 30.0, 0.01, 0.0);
  NormingResult nr = norming_constant(SampledPotential::make(st), cx(0.0, 1.0));
  CHECK(std::abs(nr.c + 2.0 * iu) < 1e-4);
}

TEST_CASE("moving kink: eigenvalue encodes the velocity") {
  double v = 0.6, zeta = std::sqrt((1.0 - v) / (1.0 + v));
  FieldState st = sample(eval_kink({v, 0.0, +1}), -40.0, 40.0, 0.01, 0.0);
  SampledPotential p = SampledPotential::make(st);
  auto zs = find_eigenvalues(p);
  REQUIRE(zs.size() == 1);
  CHECK(std::abs(zs[0] - iu * zeta) < 1e-6);
  CHECK(kink_velocity(zeta) == doctest::Approx(v).epsilon(1e-12));
}

TEST_CASE("breather at rest: conjugate quadruple on the unit circle") {
  double beta = 0.5, alpha = std::sqrt(1.0 - beta * beta);
  FieldState st = sample(eval_breather({0.0, beta, 0.0, 0.0}), -30.0, 30.0, 0.01, 0.0);
  SampledPotential p = SampledPotential::make(st);
  auto zs = find_eigenvalues(p);
  REQUIRE(zs.size() == 2);  // representatives with Re z of both signs in C+
  for (cx z : zs) {
    CHECK(std::abs(std::abs(z) - 1.0) < 1e-6);
    CHECK(std::abs(std::abs(z.real()) - alpha) < 1e-6);
    CHECK(std::abs(z.imag() - beta) < 1e-6);
  }
  cx zp = zs[0].real() > 0 ? zs[0] : zs[1];
  NormingResult nr = norming_constant(p, zp);
  CHECK(nr.spread < 1e-4);
}

TEST_CASE("small gaussian has no discrete spectrum") {
  FieldState st;
  for (double x = -12.0; x <= 12.0; x += 0.01) {
    st.xs.push_back(x);
    st.f.push_back(0.4 * std::exp(-x * x));
    st.ft.push_back(0.0);
  }
  SampledPotential p = SampledPotential::make(st);
  CHECK(find_eigenvalues(p).empty());
}

TEST_CASE("scattering data JSON round trip") {
  ScatteringData d;
  d.grid = SpectralGrid::make(32, 10.0);
  d.r.assign(d.grid.size(), cx(0.1, -0.2));
  d.kinks.push_back({0.8, cx(0.0, 3.0)});
  d.breathers.push_back({cx(0.6, 0.5), cx(1.0, -1.0)});
  d.tolerance = 1e-10;
  auto path = std::string("/tmp/sg_test_data.json");
  d.save(path);
  ScatteringData e = ScatteringData::load(path);
  REQUIRE(e.grid.size() == d.grid.size());
  CHECK(e.grid.z[3] == d.grid.z[3]);
  CHECK(e.r[5] == d.r[5]);
  REQUIRE(e.kinks.size() == 1);
  CHECK(e.kinks[0].zeta == d.kinks[0].zeta);
  CHECK(e.kinks[0].c == d.kinks[0].c);
  REQUIRE(e.breathers.size() == 1);
  CHECK(e.breathers[0].z == d.breathers[0].z);
}
