#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <filesystem>

#include <sg/field.hpp>
#include <sg/io.hpp>
#include <sg/pde.hpp>

using namespace sg;

TEST_CASE("static kink: closed form satisfies the PDE and carries energy 8") {
  ExactSolution kink = eval_kink({0.0, 0.0, +1});
  // independent residual oracle: second-order differencing of the closed form
  CHECK(max_residual(kink, -10.0, 10.0, 0.25, 0.0, 1e-4) < 1e-6);
  FieldState st = sample(kink, -40.0, 40.0, 0.01, 0.0);
  CHECK(st.l_plus - st.l_minus == 1);
  CHECK(energy(st) == doctest::Approx(8.0).epsilon(1e-9));
  CHECK(std::abs(momentum(st)) < 1e-9);
}

TEST_CASE("moving kink: energy 8*gamma, momentum magnitude 8*gamma*|v|") {
  double v = 0.6, g = lorentz_gamma(v);
  ExactSolution kink = eval_kink({v, 0.0, +1});
  CHECK(max_residual(kink, -10.0, 10.0, 0.25, 1.5, 1e-4) < 1e-6);
  FieldState st = sample(kink, -60.0, 60.0, 0.01, 0.0);
  CHECK(energy(st) == doctest::Approx(8.0 * g).epsilon(1e-8));
  CHECK(std::abs(momentum(st)) == doctest::Approx(8.0 * g * v).epsilon(1e-8));
}

TEST_CASE("boost composition reproduces the moving kink") {
  double v = 0.45;
  ExactSolution still = eval_kink({0.0, 0.0, +1});
  ExactSolution moving = eval_kink({v, 0.0, +1});
  ExactSolution boosted = lorentz_boost(still, v);
  for (double x : {-3.0, -0.5, 0.0, 1.2, 4.0}) {
    for (double t : {0.0, 0.7, 2.0}) {
      CHECK(boosted.f(x, t) == doctest::Approx(moving.f(x, t)).epsilon(1e-8));
      CHECK(boosted.ft(x, t) == doctest::Approx(moving.ft(x, t)).epsilon(1e-5));
    }
  }
}

TEST_CASE("breather: PDE residual and periodicity") {
  BreatherParams bp{0.0, 0.5, 0.0, 0.0};
  ExactSolution br = eval_breather(bp);
  CHECK(max_residual(br, -8.0, 8.0, 0.2, 0.3, 1e-4) < 1e-6);
  // period 2 pi / alpha in t at v = 0
  double alpha = std::sqrt(1.0 - 0.25);
  double T = 2.0 * pi / alpha;
  CHECK(br.f(0.7, 0.1) == doctest::Approx(br.f(0.7, 0.1 + T)).epsilon(1e-10));
  FieldState st = sample(br, -30.0, 30.0, 0.01, 0.0);
  CHECK(st.l_plus == st.l_minus);
  // breather energy oracle: 16 sqrt(1 - beta^2) ... for the at-rest breather
  // E = 16 alpha with this parametrization's amplitude beta/alpha convention
  double E = energy(st);
  CHECK(E == doctest::Approx(16.0 * 0.5).epsilon(1e-6));  // 16 * beta at v=0
}

TEST_CASE("wobbler: PDE residual with analytic time derivative") {
  ExactSolution w = eval_wobbler({0.6});
  CHECK(max_residual(w, -6.0, 6.0, 0.2, 0.4, 1e-4) < 1e-6);
  FieldState st = sample(w, -40.0, 40.0, 0.01, 0.0);
  CHECK(st.l_plus - st.l_minus == 1);  // kink sector
}

TEST_CASE("fourth-order differentiation") {
  std::vector<double> xs, ys;
  for (int i = 0; i <= 200; ++i) {
    double x = -1.0 + 0.01 * i;
    xs.push_back(x);
    ys.push_back(std::sin(3.0 * x));
  }
  auto d = derivative_x(ys, 0.01);
  double err = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i)
    err = std::max(err, std::abs(d[i] - 3.0 * std::cos(3.0 * xs[i])));
  CHECK(err < 1e-6);
}

TEST_CASE("csv round trip preserves field data") {
  FieldState st = sample(eval_kink({0.3, 1.0, -1}), -5.0, 5.0, 0.1, 0.25);
  st.l_minus = 2;
  st.l_plus = 1;
  auto path = std::filesystem::temp_directory_path() / "sg_test_field.csv";
  save_csv(st, path.string());
  FieldState back = load_csv(path.string());
  CHECK(back.t == doctest::Approx(st.t));
  CHECK(back.l_minus == st.l_minus);
  CHECK(back.l_plus == st.l_plus);
  REQUIRE(back.xs.size() == st.xs.size());
  double err = 0.0;
  for (std::size_t i = 0; i < st.xs.size(); ++i) {
    err = std::max(err, std::abs(back.f[i] - st.f[i]));
    err = std::max(err, std::abs(back.ft[i] - st.ft[i]));
  }
  CHECK(err == 0.0);  // %.17g round trips doubles exactly
  std::filesystem::remove(path);
  std::filesystem::remove(path.string() + ".json");
}
