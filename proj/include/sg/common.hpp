#ifndef SG_COMMON_HPP
#define SG_COMMON_HPP

#include <complex>
#include <vector>
#include <cmath>
#include <cstdlib>
#include <stdexcept>
#include <string>
#include <thread>
#include <functional>

namespace sg {

using cx = std::complex<double>;

inline constexpr double pi = 3.14159265358979323846;
inline constexpr cx iu{0.0, 1.0};

// Exponentials that appear with arguments ~ +/- (zeta+1/zeta)|x|/2 saturate the
// linear systems long before they overflow; clamping the real part keeps the
// saturated regime finite without changing any double-precision result.
inline cx clamped_exp(cx w, double cap = 250.0) {
  double re = w.real();
  if (re > cap) re = cap;
  if (re < -cap) re = -cap;
  return std::exp(cx{re, w.imag()});
}

inline int thread_count() {
  if (const char* env = std::getenv("SG_IST_THREADS")) {
    int n = std::atoi(env);
    if (n > 0) return n;
  }
  unsigned hc = std::thread::hardware_concurrency();
  return hc ? static_cast<int>(hc) : 1;
}

// Static partition; tasks are assumed comparably sized.
inline void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body) {
  int nt = thread_count();
  if (nt <= 1 || n < 2) {
    for (std::size_t i = 0; i < n; ++i) body(i);
    return;
  }
  std::vector<std::thread> pool;
  std::size_t chunk = (n + nt - 1) / nt;
  for (int t = 0; t < nt; ++t) {
    std::size_t lo = t * chunk, hi = std::min(n, lo + chunk);
    if (lo >= hi) break;
    pool.emplace_back([&, lo, hi] { for (std::size_t i = lo; i < hi; ++i) body(i); });
  }
  for (auto& th : pool) th.join();
}

// 2x2 complex matrices; enough linear algebra for the Lax machinery.
struct Mat2 {
  cx a11{}, a12{}, a21{}, a22{};

  static Mat2 identity() { return {1.0, 0.0, 0.0, 1.0}; }

  Mat2 operator+(const Mat2& o) const { return {a11 + o.a11, a12 + o.a12, a21 + o.a21, a22 + o.a22}; }
  Mat2 operator-(const Mat2& o) const { return {a11 - o.a11, a12 - o.a12, a21 - o.a21, a22 - o.a22}; }
  Mat2 operator*(const Mat2& o) const {
    return {a11 * o.a11 + a12 * o.a21, a11 * o.a12 + a12 * o.a22,
            a21 * o.a11 + a22 * o.a21, a21 * o.a12 + a22 * o.a22};
  }
  Mat2 operator*(cx s) const { return {s * a11, s * a12, s * a21, s * a22}; }
  cx det() const { return a11 * a22 - a12 * a21; }
  Mat2 inv() const {
    cx d = det();
    return {a22 / d, -a12 / d, -a21 / d, a11 / d};
  }
  double max_abs() const {
    return std::max(std::max(std::abs(a11), std::abs(a12)), std::max(std::abs(a21), std::abs(a22)));
  }
};

inline Mat2 operator*(cx s, const Mat2& m) { return m * s; }

struct Vec2 {
  cx x1{}, x2{};
  Vec2 operator+(const Vec2& o) const { return {x1 + o.x1, x2 + o.x2}; }
  Vec2 operator-(const Vec2& o) const { return {x1 - o.x1, x2 - o.x2}; }
  Vec2 operator*(cx s) const { return {s * x1, s * x2}; }
  double norm() const { return std::sqrt(std::norm(x1) + std::norm(x2)); }
};

inline Vec2 operator*(const Mat2& m, const Vec2& v) {
  return {m.a11 * v.x1 + m.a12 * v.x2, m.a21 * v.x1 + m.a22 * v.x2};
}

}  // namespace sg

#endif
