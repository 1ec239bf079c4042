#ifndef SG_INTERP_HPP
#define SG_INTERP_HPP

#include <cmath>
#include <stdexcept>
#include <vector>

namespace sg {

// Natural cubic spline on a uniform grid; used to feed sampled field data to
// the adaptive ODE integrators, which evaluate off the sample points.
class CubicSpline {
 public:
  CubicSpline() = default;

  CubicSpline(double x0, double h, std::vector<double> y) : x0_(x0), h_(h), y_(std::move(y)) {
    std::size_t n = y_.size();
    if (n < 3) throw std::invalid_argument("CubicSpline: need >= 3 points");
    m_.assign(n, 0.0);
    // Natural BCs (m[0] = m[n-1] = 0); interior rows of the standard system
    //   m[i-1] + 4 m[i] + m[i+1] = 6 (y[i+1] - 2 y[i] + y[i-1]) / h^2,
    // solved by the Thomas algorithm.
    std::vector<double> cp(n, 0.0), dp(n, 0.0);
    for (std::size_t i = 1; i + 1 < n; ++i) {
      double rhs = 6.0 * (y_[i + 1] - 2.0 * y_[i] + y_[i - 1]) / (h_ * h_);
      double denom = 4.0 - (i > 1 ? cp[i - 1] : 0.0);
      cp[i] = 1.0 / denom;
      dp[i] = (rhs - (i > 1 ? dp[i - 1] : 0.0)) / denom;
    }
    for (std::size_t i = n - 2; i >= 1; --i) {
      m_[i] = dp[i] - cp[i] * m_[i + 1];
      if (i == 1) break;
    }
  }

  double xmin() const { return x0_; }
  double xmax() const { return x0_ + h_ * double(y_.size() - 1); }

  double value(double x) const {
    auto [i, u] = locate(x);
    double a = y_[i], b = y_[i + 1];
    double ma = m_[i], mb = m_[i + 1];
    double h = h_;
    double A = 1.0 - u, B = u;
    return A * a + B * b + (h * h / 6.0) * ((A * A * A - A) * ma + (B * B * B - B) * mb);
  }

  double derivative(double x) const {
    auto [i, u] = locate(x);
    double a = y_[i], b = y_[i + 1];
    double ma = m_[i], mb = m_[i + 1];
    double h = h_;
    double A = 1.0 - u, B = u;
    return (b - a) / h + (h / 6.0) * ((3.0 * B * B - 1.0) * mb - (3.0 * A * A - 1.0) * ma);
  }

 private:
  std::pair<std::size_t, double> locate(double x) const {
    double s = (x - x0_) / h_;
    std::size_t n = y_.size();
    if (s <= 0.0) return {0, 0.0};
    if (s >= double(n - 1)) return {n - 2, 1.0};
    std::size_t i = static_cast<std::size_t>(s);
    if (i > n - 2) i = n - 2;
    return {i, s - double(i)};
  }

  double x0_ = 0.0, h_ = 1.0;
  std::vector<double> y_, m_;  // samples and second derivatives
};

}  // namespace sg

#endif
