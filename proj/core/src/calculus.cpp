#include "ncmult/calculus.hpp"

#include <algorithm>
#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>
#include <cmath>
#include <limits>
#include <string>

#include "ncmult/error.hpp"

namespace ncmult {

namespace {

void check_quadrature(const QuadratureResult& r, double tol, const char* what) {
  if (!std::isfinite(r.value) || r.error_estimate > 10 * tol * std::max(1.0, std::abs(r.value)))
    fail(ErrorKind::numeric, std::string(what) + " did not converge (error estimate " +
                                 std::to_string(r.error_estimate) + ")");
}

}  // namespace

QuadratureResult integrate_fixed(const RealFunction& f, double a, double b) {
  QuadratureResult r;
  r.value = boost::math::quadrature::gauss<double, 40>::integrate(f, a, b);
  r.error_estimate = std::abs(r.value - boost::math::quadrature::gauss<double, 30>::integrate(f, a, b));
  check_quadrature(r, 1e-12, "Gauss-Legendre quadrature");
  return r;
}

QuadratureResult integrate(const RealFunction& f, double a, double b, double tol) {
  if (a == b) return {};
  boost::math::quadrature::tanh_sinh<double> q(15);
  QuadratureResult r;
  double l1 = 0;
  r.value = q.integrate(f, a, b, tol, &r.error_estimate, &l1);
  check_quadrature(r, tol, "tanh-sinh quadrature");
  return r;
}

QuadratureResult integrate_to_infinity(const RealFunction& f, double a, double tol) {
  boost::math::quadrature::exp_sinh<double> q(15);
  QuadratureResult r;
  double l1 = 0;
  r.value = q.integrate([&](double x) { return f(x); }, a, std::numeric_limits<double>::infinity(),
                        tol, &r.error_estimate, &l1);
  check_quadrature(r, tol, "exp-sinh quadrature");
  return r;
}

QuadratureResult integrate_smooth(const RealFunction& f, double a, double b, double tol) {
  if (a == b) return {};
  QuadratureResult r;
  double l1 = 0;
  r.value = boost::math::quadrature::gauss_kronrod<double, 61>::integrate(f, a, b, 30, tol, &r.error_estimate, &l1);
  check_quadrature(r, tol, "Gauss-Kronrod quadrature");
  return r;
}

namespace {

double stencil(const RealFunction& f, double t, int order, double h) {
  const double fp2 = f(t + 2 * h), fp1 = f(t + h), fm1 = f(t - h), fm2 = f(t - 2 * h);
  switch (order) {
    case 1: return (-fp2 + 8 * fp1 - 8 * fm1 + fm2) / (12 * h);
    case 2: return (-fp2 + 16 * fp1 - 30 * f(t) + 16 * fm1 - fm2) / (12 * h * h);
    case 3: return (fp2 - 2 * fp1 + 2 * fm1 - fm2) / (2 * h * h * h);
    case 4: return (fp2 - 4 * fp1 + 6 * f(t) - 4 * fm1 + fm2) / (h * h * h * h);
  }
  fail(ErrorKind::parameter, "finite differences support orders 1..4");
}

}  // namespace

DerivativeEstimate finite_difference(const RealFunction& f, double t, int order, double h0, double scale,
                                     double max_disagreement) {
  if (order == 0) return {f(t), 0.0};
  const double p = order <= 2 ? 16.0 : 4.0;
  const double d0 = stencil(f, t, order, h0);
  const double d1 = stencil(f, t, order, h0 / 2);
  const double d2 = stencil(f, t, order, h0 / 4);
  const double r1 = d1 + (d1 - d0) / (p - 1);
  const double r2 = d2 + (d2 - d1) / (p - 1);
  DerivativeEstimate out{r2, std::abs(r2 - r1) / std::max(std::abs(r2), scale)};
  if (!std::isfinite(r2) || out.disagreement > max_disagreement)
    fail(ErrorKind::numeric, "finite-difference derivative of order " + std::to_string(order) + " unstable at t=" +
                                 std::to_string(t) + " (relative disagreement " + std::to_string(out.disagreement) +
                                 ")");
  return out;
}

double bell_polynomial(int n, int k, std::span<const double> x) {
  // B_{n,k} = sum_{i=1}^{n-k+1} C(n-1, i-1) x_i B_{n-i,k-1}
  std::vector<std::vector<double>> B(static_cast<std::size_t>(n + 1), std::vector<double>(static_cast<std::size_t>(k + 1), 0.0));
  B[0][0] = 1.0;
  for (int m = 1; m <= n; ++m)
    for (int j = 1; j <= std::min(m, k); ++j) {
      double s = 0;
      for (int i = 1; i <= m - j + 1; ++i)
        s += static_cast<double>(binomial(m - 1, i - 1)) * x[static_cast<std::size_t>(i - 1)] * B[m - i][j - 1];
      B[m][j] = s;
    }
  return B[n][k];
}

double faa_di_bruno(int n, std::span<const double> outer, std::span<const double> inner) {
  if (n == 0) return outer[0];
  double s = 0;
  for (int k = 1; k <= n; ++k) s += outer[static_cast<std::size_t>(k)] * bell_polynomial(n, k, inner);
  return s;
}

std::int64_t binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  std::int64_t r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

std::int64_t lah_number(int n, int k) {
  if (n == 0 && k == 0) return 1;
  if (k < 1 || k > n) return 0;
  // L(n,k) = C(n-1,k-1) n! / k!
  std::int64_t r = binomial(n - 1, k - 1);
  for (int i = k + 1; i <= n; ++i) r *= i;
  return r;
}

std::vector<double> geometric_grid(double lo, double hi, double ratio) {
  require(lo > 0 && hi >= lo && ratio > 1, ErrorKind::parameter, "geometric grid needs 0 < lo <= hi and ratio > 1");
  std::vector<double> g;
  for (int i = 0;; ++i) {
    double t = lo * std::pow(ratio, i);
    if (t > hi * (1 + 1e-12)) break;
    g.push_back(t);
  }
  return g;
}

}  // namespace ncmult
