#include "ncmult/identities.hpp"

#include <algorithm>
#include <cmath>

#include "ncmult/calculus.hpp"
#include "ncmult/error.hpp"

namespace ncmult {

double bochner_riesz_constant(double alpha, double beta) {
  require(alpha > -1 && beta > 0, ErrorKind::parameter, "composition needs alpha > -1 and beta > 0");
  return 2.0 * std::exp(std::lgamma(alpha + beta + 1) - std::lgamma(alpha + 1) - std::lgamma(beta));
}

double bochner_riesz_composed(double alpha, double beta, double s) {
  require(s >= 0 && s <= 1, ErrorKind::domain, "scalar frequency must lie in [0, 1]");
  const double C = bochner_riesz_constant(alpha, beta);
  if (s == 1) return 0.0;
  auto f = [&](double t) {
    if (t <= s || t >= 1) return 0.0;
    return std::pow(1 - t * t, beta - 1) * std::pow(t, 2 * alpha + 1) * std::pow(std::max(0.0, 1 - (s * s) / (t * t)), alpha);
  };
  return C * integrate(f, s, 1.0).value;
}

std::vector<double> default_composition_grid() {
  std::vector<double> g(64);
  for (int i = 0; i < 64; ++i) g[static_cast<std::size_t>(i)] = i / 63.0;
  return g;
}

CompositionCheck bochner_riesz_composition_check(double alpha, double beta, const std::vector<double>& s_grid) {
  CompositionCheck out;
  for (double s : s_grid) {
    const double exact = std::pow(1 - s * s, alpha + beta);
    const double err = std::abs(exact - bochner_riesz_composed(alpha, beta, s));
    out.errors.push_back(err);
    if (err > out.max_error) {
      out.max_error = err;
      out.worst_s = s;
    }
  }
  return out;
}

SquareFunctionConstant square_function_constant(double alpha, int k) {
  if (!(alpha > -0.5)) fail(ErrorKind::domain, "square function integral diverges for alpha <= -1/2");
  require(k >= 1, ErrorKind::parameter, "square function constant needs k >= 1");
  const double kk = k;
  auto f = [&](double r) {
    if (r <= kk) return 0.0;
    const double q = kk / r;
    return q * q * q * q * std::pow(1 - q * q, 2 * alpha) / r;
  };
  SquareFunctionConstant out;
  out.value = integrate(f, kk, 2 * kk).value + integrate_to_infinity(f, 2 * kk).value;
  out.closed_form = 1.0 / (2 * (2 * alpha + 1) * (2 * alpha + 2));
  return out;
}

RapidDecayTail rapid_decay_truncation_bound(int N) {
  require(N >= 1, ErrorKind::parameter, "rapid decay truncation needs N >= 1");
  const double x = std::exp(-1.0 / N);
  const double M = static_cast<double>(N) * N;
  const double one_minus = -std::expm1(-1.0 / N);
  const double head = std::exp(-(M + 1) / N);
  // Σ_{r>M} x^r = x^{M+1}/(1-x);  Σ_{r>M} r x^r = x^{M+1}((M+1) - M x)/(1-x)²
  RapidDecayTail out;
  out.tail = head * (((M + 1) - M * x) / (one_minus * one_minus) + 1.0 / one_minus);
  out.normalized = M * out.tail;
  return out;
}

}  // namespace ncmult
