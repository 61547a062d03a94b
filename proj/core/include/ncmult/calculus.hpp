#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

namespace ncmult {

using RealFunction = std::function<double(double)>;

struct QuadratureResult {
  double value = 0;
  double error_estimate = 0;
};

// Double-exponential quadrature on [a, b]; tolerates integrable endpoint
// singularities. `tol` is the level-to-level agreement asked for; the error
// after one more level is roughly its square. Raises a numeric error when the
// refinement does not settle.
QuadratureResult integrate(const RealFunction& f, double a, double b, double tol = 1.5e-8);
// Same on [a, +inf).
QuadratureResult integrate_to_infinity(const RealFunction& f, double a, double tol = 1.5e-8);
// Adaptive Gauss-Kronrod (61 points) on [a, b] for smooth oscillatory integrands.
QuadratureResult integrate_smooth(const RealFunction& f, double a, double b, double tol = 1e-12);

// 40-point Gauss-Legendre, error estimated against the 30-point rule. For
// entire integrands on panels shorter than about a period.
QuadratureResult integrate_fixed(const RealFunction& f, double a, double b);

struct DerivativeEstimate {
  double value = 0;
  double disagreement = 0;  // relative spread of the two Richardson estimates
};

// Order 1..4 derivative from 5-point central stencils with step halving and
// Richardson extrapolation. Raises a numeric error when the two extrapolated
// estimates disagree by more than `max_disagreement` relative to
// max(|value|, scale).
DerivativeEstimate finite_difference(const RealFunction& f, double t, int order, double h0, double scale,
                                     double max_disagreement = 1e-3);

// Partial Bell polynomial B_{n,k}(x_1, ..., x_{n-k+1}); x[0] holds x_1.
double bell_polynomial(int n, int k, std::span<const double> x);

// n-th derivative of F(u(t)) given outer[j] = F^(j)(u(t)) for j <= n and
// inner[j-1] = u^(j)(t) for j = 1..n.
double faa_di_bruno(int n, std::span<const double> outer, std::span<const double> inner);

// Unsigned Lah number L(n, k).
std::int64_t lah_number(int n, int k);

std::int64_t binomial(int n, int k);

// Geometric grid lo * ratio^i up to and including hi (within rounding).
std::vector<double> geometric_grid(double lo, double hi, double ratio);

}  // namespace ncmult
