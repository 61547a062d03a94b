#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "ncmult/audits.hpp"

namespace ncmult {

enum class BodyFamily { euclidean_ball, cube, lq_ball };

// Symmetric convex body scaled to volume 1. These bodies are invariant under
// coordinate permutations and sign changes, so the volume-1 scaling is
// already isotropic.
struct BodySpec {
  BodyFamily family = BodyFamily::cube;
  int d = 1;
  int q = 2;  // lq_ball only, even

  static BodySpec cube(int d);
  static BodySpec ball(int d);
  static BodySpec lq(int q, int d);

  std::string label() const;  // grammar form, e.g. "lq:q=4,d=16"
  // Radius of the volume-1 body in its own norm (half side for the cube).
  double scale() const;
};

struct McOptions {
  std::size_t samples = 1000000;
  std::uint64_t seed = 1;
  std::size_t block = 16384;
  bool force_monte_carlo = false;  // sample even when an exact path exists
};

struct SymbolEstimate {
  double value = 0;
  double stderr_ = 0;
  std::string method;  // closed-form, quadrature, monte-carlo
  std::uint64_t seed = 0;
  std::size_t samples = 0;
};

// Uniform samples from the volume-1 body, block by block; block b depends
// only on (seed, b).
void sample_block(const BodySpec& B, std::uint64_t seed, std::uint64_t block, std::size_t n, std::vector<double>& out);

// Stored coefficients c_k(v) = (-1)^v L(v, k), v <= 4, with
// d^v/dt^v m̂(ξ/t) at t = 1 equal to Σ_k c_k(v) d^k/ds^k m̂(sξ) at s = 1.
const std::array<std::array<std::int64_t, 5>, 5>& radial_coefficients();

struct BodyPointEstimate {
  SymbolEstimate value;              // m̂(ξ)
  SymbolEstimate gradient_pairing;   // <∇m̂(ξ), ξ>
  std::vector<SymbolEstimate> t_derivatives;  // index v - 1, d^v/dt^v m̂(ξ/t) at t = 1
  SymbolEstimate fd_first;           // central difference of t ↦ m̂(ξ/t) at t = 1
};

// All estimates for a batch of frequencies; Monte Carlo paths share one sample stream.
std::vector<BodyPointEstimate> evaluate_body(const BodySpec& B, const std::vector<std::vector<double>>& xis, int v_max,
                                             const McOptions& mc = {});

SymbolEstimate indicator_ft(const BodySpec& B, const std::vector<double>& xi, const McOptions& mc = {});

// L = (∫ x_1² dx)^{1/2} on the volume-1 body.
SymbolEstimate isotropic_constant(const BodySpec& B, const McOptions& mc = {});

SymbolEstimate radial_derivative_bound(const BodySpec& B, const std::vector<double>& xi, int v,
                                       const McOptions& mc = {});

// Axis and diagonal directions at |ξ| = ρ/L, ρ on a √2-spaced grid in [2^-5, 2^4].
std::vector<std::vector<double>> default_xi_samples(const BodySpec& B, double L);

// Best constants for |m̂| |ξ| L, |1 - m̂| / (L |ξ|) and |<∇m̂, ξ>| over the
// samples, plus the v = 1 chain rule against the central difference in t.
AuditReport symbol_bound_audit(const BodySpec& B, const std::vector<std::vector<double>>& xis, const McOptions& mc = {});

struct SweepRow {
  std::string family;
  int q = 0;
  int d = 0;
  std::string bound;
  int order = 0;
  double constant = 0;
  double stderr_ = 0;
  std::size_t samples = 0;
  std::uint64_t seed = 0;
};

struct SweepRatio {
  std::string bound;
  int order = 0;
  double max = 0;
  double min = 0;
  double ratio = 0;
};

struct SweepTable {
  std::vector<SweepRow> rows;
  std::vector<SweepRatio> ratios;
  // Worst |D_1 - FD| / tolerance over all dimensions and frequencies.
  double chain_rule_worst = 0;
  bool chain_rule_ok = true;
};

SweepTable dimension_sweep(BodyFamily family, int q, const std::vector<int>& dims, int v_max, std::size_t budget,
                           std::uint64_t seed);

std::string sweep_csv(const SweepTable& table);

}  // namespace ncmult
