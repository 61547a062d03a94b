#pragma once

#include <vector>

namespace ncmult {

// C_{α,β} = 2Γ(α+β+1) / (Γ(α+1) Γ(β)).
double bochner_riesz_constant(double alpha, double beta);

// C_{α,β} ∫_s^1 (1-t²)^{β-1} t^{2α+1} (1-s²/t²)^α dt, which should equal (1-s²)^{α+β}.
double bochner_riesz_composed(double alpha, double beta, double s);

struct CompositionCheck {
  double max_error = 0;
  double worst_s = 0;
  std::vector<double> errors;  // aligned with the s grid
};

// 64 equispaced points on [0, 1].
std::vector<double> default_composition_grid();
CompositionCheck bochner_riesz_composition_check(double alpha, double beta, const std::vector<double>& s_grid);

struct SquareFunctionConstant {
  double value = 0;        // quadrature
  double closed_form = 0;  // 1 / (2 (2α+1) (2α+2))
};

// ∫_k^∞ (k/r)^4 (1 - k²/r²)^{2α} dr/r.
SquareFunctionConstant square_function_constant(double alpha, int k);

struct RapidDecayTail {
  double tail = 0;        // Σ_{r > N²} e^{-r/N} (r+1)
  double normalized = 0;  // N² · tail
};

RapidDecayTail rapid_decay_truncation_bound(int N);

}  // namespace ncmult
