#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "ncmult/audits.hpp"
#include "ncmult/symbols.hpp"

namespace ncmult {

// (φ_s) on a finite domain together with increasing supports E_s.
// φ_0 is always δ_base and E_0 = {base}; the callbacks are consulted for s >= 1.
struct ApproximatingFamily {
  std::string name;
  PointDomain domain;
  std::function<double(int s, std::size_t point)> value;
  std::function<bool(int s, std::size_t point)> in_support;
  bool unital = true;
  bool finitely_supported = false;
};

enum class SelectionRule { strict, relaxed };

const char* to_string(SelectionRule rule);

struct SelectionOptions {
  int horizon = 64;
  int window = 16;
  SelectionRule rule = SelectionRule::strict;
  // Stop instead of failing when no admissible index exists below the horizon.
  bool allow_partial = false;
};

struct Subsequence {
  std::vector<int> s;  // s[0] = 0, s[1] = 1, ...
  SelectionRule rule = SelectionRule::strict;
  int window = 0;
  int horizon = 0;
  bool partial = false;
  std::string stop_reason;
  std::optional<std::size_t> blocking_point;

  int length() const noexcept { return static_cast<int>(s.size()); }
};

// s_1 = 1; s_{N+1} is the least s > s_N with |1 - φ_{s'}(ρ)| <= bound(ρ, N)
// for all s' in [s, s + window] and ρ ∈ E_{s_N}. bound is 2^{-N} (strict)
// or 2^{J(ρ)-N} (relaxed). Candidates need s + window <= horizon.
Subsequence select_subsequence(const ApproximatingFamily& fam, const SelectionOptions& options);

// Replays the selection inequality on the recorded window; returns the first
// (N, point) that fails, if any.
std::optional<std::pair<int, std::size_t>> check_subsequence(const ApproximatingFamily& fam, const Subsequence& sub);

// J(ρ) = min{j : ρ ∈ E_{s_j}}, or -1 when ρ lies in no selected support.
int J_index(const ApproximatingFamily& fam, const Subsequence& sub, std::size_t point);

// Σ_{j > j_max} √2^j 2^{-(j-1)}, times 2^J under the relaxed rule.
double cnd_tail_bound(int j_max, SelectionRule rule, int J);

struct CndPoint {
  Interval value;
  int J = 0;
  int truncation = 0;  // last evaluated j
};

// Σ_{j>=0} √2^j (1 - φ_{s_j}(ρ)) enclosed in an interval. j_max defaults to
// J + 40 and is capped by the selected length.
CndPoint build_cnd_length(const ApproximatingFamily& fam, const Subsequence& sub, std::size_t point,
                          std::optional<int> j_max = {});

struct CndLength {
  std::string name;
  Subsequence subsequence;
  PointDomain domain;
  std::vector<CndPoint> points;

  LengthFunction as_length(double alpha = 1) const;
  // Σ_{j <= truncation} √2^j (1 - φ_{s_j}) exactly: a CND length in its own
  // right, equal to the lower ends of the enclosures.
  LengthFunction partial_sum_length(double alpha = 1) const;
  // Interval midpoints.
  std::vector<double> midpoints() const;
};

CndLength build_cnd_length(const ApproximatingFamily& fam, const Subsequence& sub, std::optional<int> j_max = {});

// c1 = min ℓ_lo/√2^J, c2 = max ℓ_hi/√2^J over the domain minus the base.
// best_constant = c2/c1. A comparison length adds the constants of ℓ/|g|^power.
AuditReport verify_length_equivalence(const CndLength& ell, std::optional<double> requested_ratio = {},
                                      const LengthFunction* comparison = nullptr, double power = 0.5);

// φ_N = 1_{K_N} - exp(-sqrt(ℓ)/2^{N/4}) with K_N = E_{s_N}, checked against
// the lacunary envelope with f = sqrt(ℓ) and a = 2^{1/4}. Uses interval
// midpoints; the spread between the two interval ends is reported as an extra.
AuditReport dirichlet_symbol_audit(const ApproximatingFamily& fam, const CndLength& ell, IndexRange range);

// Approximating family backed by a Fejér field, with E_s = supp m_s.
ApproximatingFamily fejer_approximating_family(std::shared_ptr<FejerField> field, std::string name);

struct HeisenbergLengthRun {
  std::shared_ptr<FejerField> field;
  ApproximatingFamily family;
  Subsequence subsequence;
  CndLength length;
  AuditReport equivalence;
};

// Fejér family on the heisenberg3 word ball of the given radius, relaxed
// selection with partial stop, length and equivalence audit.
HeisenbergLengthRun heisenberg_fejer_length(int domain_radius, int horizon = 80, int window = 16,
                                            std::size_t cap = kDefaultBallCap);

}  // namespace ncmult
