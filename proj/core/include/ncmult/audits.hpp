#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ncmult/symbols.hpp"

namespace ncmult {

struct Witness {
  double index = 0;
  std::size_t point = 0;
  std::string label;
};

// Record of one audited inequality. `best_constant` is the exact maximum of
// the defining ratio over the enumerated domain; `pass` compares it with the
// requested bound when one is given and is true otherwise.
struct AuditReport {
  std::string condition;
  std::string family;
  std::string domain;
  std::vector<std::pair<std::string, double>> parameters;
  double best_constant = 0;
  std::optional<Witness> witness;
  std::optional<double> requested_bound;
  bool pass = true;
  std::string derivative_source = "none";
  std::optional<double> refinement_delta;
  // Operator norm bound sup_N ||T_{m_N}|| taken as an assumption, never computed.
  std::optional<double> assumed_gamma;
  std::vector<std::pair<std::string, double>> extras;
  std::vector<std::string> notes;

  double extra(const std::string& key) const;
};

struct IndexRange {
  int lo = 0;
  int hi = 0;
};

// max over (N, g != e) of max(|1-m_N| 2^N / ℓ^α, |m_N| ℓ^α / 2^N).
AuditReport audit_A1(const SymbolFamily& family, const LengthFunction& length, double alpha,
                     const PointDomain& domain, IndexRange range, std::optional<double> requested = {});

// Best β for the two (A1)-type bounds in t plus |d^k m_t| t^k for 1 <= k <= eta.
AuditReport audit_A2(const SymbolFamily& family, const LengthFunction& length, double alpha, int eta,
                     const std::vector<double>& t_grid, const PointDomain& domain,
                     std::optional<double> requested = {});

// max over N >= 1 of N |m_{N+1} - m_N|; the (A1) ratios are added as extras
// when a length is supplied.
AuditReport audit_difference(const SymbolFamily& family, const LengthFunction* length, double alpha,
                             const PointDomain& domain, IndexRange range, std::optional<double> requested = {});

// Absolute factor in Σ_N |m_N|² <= C β² a²/(a²-1).
constexpr double kLacunaryFactor = 2.0;

// Envelope constant β = max |m_N| (a^N+f)²/(a^N f), then the sum check.
// best_constant = max_ω Σ_N |m_N(ω)|² / (β² a²/(a²-1)); pass iff <= C.
AuditReport lacunary_l2_bound(const SymbolFamily& family, const std::vector<double>& f, double a,
                              const PointDomain& domain, IndexRange range);

struct KAnnulus {
  int j = 0;
  double a = 0;  // sup |m_t|
  double b = 0;  // sup t |∂_t m_t|
  std::size_t samples = 0;
};

struct KConstantResult {
  double K = 0;
  std::vector<KAnnulus> annuli;
  double tail_estimate = 0;
  std::string derivative_source;
};

KConstantResult K_constant(const SymbolFamily& family, const std::vector<double>& f, const std::vector<double>& t_grid,
                           const PointDomain& domain);

// ψ^{[s1..sv]}_t at one point through the signed sum over ε ∈ {0,1}^v.
double multiorder_difference(const SymbolFamily& family, const std::vector<int>& s, double t, std::size_t point);
// The same through the recursive definition.
double multiorder_difference_recursive(const SymbolFamily& family, const std::vector<int>& s, double t,
                                       std::size_t point);
double multiorder_ratio(int s);  // ρ = 2^{2^{-s-1}}

// max of |d^k ψ_t| t^k 2^{s1+..+sv} / (2k+2v)^v over grid × domain.
AuditReport audit_multiorder_derivatives(const SymbolFamily& family, const std::vector<int>& s, int k,
                                         const std::vector<double>& t_grid, const PointDomain& domain);

}  // namespace ncmult
