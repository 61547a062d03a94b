#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ncmult/groups.hpp"
#include "ncmult/heisenberg.hpp"
#include "ncmult/rational.hpp"

namespace ncmult {

struct Interval {
  double lo = 0;
  double hi = 0;
};

// Finite set of points a symbol is evaluated on: a group ball, fusion labels
// or an initial segment of the naturals. `base` is the identity / trivial label.
struct PointDomain {
  std::string description;
  std::size_t size = 0;
  std::optional<std::size_t> base;
  std::function<std::string(std::size_t)> label;
};

PointDomain ball_domain(const EnumeratedBall& B);
// Points 0..kmax standing for radial values k, base 0.
PointDomain naturals_domain(int kmax);

// Length on a domain. Constructed lengths are only known up to an enclosing
// interval; exact lengths return degenerate intervals.
struct LengthFunction {
  std::string name;
  double alpha = 1;
  std::function<Interval(std::size_t)> eval;
};

LengthFunction exact_length(std::string name, std::vector<double> values, double alpha = 1);
LengthFunction word_length_on(const EnumeratedBall& B, double alpha = 1);

enum class IndexKind { discrete, continuous };

struct SymbolFamily {
  std::string name;
  IndexKind kind = IndexKind::discrete;
  int eta = 0;  // highest t-derivative order the family claims
  std::vector<std::pair<std::string, double>> parameters;
  std::function<double(double index, std::size_t point)> value;
  // Optional closed-form t-derivative, order 1..eta.
  std::function<double(double t, std::size_t point, int order)> derivative;
};

struct DerivativeValue {
  double value = 0;
  bool analytic = false;
};

// Analytic derivative when the family has one, otherwise Richardson finite
// differences (numeric error when unstable).
DerivativeValue family_derivative(const SymbolFamily& family, double t, std::size_t point, int order);

// ---------------------------------------------------------------- Fejér

Rational fejer_symbol(const GroupSpec& G, BallFamily family, int N, const GroupElement& g,
                      std::size_t cap = kDefaultBallCap);

// m_N(g) = |K_N ∩ g K_N| / |K_N| for all g in a fixed domain ball and many N.
// Uses the dense interval table for Heisenberg word balls, hashed counting
// elsewhere. Results are cached per N.
class FejerField {
 public:
  FejerField(EnumeratedBall domain, BallOptions options, int max_radius);

  const EnumeratedBall& domain() const noexcept { return domain_; }
  const GroupSpec& group() const noexcept { return domain_.group(); }
  int max_radius() const noexcept { return max_radius_; }
  bool uses_interval_table() const noexcept { return table_ != nullptr; }

  std::uint64_t ball_size(int N);
  const std::vector<std::uint64_t>& counts(int N);
  Rational exact(int N, std::size_t point);
  double value(int N, std::size_t point);
  // Whether the point lies in supp m_N = K_N K_N^{-1}.
  bool in_support(int N, std::size_t point);

 private:
  EnumeratedBall domain_;
  BallOptions options_;
  int max_radius_;
  std::unique_ptr<HeisenbergBallTable> table_;
  std::map<int, std::vector<std::uint64_t>> counts_;
  std::map<int, std::uint64_t> sizes_;
};

// ------------------------------------------------------- scalar symbols

double bochner_riesz_symbol(double N, double delta, double k);

struct AtomicMeasure {
  std::vector<std::pair<double, double>> atoms;  // (location y in [-1,1], weight > 0)
  double total_mass() const;
  std::string description;
};

AtomicMeasure dirac_measure(double y);
AtomicMeasure grid_measure(int k);
void validate_measure(const AtomicMeasure& nu, bool require_probability = true);

double radial_kernel_symbol(const AtomicMeasure& nu, double t, int k);
double radial_kernel_derivative(const AtomicMeasure& nu, double t, int k, int order);

struct T0Result {
  double t0 = 0;
  double gap_first = 0;   // e^{-2/t} - 1/t - e^{-4/t} at t0
  double gap_second = 0;  // e^{-2/(3t)} - 1/t - e^{-2/t} at t0
  bool holds_at_t0 = false;
  bool holds_at_double = false;
};
T0Result min_t0();
double t0_gap_first(double t);
double t0_gap_second(double t);

enum class SemigroupKind { heat, poisson };
double semigroup_symbol(double length, double t, SemigroupKind kind);
double subordination_density(double s);
// ∫_0^∞ φ(s) e^{-s u} ds, which equals e^{-sqrt(u)}.
double subordination_integral(double u);

// ------------------------------------------------------ family builders

// m_N = e^{-ℓ/2^N}, discrete.
SymbolFamily lacunary_heat_family(std::vector<double> lengths);
// m_t = e^{-ℓ/t} (heat) or e^{-sqrt(ℓ)/t} (poisson), continuous, analytic derivatives.
SymbolFamily semigroup_family(std::vector<double> lengths, SemigroupKind kind);
// m_t(k) = (1 - k²/t²)^δ_+ in the dilation parameter t.
SymbolFamily bochner_riesz_family(double delta, std::vector<double> radii);
// m_t(k) = ∫ (y/t + e^{-2/t})^k dν(y) on integer radii.
SymbolFamily radial_kernel_family(AtomicMeasure nu, std::vector<int> radii, int eta = 4);
SymbolFamily constant_family(double value, IndexKind kind = IndexKind::discrete);
// N ↦ m_{s(N)} for a Fejér field; `index_map` maps the family index to a radius.
SymbolFamily fejer_family(std::shared_ptr<FejerField> field, std::function<int(int)> index_map, std::string name);

}  // namespace ncmult
