#pragma once

#include <complex>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ncmult/groups.hpp"
#include "ncmult/positivity.hpp"

namespace ncmult {

using Complex = std::complex<double>;

// Finitely supported coefficient map g ↦ x̂(g), ordered by normal form.
class FourierCoeffs {
 public:
  explicit FourierCoeffs(GroupSpec G) : group_(G) {}

  const GroupSpec& group() const noexcept { return group_; }
  void set(const GroupElement& g, Complex v);
  void add(const GroupElement& g, Complex v);
  Complex at(const GroupElement& g) const;
  const std::map<GroupElement, Complex>& terms() const noexcept { return terms_; }

 private:
  GroupSpec group_;
  std::map<GroupElement, Complex> terms_;
};

FourierCoeffs lambda(const GroupSpec& G, const GroupElement& g, Complex coefficient = 1.0);

// x̂ ↦ m x̂. When `domain` is given every support element must lie in it.
FourierCoeffs apply_multiplier(const PointSymbol& m, const FourierCoeffs& x, const EnumeratedBall* domain = nullptr);

double plancherel_norm(const FourierCoeffs& x);

// Σ x̂(g) λ(g) as a |G|×|G| matrix on ℓ₂(G), basis in ball order.
struct GroupAlgebraMatrix {
  GroupSpec group;
  std::vector<GroupElement> basis;
  std::size_t n = 0;
  std::vector<Complex> entries;  // row-major

  Complex operator()(std::size_t i, std::size_t j) const { return entries[i * n + j]; }
  Complex normalized_trace() const;
};

// All elements of a finite group in (length, normal form) order.
std::vector<GroupElement> enumerate_finite_group(const GroupSpec& G);

GroupAlgebraMatrix regular_representation(const GroupSpec& G, const FourierCoeffs& x);

// (τ |A|^p)^{1/p} with τ the normalized trace; p = +inf gives the operator norm.
double schatten_norm(const GroupAlgebraMatrix& A, double p);

struct SequenceNormReport {
  double p = 2;
  double column = 0;  // ||(Σ x_n^* x_n)^{1/2}||_p
  double row = 0;     // ||(Σ x_n x_n^*)^{1/2}||_p
  double value = 0;   // max for p >= 2, min over the splittings for p < 2
  std::string splitting;  // "max", or which splitting attained the p < 2 value
};

SequenceNormReport cr_sequence_norm(const std::vector<GroupAlgebraMatrix>& xs, double p);

// ||max_n |f_n| ||_p under normalized counting measure on a finite abelian group.
double commutative_maximal_norm(const GroupSpec& G, const std::vector<std::vector<Complex>>& fs, double p);

// Normalized L_p norm of a function on a finite set.
double lp_norm(const std::vector<Complex>& f, double p);

// Cube Fejér symbol on (ℤ/n)^d at frequency k: Π_i |I ∩ (I + k_i)| / |I|, I = {-N..N} mod n.
double cyclic_fejer_symbol(std::int64_t n, int N, std::int64_t k);

// F_N f for N = 0..n on (ℤ/n)^d, through the discrete Fourier transform.
std::vector<std::vector<Complex>> fejer_means(std::int64_t n, int d, const std::vector<Complex>& f);

struct MaximalExperiment {
  std::int64_t n = 0;
  int d = 1;
  double p = 2;
  int trials = 0;
  std::uint64_t seed = 0;
  double max_ratio = 0;
  double mean_ratio = 0;
  double min_ratio = 0;
  std::vector<double> ratios;
};

// ||sup_N |F_N f| ||_p / ||f||_p over seeded complex Gaussian f, N <= n.
MaximalExperiment fejer_maximal_experiment(std::int64_t n, int d, double p, int trials, std::uint64_t seed,
                                           std::size_t cap = kDefaultBallCap);

// Standard complex Gaussian sample of the given size for one trial index.
std::vector<Complex> gaussian_sample(std::size_t size, std::uint64_t seed, std::uint64_t trial);

}  // namespace ncmult
