#pragma once

#include <complex>
#include <functional>
#include <string>
#include <vector>

#include "ncmult/audits.hpp"
#include "ncmult/groups.hpp"

namespace ncmult {

using PointSymbol = std::function<double(const GroupElement&)>;

// Dense self-adjoint matrix; set() writes both (i,j) and (j,i).
class HermitianMatrix {
 public:
  HermitianMatrix() = default;
  explicit HermitianMatrix(std::size_t n, std::string provenance = "float");

  std::size_t dim() const noexcept { return n_; }
  std::complex<double> operator()(std::size_t i, std::size_t j) const { return a_[i * n_ + j]; }
  void set(std::size_t i, std::size_t j, std::complex<double> v);
  bool is_real() const;
  double max_abs() const;
  const std::string& provenance() const noexcept { return provenance_; }
  const std::vector<std::complex<double>>& data() const noexcept { return a_; }

 private:
  std::size_t n_ = 0;
  std::vector<std::complex<double>> a_;
  std::string provenance_ = "float";
};

struct EigenResult {
  std::vector<double> eigenvalues;  // ascending
  double residual = 0;              // max_k ||A v_k - λ_k v_k||
  std::string method;
  std::vector<std::vector<std::complex<double>>> vectors;  // column k for eigenvalues[k]
};

// Raises a numeric error when the residual exceeds 1e-10 max(1, ||A||).
EigenResult eigen_decompose(const HermitianMatrix& A, bool want_vectors = false);

// A_ij = m(g_i^{-1} g_j); symmetry error when |m(q) - m(q^{-1})| > 1e-12.
HermitianMatrix gram_matrix(const PointSymbol& m, const std::vector<GroupElement>& elements, const GroupSpec& G);

struct PdResult {
  bool positive = false;
  double min_eigenvalue = 0;
  std::vector<double> witness;  // eigenvector for λ_min when not positive
};

// λ_min >= -tol ||A||_max.
PdResult is_positive_definite(const HermitianMatrix& A, double tol = 1e-10);
PdResult is_positive_definite(const PointSymbol& m, const EnumeratedBall& B, double tol = 1e-10);

struct CndResult {
  bool cnd = false;
  double max_form = 0;  // largest eigenvalue on the zero-sum subspace
};

CndResult is_cnd(const HermitianMatrix& L, double tol = 1e-10);
CndResult is_cnd(const PointSymbol& length, const EnumeratedBall& B, double tol = 1e-10);

// e^{-tℓ} must be positive definite for each grid t; best_constant is the
// minimum λ_min over the grid.
AuditReport schoenberg_check(const PointSymbol& length, const EnumeratedBall& B, const std::vector<double>& t_grid,
                             double tol = 1e-10);

// max |m(g)| over the ball after checking m(e) = 1 and positive definiteness.
double cp_scalar_bound(const PointSymbol& m, const EnumeratedBall& B, double tol = 1e-10);

// Symbol memoized by element, for expensive evaluators used in Gram fills.
PointSymbol memoize(PointSymbol m);

}  // namespace ncmult
