#include "ncmult/positivity.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <limits>
#include <memory>
#include <unordered_map>

#include "ncmult/error.hpp"

namespace ncmult {

HermitianMatrix::HermitianMatrix(std::size_t n, std::string provenance)
    : n_(n), a_(n * n, 0.0), provenance_(std::move(provenance)) {}

void HermitianMatrix::set(std::size_t i, std::size_t j, std::complex<double> v) {
  if (i == j) v = v.real();
  a_[i * n_ + j] = v;
  a_[j * n_ + i] = std::conj(v);
}

bool HermitianMatrix::is_real() const {
  for (const auto& z : a_)
    if (z.imag() != 0) return false;
  return true;
}

double HermitianMatrix::max_abs() const {
  double m = 0;
  for (const auto& z : a_) m = std::max(m, std::abs(z));
  return m;
}

namespace {

template <class Matrix>
EigenResult solve(const Matrix& M, bool want_vectors, const char* method) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(M, Eigen::ComputeEigenvectors);
  require(es.info() == Eigen::Success, ErrorKind::numeric, "eigendecomposition failed");
  EigenResult r;
  r.method = method;
  const auto& vals = es.eigenvalues();
  const auto& vecs = es.eigenvectors();
  r.eigenvalues.assign(vals.data(), vals.data() + vals.size());
  for (Eigen::Index k = 0; k < vals.size(); ++k)
    r.residual = std::max(r.residual, (M * vecs.col(k) - vals[k] * vecs.col(k)).norm());
  if (want_vectors) {
    r.vectors.resize(static_cast<std::size_t>(vals.size()));
    for (Eigen::Index k = 0; k < vals.size(); ++k)
      for (Eigen::Index i = 0; i < vecs.rows(); ++i) r.vectors[static_cast<std::size_t>(k)].push_back(vecs(i, k));
  }
  return r;
}

}  // namespace

EigenResult eigen_decompose(const HermitianMatrix& A, bool want_vectors) {
  const auto n = static_cast<Eigen::Index>(A.dim());
  EigenResult r;
  if (n == 0) return r;
  if (A.is_real()) {
    Eigen::MatrixXd M(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
      for (Eigen::Index j = 0; j < n; ++j) M(i, j) = A(static_cast<std::size_t>(i), static_cast<std::size_t>(j)).real();
    r = solve(M, want_vectors, "eigen-selfadjoint-real");
  } else {
    Eigen::MatrixXcd M(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
      for (Eigen::Index j = 0; j < n; ++j) M(i, j) = A(static_cast<std::size_t>(i), static_cast<std::size_t>(j));
    r = solve(M, want_vectors, "eigen-selfadjoint-complex");
  }
  const double limit = 1e-10 * std::max(1.0, A.max_abs() * static_cast<double>(A.dim()));
  if (r.residual > limit)
    fail(ErrorKind::numeric, "eigen residual " + std::to_string(r.residual) + " exceeds " + std::to_string(limit));
  return r;
}

HermitianMatrix gram_matrix(const PointSymbol& m, const std::vector<GroupElement>& elements, const GroupSpec& G) {
  const std::size_t n = elements.size();
  std::vector<GroupElement> inv(n);
  for (std::size_t i = 0; i < n; ++i) inv[i] = inverse(G, elements[i]);
  std::vector<double> raw(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) raw[i * n + j] = m(multiply(G, inv[i], elements[j]));
  HermitianMatrix A(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) {
      const double a = raw[i * n + j], b = raw[j * n + i];
      if (std::abs(a - b) > 1e-12)
        fail(ErrorKind::symmetry, "symbol is not symmetric: m(q) = " + std::to_string(a) + " but m(q^-1) = " +
                                      std::to_string(b) + " for q = " +
                                      format_element(G, multiply(G, inv[i], elements[j])));
      A.set(i, j, 0.5 * (a + b));
    }
  return A;
}

PdResult is_positive_definite(const HermitianMatrix& A, double tol) {
  EigenResult e = eigen_decompose(A, true);
  PdResult r;
  if (A.dim() == 0) {
    r.positive = true;
    return r;
  }
  r.min_eigenvalue = e.eigenvalues.front();
  r.positive = r.min_eigenvalue >= -tol * std::max(1.0, A.max_abs());
  if (!r.positive)
    for (const auto& z : e.vectors.front()) r.witness.push_back(z.real());
  return r;
}

PdResult is_positive_definite(const PointSymbol& m, const EnumeratedBall& B, double tol) {
  return is_positive_definite(gram_matrix(m, B.elements(), B.group()), tol);
}

CndResult is_cnd(const HermitianMatrix& L, double tol) {
  const std::size_t n = L.dim();
  CndResult r;
  if (n <= 1) {
    r.cnd = true;
    return r;
  }
  // Orthonormal basis of {c : Σ c_i = 0} from e_i - e_1 by modified Gram-Schmidt.
  Eigen::MatrixXd Q = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n - 1));
  for (std::size_t i = 1; i < n; ++i) {
    Eigen::VectorXd v = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(n));
    v(0) = -1;
    v(static_cast<Eigen::Index>(i)) = 1;
    for (std::size_t k = 0; k + 1 < i; ++k) {
      const auto q = Q.col(static_cast<Eigen::Index>(k));
      v -= q.dot(v) * q;
    }
    Q.col(static_cast<Eigen::Index>(i - 1)) = v / v.norm();
  }
  Eigen::MatrixXd M(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) M(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = L(i, j).real();
  Eigen::MatrixXd C = Q.transpose() * M * Q;
  C = 0.5 * (C + C.transpose());
  HermitianMatrix H(n - 1);
  for (std::size_t i = 0; i + 1 < n; ++i)
    for (std::size_t j = i; j + 1 < n; ++j) H.set(i, j, C(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)));
  EigenResult e = eigen_decompose(H);
  r.max_form = e.eigenvalues.back();
  r.cnd = r.max_form <= tol * std::max(1.0, L.max_abs());
  return r;
}

CndResult is_cnd(const PointSymbol& length, const EnumeratedBall& B, double tol) {
  const GroupElement e = identity(B.group());
  if (length(e) != 0) fail(ErrorKind::domain, "length does not vanish at the identity");
  return is_cnd(gram_matrix(length, B.elements(), B.group()), tol);
}

AuditReport schoenberg_check(const PointSymbol& length, const EnumeratedBall& B, const std::vector<double>& t_grid,
                             double tol) {
  require(!t_grid.empty(), ErrorKind::parameter, "empty t grid");
  if (length(identity(B.group())) != 0) fail(ErrorKind::domain, "length does not vanish at the identity");
  HermitianMatrix L = gram_matrix(length, B.elements(), B.group());
  AuditReport r;
  r.condition = "schoenberg";
  r.family = "e^{-t l}";
  r.domain = B.group().label() + " ball radius " + std::to_string(B.radius()) + " (" + std::to_string(B.size()) +
             " elements), " + std::to_string(t_grid.size()) + " values of t";
  r.parameters = {{"tol", tol}, {"t_min", t_grid.front()}, {"t_max", t_grid.back()}};
  double worst = std::numeric_limits<double>::infinity();
  for (double t : t_grid) {
    HermitianMatrix A(L.dim());
    for (std::size_t i = 0; i < L.dim(); ++i)
      for (std::size_t j = i; j < L.dim(); ++j) A.set(i, j, std::exp(-t * L(i, j).real()));
    PdResult pd = is_positive_definite(A, tol);
    if (pd.min_eigenvalue < worst) {
      worst = pd.min_eigenvalue;
      r.witness = Witness{t, 0, "t=" + std::to_string(t)};
    }
    if (!pd.positive) r.pass = false;
  }
  r.best_constant = worst;
  r.extras = {{"min_eigenvalue", worst}};
  return r;
}

double cp_scalar_bound(const PointSymbol& m, const EnumeratedBall& B, double tol) {
  const double at_e = m(identity(B.group()));
  if (std::abs(at_e - 1.0) > 1e-12) fail(ErrorKind::domain, "symbol is not unital: m(e) = " + std::to_string(at_e));
  if (!is_positive_definite(m, B, tol).positive) fail(ErrorKind::domain, "symbol is not positive definite");
  double best = 0;
  for (const auto& g : B.elements()) best = std::max(best, std::abs(m(g)));
  return best;
}

PointSymbol memoize(PointSymbol m) {
  auto cache = std::make_shared<std::unordered_map<GroupElement, double, GroupElementHash>>();
  return [m = std::move(m), cache](const GroupElement& g) {
    auto it = cache->find(g);
    if (it != cache->end()) return it->second;
    double v = m(g);
    cache->emplace(g, v);
    return v;
  };
}

}  // namespace ncmult
