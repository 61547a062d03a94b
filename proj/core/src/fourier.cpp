#include "ncmult/fourier.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>

#include "ncmult/error.hpp"

namespace ncmult {

void FourierCoeffs::set(const GroupElement& g, Complex v) {
  validate(group_, g);
  terms_[g] = v;
}

void FourierCoeffs::add(const GroupElement& g, Complex v) {
  validate(group_, g);
  terms_[g] += v;
}

Complex FourierCoeffs::at(const GroupElement& g) const {
  auto it = terms_.find(g);
  return it == terms_.end() ? Complex{} : it->second;
}

FourierCoeffs lambda(const GroupSpec& G, const GroupElement& g, Complex coefficient) {
  FourierCoeffs x(G);
  x.set(g, coefficient);
  return x;
}

FourierCoeffs apply_multiplier(const PointSymbol& m, const FourierCoeffs& x, const EnumeratedBall* domain) {
  FourierCoeffs out(x.group());
  for (const auto& [g, v] : x.terms()) {
    if (domain && !domain->contains(g))
      fail(ErrorKind::domain, "coefficient support " + format_element(x.group(), g) + " escapes the symbol domain");
    out.set(g, m(g) * v);
  }
  return out;
}

double plancherel_norm(const FourierCoeffs& x) {
  double s = 0;
  for (const auto& [g, v] : x.terms()) s += std::norm(v);
  return std::sqrt(s);
}

Complex GroupAlgebraMatrix::normalized_trace() const {
  Complex t = 0;
  for (std::size_t i = 0; i < n; ++i) t += entries[i * n + i];
  return n ? t / static_cast<double>(n) : t;
}

std::vector<GroupElement> enumerate_finite_group(const GroupSpec& G) {
  if (!G.is_finite()) fail(ErrorKind::domain, G.label() + " is infinite");
  const auto order = G.order();
  BallOptions opts;
  opts.cap = std::max<std::size_t>(opts.cap, static_cast<std::size_t>(order));
  EnumeratedBall B = ball(G, static_cast<int>(order), opts);
  require(B.size() == order, ErrorKind::numeric, "generators do not reach the whole group");
  return B.elements();
}

GroupAlgebraMatrix regular_representation(const GroupSpec& G, const FourierCoeffs& x) {
  GroupAlgebraMatrix A;
  A.group = G;
  A.basis = enumerate_finite_group(G);
  A.n = A.basis.size();
  A.entries.assign(A.n * A.n, Complex{});
  std::unordered_map<GroupElement, std::size_t, GroupElementHash> index;
  for (std::size_t i = 0; i < A.n; ++i) index.emplace(A.basis[i], i);
  for (const auto& [g, v] : x.terms()) {
    // λ(g) δ_h = δ_{gh}
    for (std::size_t j = 0; j < A.n; ++j) {
      std::size_t i = index.at(multiply(G, g, A.basis[j]));
      A.entries[i * A.n + j] += v;
    }
  }
  return A;
}

namespace {

Eigen::MatrixXcd to_eigen(const GroupAlgebraMatrix& A) {
  const auto n = static_cast<Eigen::Index>(A.n);
  Eigen::MatrixXcd M(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) M(i, j) = A(static_cast<std::size_t>(i), static_cast<std::size_t>(j));
  return M;
}

HermitianMatrix to_hermitian(const Eigen::MatrixXcd& M) {
  HermitianMatrix H(static_cast<std::size_t>(M.rows()));
  for (Eigen::Index i = 0; i < M.rows(); ++i)
    for (Eigen::Index j = i; j < M.cols(); ++j)
      H.set(static_cast<std::size_t>(i), static_cast<std::size_t>(j), 0.5 * (M(i, j) + std::conj(M(j, i))));
  return H;
}

// (τ S^{p/2})^{1/p} for positive S.
double psd_power_norm(const Eigen::MatrixXcd& S, double p) {
  EigenResult e = eigen_decompose(to_hermitian(S));
  if (std::isinf(p)) return std::sqrt(std::max(0.0, e.eigenvalues.back()));
  // Roundoff-level eigenvalues count as zero singular values.
  const double floor = 8 * std::numeric_limits<double>::epsilon() * static_cast<double>(e.eigenvalues.size()) *
                       std::max(0.0, e.eigenvalues.back());
  double s = 0;
  for (double l : e.eigenvalues)
    if (l > floor) s += std::pow(l, p / 2);
  return std::pow(s / static_cast<double>(e.eigenvalues.size()), 1.0 / p);
}

}  // namespace

double schatten_norm(const GroupAlgebraMatrix& A, double p) {
  require(p >= 1, ErrorKind::parameter, "Schatten exponent must be >= 1");
  Eigen::MatrixXcd M = to_eigen(A);
  return psd_power_norm(M.adjoint() * M, p);
}

SequenceNormReport cr_sequence_norm(const std::vector<GroupAlgebraMatrix>& xs, double p) {
  require(!xs.empty(), ErrorKind::parameter, "empty sequence");
  require(p >= 1, ErrorKind::parameter, "exponent must be >= 1");
  const auto n = static_cast<Eigen::Index>(xs.front().n);
  Eigen::MatrixXcd col = Eigen::MatrixXcd::Zero(n, n), row = Eigen::MatrixXcd::Zero(n, n);
  for (const auto& x : xs) {
    require(x.group == xs.front().group, ErrorKind::parameter, "sequence elements live on different groups");
    Eigen::MatrixXcd M = to_eigen(x);
    col += M.adjoint() * M;
    row += M * M.adjoint();
  }
  SequenceNormReport r;
  r.p = p;
  r.column = psd_power_norm(col, p);
  r.row = psd_power_norm(row, p);
  if (p >= 2) {
    r.value = std::max(r.column, r.row);
    r.splitting = "max";
  } else {
    // x_n = y_n + z_n with (y, z) = (x, 0), (0, x) or (x/2, x/2).
    const double half = 0.5 * (r.column + r.row);
    r.value = r.column;
    r.splitting = "column-only";
    if (r.row < r.value) {
      r.value = r.row;
      r.splitting = "row-only";
    }
    if (half < r.value) {
      r.value = half;
      r.splitting = "half-split";
    }
  }
  return r;
}

double lp_norm(const std::vector<Complex>& f, double p) {
  require(!f.empty(), ErrorKind::parameter, "empty function");
  if (std::isinf(p)) {
    double m = 0;
    for (const auto& z : f) m = std::max(m, std::abs(z));
    return m;
  }
  double s = 0;
  for (const auto& z : f) s += std::pow(std::abs(z), p);
  return std::pow(s / static_cast<double>(f.size()), 1.0 / p);
}

double commutative_maximal_norm(const GroupSpec& G, const std::vector<std::vector<Complex>>& fs, double p) {
  if (!G.is_abelian() || !G.is_finite()) fail(ErrorKind::domain, "commutative maximal norm needs a finite abelian group");
  require(!fs.empty(), ErrorKind::parameter, "empty family");
  const std::size_t size = static_cast<std::size_t>(G.order());
  std::vector<Complex> sup(size, 0.0);
  for (const auto& f : fs) {
    require(f.size() == size, ErrorKind::parameter, "function size does not match the group order");
    for (std::size_t i = 0; i < size; ++i) sup[i] = std::max(std::abs(sup[i]), std::abs(f[i]));
  }
  return lp_norm(sup, p);
}

double cyclic_fejer_symbol(std::int64_t n, int N, std::int64_t k) {
  require(n >= 1 && N >= 0, ErrorKind::parameter, "cyclic Fejér symbol needs n >= 1, N >= 0");
  const std::int64_t width = 2 * static_cast<std::int64_t>(N) + 1;
  if (width >= n) return 1.0;
  std::int64_t r = ((k % n) + n) % n;
  // I and I + r overlap directly and across the wrap.
  std::int64_t overlap = std::max<std::int64_t>(0, width - r) + std::max<std::int64_t>(0, width - (n - r));
  return static_cast<double>(overlap) / static_cast<double>(width);
}

namespace {

bool is_power_of_two(std::int64_t n) { return n > 0 && (n & (n - 1)) == 0; }

// In-place transform of a strided line; sign -1 forward, +1 inverse (unnormalized).
void dft_line(Complex* data, std::size_t n, std::size_t stride, int sign, std::vector<Complex>& scratch) {
  scratch.resize(n);
  for (std::size_t i = 0; i < n; ++i) scratch[i] = data[i * stride];
  if (is_power_of_two(static_cast<std::int64_t>(n))) {
    for (std::size_t i = 1, j = 0; i < n; ++i) {
      std::size_t bit = n >> 1;
      for (; j & bit; bit >>= 1) j ^= bit;
      j ^= bit;
      if (i < j) std::swap(scratch[i], scratch[j]);
    }
    for (std::size_t len = 2; len <= n; len <<= 1) {
      const double ang = sign * 2 * std::numbers::pi / static_cast<double>(len);
      for (std::size_t i = 0; i < n; i += len)
        for (std::size_t j = 0; j < len / 2; ++j) {
          const Complex w = std::polar(1.0, ang * static_cast<double>(j));
          const Complex u = scratch[i + j], v = scratch[i + j + len / 2] * w;
          scratch[i + j] = u + v;
          scratch[i + j + len / 2] = u - v;
        }
    }
    for (std::size_t i = 0; i < n; ++i) data[i * stride] = scratch[i];
    return;
  }
  for (std::size_t k = 0; k < n; ++k) {
    Complex s = 0;
    for (std::size_t x = 0; x < n; ++x)
      s += scratch[x] * std::polar(1.0, sign * 2 * std::numbers::pi * static_cast<double>((k * x) % n) /
                                            static_cast<double>(n));
    data[k * stride] = s;
  }
}

void dft(std::vector<Complex>& a, std::int64_t n, int d, int sign) {
  std::vector<Complex> scratch;
  const std::size_t N = static_cast<std::size_t>(n);
  std::size_t stride = 1;
  for (int axis = 0; axis < d; ++axis) {
    const std::size_t block = stride * N;
    for (std::size_t start = 0; start < a.size(); start += block)
      for (std::size_t off = 0; off < stride; ++off) dft_line(a.data() + start + off, N, stride, sign, scratch);
    stride = block;
  }
}

}  // namespace

std::vector<std::vector<Complex>> fejer_means(std::int64_t n, int d, const std::vector<Complex>& f) {
  std::size_t size = 1;
  for (int i = 0; i < d; ++i) size *= static_cast<std::size_t>(n);
  require(f.size() == size, ErrorKind::parameter, "function size does not match n^d");
  std::vector<Complex> fhat(f);
  dft(fhat, n, d, -1);
  for (auto& z : fhat) z /= static_cast<double>(size);
  std::vector<std::vector<Complex>> out;
  std::vector<double> factor(static_cast<std::size_t>(n));
  for (int N = 0; N <= n; ++N) {
    for (std::int64_t k = 0; k < n; ++k) factor[static_cast<std::size_t>(k)] = cyclic_fejer_symbol(n, N, k);
    std::vector<Complex> g(size);
    for (std::size_t idx = 0; idx < size; ++idx) {
      double m = 1;
      std::size_t rest = idx;
      for (int axis = 0; axis < d; ++axis) {
        m *= factor[rest % static_cast<std::size_t>(n)];
        rest /= static_cast<std::size_t>(n);
      }
      g[idx] = m * fhat[idx];
    }
    dft(g, n, d, +1);
    out.push_back(std::move(g));
  }
  return out;
}

std::vector<Complex> gaussian_sample(std::size_t size, std::uint64_t seed, std::uint64_t trial) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(trial), static_cast<std::uint32_t>(trial >> 32)};
  std::mt19937_64 rng(seq);
  std::normal_distribution<double> normal(0.0, std::sqrt(0.5));
  std::vector<Complex> f(size);
  for (auto& z : f) {
    const double re = normal(rng);
    const double im = normal(rng);
    z = Complex(re, im);
  }
  return f;
}

MaximalExperiment fejer_maximal_experiment(std::int64_t n, int d, double p, int trials, std::uint64_t seed,
                                           std::size_t cap) {
  require(n >= 1 && d >= 1, ErrorKind::parameter, "experiment needs n >= 1 and d >= 1");
  require(trials >= 1, ErrorKind::parameter, "experiment needs at least one trial");
  require(p >= 1, ErrorKind::parameter, "exponent must be >= 1");
  const double size_d = std::pow(static_cast<double>(n), d);
  if (size_d > static_cast<double>(cap))
    fail(ErrorKind::resource, "n^d = " + std::to_string(size_d) + " exceeds cap " + std::to_string(cap));
  const std::size_t size = static_cast<std::size_t>(size_d);
  MaximalExperiment r;
  r.n = n;
  r.d = d;
  r.p = p;
  r.trials = trials;
  r.seed = seed;
  r.min_ratio = std::numeric_limits<double>::infinity();
  double total = 0;
  for (int t = 0; t < trials; ++t) {
    const auto f = gaussian_sample(size, seed, static_cast<std::uint64_t>(t));
    const auto means = fejer_means(n, d, f);
    std::vector<Complex> sup(size, 0.0);
    for (const auto& g : means)
      for (std::size_t i = 0; i < size; ++i) sup[i] = std::max(std::abs(sup[i]), std::abs(g[i]));
    const double ratio = lp_norm(sup, p) / lp_norm(f, p);
    r.ratios.push_back(ratio);
    total += ratio;
    r.max_ratio = std::max(r.max_ratio, ratio);
    r.min_ratio = std::min(r.min_ratio, ratio);
  }
  r.mean_ratio = total / trials;
  return r;
}

}  // namespace ncmult
