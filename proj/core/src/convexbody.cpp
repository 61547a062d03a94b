#include "ncmult/convexbody.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <sstream>
#include <iomanip>
#include <limits>

#include "ncmult/calculus.hpp"
#include "ncmult/error.hpp"

namespace ncmult {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr int kMaxOrder = 4;

double norm2(const std::vector<double>& x) {
  double s = 0;
  for (double v : x) s += v * v;
  return std::sqrt(s);
}

// Running mean and standard error.
struct Accumulator {
  double sum = 0;
  double sumsq = 0;
  std::size_t n = 0;

  void add(double v) {
    sum += v;
    sumsq += v * v;
    ++n;
  }
  double mean() const { return n ? sum / static_cast<double>(n) : 0.0; }
  double stderr_() const {
    if (n < 2) return 0.0;
    const double m = mean();
    const double var = std::max(0.0, (sumsq - static_cast<double>(n) * m * m) / static_cast<double>(n - 1));
    return std::sqrt(var / static_cast<double>(n));
  }
};

SymbolEstimate exact(double v, const char* method) {
  SymbolEstimate e;
  e.value = v;
  e.method = method;
  return e;
}

SymbolEstimate from_acc(const Accumulator& a, const McOptions& mc) {
  SymbolEstimate e;
  e.value = a.mean();
  e.stderr_ = a.stderr_();
  e.method = "monte-carlo";
  e.seed = mc.seed;
  e.samples = a.n;
  return e;
}

// cos(u + kπ/2)
double shifted_cos(double c, double s, int k) {
  switch (k & 3) {
    case 0: return c;
    case 1: return -s;
    case 2: return -c;
    default: return s;
  }
}

void validate_body(const BodySpec& B) {
  require(B.d >= 1, ErrorKind::parameter, "body dimension must be >= 1");
  if (B.family == BodyFamily::lq_ball)
    require(B.q >= 2 && B.q % 2 == 0, ErrorKind::parameter, "lq bodies need an even q >= 2");
}

bool use_mc(const BodySpec& B, const McOptions& mc) { return mc.force_monte_carlo || B.family == BodyFamily::lq_ball; }

// ---- cube: products of truncated Taylor series of sinc factors around s = 1.

std::vector<double> sinc_series(double xi, int K) {
  std::vector<double> c(static_cast<std::size_t>(K) + 1, 0.0);
  const double a = kPi * xi;
  if (a == 0) {
    c[0] = 1;
    return c;
  }
  // sin(a(1+ε)) = Σ a^k sin(a + kπ/2) ε^k / k!, 1/(a(1+ε)) = Σ (-ε)^j / a.
  std::vector<double> num(c.size());
  double ak = 1, fact = 1;
  for (int k = 0; k <= K; ++k) {
    if (k > 0) {
      ak *= a;
      fact *= k;
    }
    num[static_cast<std::size_t>(k)] = ak * std::sin(a + k * kPi / 2) / fact;
  }
  for (int k = 0; k <= K; ++k)
    for (int j = 0; j <= k; ++j) c[static_cast<std::size_t>(k)] += num[static_cast<std::size_t>(k - j)] * ((j & 1) ? -1.0 : 1.0);
  for (auto& v : c) v /= a;
  return c;
}

// g^{(k)}(1) for g(s) = m̂(sξ), k = 0..K.
std::vector<double> cube_radial_derivatives(const std::vector<double>& xi, int K) {
  std::vector<double> prod(static_cast<std::size_t>(K) + 1, 0.0);
  prod[0] = 1;
  for (double x : xi) {
    const auto f = sinc_series(x, K);
    std::vector<double> next(prod.size(), 0.0);
    for (int i = 0; i <= K; ++i)
      for (int j = 0; i + j <= K; ++j) next[static_cast<std::size_t>(i + j)] += prod[static_cast<std::size_t>(i)] * f[static_cast<std::size_t>(j)];
    prod = std::move(next);
  }
  double fact = 1;
  for (int k = 1; k <= K; ++k) {
    fact *= k;
    prod[static_cast<std::size_t>(k)] *= fact;
  }
  return prod;
}

// ---- euclidean ball: 1-D radial reduction.

double ball_density_constant(int d) {
  return std::exp(std::lgamma(d / 2.0 + 1) - std::lgamma((d + 1) / 2.0)) / std::sqrt(kPi);
}

// ∫_{-1}^{1} c_d (1-u²)^{(d-1)/2} (a u)^k cos(a u + kπ/2) du, with u = cos θ
// so the weight becomes sin^d θ and the integrand is smooth.
double ball_moment(int d, double a, int k) {
  const double cd = ball_density_constant(d);
  auto f = [d, a, k, cd](double theta) {
    const double au = a * std::cos(theta);
    return cd * std::pow(std::sin(theta), d) * std::pow(au, k) * shifted_cos(std::cos(au), std::sin(au), k);
  };
  // Integrand is even in u; panels of about half a period in a cos θ.
  const int panels = std::max(1, static_cast<int>(std::ceil(std::abs(a) / kPi)));
  const double h = kPi / 2 / panels;
  double s = 0;
  for (int i = 0; i < panels; ++i) s += integrate_fixed(f, i * h, (i + 1) * h).value;
  return 2 * s;
}

std::vector<double> ball_radial_derivatives(const BodySpec& B, const std::vector<double>& xi, int K) {
  const double a = 2 * kPi * B.scale() * norm2(xi);
  std::vector<double> g(static_cast<std::size_t>(K) + 1);
  for (int k = 0; k <= K; ++k) g[static_cast<std::size_t>(k)] = (a == 0 && k > 0) ? 0.0 : ball_moment(B.d, a, k);
  return g;
}

std::vector<double> scaled(const std::vector<double>& xi, double c) {
  std::vector<double> out(xi);
  for (auto& v : out) v *= c;
  return out;
}

double exact_value(const BodySpec& B, const std::vector<double>& xi) {
  if (B.family == BodyFamily::cube) return cube_radial_derivatives(xi, 0)[0];
  return ball_radial_derivatives(B, xi, 0)[0];
}

}  // namespace

BodySpec BodySpec::cube(int d) { return {BodyFamily::cube, d, 0}; }
BodySpec BodySpec::ball(int d) { return {BodyFamily::euclidean_ball, d, 2}; }
BodySpec BodySpec::lq(int q, int d) { return {BodyFamily::lq_ball, d, q}; }

std::string BodySpec::label() const {
  switch (family) {
    case BodyFamily::cube: return "cube:d=" + std::to_string(d);
    case BodyFamily::euclidean_ball: return "ball:d=" + std::to_string(d);
    case BodyFamily::lq_ball: return "lq:q=" + std::to_string(q) + ",d=" + std::to_string(d);
  }
  return "?";
}

double BodySpec::scale() const {
  validate_body(*this);
  switch (family) {
    case BodyFamily::cube: return 0.5;
    case BodyFamily::euclidean_ball: return std::exp(std::lgamma(d / 2.0 + 1) / d) / std::sqrt(kPi);
    case BodyFamily::lq_ball:
      // vol of the unit ℓq ball is (2Γ(1+1/q))^d / Γ(1+d/q).
      return std::exp(std::lgamma(1.0 + static_cast<double>(d) / q) / d) / (2 * std::exp(std::lgamma(1.0 + 1.0 / q)));
  }
  return 0;
}

void sample_block(const BodySpec& B, std::uint64_t seed, std::uint64_t block, std::size_t n, std::vector<double>& out) {
  validate_body(B);
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(block), static_cast<std::uint32_t>(block >> 32)};
  std::mt19937_64 rng(seq);
  const std::size_t d = static_cast<std::size_t>(B.d);
  const double r = B.scale();
  out.resize(n * d);
  switch (B.family) {
    case BodyFamily::cube: {
      std::uniform_real_distribution<double> u(-0.5, 0.5);
      for (auto& v : out) v = u(rng);
      break;
    }
    case BodyFamily::euclidean_ball: {
      std::normal_distribution<double> g;
      std::uniform_real_distribution<double> u(0.0, 1.0);
      for (std::size_t i = 0; i < n; ++i) {
        double* x = out.data() + i * d;
        double s = 0;
        for (std::size_t j = 0; j < d; ++j) {
          x[j] = g(rng);
          s += x[j] * x[j];
        }
        const double radius = r * std::pow(u(rng), 1.0 / B.d) / std::sqrt(s);
        for (std::size_t j = 0; j < d; ++j) x[j] *= radius;
      }
      break;
    }
    case BodyFamily::lq_ball: {
      // |y_i|^q ~ Gamma(1/q), W ~ Exp(1): y / (Σ|y_i|^q + W)^{1/q} is uniform in the unit ball.
      std::gamma_distribution<double> gamma(1.0 / B.q, 1.0);
      std::exponential_distribution<double> expo(1.0);
      std::bernoulli_distribution sign(0.5);
      for (std::size_t i = 0; i < n; ++i) {
        double* x = out.data() + i * d;
        double s = 0;
        for (std::size_t j = 0; j < d; ++j) {
          const double G = gamma(rng);
          s += G;
          x[j] = (sign(rng) ? -1.0 : 1.0) * std::pow(G, 1.0 / B.q);
        }
        s += expo(rng);
        const double f = r / std::pow(s, 1.0 / B.q);
        for (std::size_t j = 0; j < d; ++j) x[j] *= f;
      }
      break;
    }
  }
}

const std::array<std::array<std::int64_t, 5>, 5>& radial_coefficients() {
  static const std::array<std::array<std::int64_t, 5>, 5> table = {{
      {1, 0, 0, 0, 0},
      {0, -1, 0, 0, 0},
      {0, 2, 1, 0, 0},
      {0, -6, -6, -1, 0},
      {0, 24, 36, 12, 1},
  }};
  return table;
}

std::vector<BodyPointEstimate> evaluate_body(const BodySpec& B, const std::vector<std::vector<double>>& xis, int v_max,
                                             const McOptions& mc) {
  validate_body(B);
  require(v_max >= 0, ErrorKind::parameter, "derivative order must be >= 0");
  if (v_max > kMaxOrder) fail(ErrorKind::unsupported, "t-derivatives are tabulated up to order 4");
  for (const auto& xi : xis)
    require(xi.size() == static_cast<std::size_t>(B.d), ErrorKind::parameter, "frequency has the wrong dimension");
  const auto& C = radial_coefficients();
  const std::size_t m = xis.size();
  const std::size_t V = static_cast<std::size_t>(v_max);
  std::vector<BodyPointEstimate> out(m);
  constexpr double h = 1e-5;

  if (!use_mc(B, mc)) {
    const char* method = B.family == BodyFamily::cube ? "closed-form" : "quadrature";
    for (std::size_t i = 0; i < m; ++i) {
      const auto g = B.family == BodyFamily::cube ? cube_radial_derivatives(xis[i], std::max(v_max, 1))
                                                  : ball_radial_derivatives(B, xis[i], std::max(v_max, 1));
      out[i].value = exact(g[0], method);
      out[i].gradient_pairing = exact(g[1], method);
      for (int v = 1; v <= v_max; ++v) {
        double s = 0;
        for (int k = 1; k <= v; ++k) s += static_cast<double>(C[static_cast<std::size_t>(v)][static_cast<std::size_t>(k)]) * g[static_cast<std::size_t>(k)];
        out[i].t_derivatives.push_back(exact(s, method));
      }
      const auto& xi = xis[i];
      double norm = 0;
      for (double x : xi) norm += x * x;
      const double h0 = 1e-2 / (1 + std::sqrt(norm));
      auto fd = finite_difference([&B, &xi](double t) { return exact_value(B, scaled(xi, 1.0 / t)); }, 1.0, 1, h0,
                                  1e-8);
      out[i].fd_first = exact(fd.value, "finite-difference");
      out[i].fd_first.stderr_ = fd.disagreement * std::max(std::abs(fd.value), 1e-8);
    }
    return out;
  }

  require(mc.samples > 0, ErrorKind::parameter, "Monte Carlo sample budget must be > 0");
  require(mc.block > 0, ErrorKind::parameter, "Monte Carlo block size must be > 0");
  // Per frequency: value, gradient, fd, derivatives 1..V.
  const std::size_t nq = 3 + V;
  std::vector<Accumulator> acc(m * nq);
  std::vector<double> xs;
  const std::size_t d = static_cast<std::size_t>(B.d);
  std::size_t done = 0;
  for (std::uint64_t block = 0; done < mc.samples; ++block) {
    const std::size_t n = std::min(mc.block, mc.samples - done);
    sample_block(B, mc.seed, block, n, xs);
    for (std::size_t i = 0; i < m; ++i) {
      const auto& xi = xis[i];
      Accumulator* a = acc.data() + i * nq;
      for (std::size_t s = 0; s < n; ++s) {
        const double* x = xs.data() + s * d;
        double dot = 0;
        for (std::size_t j = 0; j < d; ++j) dot += x[j] * xi[j];
        const double u = 2 * kPi * dot;
        const double c = std::cos(u), sn = std::sin(u);
        a[0].add(c);
        a[1].add(-u * sn);
        a[2].add((std::cos(u / (1 + h)) - std::cos(u / (1 - h))) / (2 * h));
        double uk = 1;
        double g[kMaxOrder + 1];
        for (int k = 1; k <= v_max; ++k) {
          uk *= u;
          g[k] = uk * shifted_cos(c, sn, k);
        }
        for (int v = 1; v <= v_max; ++v) {
          double sum = 0;
          for (int k = 1; k <= v; ++k) sum += static_cast<double>(C[static_cast<std::size_t>(v)][static_cast<std::size_t>(k)]) * g[k];
          a[2 + static_cast<std::size_t>(v)].add(sum);
        }
      }
    }
    done += n;
  }
  for (std::size_t i = 0; i < m; ++i) {
    const Accumulator* a = acc.data() + i * nq;
    out[i].value = from_acc(a[0], mc);
    out[i].gradient_pairing = from_acc(a[1], mc);
    out[i].fd_first = from_acc(a[2], mc);
    for (std::size_t v = 1; v <= V; ++v) out[i].t_derivatives.push_back(from_acc(a[2 + v], mc));
  }
  return out;
}

SymbolEstimate indicator_ft(const BodySpec& B, const std::vector<double>& xi, const McOptions& mc) {
  return evaluate_body(B, {xi}, 0, mc).front().value;
}

SymbolEstimate isotropic_constant(const BodySpec& B, const McOptions& mc) {
  validate_body(B);
  if (!use_mc(B, mc)) {
    if (B.family == BodyFamily::cube) return exact(1 / std::sqrt(12.0), "closed-form");
    return exact(B.scale() / std::sqrt(B.d + 2.0), "closed-form");
  }
  require(mc.samples > 0, ErrorKind::parameter, "Monte Carlo sample budget must be > 0");
  Accumulator a;
  std::vector<double> xs;
  const std::size_t d = static_cast<std::size_t>(B.d);
  std::size_t done = 0;
  for (std::uint64_t block = 0; done < mc.samples; ++block) {
    const std::size_t n = std::min(mc.block, mc.samples - done);
    sample_block(B, mc.seed, block, n, xs);
    for (std::size_t s = 0; s < n; ++s) {
      double q = 0;
      for (std::size_t j = 0; j < d; ++j) q += xs[s * d + j] * xs[s * d + j];
      a.add(q / static_cast<double>(d));
    }
    done += n;
  }
  SymbolEstimate e = from_acc(a, mc);
  const double L = std::sqrt(e.value);
  e.stderr_ = e.stderr_ / (2 * L);
  e.value = L;
  return e;
}

SymbolEstimate radial_derivative_bound(const BodySpec& B, const std::vector<double>& xi, int v, const McOptions& mc) {
  if (v > kMaxOrder) fail(ErrorKind::unsupported, "t-derivatives are tabulated up to order 4");
  require(v >= 1, ErrorKind::parameter, "derivative order must be >= 1");
  return evaluate_body(B, {xi}, v, mc).front().t_derivatives.at(static_cast<std::size_t>(v) - 1);
}

std::vector<std::vector<double>> default_xi_samples(const BodySpec& B, double L) {
  require(L > 0, ErrorKind::parameter, "isotropic constant must be > 0");
  std::vector<std::vector<double>> out;
  const auto rho = geometric_grid(std::ldexp(1.0, -5), 16.0, std::sqrt(2.0));
  const std::size_t d = static_cast<std::size_t>(B.d);
  for (double r : rho) {
    std::vector<double> axis(d, 0.0), diag(d, r / L / std::sqrt(static_cast<double>(d)));
    axis[0] = r / L;
    out.push_back(axis);
    if (d > 1) out.push_back(diag);
  }
  return out;
}

namespace {

struct BoundSet {
  double decay = 0, approach = 0, gradient = 0;
  double decay_se = 0, approach_se = 0, gradient_se = 0;
  std::size_t decay_at = 0, approach_at = 0, gradient_at = 0;
  std::vector<double> deriv, deriv_se;
  double chain_worst = 0;
  bool chain_ok = true;
};

BoundSet bounds_from(const std::vector<std::vector<double>>& xis, const std::vector<BodyPointEstimate>& est, double L,
                     bool mc) {
  BoundSet b;
  const std::size_t V = est.empty() ? 0 : est.front().t_derivatives.size();
  b.deriv.assign(V, 0.0);
  b.deriv_se.assign(V, 0.0);
  for (std::size_t i = 0; i < xis.size(); ++i) {
    const double r = norm2(xis[i]);
    const auto& e = est[i];
    if (r > 0) {
      const double c1 = std::abs(e.value.value) * r * L;
      if (c1 > b.decay) {
        b.decay = c1;
        b.decay_se = e.value.stderr_ * r * L;
        b.decay_at = i;
      }
      const double c2 = std::abs(1 - e.value.value) / (L * r);
      if (c2 > b.approach) {
        b.approach = c2;
        b.approach_se = e.value.stderr_ / (L * r);
        b.approach_at = i;
      }
    }
    const double c3 = std::abs(e.gradient_pairing.value);
    if (c3 > b.gradient) {
      b.gradient = c3;
      b.gradient_se = e.gradient_pairing.stderr_;
      b.gradient_at = i;
    }
    for (std::size_t v = 0; v < V; ++v) {
      const double c = std::abs(e.t_derivatives[v].value);
      if (c > b.deriv[v]) {
        b.deriv[v] = c;
        b.deriv_se[v] = e.t_derivatives[v].stderr_;
      }
    }
    if (V >= 1) {
      // chain rule: d/dt m̂(ξ/t) = -<∇m̂, ξ>, checked against the t-difference.
      const double D1 = e.t_derivatives[0].value;
      const double tol = mc ? 3 * std::max(e.t_derivatives[0].stderr_, e.fd_first.stderr_) + 1e-9
                            : 1e-4 * std::max(1.0, std::abs(D1));
      const double dev = std::max(std::abs(D1 - e.fd_first.value), std::abs(D1 + e.gradient_pairing.value)) / tol;
      b.chain_worst = std::max(b.chain_worst, dev);
      b.chain_ok = b.chain_ok && dev <= 1;
    }
  }
  return b;
}

}  // namespace

AuditReport symbol_bound_audit(const BodySpec& B, const std::vector<std::vector<double>>& xis, const McOptions& mc) {
  require(!xis.empty(), ErrorKind::parameter, "no frequencies to audit");
  const SymbolEstimate L = isotropic_constant(B, mc);
  const auto est = evaluate_body(B, xis, 1, mc);
  const BoundSet b = bounds_from(xis, est, L.value, use_mc(B, mc));
  AuditReport r;
  r.condition = "convex-symbol-bounds";
  r.family = B.label();
  r.domain = std::to_string(xis.size()) + " frequencies";
  r.parameters = {{"d", B.d}, {"samples", static_cast<double>(use_mc(B, mc) ? mc.samples : 0)},
                  {"seed", static_cast<double>(mc.seed)}};
  r.best_constant = std::max({b.decay, b.approach, b.gradient});
  r.witness = Witness{0, b.gradient_at, "xi[" + std::to_string(b.gradient_at) + "]"};
  r.extras = {{"L", L.value},
              {"L_stderr", L.stderr_},
              {"decay", b.decay},
              {"decay_stderr", b.decay_se},
              {"approach", b.approach},
              {"approach_stderr", b.approach_se},
              {"gradient", b.gradient},
              {"gradient_stderr", b.gradient_se},
              {"chain_rule_worst", b.chain_worst}};
  r.pass = b.chain_ok;
  r.derivative_source = est.front().value.method;
  if (!b.chain_ok) r.notes.push_back("v = 1 chain rule disagrees with the t-difference beyond tolerance");
  return r;
}

SweepTable dimension_sweep(BodyFamily family, int q, const std::vector<int>& dims, int v_max, std::size_t budget,
                           std::uint64_t seed) {
  require(!dims.empty(), ErrorKind::parameter, "no dimensions to sweep");
  require(v_max >= 1 && v_max <= kMaxOrder, ErrorKind::parameter, "sweep order must be in 1..4");
  SweepTable table;
  const char* name = family == BodyFamily::cube ? "cube" : family == BodyFamily::euclidean_ball ? "ball" : "lq";
  for (int d : dims) {
    BodySpec B{family, d, family == BodyFamily::lq_ball ? q : (family == BodyFamily::cube ? 0 : 2)};
    McOptions mc;
    mc.samples = budget;
    mc.seed = seed;
    const bool stochastic = use_mc(B, mc);
    const SymbolEstimate L = isotropic_constant(B, mc);
    const auto xis = default_xi_samples(B, L.value);
    const auto est = evaluate_body(B, xis, v_max, mc);
    const BoundSet b = bounds_from(xis, est, L.value, stochastic);
    table.chain_rule_worst = std::max(table.chain_rule_worst, b.chain_worst);
    table.chain_rule_ok = table.chain_rule_ok && b.chain_ok;
    const std::size_t samples = stochastic ? budget : 0;
    auto row = [&](std::string bound, int order, double c, double se) {
      table.rows.push_back({name, B.q, d, std::move(bound), order, c, se, samples, stochastic ? seed : 0});
    };
    row("isotropic", 0, L.value, L.stderr_);
    row("decay", 0, b.decay, b.decay_se);
    row("approach", 0, b.approach, b.approach_se);
    row("gradient", 1, b.gradient, b.gradient_se);
    for (int v = 1; v <= v_max; ++v)
      row("derivative", v, b.deriv[static_cast<std::size_t>(v) - 1], b.deriv_se[static_cast<std::size_t>(v) - 1]);
  }
  for (const auto& r : table.rows) {
    if (r.d != dims.front()) continue;
    SweepRatio s{r.bound, r.order, 0, std::numeric_limits<double>::infinity(), 0};
    for (const auto& o : table.rows)
      if (o.bound == r.bound && o.order == r.order) {
        s.max = std::max(s.max, o.constant);
        s.min = std::min(s.min, o.constant);
      }
    s.ratio = s.min > 0 ? s.max / s.min : std::numeric_limits<double>::infinity();
    table.ratios.push_back(s);
  }
  return table;
}

std::string sweep_csv(const SweepTable& table) {
  std::ostringstream os;
  os << "family,q,d,bound,order,constant,stderr,samples,seed\n";
  os << std::setprecision(17);
  for (const auto& r : table.rows)
    os << r.family << ',' << r.q << ',' << r.d << ',' << r.bound << ',' << r.order << ',' << r.constant << ','
       << r.stderr_ << ',' << r.samples << ',' << r.seed << '\n';
  return os.str();
}

}  // namespace ncmult
