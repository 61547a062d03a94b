#include "ncmult/symbols.hpp"

#include <cmath>
#include <numbers>

#include "ncmult/calculus.hpp"
#include "ncmult/error.hpp"

namespace ncmult {

PointDomain ball_domain(const EnumeratedBall& B) {
  PointDomain d;
  d.description = B.group().label() + " " + (B.family() == BallFamily::cube ? "cube" : "word") + " ball radius " +
                  std::to_string(B.radius()) + " (" + std::to_string(B.size()) + " elements)";
  d.size = B.size();
  d.base = B.find(identity(B.group()));
  auto elems = std::make_shared<std::vector<GroupElement>>(B.elements());
  d.label = [G = B.group(), elems](std::size_t i) { return format_element(G, elems->at(i)); };
  return d;
}

PointDomain naturals_domain(int kmax) {
  require(kmax >= 0, ErrorKind::parameter, "naturals domain needs kmax >= 0");
  PointDomain d;
  d.description = "radii k = 0.." + std::to_string(kmax);
  d.size = static_cast<std::size_t>(kmax) + 1;
  d.base = 0;
  d.label = [](std::size_t i) { return "k=" + std::to_string(i); };
  return d;
}

LengthFunction exact_length(std::string name, std::vector<double> values, double alpha) {
  for (double v : values) require(v >= 0, ErrorKind::domain, "length values must be nonnegative");
  LengthFunction l;
  l.name = std::move(name);
  l.alpha = alpha;
  l.eval = [values = std::move(values)](std::size_t i) { return Interval{values.at(i), values.at(i)}; };
  return l;
}

LengthFunction word_length_on(const EnumeratedBall& B, double alpha) {
  std::vector<double> v(B.size());
  for (std::size_t i = 0; i < B.size(); ++i) v[i] = B.length(i);
  return exact_length("word length", std::move(v), alpha);
}

DerivativeValue family_derivative(const SymbolFamily& family, double t, std::size_t point, int order) {
  if (order == 0) return {family.value(t, point), true};
  if (family.derivative) return {family.derivative(t, point, order), true};
  auto f = [&](double s) { return family.value(s, point); };
  double h0 = 0.05 * t;
  auto est = finite_difference(f, t, order, h0, 1e-8 / std::pow(t, order));
  return {est.value, false};
}

// ---------------------------------------------------------------- Fejér

Rational fejer_symbol(const GroupSpec& G, BallFamily family, int N, const GroupElement& g, std::size_t cap) {
  BallOptions opts{cap, family};
  EnumeratedBall K = ball(G, N, opts);
  return Rational(static_cast<std::int64_t>(ball_intersection_count(K, g)), static_cast<std::int64_t>(K.size()));
}

FejerField::FejerField(EnumeratedBall domain, BallOptions options, int max_radius)
    : domain_(std::move(domain)), options_(options), max_radius_(max_radius) {
  require(max_radius >= 0, ErrorKind::parameter, "Fejér field radius must be >= 0");
  if (domain_.group().kind == GroupKind::heisenberg3 && options_.family == BallFamily::word)
    table_ = std::make_unique<HeisenbergBallTable>(max_radius);
  if (table_ && !table_->fibers_are_intervals()) table_.reset();
}

std::uint64_t FejerField::ball_size(int N) {
  require(N >= 0 && N <= max_radius_, ErrorKind::domain, "radius outside the Fejér field");
  if (table_) return table_->ball_size(N);
  auto it = sizes_.find(N);
  if (it != sizes_.end()) return it->second;
  std::uint64_t s = ball(group(), N, options_).size();
  sizes_[N] = s;
  return s;
}

const std::vector<std::uint64_t>& FejerField::counts(int N) {
  require(N >= 0 && N <= max_radius_, ErrorKind::domain, "radius outside the Fejér field");
  auto it = counts_.find(N);
  if (it != counts_.end()) return it->second;
  std::vector<std::uint64_t> c;
  if (table_) {
    c = table_->intersection_counts(N, domain_);
  } else {
    EnumeratedBall K = ball(group(), N, options_);
    sizes_[N] = K.size();
    c.assign(domain_.size(), 0);
    for (std::size_t i = 0; i < domain_.size(); ++i) {
      if (options_.family == BallFamily::word && domain_.length(i) > 2 * N) continue;
      c[i] = ball_intersection_count(K, domain_[i]);
    }
  }
  return counts_.emplace(N, std::move(c)).first->second;
}

Rational FejerField::exact(int N, std::size_t point) {
  const auto& c = counts(N);
  return Rational(static_cast<std::int64_t>(c.at(point)), static_cast<std::int64_t>(ball_size(N)));
}

double FejerField::value(int N, std::size_t point) {
  const auto& c = counts(N);
  return static_cast<double>(c.at(point)) / static_cast<double>(ball_size(N));
}

bool FejerField::in_support(int N, std::size_t point) { return counts(N).at(point) > 0; }

// ------------------------------------------------------- scalar symbols

double bochner_riesz_symbol(double N, double delta, double k) {
  require(N > 0, ErrorKind::parameter, "Bochner-Riesz radius must be > 0");
  require(delta > 0, ErrorKind::parameter, "Bochner-Riesz order must be > 0");
  if (k >= N) return 0.0;
  return std::pow(1.0 - (k * k) / (N * N), delta);
}

double AtomicMeasure::total_mass() const {
  double s = 0;
  for (const auto& [y, w] : atoms) s += w;
  return s;
}

AtomicMeasure dirac_measure(double y) {
  AtomicMeasure nu;
  nu.atoms = {{y, 1.0}};
  nu.description = "dirac:" + std::to_string(y);
  validate_measure(nu);
  return nu;
}

AtomicMeasure grid_measure(int k) {
  require(k >= 1, ErrorKind::parameter, "grid measure needs k >= 1 atoms");
  AtomicMeasure nu;
  for (int i = 0; i < k; ++i) {
    double y = k == 1 ? 0.0 : -1.0 + 2.0 * i / (k - 1);
    nu.atoms.emplace_back(y, 1.0 / k);
  }
  nu.description = "grid:" + std::to_string(k);
  return nu;
}

void validate_measure(const AtomicMeasure& nu, bool require_probability) {
  require(!nu.atoms.empty(), ErrorKind::parameter, "measure has no atoms");
  for (const auto& [y, w] : nu.atoms) {
    require(std::abs(y) <= 1.0, ErrorKind::domain, "atom location outside [-1,1]");
    require(w > 0, ErrorKind::domain, "atom weight must be positive");
  }
  if (require_probability)
    require(std::abs(nu.total_mass() - 1.0) <= 1e-12, ErrorKind::domain, "measure must have total mass 1");
}

namespace {

void check_t0(double t) {
  static const double t0 = min_t0().t0;
  if (t < t0) fail(ErrorKind::domain, "radial kernel needs t >= t0 = " + std::to_string(t0));
}

// d^n/dt^n of e^{-c/t}.
double exp_inverse_derivative(double c, double t, int n) {
  std::vector<double> outer(static_cast<std::size_t>(n + 1), std::exp(-c / t));
  std::vector<double> inner(static_cast<std::size_t>(std::max(n, 1)));
  double fact = 1;
  for (int j = 1; j <= n; ++j) {
    fact *= j;
    inner[static_cast<std::size_t>(j - 1)] = -c * ((j % 2) ? -1.0 : 1.0) * fact / std::pow(t, j + 1);
  }
  return faa_di_bruno(n, outer, inner);
}

}  // namespace

double radial_kernel_symbol(const AtomicMeasure& nu, double t, int k) {
  check_t0(t);
  require(k >= 0, ErrorKind::parameter, "radial kernel needs k >= 0");
  const double e = std::exp(-2.0 / t);
  double s = 0;
  for (const auto& [y, w] : nu.atoms) s += w * std::pow(y / t + e, k);
  return s;
}

double radial_kernel_derivative(const AtomicMeasure& nu, double t, int k, int order) {
  check_t0(t);
  if (order == 0) return radial_kernel_symbol(nu, t, k);
  const std::size_t n = static_cast<std::size_t>(order);
  double s = 0;
  for (const auto& [y, w] : nu.atoms) {
    const double u = y / t + std::exp(-2.0 / t);
    std::vector<double> inner(n);
    double fact = 1;
    for (int j = 1; j <= order; ++j) {
      fact *= j;
      double sign = (j % 2) ? -1.0 : 1.0;
      inner[static_cast<std::size_t>(j - 1)] = y * sign * fact / std::pow(t, j + 1) + exp_inverse_derivative(2.0, t, j);
    }
    std::vector<double> outer(n + 1);
    for (int j = 0; j <= order; ++j) {
      if (j > k) {
        outer[static_cast<std::size_t>(j)] = 0;
        continue;
      }
      double c = 1;
      for (int i = 0; i < j; ++i) c *= (k - i);
      outer[static_cast<std::size_t>(j)] = c * std::pow(u, k - j);
    }
    s += w * faa_di_bruno(order, outer, inner);
  }
  return s;
}

double t0_gap_first(double t) { return std::exp(-2.0 / t) - 1.0 / t - std::exp(-4.0 / t); }
double t0_gap_second(double t) { return std::exp(-2.0 / (3.0 * t)) - 1.0 / t - std::exp(-2.0 / t); }

T0Result min_t0() {
  auto ok = [](double t) { return t0_gap_first(t) >= 0 && t0_gap_second(t) > 0; };
  double lo = 1.0, hi = 100.0;
  require(!ok(lo) && ok(hi), ErrorKind::numeric, "t0 bracket does not straddle the threshold");
  while (hi - lo > 1e-7) {
    double mid = 0.5 * (lo + hi);
    (ok(mid) ? hi : lo) = mid;
  }
  T0Result r;
  r.t0 = hi;
  r.gap_first = t0_gap_first(hi);
  r.gap_second = t0_gap_second(hi);
  r.holds_at_t0 = ok(hi);
  r.holds_at_double = ok(2 * hi);
  return r;
}

double semigroup_symbol(double length, double t, SemigroupKind kind) {
  require(t >= 0, ErrorKind::parameter, "semigroup time must be >= 0");
  require(length >= 0, ErrorKind::domain, "length must be nonnegative");
  return kind == SemigroupKind::heat ? std::exp(-t * length) : std::exp(-t * std::sqrt(length));
}

double subordination_density(double s) {
  if (s <= 0) return 0.0;
  return std::exp(-1.0 / (4.0 * s) - 1.5 * std::log(s)) / (2.0 * std::sqrt(std::numbers::pi));
}

double subordination_integral(double u) {
  require(u >= 0, ErrorKind::domain, "subordination needs u >= 0");
  auto f = [u](double s) { return subordination_density(s) * std::exp(-s * u); };
  return integrate(f, 0.0, 1.0).value + integrate_to_infinity(f, 1.0).value;
}

// ------------------------------------------------------ family builders

SymbolFamily lacunary_heat_family(std::vector<double> lengths) {
  SymbolFamily f;
  f.name = "lacunary heat e^{-l/2^N}";
  f.kind = IndexKind::discrete;
  f.value = [l = std::move(lengths)](double N, std::size_t p) { return std::exp(-l.at(p) / std::exp2(N)); };
  return f;
}

SymbolFamily semigroup_family(std::vector<double> lengths, SemigroupKind kind) {
  if (kind == SemigroupKind::poisson)
    for (double& v : lengths) v = std::sqrt(v);
  SymbolFamily f;
  f.name = kind == SemigroupKind::heat ? "heat e^{-l/t}" : "poisson e^{-sqrt(l)/t}";
  f.kind = IndexKind::continuous;
  f.eta = 4;
  auto shared = std::make_shared<std::vector<double>>(std::move(lengths));
  f.value = [shared](double t, std::size_t p) { return std::exp(-shared->at(p) / t); };
  f.derivative = [shared](double t, std::size_t p, int order) {
    return exp_inverse_derivative(shared->at(p), t, order);
  };
  return f;
}

SymbolFamily bochner_riesz_family(double delta, std::vector<double> radii) {
  require(delta > 0, ErrorKind::parameter, "Bochner-Riesz order must be > 0");
  SymbolFamily f;
  f.name = "Bochner-Riesz (1-k^2/t^2)^delta";
  f.kind = IndexKind::continuous;
  f.eta = 4;
  f.parameters = {{"delta", delta}};
  auto r = std::make_shared<std::vector<double>>(std::move(radii));
  f.value = [r, delta](double t, std::size_t p) { return bochner_riesz_symbol(t, delta, r->at(p)); };
  f.derivative = [r, delta](double t, std::size_t p, int order) {
    const double k = r->at(p);
    if (t <= k) return 0.0;
    const double u = 1.0 - k * k / (t * t);
    std::vector<double> inner(static_cast<std::size_t>(order));
    double fact = 1;
    for (int j = 1; j <= order; ++j) {
      fact *= (j + 1);
      inner[static_cast<std::size_t>(j - 1)] = -k * k * ((j % 2) ? -1.0 : 1.0) * fact / std::pow(t, j + 2);
    }
    std::vector<double> outer(static_cast<std::size_t>(order + 1));
    for (int j = 0; j <= order; ++j) {
      double c = 1;
      for (int i = 0; i < j; ++i) c *= (delta - i);
      outer[static_cast<std::size_t>(j)] = c * std::pow(u, delta - j);
    }
    return faa_di_bruno(order, outer, inner);
  };
  return f;
}

SymbolFamily radial_kernel_family(AtomicMeasure nu, std::vector<int> radii, int eta) {
  validate_measure(nu);
  SymbolFamily f;
  f.name = "radial kernel (" + nu.description + ")";
  f.kind = IndexKind::continuous;
  f.eta = eta;
  auto m = std::make_shared<AtomicMeasure>(std::move(nu));
  auto r = std::make_shared<std::vector<int>>(std::move(radii));
  f.value = [m, r](double t, std::size_t p) { return radial_kernel_symbol(*m, t, r->at(p)); };
  f.derivative = [m, r](double t, std::size_t p, int order) {
    return radial_kernel_derivative(*m, t, r->at(p), order);
  };
  return f;
}

SymbolFamily constant_family(double value, IndexKind kind) {
  SymbolFamily f;
  f.name = "constant " + std::to_string(value);
  f.kind = kind;
  f.eta = 8;
  f.value = [value](double, std::size_t) { return value; };
  f.derivative = [](double, std::size_t, int) { return 0.0; };
  return f;
}

SymbolFamily fejer_family(std::shared_ptr<FejerField> field, std::function<int(int)> index_map, std::string name) {
  SymbolFamily f;
  f.name = std::move(name);
  f.kind = IndexKind::discrete;
  f.value = [field, index_map](double N, std::size_t p) {
    return field->value(index_map(static_cast<int>(std::lround(N))), p);
  };
  return f;
}

}  // namespace ncmult
