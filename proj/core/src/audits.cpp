#include "ncmult/audits.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

#include "ncmult/error.hpp"

namespace ncmult {

double AuditReport::extra(const std::string& key) const {
  for (const auto& [k, v] : extras)
    if (k == key) return v;
  fail(ErrorKind::parameter, "audit report has no field " + key);
}

namespace {

constexpr double kIdentityTolerance = 1e-14;

struct Best {
  double value = 0;
  std::optional<Witness> witness;
  void offer(double v, double index, std::size_t point, const PointDomain& d) {
    if (v > value || (!witness && v >= value)) {
      value = v;
      witness = Witness{index, point, d.label ? d.label(point) : std::to_string(point)};
    }
  }
};

Interval checked_length(const LengthFunction& length, const PointDomain& domain, std::size_t p) {
  Interval l = length.eval(p);
  if (!(l.lo > 0))
    fail(ErrorKind::domain, "degenerate length: " + length.name + " vanishes at non-identity point " +
                                (domain.label ? domain.label(p) : std::to_string(p)));
  return l;
}

void finish(AuditReport& r, const Best& best, std::optional<double> requested) {
  r.best_constant = best.value;
  r.witness = best.witness;
  r.requested_bound = requested;
  if (requested) r.pass = r.pass && best.value <= *requested;
}

}  // namespace

AuditReport audit_A1(const SymbolFamily& family, const LengthFunction& length, double alpha,
                     const PointDomain& domain, IndexRange range, std::optional<double> requested) {
  require(range.lo <= range.hi, ErrorKind::parameter, "empty index range");
  AuditReport r;
  r.condition = "A1";
  r.family = family.name;
  r.domain = domain.description + ", N in [" + std::to_string(range.lo) + ", " + std::to_string(range.hi) + "]";
  r.parameters = {{"alpha", alpha}, {"N_lo", range.lo}, {"N_hi", range.hi}};
  Best best, first, second;
  for (int N = range.lo; N <= range.hi; ++N) {
    const double scale = std::exp2(N);
    for (std::size_t p = 0; p < domain.size; ++p) {
      const double m = family.value(N, p);
      if (domain.base && p == *domain.base) {
        if (std::abs(1.0 - m) > kIdentityTolerance) {
          r.pass = false;
          r.notes.push_back("identity value " + std::to_string(m) + " != 1 at N=" + std::to_string(N));
        }
        continue;
      }
      const Interval l = checked_length(length, domain, p);
      const double r1 = std::abs(1.0 - m) * scale / std::pow(l.lo, alpha);
      const double r2 = std::abs(m) * std::pow(l.hi, alpha) / scale;
      first.offer(r1, N, p, domain);
      second.offer(r2, N, p, domain);
      best.offer(std::max(r1, r2), N, p, domain);
    }
  }
  r.extras = {{"ratio_first", first.value}, {"ratio_second", second.value}};
  finish(r, best, requested);
  return r;
}

AuditReport audit_A2(const SymbolFamily& family, const LengthFunction& length, double alpha, int eta,
                     const std::vector<double>& t_grid, const PointDomain& domain, std::optional<double> requested) {
  require(!t_grid.empty(), ErrorKind::parameter, "empty t grid");
  require(eta >= 0, ErrorKind::parameter, "eta must be >= 0");
  AuditReport r;
  r.condition = "A2";
  r.family = family.name;
  r.domain = domain.description + ", " + std::to_string(t_grid.size()) + " grid points in [" +
             std::to_string(t_grid.front()) + ", " + std::to_string(t_grid.back()) + "]";
  r.parameters = {{"alpha", alpha}, {"eta", eta}, {"t_min", t_grid.front()}, {"t_max", t_grid.back()}};
  bool analytic = true;

  struct Parts {
    Best all, first, second, deriv;
  };
  auto sweep = [&](const std::vector<double>& grid, Parts& parts) {
    for (double t : grid) {
      for (std::size_t p = 0; p < domain.size; ++p) {
        const double m = family.value(t, p);
        const bool base = domain.base && p == *domain.base;
        double worst = 0;
        if (base) {
          if (std::abs(1.0 - m) > kIdentityTolerance) {
            r.pass = false;
            r.notes.push_back("identity value " + std::to_string(m) + " != 1 at t=" + std::to_string(t));
          }
        } else {
          const Interval l = checked_length(length, domain, p);
          const double r1 = std::abs(1.0 - m) * t / std::pow(l.lo, alpha);
          const double r2 = std::abs(m) * std::pow(l.hi, alpha) / t;
          parts.first.offer(r1, t, p, domain);
          parts.second.offer(r2, t, p, domain);
          worst = std::max(r1, r2);
        }
        for (int k = 1; k <= eta; ++k) {
          DerivativeValue d = family_derivative(family, t, p, k);
          analytic = analytic && d.analytic;
          const double r3 = std::abs(d.value) * std::pow(t, k);
          parts.deriv.offer(r3, t, p, domain);
          worst = std::max(worst, r3);
        }
        parts.all.offer(worst, t, p, domain);
      }
    }
  };
  Parts parts;
  sweep(t_grid, parts);
  if (t_grid.size() >= 2) {
    std::vector<double> mid;
    for (std::size_t i = 0; i + 1 < t_grid.size(); ++i) mid.push_back(std::sqrt(t_grid[i] * t_grid[i + 1]));
    Parts refined;
    sweep(mid, refined);
    r.refinement_delta = std::max(0.0, refined.all.value - parts.all.value);
  }
  r.derivative_source = eta == 0 ? "none" : (analytic ? "analytic" : "finite-difference");
  r.extras = {{"ratio_first", parts.first.value}, {"ratio_second", parts.second.value},
              {"ratio_derivative", parts.deriv.value}};
  finish(r, parts.all, requested);
  return r;
}

AuditReport audit_difference(const SymbolFamily& family, const LengthFunction* length, double alpha,
                             const PointDomain& domain, IndexRange range, std::optional<double> requested) {
  require(range.lo < range.hi, ErrorKind::parameter, "difference audit needs at least two indices");
  AuditReport r;
  r.condition = "difference";
  r.family = family.name;
  r.domain = domain.description + ", N in [" + std::to_string(range.lo) + ", " + std::to_string(range.hi) + "]";
  r.parameters = {{"alpha", alpha}, {"N_lo", range.lo}, {"N_hi", range.hi}};
  Best best;
  for (int N = std::max(range.lo, 1); N < range.hi; ++N)
    for (std::size_t p = 0; p < domain.size; ++p)
      best.offer(N * std::abs(family.value(N + 1, p) - family.value(N, p)), N, p, domain);
  r.extras = {{"difference_ratio", best.value}};
  if (length) {
    AuditReport a1 = audit_A1(family, *length, alpha, domain, range);
    r.extras.emplace_back("ratio_first", a1.extra("ratio_first"));
    r.extras.emplace_back("ratio_second", a1.extra("ratio_second"));
    r.pass = a1.pass;
  }
  finish(r, best, requested);
  return r;
}

AuditReport lacunary_l2_bound(const SymbolFamily& family, const std::vector<double>& f, double a,
                              const PointDomain& domain, IndexRange range) {
  require(a > 1, ErrorKind::parameter, "lacunary base must be > 1");
  require(f.size() == domain.size, ErrorKind::parameter, "f must have one value per domain point");
  require(range.lo <= range.hi, ErrorKind::parameter, "empty index range");
  AuditReport r;
  r.condition = "lacunary-l2";
  r.family = family.name;
  r.domain = domain.description + ", N in [" + std::to_string(range.lo) + ", " + std::to_string(range.hi) + "]";
  r.parameters = {{"a", a}, {"C", kLacunaryFactor}, {"N_lo", range.lo}, {"N_hi", range.hi}};

  Best envelope;
  std::vector<double> sums(domain.size, 0.0);
  for (int N = range.lo; N <= range.hi; ++N) {
    const double aN = std::pow(a, N);
    for (std::size_t p = 0; p < domain.size; ++p) {
      require(f[p] >= 0, ErrorKind::domain, "f must be nonnegative");
      const double m = family.value(N, p);
      sums[p] += m * m;
      if (f[p] == 0) {
        if (m != 0) {
          r.pass = false;
          envelope.offer(std::numeric_limits<double>::infinity(), N, p, domain);
          r.notes.push_back("envelope violated: f = 0 but m_N != 0 at N=" + std::to_string(N) + ", point " +
                            (domain.label ? domain.label(p) : std::to_string(p)));
        }
        continue;
      }
      envelope.offer(std::abs(m) * (aN + f[p]) * (aN + f[p]) / (aN * f[p]), N, p, domain);
    }
  }
  const double beta = envelope.value;
  const double unit = beta * beta * a * a / (a * a - 1);
  Best ratio;
  double max_sum = 0;
  for (std::size_t p = 0; p < domain.size; ++p) {
    max_sum = std::max(max_sum, sums[p]);
    ratio.offer(unit > 0 ? sums[p] / unit : 0.0, 0, p, domain);
  }
  r.extras = {{"envelope_beta", beta}, {"max_sum", max_sum}, {"bound", kLacunaryFactor * unit}};
  if (envelope.witness) {
    r.extras.emplace_back("envelope_witness_index", envelope.witness->index);
  }
  finish(r, ratio, kLacunaryFactor);
  return r;
}

namespace {

// Smallest j with x <= 2^j.
int ceil_log2(double x) {
  int j = static_cast<int>(std::ceil(std::log2(x)));
  while (std::ldexp(1.0, j) < x) ++j;
  while (std::ldexp(1.0, j - 1) >= x) --j;
  return j;
}

}  // namespace

KConstantResult K_constant(const SymbolFamily& family, const std::vector<double>& f, const std::vector<double>& t_grid,
                           const PointDomain& domain) {
  require(f.size() == domain.size, ErrorKind::parameter, "f must have one value per domain point");
  require(!t_grid.empty(), ErrorKind::parameter, "empty t grid");
  std::map<int, KAnnulus> table;
  bool analytic = true;
  for (double t : t_grid) {
    for (std::size_t p = 0; p < domain.size; ++p) {
      if (f[p] <= 0) continue;
      const double m = std::abs(family.value(t, p));
      DerivativeValue d = family_derivative(family, t, p, 1);
      analytic = analytic && d.analytic;
      const double b = t * std::abs(d.value);
      const int j0 = ceil_log2(f[p] / t);
      for (int j : {j0, j0 + 1}) {
        KAnnulus& A = table[j];
        A.j = j;
        A.a = std::max(A.a, m);
        A.b = std::max(A.b, b);
        ++A.samples;
      }
    }
  }
  KConstantResult out;
  out.derivative_source = analytic ? "analytic" : "finite-difference";
  std::vector<double> terms;
  for (auto& [j, A] : table) {
    out.annuli.push_back(A);
    const double term = std::sqrt(A.a) * (std::sqrt(A.a) + std::sqrt(A.b));
    out.K += term;
    terms.push_back(term);
  }
  auto geometric_tail = [](double last, double prev) {
    if (last == 0) return 0.0;
    if (prev <= 0 || last >= prev) return std::numeric_limits<double>::infinity();
    const double q = last / prev;
    return last * q / (1 - q);
  };
  if (terms.size() >= 2) {
    out.tail_estimate = geometric_tail(terms.front(), terms[1]) + geometric_tail(terms.back(), terms[terms.size() - 2]);
  } else if (!terms.empty()) {
    out.tail_estimate = terms.front() == 0 ? 0 : std::numeric_limits<double>::infinity();
  }
  return out;
}

double multiorder_ratio(int s) { return std::exp2(std::exp2(-s - 1.0)); }

namespace {

void check_orders(const std::vector<int>& s) {
  require(!s.empty(), ErrorKind::parameter, "multi-order difference needs v >= 1");
  for (std::size_t i = 1; i < s.size(); ++i)
    require(s[i] < s[i - 1], ErrorKind::parameter, "s-list must be strictly decreasing");
}

template <class F>
double signed_sum(const std::vector<int>& s, double t, F&& term) {
  const std::size_t v = s.size();
  double total = 0;
  for (std::size_t mask = 0; mask < (std::size_t{1} << v); ++mask) {
    double scale = 1;
    int ones = 0;
    for (std::size_t i = 0; i < v; ++i)
      if (mask & (std::size_t{1} << i)) {
        scale *= multiorder_ratio(s[i]);
        ++ones;
      }
    const double sign = ((static_cast<int>(v) + ones) % 2) ? -1.0 : 1.0;
    total += sign * term(scale, scale * t);
  }
  return total;
}

double recursive(const SymbolFamily& family, const std::vector<int>& s, std::size_t v, double t, std::size_t point) {
  if (v == 0) return family.value(t, point);
  const double rho = multiorder_ratio(s[v - 1]);
  return recursive(family, s, v - 1, rho * t, point) - recursive(family, s, v - 1, t, point);
}

}  // namespace

double multiorder_difference(const SymbolFamily& family, const std::vector<int>& s, double t, std::size_t point) {
  check_orders(s);
  return signed_sum(s, t, [&](double, double x) { return family.value(x, point); });
}

double multiorder_difference_recursive(const SymbolFamily& family, const std::vector<int>& s, double t,
                                       std::size_t point) {
  check_orders(s);
  return recursive(family, s, s.size(), t, point);
}

AuditReport audit_multiorder_derivatives(const SymbolFamily& family, const std::vector<int>& s, int k,
                                         const std::vector<double>& t_grid, const PointDomain& domain) {
  check_orders(s);
  require(k >= 0, ErrorKind::parameter, "derivative order must be >= 0");
  const int v = static_cast<int>(s.size());
  require(k + v <= family.eta, ErrorKind::parameter, "k + v exceeds the family's differentiability order");
  AuditReport r;
  r.condition = "multiorder-derivative";
  r.family = family.name;
  r.domain = domain.description + ", " + std::to_string(t_grid.size()) + " grid points";
  double ssum = 0;
  for (int x : s) ssum += x;
  r.parameters = {{"k", k}, {"v", v}, {"s_sum", ssum}};
  const double norm = std::exp2(ssum) / std::pow(2.0 * k + 2.0 * v, v);
  bool analytic = true;
  Best best;
  for (double t : t_grid)
    for (std::size_t p = 0; p < domain.size; ++p) {
      const double d = signed_sum(s, t, [&](double scale, double x) {
        DerivativeValue dv = family_derivative(family, x, p, k);
        analytic = analytic && dv.analytic;
        return std::pow(scale, k) * dv.value;
      });
      best.offer(std::abs(d) * std::pow(t, k) * norm, t, p, domain);
    }
  r.derivative_source = k == 0 ? "none" : (analytic ? "analytic" : "finite-difference");
  finish(r, best, std::nullopt);
  return r;
}

}  // namespace ncmult
