#include "ncmult/lengths.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "ncmult/error.hpp"

namespace ncmult {

namespace {

const double kSqrt2 = std::sqrt(2.0);

std::string point_label(const PointDomain& d, std::size_t p) { return d.label ? d.label(p) : std::to_string(p); }

std::size_t base_of(const ApproximatingFamily& fam) {
  require(fam.domain.base.has_value(), ErrorKind::parameter, "approximating family needs a base point");
  return *fam.domain.base;
}

bool in_E(const ApproximatingFamily& fam, int s, std::size_t p) {
  if (p == base_of(fam)) return true;
  return s >= 1 && fam.in_support(s, p);
}

double phi(const ApproximatingFamily& fam, int s, std::size_t p) {
  if (s == 0) return p == base_of(fam) ? 1.0 : 0.0;
  return fam.value(s, p);
}

// J for every point against the first `count` selected indices.
std::vector<int> J_table(const ApproximatingFamily& fam, const std::vector<int>& s, std::size_t count) {
  std::vector<int> J(fam.domain.size, -1);
  for (std::size_t p = 0; p < fam.domain.size; ++p)
    for (std::size_t j = 0; j < count; ++j)
      if (in_E(fam, s[j], p)) {
        J[p] = static_cast<int>(j);
        break;
      }
  return J;
}

double selection_bound(SelectionRule rule, int N, int J) {
  return std::ldexp(1.0, (rule == SelectionRule::relaxed ? J : 0) - N);
}

}  // namespace

const char* to_string(SelectionRule rule) { return rule == SelectionRule::strict ? "strict" : "relaxed"; }

Subsequence select_subsequence(const ApproximatingFamily& fam, const SelectionOptions& options) {
  require(options.window >= 0, ErrorKind::parameter, "verification window must be >= 0");
  require(options.horizon >= 1 + options.window, ErrorKind::parameter, "horizon must leave room for s_1 and its window");
  require(static_cast<bool>(fam.value) && static_cast<bool>(fam.in_support), ErrorKind::parameter,
          "approximating family needs value and support callbacks");
  base_of(fam);
  Subsequence sub;
  sub.rule = options.rule;
  sub.window = options.window;
  sub.horizon = options.horizon;
  sub.s = {0, 1};
  const std::size_t n = fam.domain.size;

  for (int N = 1;; ++N) {
    const int sN = sub.s.back();
    const int last_candidate = options.horizon - options.window;
    if (sN + 1 > last_candidate) {
      sub.stop_reason = "horizon reached";
      break;
    }
    std::vector<std::size_t> E;
    for (std::size_t p = 0; p < n; ++p)
      if (in_E(fam, sN, p)) E.push_back(p);
    const auto J = J_table(fam, sub.s, sub.s.size());

    // ok[s'] for s' in (sN, horizon]; remember the failing point for errors.
    std::vector<char> ok(static_cast<std::size_t>(options.horizon) + 1, 1);
    std::vector<std::size_t> failing(ok.size(), 0);
    for (int sp = sN + 1; sp <= options.horizon; ++sp)
      for (std::size_t p : E)
        if (std::abs(1.0 - phi(fam, sp, p)) > selection_bound(options.rule, N, J[p])) {
          ok[static_cast<std::size_t>(sp)] = 0;
          failing[static_cast<std::size_t>(sp)] = p;
          break;
        }

    int chosen = -1;
    for (int s = sN + 1; s <= last_candidate && chosen < 0; ++s) {
      bool good = true;
      for (int sp = s; sp <= s + options.window; ++sp)
        if (!ok[static_cast<std::size_t>(sp)]) {
          good = false;
          break;
        }
      if (good) chosen = s;
    }
    if (chosen < 0) {
      std::size_t blocking = 0;
      for (int sp = options.horizon; sp > sN; --sp)
        if (!ok[static_cast<std::size_t>(sp)]) {
          blocking = failing[static_cast<std::size_t>(sp)];
          break;
        }
      sub.blocking_point = blocking;
      const std::string msg = "no admissible s_" + std::to_string(N + 1) + " below horizon " +
                              std::to_string(options.horizon) + "; blocking point " +
                              point_label(fam.domain, blocking);
      if (!options.allow_partial) fail(ErrorKind::nonconvergence, msg);
      sub.partial = true;
      sub.stop_reason = msg;
      break;
    }
    sub.s.push_back(chosen);
  }
  return sub;
}

std::optional<std::pair<int, std::size_t>> check_subsequence(const ApproximatingFamily& fam, const Subsequence& sub) {
  for (int N = 1; N + 1 < sub.length(); ++N) {
    const auto J = J_table(fam, sub.s, static_cast<std::size_t>(N) + 1);
    const int s_next = sub.s[static_cast<std::size_t>(N) + 1];
    for (std::size_t p = 0; p < fam.domain.size; ++p) {
      if (!in_E(fam, sub.s[static_cast<std::size_t>(N)], p)) continue;
      for (int sp = s_next; sp <= s_next + sub.window; ++sp)
        if (std::abs(1.0 - phi(fam, sp, p)) > selection_bound(sub.rule, N, J[p])) return std::make_pair(N, p);
    }
  }
  return std::nullopt;
}

int J_index(const ApproximatingFamily& fam, const Subsequence& sub, std::size_t point) {
  for (std::size_t j = 0; j < sub.s.size(); ++j)
    if (in_E(fam, sub.s[j], point)) return static_cast<int>(j);
  return -1;
}

double cnd_tail_bound(int j_max, SelectionRule rule, int J) {
  const double tail = 2.0 * std::pow(2.0, -(j_max + 1) / 2.0) / (1.0 - 1.0 / kSqrt2);
  return rule == SelectionRule::relaxed ? std::ldexp(tail, J) : tail;
}

CndPoint build_cnd_length(const ApproximatingFamily& fam, const Subsequence& sub, std::size_t point,
                          std::optional<int> j_max) {
  require(point < fam.domain.size, ErrorKind::parameter, "point outside the family domain");
  CndPoint r;
  r.J = J_index(fam, sub, point);
  if (r.J < 0)
    fail(ErrorKind::domain, "J undefined: " + point_label(fam.domain, point) + " lies in no selected support");
  const int requested = j_max.value_or(r.J + 40);
  require(requested >= 0, ErrorKind::parameter, "truncation level must be >= 0");
  r.truncation = std::min(requested, sub.length() - 1);
  double lo = 0;
  double weight = 1;
  for (int j = 0; j <= r.truncation; ++j, weight *= kSqrt2)
    lo += weight * (1.0 - phi(fam, sub.s[static_cast<std::size_t>(j)], point));
  double hi = lo;
  // Unevaluated terms up to J only satisfy |1 - φ| <= 2.
  for (int j = r.truncation + 1; j <= r.J; ++j) hi += 2.0 * std::pow(kSqrt2, j);
  hi += cnd_tail_bound(std::max(r.truncation, r.J), sub.rule, r.J);
  if (point == base_of(fam)) hi = lo;
  r.value = {lo, hi};
  return r;
}

LengthFunction CndLength::as_length(double alpha) const {
  LengthFunction L;
  L.name = name;
  L.alpha = alpha;
  auto pts = std::make_shared<std::vector<CndPoint>>(points);
  L.eval = [pts](std::size_t p) { return pts->at(p).value; };
  return L;
}

LengthFunction CndLength::partial_sum_length(double alpha) const {
  LengthFunction L;
  L.name = "partial-sum " + name;
  L.alpha = alpha;
  auto lo = std::make_shared<std::vector<double>>();
  lo->reserve(points.size());
  for (const auto& p : points) lo->push_back(p.value.lo);
  L.eval = [lo](std::size_t p) { return Interval{lo->at(p), lo->at(p)}; };
  return L;
}

std::vector<double> CndLength::midpoints() const {
  std::vector<double> m;
  m.reserve(points.size());
  for (const auto& p : points) m.push_back(0.5 * (p.value.lo + p.value.hi));
  return m;
}

CndLength build_cnd_length(const ApproximatingFamily& fam, const Subsequence& sub, std::optional<int> j_max) {
  CndLength L;
  L.name = "cnd(" + fam.name + ")";
  L.subsequence = sub;
  L.domain = fam.domain;
  L.points.reserve(fam.domain.size);
  for (std::size_t p = 0; p < fam.domain.size; ++p) L.points.push_back(build_cnd_length(fam, sub, p, j_max));
  return L;
}

AuditReport verify_length_equivalence(const CndLength& ell, std::optional<double> requested_ratio,
                                      const LengthFunction* comparison, double power) {
  AuditReport r;
  r.condition = "length-equivalence";
  r.family = ell.name;
  r.domain = ell.domain.description;
  r.parameters = {{"window", ell.subsequence.window}, {"horizon", ell.subsequence.horizon},
                  {"selected", ell.subsequence.length()}};
  const std::size_t base = ell.domain.base.value_or(std::numeric_limits<std::size_t>::max());
  double c1 = std::numeric_limits<double>::infinity(), c2 = 0, width = 0;
  double k1 = std::numeric_limits<double>::infinity(), k2 = 0;
  int maxJ = 0;
  std::size_t arg1 = 0, arg2 = 0;
  for (std::size_t p = 0; p < ell.points.size(); ++p) {
    if (p == base) continue;
    const auto& pt = ell.points[p];
    const double scale = std::pow(kSqrt2, pt.J);
    if (pt.value.lo / scale < c1) {
      c1 = pt.value.lo / scale;
      arg1 = p;
    }
    if (pt.value.hi / scale > c2) {
      c2 = pt.value.hi / scale;
      arg2 = p;
    }
    width = std::max(width, pt.value.hi - pt.value.lo);
    maxJ = std::max(maxJ, pt.J);
    if (comparison) {
      const Interval g = comparison->eval(p);
      require(g.lo > 0, ErrorKind::domain, "comparison length vanishes off the base point");
      k1 = std::min(k1, pt.value.lo / std::pow(g.hi, power));
      k2 = std::max(k2, pt.value.hi / std::pow(g.lo, power));
    }
  }
  require(c2 > 0 && c1 > 0 && std::isfinite(c1), ErrorKind::domain, "length equivalence needs a nondegenerate domain");
  r.best_constant = c2 / c1;
  r.witness = Witness{0, arg2, point_label(ell.domain, arg2)};
  r.extras = {{"c1", c1}, {"c2", c2}, {"ratio", c2 / c1}, {"max_J", maxJ}, {"max_width", width},
              {"c1_point", static_cast<double>(arg1)}};
  if (comparison) {
    r.extras.emplace_back("power", power);
    r.extras.emplace_back("power_c1", k1);
    r.extras.emplace_back("power_c2", k2);
  }
  if (ell.subsequence.partial) r.notes.push_back("selection stopped early: " + ell.subsequence.stop_reason);
  r.notes.push_back(std::string("tail bound from the ") + to_string(ell.subsequence.rule) +
                    " selection inequality, verified on a window of " + std::to_string(ell.subsequence.window));
  if (requested_ratio) {
    r.requested_bound = requested_ratio;
    r.pass = r.best_constant <= *requested_ratio;
  }
  return r;
}

AuditReport dirichlet_symbol_audit(const ApproximatingFamily& fam, const CndLength& ell, IndexRange range) {
  require(range.lo >= 0 && range.hi < ell.subsequence.length(), ErrorKind::parameter,
          "Dirichlet index range exceeds the selected subsequence");
  const Subsequence& sub = ell.subsequence;
  auto dirichlet = [&fam, &sub](double lval, int N, std::size_t p) {
    const double k = in_E(fam, sub.s[static_cast<std::size_t>(N)], p) ? 1.0 : 0.0;
    return k - std::exp(-std::sqrt(std::max(0.0, lval)) / std::pow(2.0, N / 4.0));
  };
  const auto mids = ell.midpoints();
  SymbolFamily family;
  family.name = "dirichlet(" + ell.name + ")";
  family.value = [mids, dirichlet](double index, std::size_t p) {
    return dirichlet(mids[p], static_cast<int>(index), p);
  };
  std::vector<double> f(mids.size());
  for (std::size_t p = 0; p < mids.size(); ++p) f[p] = std::sqrt(std::max(0.0, mids[p]));
  AuditReport r = lacunary_l2_bound(family, f, std::pow(2.0, 0.25), ell.domain, range);
  r.condition = "dirichlet";
  double spread = 0;
  for (int N = range.lo; N <= range.hi; ++N)
    for (std::size_t p = 0; p < ell.points.size(); ++p)
      spread = std::max(spread, std::abs(dirichlet(ell.points[p].value.lo, N, p) -
                                         dirichlet(ell.points[p].value.hi, N, p)));
  r.extras.emplace_back("interval_spread", spread);
  r.notes.push_back("symbols evaluated at interval midpoints of the length");
  return r;
}

ApproximatingFamily fejer_approximating_family(std::shared_ptr<FejerField> field, std::string name) {
  require(field != nullptr, ErrorKind::parameter, "missing Fejér field");
  ApproximatingFamily fam;
  fam.name = std::move(name);
  fam.domain = ball_domain(field->domain());
  fam.value = [field](int s, std::size_t p) { return field->value(s, p); };
  fam.in_support = [field](int s, std::size_t p) { return field->in_support(s, p); };
  fam.unital = true;
  fam.finitely_supported = true;
  return fam;
}

HeisenbergLengthRun heisenberg_fejer_length(int domain_radius, int horizon, int window, std::size_t cap) {
  HeisenbergLengthRun run;
  BallOptions opts;
  opts.cap = cap;
  EnumeratedBall B = ball(GroupSpec::heisenberg3(), domain_radius, opts);
  run.field = std::make_shared<FejerField>(std::move(B), opts, horizon);
  run.family = fejer_approximating_family(run.field, "fejer:word on heis3");
  SelectionOptions sel;
  sel.horizon = horizon;
  sel.window = window;
  sel.rule = SelectionRule::relaxed;
  sel.allow_partial = true;
  run.subsequence = select_subsequence(run.family, sel);
  run.length = build_cnd_length(run.family, run.subsequence);
  run.equivalence = verify_length_equivalence(run.length);
  return run;
}

}  // namespace ncmult
