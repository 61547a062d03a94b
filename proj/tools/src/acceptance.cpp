#include "ncmult_tools/acceptance.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <limits>
#include <memory>
#include <numbers>

#include "ncmult/calculus.hpp"
#include "ncmult/error.hpp"
#include "ncmult/fourier.hpp"
#include "ncmult/fusion.hpp"
#include "ncmult/lengths.hpp"
#include "ncmult/convexbody.hpp"
#include "ncmult/identities.hpp"
#include "ncmult/positivity.hpp"

namespace ncmult::tools {

struct AcceptanceContext {
  AcceptanceOptions options;
  std::optional<HeisenbergLengthRun> heis16, heis32;

  const HeisenbergLengthRun& heisenberg(int radius) {
    auto& slot = radius == 16 ? heis16 : heis32;
    if (!slot) slot = heisenberg_fejer_length(radius, 80, 16, options.heisenberg_cap);
    return *slot;
  }
};

namespace {

std::string fmt(double v, int digits = 6) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", digits, v);
  return buf;
}

// ---------------------------------------------------------------- 1

void fejer_reduction(AcceptanceContext&, CriterionResult& r) {
  const GroupSpec Z = GroupSpec::free_abelian(1);
  std::size_t checked = 0, mismatches = 0;
  for (int N = 0; N <= 32; ++N)
    for (int k = -64; k <= 64; ++k) {
      const Rational expected(std::max(0, 2 * N + 1 - std::abs(k)), 2 * N + 1);
      if (fejer_symbol(Z, BallFamily::cube, N, vector_element(Z, {k})) != expected) ++mismatches;
      ++checked;
    }
  r.content_pass = mismatches == 0;
  r.details = {{"checked", checked}, {"mismatches", mismatches}};
  r.summary = std::to_string(checked) + " symbols, " + std::to_string(mismatches) + " mismatches";
}

// ---------------------------------------------------------------- 2

void positive_definiteness(AcceptanceContext&, CriterionResult& r) {
  struct Case {
    GroupSpec G;
    int radius;
    BallFamily family;
  };
  const std::vector<Case> cases = {{GroupSpec::free(2), 3, BallFamily::word},
                                   {GroupSpec::heisenberg3(), 4, BallFamily::word},
                                   {GroupSpec::free_abelian(2), 6, BallFamily::word},
                                   {GroupSpec::free_abelian(2), 6, BallFamily::cube}};
  double worst = std::numeric_limits<double>::infinity();
  bool all = true;
  Json rows = Json::array();
  for (const auto& c : cases) {
    const EnumeratedBall B = ball(c.G, c.radius);
    for (int N = 1; N <= 4; ++N) {
      PointSymbol m = memoize([G = c.G, N, f = c.family](const GroupElement& g) {
        return fejer_symbol(G, f, N, g).to_double();
      });
      const PdResult pd = is_positive_definite(m, B);
      const bool ok = pd.min_eigenvalue >= -1e-10;
      all = all && ok;
      worst = std::min(worst, pd.min_eigenvalue);
      rows.push_back({{"group", c.G.label()},
                      {"family", c.family == BallFamily::word ? "word" : "cube"},
                      {"ball_radius", c.radius},
                      {"ball_size", B.size()},
                      {"N", N},
                      {"min_eigenvalue", pd.min_eigenvalue},
                      {"pass", ok}});
    }
  }
  r.content_pass = all;
  r.details = {{"threshold", -1e-10}, {"cases", rows}};
  r.summary = std::to_string(rows.size()) + " Gram matrices, min eigenvalue " + fmt(worst);
}

// ---------------------------------------------------------------- 3

void cnd_schoenberg(AcceptanceContext&, CriterionResult& r) {
  const GroupSpec G = GroupSpec::free(2);
  const EnumeratedBall B = ball(G, 4);
  PointSymbol len = [G](const GroupElement& g) { return static_cast<double>(word_length(G, g)); };
  const CndResult cnd = is_cnd(len, B);
  std::vector<double> t_grid;
  for (int k = 0; k <= 8; ++k) t_grid.push_back(std::ldexp(1.0, k) / 8);
  const AuditReport sch = schoenberg_check(len, B, t_grid);
  r.content_pass = cnd.max_form <= 1e-10 && cnd.cnd && sch.pass;
  r.details = {{"ball_size", B.size()},
               {"zero_sum_max_eigenvalue", cnd.max_form},
               {"schoenberg", to_json(sch)}};
  r.summary = "zero-sum max eigenvalue " + fmt(cnd.max_form) + ", Schoenberg min eigenvalue " + fmt(sch.best_constant);
}

// ---------------------------------------------------------------- 4

void length_construction(AcceptanceContext& ctx, CriterionResult& r) {
  const auto& h16 = ctx.heisenberg(16);
  const auto& h32 = ctx.heisenberg(32);
  const double c1a = h16.equivalence.extra("c1"), c2a = h16.equivalence.extra("c2");
  const double c1b = h32.equivalence.extra("c1"), c2b = h32.equivalence.extra("c2");
  const double ratio = c2b / c1b;
  const double drift = std::max(std::abs(c1b / c1a - 1), std::abs(c2b / c2a - 1));
  r.content_pass = ratio <= 16 && drift <= 0.25;
  r.details = {{"subsequence", to_json(h32.subsequence)},
               {"radius_16", to_json(h16.equivalence)},
               {"radius_32", to_json(h32.equivalence)},
               {"ratio_32", ratio},
               {"max_relative_change", drift}};
  r.summary = "c2/c1 = " + fmt(ratio) + " at radius 32, constants move " + fmt(100 * drift, 3) + "% from radius 16";
}

// ---------------------------------------------------------------- 5

void a1_audits(AcceptanceContext& ctx, CriterionResult& r) {
  Json runs = Json::object();
  double beta[2] = {0, 0}, enclosure[2] = {0, 0};
  int slot = 0;
  for (int radius : {16, 32}) {
    const auto& h = ctx.heisenberg(radius);
    // m_{s_{j+1}} against the length built from the same subsequence.
    const std::vector<int> sel = h.subsequence.s;
    SymbolFamily lac = fejer_family(
        h.field, [sel](int j) { return sel.at(static_cast<std::size_t>(j) + 1); }, "fejer:word m_{s_{j+1}} on heis3");
    const IndexRange range{0, h.subsequence.length() - 2};
    const AuditReport a1 = audit_A1(lac, h.length.partial_sum_length(2.0), 2.0, h.family.domain, range);
    const AuditReport enclosed = audit_A1(lac, h.length.as_length(2.0), 2.0, h.family.domain, range);
    SymbolFamily consecutive = fejer_family(h.field, [](int N) { return N; }, "fejer:word m_N on heis3");
    const AuditReport diff = audit_difference(consecutive, nullptr, 2.0, h.family.domain, {1, 32});
    enclosure[slot] = enclosed.best_constant;
    beta[slot++] = a1.best_constant;
    runs["radius_" + std::to_string(radius)] = {
        {"A1", to_json(a1)}, {"A1_enclosure", to_json(enclosed)}, {"difference", to_json(diff)}};
  }
  const EnumeratedBall B = ball(GroupSpec::heisenberg3(), 8);
  std::vector<double> lengths(B.size());
  for (std::size_t i = 0; i < B.size(); ++i) lengths[i] = B.length(i);
  const AuditReport heat =
      audit_A1(lacunary_heat_family(lengths), exact_length("word length", lengths, 1.0), 1.0, ball_domain(B), {-8, 16});
  const double growth = beta[1] / beta[0];
  r.content_pass = std::isfinite(beta[0]) && std::isfinite(beta[1]) && growth <= 1.5 && heat.best_constant <= 1 + 1e-12;
  runs["lacunary_heat"] = to_json(heat);
  runs["beta_growth"] = growth;
  r.details = runs;
  r.summary = "beta " + fmt(beta[0]) + " -> " + fmt(beta[1]) + " (x" + fmt(growth, 4) + "; enclosure ends " + fmt(enclosure[0]) + " -> " +
              fmt(enclosure[1]) + "), heat beta " +
              fmt(heat.best_constant, 15);
}

// ---------------------------------------------------------------- 6

void fusion_chain_criterion(AcceptanceContext& ctx, CriterionResult& r) {
  FusionRing ring = su2_fusion_ring(64);
  if (ctx.options.corrupt_fusion) ring.set_N(1, 1, 2, 0);
  const FusionChainReport chain = fusion_chain(ring, 48);
  const AuditReport valid = validate_ring(ring, 41);
  const Rational f12 = folner_ratio(ring, folner_set(ring, 12), 1);
  const Rational f48 = folner_ratio(ring, folner_set(ring, 48), 1);
  const bool decays = f48 < f12;
  r.content_pass = chain.all_hold && chain.trivial_is_one && valid.pass && decays;
  r.details = {{"ring", ring.description()},
               {"chain", to_json(chain, ring, false)},
               {"validation", to_json(valid)},
               {"folner_ratio_pi1_n12", to_json(f12)},
               {"folner_ratio_pi1_n48", to_json(f48)}};
  r.summary = std::to_string(chain.rows.size()) + " (n, pi) pairs, chain " + (chain.all_hold ? "holds" : "FAILS") +
              ", " + fmt(valid.best_constant) + " ring violations, Folner ratio " + f12.to_string() + " -> " +
              f48.to_string();
}

// ---------------------------------------------------------------- 7

void group_dual(AcceptanceContext&, CriterionResult& r) {
  const GroupSpec G = GroupSpec::cyclic_power(24, 1);
  const FusionRing ring = group_dual_ring(G);
  const std::vector<GroupElement> all = enumerate_finite_group(G);
  std::size_t checked = 0, mismatches = 0;
  for (int N = 0; N <= 10; ++N) {
    const LabelSet K = folner_set(ring, N);
    for (const auto& g : all) {
      const Label pi = *ring.find(format_element(G, g));
      if (quantum_fejer(ring, K, pi) != fejer_symbol(G, BallFamily::word, N, g)) ++mismatches;
      ++checked;
    }
  }
  r.content_pass = mismatches == 0;
  r.details = {{"ring", ring.description()}, {"checked", checked}, {"mismatches", mismatches}};
  r.summary = std::to_string(checked) + " (N, g) pairs, " + std::to_string(mismatches) + " mismatches";
}

// ---------------------------------------------------------------- 8

void bochner_riesz(AcceptanceContext&, CriterionResult& r) {
  Json rows = Json::array();
  double worst = 0;
  for (auto [a, b] : {std::pair{1.0, 2.0}, std::pair{0.5, 1.5}, std::pair{2.0, 3.0}}) {
    const CompositionCheck c = bochner_riesz_composition_check(a, b, default_composition_grid());
    worst = std::max(worst, c.max_error);
    rows.push_back({{"alpha", a}, {"beta", b}, {"max_error", c.max_error}, {"worst_s", c.worst_s}});
  }
  r.content_pass = worst <= 1e-8;
  r.details = {{"grid_points", 64}, {"pairs", rows}};
  r.summary = "max error " + fmt(worst);
}

// ---------------------------------------------------------------- 9

void square_constant(AcceptanceContext&, CriterionResult& r) {
  Json rows = Json::array();
  double worst = 0, spread = 0;
  bool quarter = false;
  for (double alpha : {0.0, 0.5, 1.0, 2.0}) {
    double lo = std::numeric_limits<double>::infinity(), hi = -lo;
    for (int k : {1, 8, 32}) {
      const SquareFunctionConstant c = square_function_constant(alpha, k);
      worst = std::max(worst, std::abs(c.value - c.closed_form));
      lo = std::min(lo, c.value);
      hi = std::max(hi, c.value);
      if (alpha == 0.0 && k == 1) quarter = std::abs(c.value - 0.25) <= 1e-8;
      rows.push_back({{"alpha", alpha}, {"k", k}, {"value", c.value}, {"closed_form", c.closed_form}});
    }
    spread = std::max(spread, hi - lo);
  }
  r.content_pass = worst <= 1e-8 && spread <= 1e-8 && quarter;
  r.details = {{"rows", rows}, {"max_error", worst}, {"max_k_spread", spread}};
  r.summary = "max error " + fmt(worst) + ", k-spread " + fmt(spread);
}

// ---------------------------------------------------------------- 10

void subordination(AcceptanceContext&, CriterionResult& r) {
  Json rows = Json::array();
  double worst = 0;
  for (double u : {0.25, 1.0, 4.0, 16.0}) {
    const double v = subordination_integral(u);
    const double err = std::abs(v - std::exp(-std::sqrt(u)));
    worst = std::max(worst, err);
    rows.push_back({{"u", u}, {"integral", v}, {"error", err}});
  }
  r.content_pass = worst <= 1e-6;
  r.details = {{"rows", rows}};
  r.summary = "max error " + fmt(worst);
}

// ---------------------------------------------------------------- 11

void multiorder(AcceptanceContext&, CriterionResult& r) {
  std::vector<int> radii;
  for (int k = 0; k <= 8; ++k) radii.push_back(k);
  const SymbolFamily fam = radial_kernel_family(grid_measure(5), radii, 4);
  const PointDomain domain = naturals_domain(8);
  const auto t_grid = geometric_grid(5.0, 80.0, std::pow(2.0, 0.25));
  const std::vector<std::vector<int>> s_lists = {{0}, {1}, {1, 0}, {2, 0}, {2, 1, 0}, {3, 2, 1}};
  double worst = 0;
  for (const auto& s : s_lists)
    for (double t : t_grid)
      for (std::size_t p = 0; p < domain.size; ++p)
        worst = std::max(worst, std::abs(multiorder_difference(fam, s, t, p) -
                                         multiorder_difference_recursive(fam, s, t, p)));
  Json audits = Json::array();
  bool finite = true;
  for (const auto& s : std::vector<std::vector<int>>{{0}, {1, 0}})
    for (int k = 0; k <= 2; ++k) {
      const AuditReport a = audit_multiorder_derivatives(fam, s, k, t_grid, domain);
      finite = finite && std::isfinite(a.best_constant);
      audits.push_back({{"s", s}, {"k", k}, {"best_constant", a.best_constant}, {"source", a.derivative_source}});
    }
  r.content_pass = worst <= 1e-12 && finite;
  r.details = {{"expansion_vs_recursion", worst}, {"derivative_audits", audits}};
  r.summary = "expansion vs recursion " + fmt(worst) + ", " + std::to_string(audits.size()) + " finite derivative constants";
}

// ---------------------------------------------------------------- 12

void radial_kernels(AcceptanceContext&, CriterionResult& r) {
  const T0Result t0 = min_t0();
  const GroupSpec G = GroupSpec::free(2);
  const EnumeratedBall B = ball(G, 3);
  Json rows = Json::array();
  bool all = true;
  double worst = std::numeric_limits<double>::infinity();
  for (const char* name : {"dirac:0", "grid:5"}) {
    const AtomicMeasure nu = std::string(name) == "dirac:0" ? dirac_measure(0) : grid_measure(5);
    for (double t : {5.0, 10.0, 20.0}) {
      PointSymbol m = [G, nu, t](const GroupElement& g) { return radial_kernel_symbol(nu, t, word_length(G, g)); };
      const PdResult pd = is_positive_definite(m, B);
      all = all && pd.positive;
      worst = std::min(worst, pd.min_eigenvalue);
      rows.push_back({{"measure", name}, {"t", t}, {"min_eigenvalue", pd.min_eigenvalue}, {"positive", pd.positive}});
    }
  }
  r.content_pass = t0.t0 <= 5 && t0.holds_at_t0 && t0.holds_at_double && all;
  r.details = {{"t0", t0.t0},
               {"gap_first", t0.gap_first},
               {"gap_second", t0.gap_second},
               {"holds_at_t0", t0.holds_at_t0},
               {"holds_at_double", t0.holds_at_double},
               {"pd", rows}};
  r.summary = "t0 = " + fmt(t0.t0, 8) + ", min eigenvalue " + fmt(worst);
}

// ---------------------------------------------------------------- 13

void rapid_decay(AcceptanceContext&, CriterionResult& r) {
  double worst = 0;
  int at = 0;
  for (int N = 1; N <= 64; ++N) {
    const RapidDecayTail t = rapid_decay_truncation_bound(N);
    if (t.normalized > worst) {
      worst = t.normalized;
      at = N;
    }
  }
  r.content_pass = worst <= kRapidDecayConstant;
  r.details = {{"max_normalized", worst}, {"argmax_N", at}, {"recorded_constant", kRapidDecayConstant}};
  r.summary = "max N^2 tail " + fmt(worst) + " at N = " + std::to_string(at) + " (bound " + fmt(kRapidDecayConstant) + ")";
}

// ---------------------------------------------------------------- 14

void convex_bodies(AcceptanceContext&, CriterionResult& r) {
  double cube_err = 0;
  for (int d : {2, 4, 8})
    for (double scale : {0.3, 1.7, 4.2}) {
      std::vector<double> xi(static_cast<std::size_t>(d));
      for (int i = 0; i < d; ++i) xi[static_cast<std::size_t>(i)] = scale * (1.0 + 0.37 * i) / d;
      double product = 1;
      for (double x : xi)
        product *= integrate_smooth([x](double u) { return std::cos(2 * std::numbers::pi * u * x); }, -0.5, 0.5).value;
      cube_err = std::max(cube_err, std::abs(indicator_ft(BodySpec::cube(d), xi).value - product));
    }
  const SweepTable sweep = dimension_sweep(BodyFamily::lq_ball, 4, {2, 4, 8, 16}, 2, 1000000, kAcceptanceSeed);
  double gradient_ratio = 0;
  for (const auto& s : sweep.ratios)
    if (s.bound == "gradient") gradient_ratio = s.ratio;
  r.content_pass = cube_err <= 1e-10 && gradient_ratio <= 2 && sweep.chain_rule_ok;
  r.details = {{"cube_vs_quadrature", cube_err}, {"sweep", to_json(sweep)}, {"gradient_ratio", gradient_ratio}};
  r.summary = "cube error " + fmt(cube_err) + ", l4 gradient max/min " + fmt(gradient_ratio) + ", chain rule " +
              (sweep.chain_rule_ok ? "ok" : "FAILS") + " (worst " + fmt(sweep.chain_rule_worst, 3) + " tol)";
}

// ---------------------------------------------------------------- 15

void maximal_experiment(AcceptanceContext&, CriterionResult& r) {
  Json rows = Json::array();
  bool all = true;
  std::string text;
  for (double p : {2.0, 4.0}) {
    double first = 0, last = 0;
    for (std::int64_t n : {64, 128, 256}) {
      const MaximalExperiment e = fejer_maximal_experiment(n, 1, p, 100, kAcceptanceSeed);
      rows.push_back(to_json(e));
      if (n == 64) first = e.max_ratio;
      if (n == 256) last = e.max_ratio;
    }
    all = all && last <= 1.25 * first;
    text += (text.empty() ? "" : ", ") + std::string("p=") + fmt(p) + ": " + fmt(first) + " -> " + fmt(last);
  }
  r.content_pass = all;
  r.details = {{"experiments", rows}};
  r.summary = text;
}

}  // namespace

const std::vector<CriterionSpec>& criteria() {
  static const std::vector<CriterionSpec> list = {
      {1, "fejer-reduction", 1, fejer_reduction},
      {2, "positive-definiteness", 30, positive_definiteness},
      {3, "cnd-schoenberg", 60, cnd_schoenberg},
      {4, "length-construction", 60, length_construction},
      {5, "a1-difference-audits", 60, a1_audits},
      {6, "fusion-chain", 60, fusion_chain_criterion},
      {7, "group-dual-degeneration", 5, group_dual},
      {8, "bochner-riesz-composition", 10, bochner_riesz},
      {9, "square-function-constant", 5, square_constant},
      {10, "subordination", 5, subordination},
      {11, "multi-order-differences", 10, multiorder},
      {12, "radial-kernels", 30, radial_kernels},
      {13, "rapid-decay-truncation", 1, rapid_decay},
      {14, "convex-bodies", 600, convex_bodies},
      {15, "abelian-maximal-experiment", 300, maximal_experiment},
  };
  return list;
}

AcceptanceRunner::AcceptanceRunner(AcceptanceOptions options)
    : options_(options), context_(new AcceptanceContext{options, {}, {}}) {}

AcceptanceRunner::~AcceptanceRunner() { delete context_; }

CriterionResult AcceptanceRunner::run(int id) {
  const auto& list = criteria();
  auto it = std::find_if(list.begin(), list.end(), [id](const CriterionSpec& c) { return c.id == id; });
  require(it != list.end(), ErrorKind::parameter, "unknown acceptance criterion " + std::to_string(id));
  CriterionResult r;
  r.id = it->id;
  r.name = it->name;
  r.budget_seconds = it->budget_seconds;
  const auto start = std::chrono::steady_clock::now();
  try {
    it->run(*context_, r);
  } catch (const std::exception& e) {
    r.content_pass = false;
    r.summary = std::string("error: ") + e.what();
    r.details = {{"error", e.what()}};
  }
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return r;
}

std::vector<CriterionResult> AcceptanceRunner::run_all(const std::function<void(const CriterionResult&)>& on_result) {
  std::vector<CriterionResult> out;
  for (const auto& c : criteria()) {
    out.push_back(run(c.id));
    if (on_result) on_result(out.back());
  }
  return out;
}

Json acceptance_report(const std::vector<CriterionResult>& results) {
  Json list = Json::array();
  for (const auto& r : results)
    list.push_back({{"id", r.id},
                    {"name", r.name},
                    {"pass", r.content_pass},
                    {"budget_seconds", r.budget_seconds},
                    {"summary", r.summary},
                    {"details", r.details}});
  return list;
}

CriterionResult determinism_criterion(const std::string& first, const std::string& second, double seconds) {
  CriterionResult r;
  r.id = 16;
  r.name = "determinism";
  r.budget_seconds = std::numeric_limits<double>::infinity();
  r.seconds = seconds;
  r.content_pass = first == second;
  std::size_t at = 0;
  while (at < first.size() && at < second.size() && first[at] == second[at]) ++at;
  r.details = {{"report_bytes", first.size()}, {"identical", r.content_pass}};
  r.summary = r.content_pass ? std::to_string(first.size()) + " report bytes identical across two runs"
                             : "reports differ from byte " + std::to_string(at);
  return r;
}

std::string summary_line(const CriterionResult& r, bool with_time) {
  char head[64];
  std::snprintf(head, sizeof head, "[%s] %2d %-28s ", (with_time ? r.pass() : r.content_pass) ? "PASS" : "FAIL", r.id,
                r.name.c_str());
  std::string line = head + r.summary;
  if (with_time) {
    line += "  (" + fmt(r.seconds, 3) + " s";
    if (std::isfinite(r.budget_seconds)) line += " / budget " + fmt(r.budget_seconds) + " s";
    if (!r.within_budget()) line += ", OVER BUDGET";
    line += ")";
  }
  return line;
}

AcceptanceOutcome full_acceptance(const AcceptanceOptions& options,
                                  const std::function<void(const CriterionResult&)>& on_result) {
  AcceptanceOutcome out;
  std::vector<CriterionResult> first;
  {
    AcceptanceRunner runner(options);
    first = runner.run_all(on_result);
  }
  const auto start = std::chrono::steady_clock::now();
  std::vector<CriterionResult> second;
  {
    AcceptanceRunner runner(options);
    second = runner.run_all();
  }
  const std::string a = dump_json(acceptance_report(first));
  const std::string b = dump_json(acceptance_report(second));
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  out.results = first;
  out.results.push_back(determinism_criterion(a, b, seconds));
  if (on_result) on_result(out.results.back());
  out.report = acceptance_report(out.results);
  out.pass = std::all_of(out.results.begin(), out.results.end(), [](const CriterionResult& r) { return r.pass(); });
  return out;
}

}  // namespace ncmult::tools
