#include "ncmult_tools/cli.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>

#include "ncmult/calculus.hpp"
#include "ncmult/convexbody.hpp"
#include "ncmult/error.hpp"
#include "ncmult/fourier.hpp"
#include "ncmult/fusion.hpp"
#include "ncmult/identities.hpp"
#include "ncmult/lengths.hpp"
#include "ncmult/parse.hpp"
#include "ncmult/positivity.hpp"
#include "ncmult_tools/acceptance.hpp"
#include "ncmult_tools/report.hpp"

namespace ncmult::tools {

std::size_t ball_cap_from_environment() {
  const char* env = std::getenv("NCMULT_BALL_CAP");
  if (!env || !*env) return kDefaultBallCap;
  char* end = nullptr;
  const unsigned long long v = std::strtoull(env, &end, 10);
  if (*end != '\0' || v == 0) {
    std::cerr << "warning: ignoring invalid NCMULT_BALL_CAP='" << env << "'\n";
    return kDefaultBallCap;
  }
  return static_cast<std::size_t>(v);
}

namespace {

struct Outcome {
  Json config = Json::object();
  Json domains = Json::array();
  Json results = Json::object();
  bool pass = true;
  std::optional<std::string> csv;  // replaces the JSON report when set
};

struct Common {
  std::string output;
  bool record_time = false;
  std::optional<std::size_t> cap;
  std::optional<std::uint64_t> seed;

  std::size_t ball_cap() const { return cap ? *cap : ball_cap_from_environment(); }
  std::uint64_t require_seed(const std::string& what) const {
    if (!seed) fail(ErrorKind::parameter, "--seed is required for " + what);
    return *seed;
  }
};

IndexRange parse_range(const std::string& text) {
  const auto colon = text.find(':');
  try {
    if (colon == std::string::npos) throw std::invalid_argument(text);
    return {std::stoi(text.substr(0, colon)), std::stoi(text.substr(colon + 1))};
  } catch (const std::exception&) {
    throw GrammarError(text, colon == std::string::npos ? text.size() : 0, "range lo:hi");
  }
}

std::vector<double> parse_grid(const std::string& text) {
  std::vector<double> parts;
  std::size_t start = 0;
  while (true) {
    const auto colon = text.find(':', start);
    try {
      parts.push_back(std::stod(text.substr(start, colon - start)));
    } catch (const std::exception&) {
      throw GrammarError(text, start, "number");
    }
    if (colon == std::string::npos) break;
    start = colon + 1;
  }
  if (parts.size() != 3) throw GrammarError(text, text.size(), "grid lo:hi:ratio");
  return geometric_grid(parts[0], parts[1], parts[2]);
}

Json ball_json(const EnumeratedBall& B) {
  return {{"description", "ball:" + B.group().label() + (B.family() == BallFamily::cube ? ":cube" : ":word") + "@" +
                              std::to_string(B.radius())},
          {"points", B.size()}};
}

std::vector<double> lengths_of(const EnumeratedBall& B) {
  std::vector<double> out(B.size());
  for (std::size_t i = 0; i < B.size(); ++i) out[i] = B.length(i);
  return out;
}

std::vector<int> int_lengths_of(const EnumeratedBall& B) {
  std::vector<int> out(B.size());
  for (std::size_t i = 0; i < B.size(); ++i) out[i] = B.length(i);
  return out;
}

const char* symbol_kind_name(SymbolKind k) {
  switch (k) {
    case SymbolKind::fejer: return "fejer";
    case SymbolKind::bochner_riesz: return "bochner-riesz";
    case SymbolKind::radial: return "radial";
    case SymbolKind::heat: return "heat";
    case SymbolKind::poisson: return "poisson";
  }
  return "?";
}

// ------------------------------------------------------------ audit-symbol

struct AuditSymbolArgs {
  std::string group = "heis3", symbol = "fejer:word", cond = "A1", index = "auto", range, t_grid = "1:64:2";
  double alpha = 1;
  int radius = 8;
  int eta = -1;
  std::optional<double> bound;
};

Outcome audit_symbol(const AuditSymbolArgs& a, const Common& c) {
  Outcome o;
  const GroupSpec G = parse_group(a.group);
  const SymbolSpec sym = parse_symbol(a.symbol);
  require(a.cond == "A1" || a.cond == "A2" || a.cond == "difference", ErrorKind::parameter,
          "--cond must be A1, A2 or difference");
  BallOptions opts;
  opts.cap = c.ball_cap();
  opts.family = sym.kind == SymbolKind::fejer ? sym.family : BallFamily::word;
  EnumeratedBall B = ball(G, a.radius, opts);
  o.domains.push_back(ball_json(B));
  const LengthFunction length = word_length_on(B, a.alpha);
  const PointDomain domain = ball_domain(B);

  const bool discrete_cond = a.cond != "A2";
  IndexRange range = a.cond == "difference" ? IndexRange{1, 16} : IndexRange{0, 6};
  if (!a.range.empty()) range = parse_range(a.range);
  std::string index = a.index;
  if (index == "auto") index = a.cond == "difference" ? "linear" : "dyadic";
  require(index == "dyadic" || index == "linear", ErrorKind::parameter, "--index must be dyadic or linear");

  SymbolFamily fam;
  switch (sym.kind) {
    case SymbolKind::fejer: {
      require(discrete_cond, ErrorKind::parameter, "Fejér families are discrete: use --cond A1 or difference");
      require(range.lo >= 0 && range.hi < 30, ErrorKind::parameter, "Fejér index range must lie in [0, 29]");
      const bool dyadic = index == "dyadic";
      const int top = a.cond == "difference" ? range.hi + 1 : range.hi;
      const int max_radius = dyadic ? (1 << top) : top;
      auto field = std::make_shared<FejerField>(B, opts, max_radius);
      fam = fejer_family(
          field, dyadic ? std::function<int(int)>([](int N) { return 1 << N; }) : [](int N) { return N; },
          a.symbol + (dyadic ? " m_{2^N}" : " m_N") + " on " + G.label());
      break;
    }
    case SymbolKind::heat:
      fam = discrete_cond ? lacunary_heat_family(lengths_of(B)) : semigroup_family(lengths_of(B), SemigroupKind::heat);
      break;
    case SymbolKind::poisson:
      require(!discrete_cond, ErrorKind::parameter, "the Poisson family is continuous: use --cond A2");
      fam = semigroup_family(lengths_of(B), SemigroupKind::poisson);
      break;
    case SymbolKind::bochner_riesz:
      require(!discrete_cond, ErrorKind::parameter, "Bochner-Riesz families are continuous: use --cond A2");
      fam = bochner_riesz_family(sym.delta, lengths_of(B));
      break;
    case SymbolKind::radial:
      require(!discrete_cond, ErrorKind::parameter, "radial kernel families are continuous: use --cond A2");
      fam = radial_kernel_family(sym.measure, int_lengths_of(B));
      break;
  }

  AuditReport r;
  std::vector<double> grid;
  if (a.cond == "A1") {
    r = audit_A1(fam, length, a.alpha, domain, range, a.bound);
  } else if (a.cond == "difference") {
    r = audit_difference(fam, &length, a.alpha, domain, range, a.bound);
  } else {
    grid = parse_grid(a.t_grid);
    r = audit_A2(fam, length, a.alpha, a.eta >= 0 ? a.eta : fam.eta, grid, domain, a.bound);
  }
  o.config = {{"group", G.label()}, {"symbol", sym.text}, {"symbol_kind", symbol_kind_name(sym.kind)},
              {"cond", a.cond},     {"alpha", a.alpha},   {"ball", a.radius},
              {"cap", opts.cap}};
  if (discrete_cond) {
    o.config["index"] = index;
    o.config["range"] = {range.lo, range.hi};
  } else {
    o.config["t_grid"] = a.t_grid;
    o.config["eta"] = a.eta >= 0 ? a.eta : fam.eta;
  }
  o.config["bound"] = a.bound ? Json(*a.bound) : Json(nullptr);
  o.results = {{"audit", to_json(r)}};
  o.pass = r.pass;
  return o;
}

// -------------------------------------------------------- check-pd & co.

struct PdArgs {
  std::string group = "free:2", symbol = "fejer:word";
  int radius = 3;
  int N = -1;
  double t = -1;
  double tol = 1e-10;
};

Outcome check_pd(const PdArgs& a, const Common& c) {
  Outcome o;
  const GroupSpec G = parse_group(a.group);
  const SymbolSpec sym = parse_symbol(a.symbol);
  BallOptions opts;
  opts.cap = c.ball_cap();
  const EnumeratedBall B = ball(G, a.radius, opts);
  o.domains.push_back(ball_json(B));
  const std::size_t cap = opts.cap;
  PointSymbol m;
  o.config = {{"group", G.label()}, {"symbol", sym.text}, {"ball", a.radius}, {"tol", a.tol}, {"cap", cap}};
  if (sym.kind == SymbolKind::fejer) {
    require(a.N >= 0, ErrorKind::parameter, "--N is required for Fejér symbols");
    o.config["N"] = a.N;
    m = memoize([G, N = a.N, f = sym.family, cap](const GroupElement& g) {
      return fejer_symbol(G, f, N, g, cap).to_double();
    });
  } else {
    require(a.t > 0, ErrorKind::parameter, "--t > 0 is required for this symbol");
    o.config["t"] = a.t;
    const double t = a.t;
    switch (sym.kind) {
      case SymbolKind::radial:
        m = [G, nu = sym.measure, t](const GroupElement& g) { return radial_kernel_symbol(nu, t, word_length(G, g)); };
        break;
      case SymbolKind::heat:
      case SymbolKind::poisson: {
        const auto kind = sym.kind == SymbolKind::heat ? SemigroupKind::heat : SemigroupKind::poisson;
        m = [G, t, kind](const GroupElement& g) { return semigroup_symbol(word_length(G, g), t, kind); };
        break;
      }
      case SymbolKind::bochner_riesz:
        m = [G, t, delta = sym.delta](const GroupElement& g) {
          return bochner_riesz_symbol(t, delta, word_length(G, g));
        };
        break;
      case SymbolKind::fejer: break;
    }
  }
  const PdResult pd = is_positive_definite(m, B, a.tol);
  o.results = {{"positive", pd.positive}, {"min_eigenvalue", pd.min_eigenvalue}, {"dimension", B.size()}};
  if (!pd.positive) o.results["witness"] = pd.witness;
  o.pass = pd.positive;
  return o;
}

struct CndArgs {
  std::string group = "free:2";
  int radius = 4;
  double power = 1;
  double tol = 1e-10;
  std::string t_grid;
};

PointSymbol powered_word_length(const GroupSpec& G, double power) {
  return [G, power](const GroupElement& g) { return std::pow(static_cast<double>(word_length(G, g)), power); };
}

Outcome check_cnd(const CndArgs& a, const Common& c) {
  Outcome o;
  const GroupSpec G = parse_group(a.group);
  BallOptions opts;
  opts.cap = c.ball_cap();
  const EnumeratedBall B = ball(G, a.radius, opts);
  o.domains.push_back(ball_json(B));
  const CndResult r = is_cnd(powered_word_length(G, a.power), B, a.tol);
  o.config = {{"group", G.label()}, {"ball", a.radius}, {"length", "word"}, {"power", a.power}, {"tol", a.tol},
              {"cap", opts.cap}};
  o.results = {{"cnd", r.cnd}, {"zero_sum_max_eigenvalue", r.max_form}, {"dimension", B.size()}};
  o.pass = r.cnd;
  return o;
}

Outcome schoenberg(const CndArgs& a, const Common& c) {
  Outcome o;
  const GroupSpec G = parse_group(a.group);
  BallOptions opts;
  opts.cap = c.ball_cap();
  const EnumeratedBall B = ball(G, a.radius, opts);
  o.domains.push_back(ball_json(B));
  std::vector<double> grid;
  if (a.t_grid.empty()) {
    for (int k = 0; k <= 8; ++k) grid.push_back(std::ldexp(1.0, k) / 8);
  } else {
    grid = parse_grid(a.t_grid);
  }
  const AuditReport r = schoenberg_check(powered_word_length(G, a.power), B, grid, a.tol);
  o.config = {{"group", G.label()}, {"ball", a.radius}, {"length", "word"}, {"power", a.power}, {"t", grid},
              {"tol", a.tol},       {"cap", opts.cap}};
  o.results = {{"audit", to_json(r)}};
  o.pass = r.pass;
  return o;
}

// ------------------------------------------------ build-length, dirichlet

struct LengthArgs {
  std::string group = "heis3", rule = "relaxed", range;
  int radius = 16, horizon = 80, window = 16;
  bool allow_partial = false;
  bool emit_points = false;
  std::optional<double> ratio;
};

struct LengthBuild {
  std::shared_ptr<FejerField> field;
  ApproximatingFamily family;
  Subsequence sub;
  CndLength ell;
};

LengthBuild construct_length(const LengthArgs& a, const Common& c, Outcome& o) {
  const GroupSpec G = parse_group(a.group);
  require(a.rule == "strict" || a.rule == "relaxed", ErrorKind::parameter, "--rule must be strict or relaxed");
  BallOptions opts;
  opts.cap = c.ball_cap();
  LengthBuild b;
  b.field = std::make_shared<FejerField>(ball(G, a.radius, opts), opts, a.horizon);
  o.domains.push_back(ball_json(b.field->domain()));
  b.family = fejer_approximating_family(b.field, "fejer:word on " + G.label());
  SelectionOptions sel;
  sel.horizon = a.horizon;
  sel.window = a.window;
  sel.rule = a.rule == "strict" ? SelectionRule::strict : SelectionRule::relaxed;
  sel.allow_partial = a.allow_partial;
  o.config = {{"group", G.label()},     {"ball", a.radius},          {"horizon", a.horizon},
              {"window", a.window},     {"rule", a.rule},            {"allow_partial", a.allow_partial},
              {"cap", opts.cap}};
  b.sub = select_subsequence(b.family, sel);
  b.ell = build_cnd_length(b.family, b.sub);
  o.results["subsequence"] = to_json(b.sub);
  const auto replay = check_subsequence(b.family, b.sub);
  o.results["replay_ok"] = !replay.has_value();
  if (replay) o.results["replay_failure"] = {{"N", replay->first}, {"point", b.family.domain.label(replay->second)}};
  o.pass = !b.sub.partial || a.allow_partial;
  o.pass = o.pass && !replay;
  return b;
}

Outcome build_length(const LengthArgs& a, const Common& c) {
  Outcome o;
  const LengthBuild b = construct_length(a, c, o);
  const LengthFunction word = word_length_on(b.field->domain());
  const AuditReport eq = verify_length_equivalence(b.ell, a.ratio, &word);
  o.config["ratio"] = a.ratio ? Json(*a.ratio) : Json(nullptr);
  o.config["emit_points"] = a.emit_points;
  o.results["equivalence"] = to_json(eq);
  if (a.emit_points) {
    Json pts = Json::array();
    for (std::size_t i = 0; i < b.ell.points.size(); ++i) {
      const CndPoint& p = b.ell.points[i];
      pts.push_back({{"point", b.ell.domain.label(i)},
                     {"lo", p.value.lo},
                     {"hi", p.value.hi},
                     {"J", p.J},
                     {"truncation", p.truncation}});
    }
    o.results["points"] = pts;
  }
  o.pass = o.pass && eq.pass;
  return o;
}

Outcome dirichlet(const LengthArgs& a, const Common& c) {
  Outcome o;
  const LengthBuild b = construct_length(a, c, o);
  const IndexRange range = a.range.empty() ? IndexRange{0, b.sub.length() - 1} : parse_range(a.range);
  const AuditReport r = dirichlet_symbol_audit(b.family, b.ell, range);
  o.config["range"] = {range.lo, range.hi};
  o.results["audit"] = to_json(r);
  o.pass = o.pass && r.pass;
  return o;
}

// -------------------------------------------------------- fejer-experiment

struct ExperimentArgs {
  std::int64_t n = 64;
  int d = 1;
  double p = 2;
  int trials = 100;
  std::optional<double> bound;
};

Outcome fejer_experiment(const ExperimentArgs& a, const Common& c) {
  Outcome o;
  const std::uint64_t seed = c.require_seed("fejer-experiment");
  const MaximalExperiment e = fejer_maximal_experiment(a.n, a.d, a.p, a.trials, seed, c.ball_cap());
  o.config = {{"n", a.n}, {"d", a.d}, {"p", a.p}, {"trials", a.trials}, {"seed", seed}, {"cap", c.ball_cap()},
              {"bound", a.bound ? Json(*a.bound) : Json(nullptr)}};
  std::uint64_t points = 1;
  for (int i = 0; i < a.d; ++i) points *= static_cast<std::uint64_t>(a.n);
  o.domains.push_back({{"description", "zmod:" + std::to_string(a.n) + "^" + std::to_string(a.d)}, {"points", points}});
  o.results = {{"experiment", to_json(e)}};
  o.pass = !a.bound || e.max_ratio <= *a.bound;
  return o;
}

// ------------------------------------------------------------ fusion rings

std::string ring_domain(const FusionRing& ring) { return "ring:" + ring.description(); }

int parse_folner(const std::string& text) {
  if (text.rfind("upto:", 0) != 0) throw GrammarError(text, 0, "'upto:'");
  try {
    std::size_t used = 0;
    const int n = std::stoi(text.substr(5), &used);
    if (used + 5 != text.size() || n < 0) throw std::invalid_argument(text);
    return n;
  } catch (const std::exception&) {
    throw GrammarError(text, 5, "non-negative integer");
  }
}

Label label_of(const FusionRing& ring, const std::string& name) {
  if (auto l = ring.find(name)) return *l;
  fail(ErrorKind::malformed, "label '" + name + "' is not in ring " + ring.description());
}

struct FusionArgs {
  std::string ring = "su2:64", folner = "upto:48";
  bool check_chain = false;
  bool rows = false;
  std::vector<std::string> pis;
};

Outcome fusion_fejer(const FusionArgs& a, const Common&) {
  Outcome o;
  const RingSpec spec = parse_ring(a.ring);
  const FusionRing ring = make_ring(spec);
  const int n = parse_folner(a.folner);
  o.domains.push_back({{"description", ring_domain(ring)}, {"points", ring.size()}});
  const LabelSet K = folner_set(ring, n);
  std::vector<Label> pis;
  for (const auto& p : a.pis) pis.push_back(label_of(ring, p));
  if (pis.empty())
    for (Label l = 0; l < ring.size(); ++l) pis.push_back(l);
  Json values = Json::array();
  for (Label pi : pis) {
    Json row = {{"pi", ring.name(pi)}, {"phi", to_json(quantum_fejer(ring, K, pi))}};
    row["folner_ratio"] = boundary_resolvable(ring, K, pi) ? to_json(folner_ratio(ring, K, pi)) : Json(nullptr);
    values.push_back(row);
  }
  o.config = {{"ring", spec.text}, {"folner", a.folner}, {"check_chain", a.check_chain}, {"rows", a.rows},
              {"pi", a.pis}};
  o.results = {{"K_size", K.size()}, {"K_weighted_cardinality", weighted_cardinality(ring, K)}, {"symbols", values}};
  if (a.check_chain) {
    const FusionChainReport chain = fusion_chain(ring, n);
    o.results["chain"] = to_json(chain, ring, a.rows);
    o.pass = chain.all_hold && chain.trivial_is_one;
  }
  return o;
}

struct ValidateArgs {
  std::string ring = "su2:40";
  std::optional<std::size_t> limit;
  std::vector<std::string> corrupt;
};

Outcome validate_ring_cmd(const ValidateArgs& a, const Common&) {
  Outcome o;
  const RingSpec spec = parse_ring(a.ring);
  FusionRing ring = make_ring(spec);
  for (const auto& entry : a.corrupt) {
    // a,b,c=value with label names
    const auto eq = entry.find('=');
    const auto c1 = entry.find(',');
    const auto c2 = c1 == std::string::npos ? c1 : entry.find(',', c1 + 1);
    if (eq == std::string::npos || c2 == std::string::npos || c2 > eq) throw GrammarError(entry, 0, "a,b,c=value");
    std::int64_t value = 0;
    try {
      value = std::stoll(entry.substr(eq + 1));
    } catch (const std::exception&) {
      throw GrammarError(entry, eq + 1, "integer");
    }
    ring.set_N(label_of(ring, entry.substr(0, c1)), label_of(ring, entry.substr(c1 + 1, c2 - c1 - 1)),
               label_of(ring, entry.substr(c2 + 1, eq - c2 - 1)), value);
  }
  const AuditReport r = validate_ring(ring, a.limit);
  o.config = {{"ring", spec.text}, {"limit", a.limit ? Json(*a.limit) : Json(nullptr)}, {"corrupt", a.corrupt}};
  o.domains.push_back({{"description", ring_domain(ring)}, {"points", a.limit ? std::min(*a.limit, ring.size()) : ring.size()}});
  o.results = {{"audit", to_json(r)}};
  o.pass = r.pass;
  return o;
}

// ------------------------------------------------------ scalar identities

struct BrArgs {
  double alpha = 1, beta = 2, tolerance = 1e-8;
  int points = 64;
};

Outcome bochner_riesz_cmd(const BrArgs& a, const Common&) {
  Outcome o;
  require(a.points >= 2, ErrorKind::parameter, "--points must be >= 2");
  std::vector<double> grid = default_composition_grid();
  if (a.points != static_cast<int>(grid.size())) {
    grid.clear();
    for (int i = 0; i < a.points; ++i) grid.push_back(static_cast<double>(i) / (a.points - 1));
  }
  const CompositionCheck r = bochner_riesz_composition_check(a.alpha, a.beta, grid);
  o.config = {{"alpha", a.alpha}, {"beta", a.beta}, {"points", a.points}, {"tolerance", a.tolerance}};
  o.domains.push_back({{"description", "s-grid on [0,1]"}, {"points", grid.size()}});
  o.results = {{"constant", bochner_riesz_constant(a.alpha, a.beta)},
               {"max_error", r.max_error},
               {"worst_s", r.worst_s},
               {"s", grid},
               {"errors", r.errors}};
  o.pass = r.max_error <= a.tolerance;
  return o;
}

struct SquareArgs {
  std::vector<double> alphas{0.0, 0.5, 1.0, 2.0};
  std::vector<int> ks{1, 8, 32};
  double tolerance = 1e-8;
};

Outcome square_constant(const SquareArgs& a, const Common&) {
  Outcome o;
  Json rows = Json::array();
  double worst = 0, spread = 0;
  for (double alpha : a.alphas) {
    double lo = std::numeric_limits<double>::infinity(), hi = -lo;
    for (int k : a.ks) {
      const SquareFunctionConstant s = square_function_constant(alpha, k);
      worst = std::max(worst, std::abs(s.value - s.closed_form));
      lo = std::min(lo, s.value);
      hi = std::max(hi, s.value);
      rows.push_back({{"alpha", alpha}, {"k", k}, {"value", s.value}, {"closed_form", s.closed_form}});
    }
    spread = std::max(spread, hi - lo);
  }
  o.config = {{"alpha", a.alphas}, {"k", a.ks}, {"tolerance", a.tolerance}};
  o.results = {{"rows", rows}, {"max_error", worst}, {"max_k_spread", spread}};
  o.pass = worst <= a.tolerance && spread <= a.tolerance;
  return o;
}

// ----------------------------------------------------------- convex bodies

struct BodyArgs {
  std::string body = "cube:d=4";
  std::size_t samples = 1000000;
  bool force_mc = false;
};

Outcome convexbody_audit(const BodyArgs& a, const Common& c) {
  Outcome o;
  const BodySpec B = parse_body(a.body);
  const bool stochastic = B.family == BodyFamily::lq_ball || a.force_mc;
  McOptions mc;
  mc.samples = a.samples;
  mc.force_monte_carlo = a.force_mc;
  if (stochastic) mc.seed = c.require_seed("Monte Carlo estimates (" + B.label() + ")");
  const SymbolEstimate L = isotropic_constant(B, mc);
  const auto xis = default_xi_samples(B, L.value);
  const AuditReport r = symbol_bound_audit(B, xis, mc);
  o.config = {{"body", B.label()}, {"samples", a.samples}, {"force_monte_carlo", a.force_mc},
              {"seed", stochastic ? Json(mc.seed) : Json(nullptr)}};
  o.domains.push_back({{"description", "xi samples: axis and diagonal, |xi| L in [2^-5, 2^4]"}, {"points", xis.size()}});
  o.results = {{"isotropic_constant", to_json(L)}, {"audit", to_json(r)}};
  o.pass = r.pass;
  return o;
}

struct SweepArgs {
  std::string family = "lq";
  int q = 4;
  std::vector<int> dims{2, 4, 8, 16};
  int v_max = 2;
  std::size_t samples = 1000000;
  std::string format = "json";
  std::optional<double> max_ratio;
};

Outcome dimension_sweep_cmd(const SweepArgs& a, const Common& c) {
  Outcome o;
  BodyFamily fam;
  if (a.family == "cube")
    fam = BodyFamily::cube;
  else if (a.family == "ball")
    fam = BodyFamily::euclidean_ball;
  else if (a.family == "lq")
    fam = BodyFamily::lq_ball;
  else
    throw GrammarError(a.family, 0, "'cube', 'ball' or 'lq'");
  const std::uint64_t seed = fam == BodyFamily::lq_ball ? c.require_seed("l_q sweeps") : c.seed.value_or(1);
  const SweepTable t = dimension_sweep(fam, a.q, a.dims, a.v_max, a.samples, seed);
  o.config = {{"family", a.family}, {"q", a.q},       {"dims", a.dims},     {"v_max", a.v_max},
              {"samples", a.samples}, {"seed", seed}, {"format", a.format},
              {"max_ratio", a.max_ratio ? Json(*a.max_ratio) : Json(nullptr)}};
  for (int d : a.dims) {
    const BodySpec B = fam == BodyFamily::cube ? BodySpec::cube(d)
                       : fam == BodyFamily::lq_ball ? BodySpec::lq(a.q, d)
                                                    : BodySpec::ball(d);
    o.domains.push_back({{"description", B.label()}, {"points", default_xi_samples(B, 1.0).size()}});
  }
  o.results = {{"sweep", to_json(t)}};
  o.pass = t.chain_rule_ok;
  if (a.max_ratio)
    for (const auto& r : t.ratios) o.pass = o.pass && r.ratio <= *a.max_ratio;
  if (a.format == "csv") o.csv = sweep_csv(t);
  return o;
}

// -------------------------------------------------------------- driver

void write_output(const Common& c, const std::string& text) {
  if (c.output.empty() || c.output == "-") {
    std::cout << text;
    std::cout.flush();
    return;
  }
  std::ofstream out(c.output, std::ios::binary);
  if (!out) fail(ErrorKind::parameter, "cannot open output file '" + c.output + "'");
  out << text;
}

int emit(const std::string& name, const Common& c, Outcome o, double seconds) {
  if (o.csv) {
    write_output(c, *o.csv);
  } else {
    if (c.cap) o.config["cap_override"] = *c.cap;
    const Json report =
        make_report(name, o.config, o.domains, o.results, o.pass, c.record_time ? std::optional(seconds) : std::nullopt);
    write_output(c, dump_json(report) + "\n");
  }
  return o.pass ? kExitPass : kExitAuditFail;
}

struct AcceptanceArgs {
  std::string fault;
  int criterion = 0;
};

int acceptance_cmd(const AcceptanceArgs& a, const Common& c) {
  AcceptanceOptions opts;
  require(a.fault.empty() || a.fault == "fusion", ErrorKind::parameter, "--inject-fault accepts only 'fusion'");
  opts.corrupt_fusion = a.fault == "fusion";
  if (c.cap) opts.heisenberg_cap = std::max(opts.heisenberg_cap, *c.cap);
  auto print = [](const CriterionResult& r) { std::cout << summary_line(r, true) << std::endl; };
  Json report;
  bool pass = false;
  if (a.criterion != 0) {
    AcceptanceRunner runner(opts);
    const CriterionResult r = runner.run(a.criterion);
    print(r);
    report = acceptance_report({r});
    pass = r.pass();
  } else {
    const AcceptanceOutcome out = full_acceptance(opts, print);
    report = out.report;
    pass = out.pass;
    std::size_t passed = 0;
    for (const auto& r : out.results) passed += r.pass() ? 1 : 0;
    std::cout << passed << "/" << out.results.size() << " criteria pass" << std::endl;
  }
  if (!c.output.empty()) {
    const Json config = {{"inject_fault", a.fault.empty() ? Json(nullptr) : Json(a.fault)},
                         {"criterion", a.criterion == 0 ? Json("all") : Json(a.criterion)},
                         {"seed", kAcceptanceSeed}};
    std::ofstream out(c.output, std::ios::binary);
    if (!out) fail(ErrorKind::parameter, "cannot open output file '" + c.output + "'");
    out << dump_json(make_report("acceptance", config, Json::array(), {{"criteria", report}}, pass, std::nullopt))
        << "\n";
  }
  return pass ? kExitPass : kExitAuditFail;
}

}  // namespace

int run_cli(const std::vector<std::string>& args) {
  CLI::App app{"Numerical audits for noncommutative Fourier multipliers and Fejér-type symbols", "ncmult"};
  app.set_version_flag("--version", std::string(kToolVersion) + " (report schema " + report_schema_version() + ")");
  app.require_subcommand(1);
  app.fallthrough();

  Common common;
  app.add_option("-o,--output", common.output, "Report path (stdout when omitted)");
  app.add_flag("--record-time", common.record_time, "Store wall time in the report (breaks byte determinism)");
  app.add_option("--cap", common.cap, "Ball size cap (default: $NCMULT_BALL_CAP or 200000)")->check(CLI::PositiveNumber);
  app.add_option("--seed", common.seed, "Seed for stochastic computations");

  std::function<int()> action;
  auto timed = [&](const std::string& name, auto fn) {
    return [&, name, fn]() {
      const auto start = std::chrono::steady_clock::now();
      Outcome o = fn();
      const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
      return emit(name, common, std::move(o), seconds);
    };
  };

  AuditSymbolArgs as;
  auto* sub = app.add_subcommand("audit-symbol", "Audit (A1), (A2) or difference bounds of a symbol family");
  sub->add_option("--group", as.group, "Group spec")->capture_default_str();
  sub->add_option("--symbol", as.symbol, "Symbol spec")->capture_default_str();
  sub->add_option("--cond", as.cond, "A1 | A2 | difference")->capture_default_str();
  sub->add_option("--alpha", as.alpha, "Length exponent")->capture_default_str();
  sub->add_option("--ball", as.radius, "Domain ball radius")->capture_default_str();
  sub->add_option("--index", as.index, "Fejér index map: dyadic | linear | auto")->capture_default_str();
  sub->add_option("--range", as.range, "Discrete index range lo:hi");
  sub->add_option("--t-grid", as.t_grid, "Geometric t grid lo:hi:ratio (A2)")->capture_default_str();
  sub->add_option("--eta", as.eta, "Derivative order for A2 (default: family order)");
  sub->add_option("--bound", as.bound, "Requested constant; fail when exceeded");
  sub->callback([&] { action = timed("audit-symbol", [&] { return audit_symbol(as, common); }); });

  PdArgs pd;
  sub = app.add_subcommand("check-pd", "Positive definiteness of a symbol on a ball");
  sub->add_option("--group", pd.group, "Group spec")->capture_default_str();
  sub->add_option("--symbol", pd.symbol, "Symbol spec")->capture_default_str();
  sub->add_option("--ball", pd.radius, "Ball radius")->capture_default_str();
  sub->add_option("--N", pd.N, "Fejér radius");
  sub->add_option("--t", pd.t, "Parameter t for radial, heat, poisson and Bochner-Riesz symbols");
  sub->add_option("--tol", pd.tol, "Relative eigenvalue tolerance")->capture_default_str();
  sub->callback([&] { action = timed("check-pd", [&] { return check_pd(pd, common); }); });

  CndArgs cnd;
  for (const char* name : {"check-cnd", "schoenberg"}) {
    const bool is_cnd_cmd = std::string(name) == "check-cnd";
    sub = app.add_subcommand(name, is_cnd_cmd ? "Conditional negative definiteness of word length powers"
                                              : "Positive definiteness of exp(-t l) over a t grid");
    sub->add_option("--group", cnd.group, "Group spec")->capture_default_str();
    sub->add_option("--ball", cnd.radius, "Ball radius")->capture_default_str();
    sub->add_option("--power", cnd.power, "Use |g|^power as the length")->capture_default_str();
    sub->add_option("--tol", cnd.tol, "Relative eigenvalue tolerance")->capture_default_str();
    if (!is_cnd_cmd) sub->add_option("--t-grid", cnd.t_grid, "Geometric t grid lo:hi:ratio (default 2^k/8, k<=8)");
    sub->callback([&, is_cnd_cmd] {
      if (is_cnd_cmd)
        action = timed("check-cnd", [&] { return check_cnd(cnd, common); });
      else
        action = timed("schoenberg", [&] { return schoenberg(cnd, common); });
    });
  }

  LengthArgs la;
  for (const char* name : {"build-length", "dirichlet"}) {
    const bool build = std::string(name) == "build-length";
    sub = app.add_subcommand(name, build ? "Select a Fejér subsequence and build the CND length"
                                         : "Dirichlet-type symbol audit on the constructed length");
    sub->add_option("--group", la.group, "Group spec")->capture_default_str();
    sub->add_option("--ball", la.radius, "Domain ball radius")->capture_default_str();
    sub->add_option("--horizon", la.horizon, "Largest Fejér radius searched")->capture_default_str();
    sub->add_option("--window", la.window, "Look-ahead window")->capture_default_str();
    sub->add_option("--rule", la.rule, "strict | relaxed")->capture_default_str();
    sub->add_flag("--allow-partial", la.allow_partial, "Accept a selection stopped by the horizon");
    if (build) {
      sub->add_option("--ratio", la.ratio, "Requested bound on c2/c1");
      sub->add_flag("--emit-points", la.emit_points, "Include per-point length intervals");
    } else {
      sub->add_option("--range", la.range, "Index range lo:hi (default: whole subsequence)");
    }
    sub->callback([&, build] {
      if (build)
        action = timed("build-length", [&] { return build_length(la, common); });
      else
        action = timed("dirichlet", [&] { return dirichlet(la, common); });
    });
  }

  ExperimentArgs ex;
  sub = app.add_subcommand("fejer-experiment", "Empirical maximal ratio of Fejér means on (Z/n)^d");
  sub->add_option("--n", ex.n, "Modulus")->capture_default_str();
  sub->add_option("--d", ex.d, "Dimension")->capture_default_str();
  sub->add_option("--p", ex.p, "Exponent")->capture_default_str();
  sub->add_option("--trials", ex.trials, "Number of Gaussian trials")->capture_default_str();
  sub->add_option("--bound", ex.bound, "Fail when the maximal ratio exceeds this");
  sub->callback([&] { action = timed("fejer-experiment", [&] { return fejer_experiment(ex, common); }); });

  FusionArgs fu;
  sub = app.add_subcommand("fusion-fejer", "Quantum Fejér symbols and Følner ratios on a fusion ring");
  sub->add_option("--ring", fu.ring, "Ring spec")->capture_default_str();
  sub->add_option("--folner", fu.folner, "Følner set upto:n")->capture_default_str();
  sub->add_flag("--check-chain", fu.check_chain, "Verify 1 - phi_n <= boundary ratio for all n up to the Følner index");
  sub->add_flag("--rows", fu.rows, "Include every chain row");
  sub->add_option("--pi", fu.pis, "Labels to evaluate (default: all)");
  sub->callback([&] { action = timed("fusion-fejer", [&] { return fusion_fejer(fu, common); }); });

  ValidateArgs va;
  sub = app.add_subcommand("validate-ring", "Check fusion ring identities");
  sub->add_option("--ring", va.ring, "Ring spec")->capture_default_str();
  sub->add_option("--limit", va.limit, "Only labels below this index");
  sub->add_option("--corrupt", va.corrupt, "Overwrite N(a,b,c) before checking, as a,b,c=value");
  sub->callback([&] { action = timed("validate-ring", [&] { return validate_ring_cmd(va, common); }); });

  BrArgs br;
  sub = app.add_subcommand("bochner-riesz", "Bochner-Riesz composition identity on an s grid");
  sub->add_option("--alpha", br.alpha)->capture_default_str();
  sub->add_option("--beta", br.beta)->capture_default_str();
  sub->add_option("--points", br.points, "Equispaced grid points on [0,1]")->capture_default_str();
  sub->add_option("--tolerance", br.tolerance)->capture_default_str();
  sub->callback([&] { action = timed("bochner-riesz", [&] { return bochner_riesz_cmd(br, common); }); });

  SquareArgs sq;
  sub = app.add_subcommand("square-constant", "Square-function constant by quadrature and closed form");
  sub->add_option("--alpha", sq.alphas)->delimiter(',')->capture_default_str();
  sub->add_option("--k", sq.ks)->delimiter(',')->capture_default_str();
  sub->add_option("--tolerance", sq.tolerance)->capture_default_str();
  sub->callback([&] { action = timed("square-constant", [&] { return square_constant(sq, common); }); });

  BodyArgs bo;
  sub = app.add_subcommand("convexbody-audit", "Symbol bounds for the indicator transform of a convex body");
  sub->add_option("--body", bo.body, "Body spec")->capture_default_str();
  sub->add_option("--samples", bo.samples, "Monte Carlo samples")->capture_default_str();
  sub->add_flag("--force-mc", bo.force_mc, "Sample even when an exact path exists");
  sub->callback([&] { action = timed("convexbody-audit", [&] { return convexbody_audit(bo, common); }); });

  SweepArgs sw;
  sub = app.add_subcommand("dimension-sweep", "Symbol-bound constants across dimensions");
  sub->add_option("--family", sw.family, "cube | ball | lq")->capture_default_str();
  sub->add_option("--q", sw.q, "Exponent for lq (even)")->capture_default_str();
  sub->add_option("--dims", sw.dims)->delimiter(',')->capture_default_str();
  sub->add_option("--v-max", sw.v_max, "Highest t-derivative order")->capture_default_str();
  sub->add_option("--samples", sw.samples, "Monte Carlo samples per point")->capture_default_str();
  sub->add_option("--format", sw.format, "json | csv")->check(CLI::IsMember({"json", "csv"}))->capture_default_str();
  sub->add_option("--max-ratio", sw.max_ratio, "Fail when a max/min ratio across dimensions exceeds this");
  sub->callback([&] { action = timed("dimension-sweep", [&] { return dimension_sweep_cmd(sw, common); }); });

  AcceptanceArgs ac;
  sub = app.add_subcommand("acceptance", "Run the acceptance suite");
  sub->add_option("--inject-fault", ac.fault, "Corrupt a fixture: fusion");
  sub->add_option("--criterion", ac.criterion, "Run a single criterion (1-15)");
  sub->callback([&] { action = [&] { return acceptance_cmd(ac, common); }; });

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  if (!reversed.empty()) reversed.pop_back();
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitPass : kExitUsage;
  }
  try {
    return action();
  } catch (const Error& e) {
    std::cerr << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
}

}  // namespace ncmult::tools
