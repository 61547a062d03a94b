#include "ncmult/parse.hpp"

#include <cctype>
#include <charconv>
#include <cstdlib>

namespace ncmult {

GrammarError::GrammarError(std::string_view input, std::size_t position, const std::string& expected)
    : Error(ErrorKind::grammar, "'" + std::string(input) + "' at position " + std::to_string(position) + ": expected " +
                                    expected),
      position_(position) {}

namespace {

class Cursor {
 public:
  explicit Cursor(std::string_view s) : s_(s) {}

  std::size_t pos() const { return i_; }
  bool done() const { return i_ == s_.size(); }
  [[noreturn]] void error(const std::string& expected) const { throw GrammarError(s_, i_, expected); }
  [[noreturn]] void error_at(std::size_t at, const std::string& expected) const { throw GrammarError(s_, at, expected); }

  bool accept(std::string_view token) {
    if (s_.substr(i_, token.size()) == token) {
      i_ += token.size();
      return true;
    }
    return false;
  }
  void expect(std::string_view token) {
    if (!accept(token)) error("'" + std::string(token) + "'");
  }
  void finish() {
    if (!done()) error("end of input");
  }

  long long integer(long long lo, long long hi) {
    const std::size_t start = i_;
    long long v = 0;
    auto [p, ec] = std::from_chars(s_.data() + i_, s_.data() + s_.size(), v);
    if (ec != std::errc{}) error("integer");
    i_ = static_cast<std::size_t>(p - s_.data());
    if (v < lo || v > hi) error_at(start, "integer in [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
    return v;
  }

  double number() {
    const std::size_t start = i_;
    std::size_t j = i_;
    while (j < s_.size() && (std::isdigit(static_cast<unsigned char>(s_[j])) || s_[j] == '.' || s_[j] == '-' ||
                             s_[j] == '+' || s_[j] == 'e' || s_[j] == 'E'))
      ++j;
    const std::string token(s_.substr(start, j - start));
    char* end = nullptr;
    const double v = token.empty() ? 0.0 : std::strtod(token.c_str(), &end);
    if (token.empty() || end == token.c_str()) error("number");
    i_ = start + static_cast<std::size_t>(end - token.c_str());
    return v;
  }

 private:
  std::string_view s_;
  std::size_t i_ = 0;
};

GroupSpec group_at(Cursor& c) {
  if (c.accept("free:")) return GroupSpec::free(static_cast<int>(c.integer(1, 64)));
  if (c.accept("zd:")) return GroupSpec::free_abelian(static_cast<int>(c.integer(1, 64)));
  if (c.accept("heis3")) return GroupSpec::heisenberg3();
  if (c.accept("zmod:")) {
    const auto n = c.integer(2, 1LL << 40);
    int d = 1;
    if (c.accept("^")) d = static_cast<int>(c.integer(1, 64));
    return GroupSpec::cyclic_power(n, d);
  }
  if (c.accept("dihedral:")) return GroupSpec::dihedral(c.integer(2, 1LL << 40));
  c.error("group (free:d, zd:d, heis3, zmod:n[^d], dihedral:n)");
}

AtomicMeasure measure_at(Cursor& c) {
  AtomicMeasure nu;
  if (c.accept("dirac:")) {
    const std::size_t at = c.pos();
    const double y = c.number();
    if (y < -1 || y > 1) c.error_at(at, "location in [-1, 1]");
    nu = dirac_measure(y);
  } else if (c.accept("grid:")) {
    nu = grid_measure(static_cast<int>(c.integer(1, 100000)));
  } else if (c.accept("atoms:")) {
    c.expect("[");
    do {
      c.expect("(");
      const double y = c.number();
      c.expect(",");
      const double w = c.number();
      c.expect(")");
      nu.atoms.emplace_back(y, w);
    } while (c.accept(","));
    c.expect("]");
    nu.description = "atoms";
  } else {
    c.error("measure (dirac:y, grid:k, atoms:[(y,w),...])");
  }
  return nu;
}

}  // namespace

GroupSpec parse_group(std::string_view text) {
  Cursor c(text);
  GroupSpec G = group_at(c);
  c.finish();
  return G;
}

BallFamily parse_ball_family(std::string_view text) {
  Cursor c(text);
  BallFamily f = BallFamily::word;
  if (c.accept("word"))
    f = BallFamily::word;
  else if (c.accept("cube"))
    f = BallFamily::cube;
  else
    c.error("'word' or 'cube'");
  c.finish();
  return f;
}

AtomicMeasure parse_measure(std::string_view text) {
  Cursor c(text);
  AtomicMeasure nu = measure_at(c);
  c.finish();
  validate_measure(nu, false);
  nu.description = std::string(text);
  return nu;
}

SymbolSpec parse_symbol(std::string_view text) {
  Cursor c(text);
  SymbolSpec s;
  s.text = std::string(text);
  if (c.accept("fejer:")) {
    s.kind = SymbolKind::fejer;
    if (c.accept("word"))
      s.family = BallFamily::word;
    else if (c.accept("cube"))
      s.family = BallFamily::cube;
    else
      c.error("'word' or 'cube'");
  } else if (c.accept("br:")) {
    s.kind = SymbolKind::bochner_riesz;
    c.expect("delta=");
    const std::size_t at = c.pos();
    s.delta = c.number();
    if (!(s.delta > 0)) throw GrammarError(text, at, "delta > 0");
  } else if (c.accept("radial:")) {
    s.kind = SymbolKind::radial;
    const std::size_t at = c.pos();
    s.measure = measure_at(c);
    s.measure.description = std::string(text.substr(at));
    validate_measure(s.measure, false);
  } else if (c.accept("heat")) {
    s.kind = SymbolKind::heat;
  } else if (c.accept("poisson")) {
    s.kind = SymbolKind::poisson;
  } else {
    c.error("symbol (fejer:word|cube, br:delta=x, radial:<measure>, heat, poisson)");
  }
  c.finish();
  return s;
}

RingSpec parse_ring(std::string_view text) {
  Cursor c(text);
  RingSpec r;
  r.text = std::string(text);
  if (c.accept("su2:")) {
    r.su2 = true;
    r.max_label = static_cast<int>(c.integer(0, static_cast<long long>(FusionRing::kMaxLabels) - 1));
  } else if (c.accept("groupdual:")) {
    r.su2 = false;
    r.group = group_at(c);
    if (c.accept("@")) r.radius = static_cast<int>(c.integer(0, 1000));
  } else {
    c.error("ring (su2:n, groupdual:<group>[@radius])");
  }
  c.finish();
  return r;
}

FusionRing make_ring(const RingSpec& spec) {
  if (spec.su2) return su2_fusion_ring(spec.max_label);
  return group_dual_ring(spec.group, spec.radius);
}

BodySpec parse_body(std::string_view text) {
  Cursor c(text);
  BodySpec B;
  if (c.accept("cube:")) {
    c.expect("d=");
    B = BodySpec::cube(static_cast<int>(c.integer(1, 4096)));
  } else if (c.accept("ball:")) {
    c.expect("d=");
    B = BodySpec::ball(static_cast<int>(c.integer(1, 4096)));
  } else if (c.accept("lq:")) {
    c.expect("q=");
    const std::size_t at = c.pos();
    const int q = static_cast<int>(c.integer(2, 64));
    if (q % 2 != 0) throw GrammarError(text, at, "even q");
    c.expect(",d=");
    B = BodySpec::lq(q, static_cast<int>(c.integer(1, 4096)));
  } else {
    c.error("body (cube:d=n, ball:d=n, lq:q=k,d=n)");
  }
  c.finish();
  return B;
}

}  // namespace ncmult
