#include "ncmult/fusion.hpp"

#include <algorithm>
#include <set>
#include <tuple>

#include "ncmult/error.hpp"

namespace ncmult {

FusionRing::FusionRing(std::string description, std::vector<std::string> names, std::vector<std::int64_t> dims,
                       std::vector<Label> conjugate, Label trivial)
    : description_(std::move(description)),
      names_(std::move(names)),
      dims_(std::move(dims)),
      conjugate_(std::move(conjugate)),
      trivial_(trivial) {
  const std::size_t n = names_.size();
  require(n >= 1, ErrorKind::parameter, "fusion ring needs at least one label");
  if (n > kMaxLabels)
    fail(ErrorKind::resource, "fusion window of " + std::to_string(n) + " labels exceeds " + std::to_string(kMaxLabels));
  require(dims_.size() == n && conjugate_.size() == n && trivial_ < n, ErrorKind::malformed,
          "fusion ring arrays disagree in size");
  tensor_.assign(n * n * n, 0);
  complete_.assign(n * n, 0);
  grades_.resize(n);
  for (std::size_t i = 0; i < n; ++i) grades_[i] = static_cast<int>(i);
}

std::optional<Label> FusionRing::find(const std::string& name) const {
  auto it = std::find(names_.begin(), names_.end(), name);
  if (it == names_.end()) return std::nullopt;
  return static_cast<Label>(it - names_.begin());
}

void FusionRing::set_grades(std::vector<int> grades) {
  require(grades.size() == size(), ErrorKind::parameter, "one grade per label");
  grades_ = std::move(grades);
}

FusionRing su2_fusion_ring(int max_label) {
  require(max_label >= 0, ErrorKind::parameter, "SU(2) window must be >= 0");
  const std::size_t n = static_cast<std::size_t>(max_label) + 1;
  std::vector<std::string> names;
  std::vector<std::int64_t> dims;
  std::vector<Label> conj;
  for (std::size_t a = 0; a < n; ++a) {
    names.push_back(std::to_string(a));
    dims.push_back(static_cast<std::int64_t>(a) + 1);
    conj.push_back(a);
  }
  FusionRing R("su2:" + std::to_string(max_label), names, dims, conj, 0);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      for (std::size_t c = 0; c < n; ++c) {
        const auto lo = a > b ? a - b : b - a;
        R.set_N(a, b, c, (lo <= c && c <= a + b && (a + b + c) % 2 == 0) ? 1 : 0);
      }
      R.set_complete(a, b, a + b <= static_cast<std::size_t>(max_label));
    }
  return R;
}

FusionRing group_dual_ring(const GroupSpec& G, std::optional<int> radius, std::size_t cap) {
  std::vector<GroupElement> elements;
  std::string description = "groupdual:" + G.label();
  if (radius) {
    BallOptions opts;
    opts.cap = cap;
    elements = ball(G, *radius, opts).elements();
    description += "@" + std::to_string(*radius);
  } else {
    if (!G.is_finite()) fail(ErrorKind::window, G.label() + " is infinite; give a window radius");
    BallOptions opts;
    opts.cap = std::max<std::size_t>(cap, static_cast<std::size_t>(G.order()));
    elements = ball(G, static_cast<int>(G.order()), opts).elements();
  }
  if (elements.size() > FusionRing::kMaxLabels)
    fail(ErrorKind::window, "group window of " + std::to_string(elements.size()) + " elements exceeds " +
                                std::to_string(FusionRing::kMaxLabels) + " labels");
  std::unordered_map<GroupElement, Label, GroupElementHash> index;
  std::vector<std::string> names;
  std::vector<std::int64_t> dims(elements.size(), 1);
  std::vector<int> grades;
  for (std::size_t i = 0; i < elements.size(); ++i) {
    index.emplace(elements[i], i);
    names.push_back(format_element(G, elements[i]));
    grades.push_back(elements[i].cached_length());
  }
  std::vector<Label> conj;
  for (const auto& g : elements) {
    auto it = index.find(inverse(G, g));
    require(it != index.end(), ErrorKind::window, "window is not closed under inverses");
    conj.push_back(it->second);
  }
  FusionRing R(description, names, dims, conj, index.at(identity(G)));
  R.set_grades(grades);
  for (std::size_t a = 0; a < elements.size(); ++a)
    for (std::size_t b = 0; b < elements.size(); ++b) {
      auto it = index.find(multiply(G, elements[a], elements[b]));
      if (it != index.end()) R.set_N(a, b, it->second, 1);
      R.set_complete(a, b, it != index.end());
    }
  return R;
}

std::int64_t weighted_cardinality(const FusionRing& ring, const LabelSet& F) {
  std::int64_t s = 0;
  for (Label a : F) {
    require(a < ring.size(), ErrorKind::window, "label outside the window");
    s += ring.dim(a) * ring.dim(a);
  }
  return s;
}

LabelSet folner_set(const FusionRing& ring, int n) {
  LabelSet K;
  for (Label a = 0; a < ring.size(); ++a)
    if (ring.grade(a) <= n) K.push_back(a);
  return K;
}

namespace {

std::vector<char> membership(const FusionRing& ring, const LabelSet& F) {
  std::vector<char> in(ring.size(), 0);
  for (Label a : F) {
    require(a < ring.size(), ErrorKind::window, "label outside the window");
    in[a] = 1;
  }
  return in;
}

std::optional<Label> unresolved(const FusionRing& ring, const LabelSet& F, Label pi) {
  for (Label a : F)
    if (!ring.complete(a, pi) || !ring.complete(a, ring.conjugate(pi))) return a;
  return std::nullopt;
}

}  // namespace

bool boundary_resolvable(const FusionRing& ring, const LabelSet& F, Label pi) {
  require(pi < ring.size(), ErrorKind::window, "π outside the window");
  return !unresolved(ring, F, pi).has_value();
}

LabelSet boundary(const FusionRing& ring, const LabelSet& F, Label pi) {
  require(pi < ring.size(), ErrorKind::window, "π outside the window");
  const auto in = membership(ring, F);
  if (auto bad = unresolved(ring, F, pi))
    fail(ErrorKind::window, "window " + ring.description() + " cannot resolve " + ring.name(*bad) + " ⊗ " +
                                ring.name(pi) + " (or its conjugate)");
  LabelSet out;
  for (Label x = 0; x < ring.size(); ++x) {
    bool hit = false;
    for (Label y = 0; y < ring.size() && !hit; ++y) {
      if (in[x] == in[y]) continue;
      // α ∈ F with some β ∉ F in α⊗π, or β ∉ F with some α ∈ F in β⊗π.
      hit = ring.N(x, pi, y) > 0;
    }
    if (hit) out.push_back(x);
  }
  return out;
}

Rational folner_ratio(const FusionRing& ring, const LabelSet& K, Label pi) {
  const std::int64_t total = weighted_cardinality(ring, K);
  require(total > 0, ErrorKind::domain, "Følner set is empty");
  return Rational(weighted_cardinality(ring, boundary(ring, K, pi)), total);
}

Rational quantum_fejer(const FusionRing& ring, const LabelSet& K, Label pi) {
  require(pi < ring.size(), ErrorKind::window, "π outside the window");
  const std::int64_t total = weighted_cardinality(ring, K);
  require(total > 0, ErrorKind::domain, "Følner set is empty");
  std::int64_t num = 0;
  for (Label a : K)
    for (Label b : K) num += ring.N(ring.conjugate(a), b, pi) * ring.dim(a) * ring.dim(b);
  return Rational(num, ring.dim(pi) * total);
}

namespace {

using Triple = std::tuple<Label, Label, Label>;

// Orbit of (α, β, γ) under (α,β,γ) ↦ (γ, β̄, α) and (α,β,γ) ↦ (ᾱ, γ, β).
std::set<Triple> reciprocity_orbit(const FusionRing& ring, Triple t) {
  std::set<Triple> orbit{t};
  std::vector<Triple> stack{t};
  while (!stack.empty()) {
    auto [a, b, c] = stack.back();
    stack.pop_back();
    for (Triple next : {Triple{c, ring.conjugate(b), a}, Triple{ring.conjugate(a), c, b}})
      if (orbit.insert(next).second) stack.push_back(next);
  }
  return orbit;
}

std::string triple_name(const FusionRing& ring, const Triple& t) {
  return "(" + ring.name(std::get<0>(t)) + ", " + ring.name(std::get<1>(t)) + ", " + ring.name(std::get<2>(t)) + ")";
}

}  // namespace

AuditReport validate_ring(const FusionRing& ring, std::optional<std::size_t> limit) {
  const std::size_t n = std::min(ring.size(), limit.value_or(ring.size()));
  AuditReport r;
  r.condition = "fusion-ring";
  r.family = ring.description();
  r.domain = "labels " + std::to_string(n) + " of " + std::to_string(ring.size());
  std::size_t involution = 0, dimension = 0, unit = 0, reciprocity = 0;
  auto note = [&r](std::string s) {
    if (r.notes.size() < 200) r.notes.push_back(std::move(s));
  };

  const Label one = ring.trivial();
  if (ring.dim(one) != 1) {
    ++unit;
    note("d(1) != 1");
  }
  for (Label a = 0; a < n; ++a) {
    const Label ab = ring.conjugate(a);
    if (ring.conjugate(ab) != a || ring.dim(ab) != ring.dim(a)) {
      ++involution;
      note("conjugation fails at " + ring.name(a));
    }
    for (Label c = 0; c < n; ++c)
      if (one < n && ring.N(one, a, c) != (a == c ? 1 : 0)) {
        ++unit;
        note("N(1, " + ring.name(a) + ", " + ring.name(c) + ") != δ");
      }
  }
  for (Label a = 0; a < n; ++a)
    for (Label b = 0; b < n; ++b) {
      if (!ring.complete(a, b)) continue;
      std::int64_t s = 0;
      for (Label c = 0; c < ring.size(); ++c) s += ring.N(a, b, c) * ring.dim(c);
      if (s != ring.dim(a) * ring.dim(b)) {
        ++dimension;
        note("dimension identity fails for " + ring.name(a) + " ⊗ " + ring.name(b));
      }
    }
  std::set<Triple> seen;
  for (Label a = 0; a < n; ++a)
    for (Label b = 0; b < n; ++b)
      for (Label c = 0; c < n; ++c) {
        const Triple t{a, b, c};
        if (seen.count(t)) continue;
        const auto orbit = reciprocity_orbit(ring, t);
        seen.insert(orbit.begin(), orbit.end());
        bool inside = true;
        for (const auto& [x, y, z] : orbit) inside = inside && x < n && y < n && z < n;
        if (!inside) continue;
        const std::int64_t v = ring.N(a, b, c);
        bool ok = true;
        for (const auto& [x, y, z] : orbit) ok = ok && ring.N(x, y, z) == v;
        if (!ok) {
          ++reciprocity;
          note("reciprocity orbit " + triple_name(ring, *orbit.begin()));
        }
      }
  const std::size_t total = involution + dimension + unit + reciprocity;
  r.best_constant = static_cast<double>(total);
  r.requested_bound = 0;
  r.pass = total == 0;
  r.extras = {{"violations", static_cast<double>(total)},
              {"reciprocity_orbits", static_cast<double>(reciprocity)},
              {"dimension_pairs", static_cast<double>(dimension)},
              {"conjugation", static_cast<double>(involution)},
              {"unit", static_cast<double>(unit)}};
  return r;
}

FusionChainReport fusion_chain(const FusionRing& ring, int max_n) {
  FusionChainReport rep;
  for (int n = 0; n <= max_n; ++n) {
    const LabelSet K = folner_set(ring, n);
    if (quantum_fejer(ring, K, ring.trivial()) != Rational(1)) rep.trivial_is_one = false;
    for (Label pi = 0; pi < ring.size(); ++pi) {
      if (!boundary_resolvable(ring, K, pi)) {
        ++rep.skipped_unresolvable;
        continue;
      }
      FusionChainRow row;
      row.n = n;
      row.pi = pi;
      row.phi = quantum_fejer(ring, K, pi);
      row.ratio = folner_ratio(ring, K, pi);
      row.holds = Rational(1) - row.phi <= row.ratio;
      rep.all_hold = rep.all_hold && row.holds;
      rep.rows.push_back(row);
    }
  }
  rep.all_hold = rep.all_hold && rep.trivial_is_one;
  return rep;
}

}  // namespace ncmult
