#include "ncmult/groups.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <unordered_set>

#include "ncmult/error.hpp"

namespace ncmult {

namespace {

std::int64_t mod(std::int64_t a, std::int64_t n) {
  std::int64_t r = a % n;
  return r < 0 ? r + n : r;
}

void check_size(const GroupSpec& G, const GroupElement& g, std::size_t expected) {
  if (g.size() != expected)
    fail(ErrorKind::malformed, G.label() + ": normal form has " + std::to_string(g.size()) +
                                   " entries, expected " + std::to_string(expected));
}

}  // namespace

GroupSpec GroupSpec::free(int d) {
  require(d >= 1, ErrorKind::parameter, "free group rank must be >= 1");
  return {GroupKind::free, d, 0};
}
GroupSpec GroupSpec::free_abelian(int d) {
  require(d >= 1, ErrorKind::parameter, "free abelian rank must be >= 1");
  return {GroupKind::free_abelian, d, 0};
}
GroupSpec GroupSpec::heisenberg3() { return {GroupKind::heisenberg3, 2, 0}; }
GroupSpec GroupSpec::cyclic_power(std::int64_t n, int d) {
  require(n >= 2, ErrorKind::parameter, "cyclic modulus must be >= 2");
  require(d >= 1, ErrorKind::parameter, "cyclic power must be >= 1");
  return {GroupKind::cyclic_power, d, n};
}
GroupSpec GroupSpec::dihedral(std::int64_t n) {
  require(n >= 2, ErrorKind::parameter, "dihedral parameter must be >= 2");
  return {GroupKind::dihedral, 2, n};
}

bool GroupSpec::is_finite() const noexcept {
  return kind == GroupKind::cyclic_power || kind == GroupKind::dihedral;
}

bool GroupSpec::is_abelian() const noexcept {
  return kind == GroupKind::free_abelian || kind == GroupKind::cyclic_power ||
         (kind == GroupKind::free && rank == 1) || (kind == GroupKind::dihedral && modulus <= 2);
}

std::uint64_t GroupSpec::order() const {
  require(is_finite(), ErrorKind::unsupported, label() + " is infinite");
  if (kind == GroupKind::dihedral) return 2 * static_cast<std::uint64_t>(modulus);
  std::uint64_t n = 1;
  for (int i = 0; i < rank; ++i) n *= static_cast<std::uint64_t>(modulus);
  return n;
}

std::string GroupSpec::label() const {
  switch (kind) {
    case GroupKind::free: return "free:" + std::to_string(rank);
    case GroupKind::free_abelian: return "zd:" + std::to_string(rank);
    case GroupKind::heisenberg3: return "heis3";
    case GroupKind::cyclic_power:
      return "zmod:" + std::to_string(modulus) + (rank > 1 ? "^" + std::to_string(rank) : "");
    case GroupKind::dihedral: return "dihedral:" + std::to_string(modulus);
  }
  return "?";
}

std::size_t GroupElementHash::operator()(const GroupElement& g) const noexcept {
  std::uint64_t h = 0x9e3779b97f4a7c15ULL ^ g.size();
  for (std::int64_t v : g.normal_form()) {
    h ^= static_cast<std::uint64_t>(v) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  }
  return static_cast<std::size_t>(h);
}

GroupElement identity(const GroupSpec& G) {
  switch (G.kind) {
    case GroupKind::free: return GroupElement({}, 0);
    case GroupKind::free_abelian:
    case GroupKind::cyclic_power: return GroupElement(std::vector<std::int64_t>(G.rank, 0), 0);
    case GroupKind::heisenberg3: return GroupElement({0, 0, 0}, 0);
    case GroupKind::dihedral: return GroupElement({0, 0}, 0);
  }
  return {};
}

std::vector<GroupElement> generators(const GroupSpec& G) {
  std::vector<GroupElement> out;
  switch (G.kind) {
    case GroupKind::free:
      for (int i = 1; i <= G.rank; ++i) {
        out.emplace_back(std::vector<std::int64_t>{i}, 1);
        out.emplace_back(std::vector<std::int64_t>{-i}, 1);
      }
      break;
    case GroupKind::free_abelian:
    case GroupKind::cyclic_power:
      for (int i = 0; i < G.rank; ++i) {
        for (std::int64_t s : {1, -1}) {
          std::vector<std::int64_t> v(G.rank, 0);
          v[i] = G.kind == GroupKind::cyclic_power ? mod(s, G.modulus) : s;
          out.emplace_back(std::move(v), 1);
        }
      }
      break;
    case GroupKind::heisenberg3:
      out.push_back(GroupElement({1, 0, 0}, 1));
      out.push_back(GroupElement({-1, 0, 0}, 1));
      out.push_back(GroupElement({0, 1, 0}, 1));
      out.push_back(GroupElement({0, -1, 0}, 1));
      break;
    case GroupKind::dihedral:
      out.push_back(GroupElement({1, 0}, 1));
      out.push_back(GroupElement({G.modulus - 1, 0}, 1));
      out.push_back(GroupElement({0, 1}, 1));
      break;
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

void validate(const GroupSpec& G, const GroupElement& g) {
  const auto& w = g.normal_form();
  switch (G.kind) {
    case GroupKind::free:
      for (std::size_t i = 0; i < w.size(); ++i) {
        if (w[i] == 0 || w[i] > G.rank || w[i] < -G.rank)
          fail(ErrorKind::malformed, G.label() + ": letter " + std::to_string(w[i]) + " out of range");
        if (i > 0 && w[i] == -w[i - 1])
          fail(ErrorKind::malformed, G.label() + ": word is not freely reduced at position " + std::to_string(i));
      }
      return;
    case GroupKind::free_abelian: check_size(G, g, G.rank); return;
    case GroupKind::heisenberg3: check_size(G, g, 3); return;
    case GroupKind::cyclic_power:
      check_size(G, g, G.rank);
      for (std::int64_t v : w)
        if (v < 0 || v >= G.modulus)
          fail(ErrorKind::malformed, G.label() + ": coordinate " + std::to_string(v) + " not reduced");
      return;
    case GroupKind::dihedral:
      check_size(G, g, 2);
      if (w[0] < 0 || w[0] >= G.modulus || (w[1] != 0 && w[1] != 1))
        fail(ErrorKind::malformed, G.label() + ": expected (k, e) with 0 <= k < n, e in {0,1}");
      return;
  }
}

GroupElement multiply(const GroupSpec& G, const GroupElement& a, const GroupElement& b) {
  validate(G, a);
  validate(G, b);
  const auto& u = a.normal_form();
  const auto& v = b.normal_form();
  switch (G.kind) {
    case GroupKind::free: {
      std::vector<std::int64_t> w(u);
      std::size_t j = 0;
      while (j < v.size() && !w.empty() && w.back() == -v[j]) {
        w.pop_back();
        ++j;
      }
      w.insert(w.end(), v.begin() + static_cast<std::ptrdiff_t>(j), v.end());
      return GroupElement(std::move(w));
    }
    case GroupKind::free_abelian: {
      std::vector<std::int64_t> w(G.rank);
      for (int i = 0; i < G.rank; ++i) w[i] = u[i] + v[i];
      return GroupElement(std::move(w));
    }
    case GroupKind::cyclic_power: {
      std::vector<std::int64_t> w(G.rank);
      for (int i = 0; i < G.rank; ++i) w[i] = mod(u[i] + v[i], G.modulus);
      return GroupElement(std::move(w));
    }
    case GroupKind::heisenberg3:
      // b^y a^x' = a^x' b^y c^(-x'y)
      return GroupElement({u[0] + v[0], u[1] + v[1], u[2] + v[2] - v[0] * u[1]});
    case GroupKind::dihedral: {
      std::int64_t k = u[1] == 0 ? u[0] + v[0] : u[0] - v[0];
      return GroupElement({mod(k, G.modulus), (u[1] + v[1]) % 2});
    }
  }
  return {};
}

GroupElement inverse(const GroupSpec& G, const GroupElement& g) {
  validate(G, g);
  const auto& u = g.normal_form();
  GroupElement out;
  switch (G.kind) {
    case GroupKind::free: {
      std::vector<std::int64_t> w(u.rbegin(), u.rend());
      for (auto& x : w) x = -x;
      out = GroupElement(std::move(w));
      break;
    }
    case GroupKind::free_abelian: {
      std::vector<std::int64_t> w(u);
      for (auto& x : w) x = -x;
      out = GroupElement(std::move(w));
      break;
    }
    case GroupKind::cyclic_power: {
      std::vector<std::int64_t> w(u);
      for (auto& x : w) x = mod(-x, G.modulus);
      out = GroupElement(std::move(w));
      break;
    }
    case GroupKind::heisenberg3: out = GroupElement({-u[0], -u[1], -u[2] - u[0] * u[1]}); break;
    case GroupKind::dihedral:
      out = u[1] == 0 ? GroupElement({mod(-u[0], G.modulus), 0}) : GroupElement({u[0], 1});
      break;
  }
  out.set_cached_length(g.cached_length());
  return out;
}

bool is_identity(const GroupSpec& G, const GroupElement& g) { return g == identity(G); }

std::string format_element(const GroupSpec& G, const GroupElement& g) {
  const auto& w = g.normal_form();
  std::string s;
  switch (G.kind) {
    case GroupKind::free: {
      if (w.empty()) return "e";
      for (std::size_t i = 0; i < w.size(); ++i) {
        if (i) s += ' ';
        char letter = static_cast<char>('a' + (std::llabs(w[i]) - 1) % 26);
        if (G.rank > 26) {
          s += "x" + std::to_string(std::llabs(w[i]));
        } else {
          s += letter;
        }
        if (w[i] < 0) s += "^-1";
      }
      return s;
    }
    case GroupKind::heisenberg3:
      return "a^" + std::to_string(w[0]) + " b^" + std::to_string(w[1]) + " c^" + std::to_string(w[2]);
    case GroupKind::dihedral:
      return "r^" + std::to_string(w[0]) + (w[1] ? " s" : "");
    case GroupKind::free_abelian:
    case GroupKind::cyclic_power:
      s = "(";
      for (std::size_t i = 0; i < w.size(); ++i) s += (i ? "," : "") + std::to_string(w[i]);
      return s + ")";
  }
  return s;
}

GroupElement free_word(const GroupSpec& G, std::span<const std::int64_t> letters) {
  require(G.kind == GroupKind::free, ErrorKind::unsupported, "free_word needs a free group");
  GroupElement out = identity(G);
  for (std::int64_t l : letters) {
    if (l == 0 || l > G.rank || l < -G.rank)
      fail(ErrorKind::malformed, G.label() + ": letter " + std::to_string(l) + " out of range");
    out = multiply(G, out, GroupElement({l}));
  }
  return out;
}

GroupElement heisenberg_element(std::int64_t x, std::int64_t y, std::int64_t z) {
  return GroupElement({x, y, z});
}

GroupElement vector_element(const GroupSpec& G, std::vector<std::int64_t> coords) {
  require(G.kind == GroupKind::free_abelian || G.kind == GroupKind::cyclic_power, ErrorKind::unsupported,
          "vector_element needs an abelian vector group");
  require(coords.size() == static_cast<std::size_t>(G.rank), ErrorKind::malformed, "wrong coordinate count");
  if (G.kind == GroupKind::cyclic_power)
    for (auto& c : coords) c = mod(c, G.modulus);
  return GroupElement(std::move(coords));
}

GroupElement dihedral_element(const GroupSpec& G, std::int64_t k, int reflection) {
  require(G.kind == GroupKind::dihedral, ErrorKind::unsupported, "dihedral_element needs a dihedral group");
  return GroupElement({mod(k, G.modulus), reflection ? 1 : 0});
}

GroupElement commutator(const GroupSpec& G, const GroupElement& a, const GroupElement& b) {
  return multiply(G, multiply(G, multiply(G, a, b), inverse(G, a)), inverse(G, b));
}

int bfs_distance(const GroupSpec& G, const GroupElement& g, std::size_t cap) {
  validate(G, g);
  GroupElement e = identity(G);
  if (g == e) return 0;
  const auto gens = generators(G);
  std::unordered_set<GroupElement, GroupElementHash> seen{e};
  std::vector<GroupElement> frontier{e};
  for (int r = 1;; ++r) {
    std::vector<GroupElement> next;
    for (const auto& h : frontier) {
      for (const auto& s : gens) {
        GroupElement x = multiply(G, h, s);
        if (x == g) return r;
        if (seen.insert(x).second) next.push_back(std::move(x));
      }
    }
    if (next.empty()) fail(ErrorKind::domain, "element not reachable from identity");
    if (seen.size() > cap)
      fail(ErrorKind::resource, "BFS exceeded cap " + std::to_string(cap) + " at radius " + std::to_string(r));
    frontier = std::move(next);
  }
}

int word_length(const GroupSpec& G, const GroupElement& g, std::size_t cap) {
  validate(G, g);
  const auto& w = g.normal_form();
  switch (G.kind) {
    case GroupKind::free: return static_cast<int>(w.size());
    case GroupKind::free_abelian: {
      std::int64_t s = 0;
      for (auto x : w) s += std::llabs(x);
      return static_cast<int>(s);
    }
    case GroupKind::cyclic_power: {
      std::int64_t s = 0;
      for (auto x : w) s += std::min(x, G.modulus - x);
      return static_cast<int>(s);
    }
    case GroupKind::heisenberg3:
    case GroupKind::dihedral: return bfs_distance(G, g, cap);
  }
  return 0;
}

EnumeratedBall::EnumeratedBall(GroupSpec G, int radius, BallFamily family, std::vector<GroupElement> elements)
    : group_(G), radius_(radius), family_(family), elements_(std::move(elements)) {
  index_.reserve(elements_.size());
  for (std::size_t i = 0; i < elements_.size(); ++i) {
    index_.emplace(elements_[i], i);
    std::size_t k = static_cast<std::size_t>(elements_[i].cached_length());
    if (spheres_.size() <= k) spheres_.resize(k + 1, 0);
    ++spheres_[k];
  }
}

std::optional<std::size_t> EnumeratedBall::find(const GroupElement& g) const {
  auto it = index_.find(g);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

namespace {

void sort_by_length(std::vector<GroupElement>& v) {
  std::sort(v.begin(), v.end(), [](const GroupElement& a, const GroupElement& b) {
    if (a.cached_length() != b.cached_length()) return a.cached_length() < b.cached_length();
    return a < b;
  });
}

EnumeratedBall cube_ball(const GroupSpec& G, int N, const BallOptions& options) {
  require(G.kind == GroupKind::free_abelian, ErrorKind::unsupported, "cube ball family needs a free abelian group");
  for (int r = 0; r <= N; ++r) {
    double count = std::pow(2.0 * r + 1.0, G.rank);
    if (count > static_cast<double>(options.cap))
      fail(ErrorKind::resource, "ball exceeds cap " + std::to_string(options.cap) + " at radius " + std::to_string(r));
  }
  std::vector<GroupElement> out;
  std::vector<std::int64_t> v(G.rank, -N);
  for (;;) {
    int len = 0;
    for (auto x : v) len += static_cast<int>(std::llabs(x));
    out.emplace_back(v, len);
    int i = G.rank - 1;
    while (i >= 0 && v[i] == N) v[i--] = -N;
    if (i < 0) break;
    ++v[i];
  }
  sort_by_length(out);
  return EnumeratedBall(G, N, BallFamily::cube, std::move(out));
}

}  // namespace

EnumeratedBall ball(const GroupSpec& G, int N, const BallOptions& options) {
  require(N >= 0, ErrorKind::parameter, "ball radius must be >= 0");
  if (options.family == BallFamily::cube) return cube_ball(G, N, options);
  const auto gens = generators(G);
  std::unordered_set<GroupElement, GroupElementHash> seen;
  std::vector<GroupElement> all{identity(G)};
  seen.insert(all.front());
  std::size_t layer_begin = 0;
  for (int r = 1; r <= N; ++r) {
    std::size_t layer_end = all.size();
    for (std::size_t i = layer_begin; i < layer_end; ++i) {
      for (const auto& s : gens) {
        GroupElement x = multiply(G, all[i], s);
        if (seen.insert(x).second) {
          x.set_cached_length(r);
          all.push_back(std::move(x));
        }
      }
      if (all.size() > options.cap)
        fail(ErrorKind::resource,
             "ball exceeds cap " + std::to_string(options.cap) + " at radius " + std::to_string(r));
    }
    layer_begin = layer_end;
    if (layer_begin == all.size()) break;
  }
  sort_by_length(all);
  return EnumeratedBall(G, N, BallFamily::word, std::move(all));
}

std::uint64_t ball_intersection_count(const EnumeratedBall& K, const GroupElement& g) {
  const GroupSpec& G = K.group();
  GroupElement ginv = inverse(G, g);
  std::uint64_t n = 0;
  for (const auto& h : K.elements())
    if (K.contains(multiply(G, ginv, h))) ++n;
  return n;
}

std::uint64_t ball_intersection_count(const GroupSpec& G, int N, const GroupElement& g,
                                      const BallOptions& options) {
  return ball_intersection_count(ball(G, N, options), g);
}

GrowthFit growth_constants(const EnumeratedBall& B, int degree, int lo, int hi) {
  require(lo >= 1 && hi <= B.radius() && lo <= hi, ErrorKind::parameter, "growth fit range outside the ball");
  GrowthFit fit{degree, std::numeric_limits<double>::infinity(), 0.0};
  std::size_t total = 0;
  const auto& sph = B.sphere_sizes();
  for (int N = 0; N <= hi; ++N) {
    total += static_cast<std::size_t>(N) < sph.size() ? sph[N] : 0;
    if (N < lo) continue;
    double ratio = static_cast<double>(total) / std::pow(static_cast<double>(N), degree);
    fit.c1 = std::min(fit.c1, ratio);
    fit.c2 = std::max(fit.c2, ratio);
  }
  return fit;
}

}  // namespace ncmult
