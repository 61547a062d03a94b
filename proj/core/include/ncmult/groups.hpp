#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

namespace ncmult {

enum class GroupKind { free, free_abelian, heisenberg3, cyclic_power, dihedral };

// Finitely generated group with its standard symmetric generating set.
//   free(d)            reduced words, letters +i / -i for generator i (1-based)
//   free_abelian(d)    integer vectors, generators ±e_i
//   heisenberg3        exponents (x, y, z) of a^x b^y c^z, c = a b a^-1 b^-1
//   cyclic_power(n,d)  vectors mod n, generators ±e_i
//   dihedral(n)        (k, e) meaning r^k s^e, generators r, r^-1, s
struct GroupSpec {
  GroupKind kind = GroupKind::free_abelian;
  int rank = 1;
  std::int64_t modulus = 0;

  static GroupSpec free(int d);
  static GroupSpec free_abelian(int d);
  static GroupSpec heisenberg3();
  static GroupSpec cyclic_power(std::int64_t n, int d);
  static GroupSpec dihedral(std::int64_t n);

  bool is_finite() const noexcept;
  bool is_abelian() const noexcept;
  std::uint64_t order() const;  // finite groups only
  std::string label() const;    // grammar form, e.g. "zmod:8^2"

  friend bool operator==(const GroupSpec&, const GroupSpec&) = default;
};

class GroupElement {
 public:
  GroupElement() = default;
  explicit GroupElement(std::vector<std::int64_t> normal_form, int length = -1)
      : nf_(std::move(normal_form)), length_(length) {}

  const std::vector<std::int64_t>& normal_form() const noexcept { return nf_; }
  std::int64_t operator[](std::size_t i) const { return nf_[i]; }
  std::size_t size() const noexcept { return nf_.size(); }

  // Cached word length, -1 when unknown. Not part of identity.
  int cached_length() const noexcept { return length_; }
  void set_cached_length(int length) noexcept { length_ = length; }

  friend bool operator==(const GroupElement& a, const GroupElement& b) noexcept { return a.nf_ == b.nf_; }
  friend auto operator<=>(const GroupElement& a, const GroupElement& b) noexcept { return a.nf_ <=> b.nf_; }

 private:
  std::vector<std::int64_t> nf_;
  int length_ = -1;
};

struct GroupElementHash {
  std::size_t operator()(const GroupElement& g) const noexcept;
};

constexpr std::size_t kDefaultBallCap = 200000;

enum class BallFamily { word, cube };

struct BallOptions {
  std::size_t cap = kDefaultBallCap;
  BallFamily family = BallFamily::word;
};

GroupElement identity(const GroupSpec& G);
std::vector<GroupElement> generators(const GroupSpec& G);
void validate(const GroupSpec& G, const GroupElement& g);
GroupElement multiply(const GroupSpec& G, const GroupElement& a, const GroupElement& b);
GroupElement inverse(const GroupSpec& G, const GroupElement& g);
bool is_identity(const GroupSpec& G, const GroupElement& g);
std::string format_element(const GroupSpec& G, const GroupElement& g);

// Convenience constructors; the input is reduced to normal form.
GroupElement free_word(const GroupSpec& G, std::span<const std::int64_t> letters);
GroupElement heisenberg_element(std::int64_t x, std::int64_t y, std::int64_t z);
GroupElement vector_element(const GroupSpec& G, std::vector<std::int64_t> coords);
GroupElement dihedral_element(const GroupSpec& G, std::int64_t k, int reflection);
GroupElement commutator(const GroupSpec& G, const GroupElement& a, const GroupElement& b);

// Word length. Normal form based for free, abelian and cyclic groups; BFS
// distance for heisenberg3 and dihedral, limited to `cap` visited elements.
int word_length(const GroupSpec& G, const GroupElement& g, std::size_t cap = kDefaultBallCap);
int bfs_distance(const GroupSpec& G, const GroupElement& g, std::size_t cap = kDefaultBallCap);

class EnumeratedBall {
 public:
  EnumeratedBall() = default;
  EnumeratedBall(GroupSpec G, int radius, BallFamily family, std::vector<GroupElement> elements);

  const GroupSpec& group() const noexcept { return group_; }
  int radius() const noexcept { return radius_; }
  BallFamily family() const noexcept { return family_; }
  std::size_t size() const noexcept { return elements_.size(); }
  const std::vector<GroupElement>& elements() const noexcept { return elements_; }
  const GroupElement& operator[](std::size_t i) const { return elements_[i]; }
  int length(std::size_t i) const { return elements_[i].cached_length(); }
  std::optional<std::size_t> find(const GroupElement& g) const;
  bool contains(const GroupElement& g) const { return index_.count(g) != 0; }
  // sphere_sizes()[k] = number of elements of length exactly k.
  const std::vector<std::size_t>& sphere_sizes() const noexcept { return spheres_; }

 private:
  GroupSpec group_;
  int radius_ = 0;
  BallFamily family_ = BallFamily::word;
  std::vector<GroupElement> elements_;
  std::unordered_map<GroupElement, std::size_t, GroupElementHash> index_;
  std::vector<std::size_t> spheres_;
};

// Elements of word length <= N (or the cube [-N,N]^d for BallFamily::cube),
// sorted by (length, normal form). Raises a resource error naming the cap and
// the first radius at which it was exceeded.
EnumeratedBall ball(const GroupSpec& G, int N, const BallOptions& options = {});

// |K ∩ gK| by hashed membership.
std::uint64_t ball_intersection_count(const EnumeratedBall& K, const GroupElement& g);
std::uint64_t ball_intersection_count(const GroupSpec& G, int N, const GroupElement& g,
                                      const BallOptions& options = {});

// Tightest c1, c2 with c1 N^d <= |ball(N)| <= c2 N^d for N in [lo, hi].
struct GrowthFit {
  int degree = 0;
  double c1 = 0;
  double c2 = 0;
};
GrowthFit growth_constants(const EnumeratedBall& B, int degree, int lo, int hi);

}  // namespace ncmult
