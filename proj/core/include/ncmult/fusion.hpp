#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ncmult/audits.hpp"
#include "ncmult/groups.hpp"
#include "ncmult/rational.hpp"

namespace ncmult {

using Label = std::size_t;
using LabelSet = std::vector<Label>;  // sorted, duplicate free

// Fusion ring of a Kac-type compact quantum group restricted to a finite
// window of labels. N(α, β, γ) is stored for all window triples; a pair is
// complete when every γ with N > 0 lies in the window.
class FusionRing {
 public:
  static constexpr std::size_t kMaxLabels = 160;

  FusionRing(std::string description, std::vector<std::string> names, std::vector<std::int64_t> dims,
             std::vector<Label> conjugate, Label trivial);

  const std::string& description() const noexcept { return description_; }
  std::size_t size() const noexcept { return names_.size(); }
  const std::string& name(Label a) const { return names_.at(a); }
  std::optional<Label> find(const std::string& name) const;
  std::int64_t dim(Label a) const { return dims_.at(a); }
  Label conjugate(Label a) const { return conjugate_.at(a); }
  Label trivial() const noexcept { return trivial_; }

  std::int64_t N(Label a, Label b, Label c) const { return tensor_[index(a, b, c)]; }
  void set_N(Label a, Label b, Label c, std::int64_t value) { tensor_[index(a, b, c)] = value; }
  bool complete(Label a, Label b) const { return complete_[a * size() + b] != 0; }
  void set_complete(Label a, Label b, bool value) { complete_[a * size() + b] = value ? 1 : 0; }

  // Word length of the label when the ring is a group dual, otherwise the label value.
  int grade(Label a) const { return grades_.at(a); }
  void set_grades(std::vector<int> grades);

 private:
  std::size_t index(Label a, Label b, Label c) const { return (a * size() + b) * size() + c; }

  std::string description_;
  std::vector<std::string> names_;
  std::vector<std::int64_t> dims_;
  std::vector<Label> conjugate_;
  Label trivial_;
  std::vector<std::int64_t> tensor_;
  std::vector<char> complete_;
  std::vector<int> grades_;
};

// Labels 0..max_label, Clebsch-Gordan rules.
FusionRing su2_fusion_ring(int max_label);

// Dual of a finite group (all elements) or of an infinite group restricted to
// the word ball of the given radius.
FusionRing group_dual_ring(const GroupSpec& G, std::optional<int> radius = {}, std::size_t cap = kDefaultBallCap);

std::int64_t weighted_cardinality(const FusionRing& ring, const LabelSet& F);

// Default Følner sets: {labels with grade <= n}.
LabelSet folner_set(const FusionRing& ring, int n);

// ∂_π F with F^c taken inside the window. Requires α⊗π and α⊗π̄ complete for
// α ∈ F, which makes the windowed set equal to the full one.
LabelSet boundary(const FusionRing& ring, const LabelSet& F, Label pi);

// Whether boundary(ring, F, π) is exact on this window.
bool boundary_resolvable(const FusionRing& ring, const LabelSet& F, Label pi);

Rational folner_ratio(const FusionRing& ring, const LabelSet& K, Label pi);

// Σ_{α,β∈K} N_{ᾱβ}^π d_α d_β / (d_π |K|_w).
Rational quantum_fejer(const FusionRing& ring, const LabelSet& K, Label pi);

// Frobenius reciprocity, conjugation and dimension identities on the window
// (restricted to labels < limit when given). Each violated reciprocity orbit
// is listed once, named by its least triple.
AuditReport validate_ring(const FusionRing& ring, std::optional<std::size_t> limit = {});

struct FusionChainRow {
  int n = 0;
  Label pi = 0;
  Rational phi;
  Rational ratio;
  bool holds = false;
};

struct FusionChainReport {
  std::vector<FusionChainRow> rows;
  bool all_hold = true;
  bool trivial_is_one = true;
  std::size_t skipped_unresolvable = 0;
};

// 1 - φ_n(π) <= |∂_π K_n|_w / |K_n|_w for n <= max_n and every π whose
// boundary is resolvable on the window.
FusionChainReport fusion_chain(const FusionRing& ring, int max_n);

}  // namespace ncmult
