#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>

#include "ncmult/convexbody.hpp"
#include "ncmult/error.hpp"
#include "ncmult/fusion.hpp"
#include "ncmult/groups.hpp"
#include "ncmult/symbols.hpp"

namespace ncmult {

// Raised with ErrorKind::grammar; `position` is the 0-based offset of the
// first character that could not be consumed.
class GrammarError : public Error {
 public:
  GrammarError(std::string_view input, std::size_t position, const std::string& expected);
  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

// free:2, zd:3, heis3, zmod:8, zmod:8^2, dihedral:6
GroupSpec parse_group(std::string_view text);
// word | cube
BallFamily parse_ball_family(std::string_view text);
// dirac:0, grid:5, atoms:[(-1,0.5),(1,0.5)]
AtomicMeasure parse_measure(std::string_view text);

enum class SymbolKind { fejer, bochner_riesz, radial, heat, poisson };

struct SymbolSpec {
  SymbolKind kind = SymbolKind::fejer;
  BallFamily family = BallFamily::word;  // fejer
  double delta = 0;                      // bochner_riesz
  AtomicMeasure measure;                 // radial
  std::string text;
};

// fejer:word, fejer:cube, br:delta=2, radial:<measure>, heat, poisson
SymbolSpec parse_symbol(std::string_view text);

struct RingSpec {
  bool su2 = true;
  int max_label = 0;
  GroupSpec group;
  std::optional<int> radius;
  std::string text;
};

// su2:40, groupdual:zmod:12, groupdual:dihedral:6, groupdual:zd:1@20
RingSpec parse_ring(std::string_view text);
FusionRing make_ring(const RingSpec& spec);

// cube:d=8, ball:d=8, lq:q=4,d=16
BodySpec parse_body(std::string_view text);

}  // namespace ncmult
