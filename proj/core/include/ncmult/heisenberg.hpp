#pragma once

#include <cstdint>
#include <vector>

#include "ncmult/groups.hpp"

namespace ncmult {

// Dense word-metric table for the discrete Heisenberg group up to a fixed
// radius. Coordinates here are matrix coordinates (x, y, w) of
// [[1,x,w],[0,1,y],[0,0,1]]; the exponent normal form (x, y, z) has w = z + xy.
//
// Each word ball meets every vertical line {(x, y, *)} in an interval. The
// table stores those fibers per radius and checks the interval property on
// construction, which turns |K_N ∩ g K_N| into a sum of interval overlaps.
class HeisenbergBallTable {
 public:
  explicit HeisenbergBallTable(int max_radius);

  int max_radius() const noexcept { return R_; }
  // Word length of the element with exponents (x, y, z), or -1 beyond max_radius.
  int distance(std::int64_t x, std::int64_t y, std::int64_t z) const;
  std::uint64_t ball_size(int N) const;
  bool fibers_are_intervals() const noexcept { return intervals_; }

  struct Fiber {
    std::int64_t lo = 1;
    std::int64_t hi = 0;
    bool empty() const noexcept { return lo > hi; }
  };
  Fiber fiber(int N, std::int64_t x, std::int64_t y) const;

  // |K_N ∩ g K_N| for every element g of `domain`, aligned with its order.
  std::vector<std::uint64_t> intersection_counts(int N, const EnumeratedBall& domain) const;

 private:
  std::size_t column(std::int64_t x, std::int64_t y) const {
    return static_cast<std::size_t>((x + R_) * (2 * R_ + 1) + (y + R_));
  }

  int R_;
  std::int64_t wmax_;
  std::vector<std::uint8_t> dist_;
  std::vector<std::int32_t> lo_, hi_;  // [N][column]
  std::vector<std::uint64_t> sizes_;
  bool intervals_ = true;
};

}  // namespace ncmult
