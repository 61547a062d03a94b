#include "ncmult/heisenberg.hpp"

#include <algorithm>
#include <limits>
#include <map>

#include "ncmult/error.hpp"

namespace ncmult {

namespace {
constexpr std::uint8_t kUnseen = 0xff;
}

HeisenbergBallTable::HeisenbergBallTable(int max_radius) : R_(max_radius) {
  require(max_radius >= 0 && max_radius < 250, ErrorKind::parameter, "Heisenberg table radius must be in [0, 250)");
  // |w| <= (#a letters)(#b letters) <= R^2/4 along any word of length R.
  wmax_ = static_cast<std::int64_t>(R_) * R_ / 4 + 1;
  const std::size_t side = static_cast<std::size_t>(2 * R_ + 1);
  const std::size_t depth = static_cast<std::size_t>(2 * wmax_ + 1);
  const std::size_t columns = side * side;
  dist_.assign(columns * depth, kUnseen);

  auto idx = [&](std::int64_t x, std::int64_t y, std::int64_t w) {
    return column(x, y) * depth + static_cast<std::size_t>(w + wmax_);
  };
  struct P {
    std::int32_t x, y, w;
  };
  std::vector<P> frontier{{0, 0, 0}};
  dist_[idx(0, 0, 0)] = 0;
  for (int r = 1; r <= R_; ++r) {
    std::vector<P> next;
    next.reserve(frontier.size() * 2);
    for (const P& p : frontier) {
      const P nb[4] = {{p.x + 1, p.y, p.w}, {p.x - 1, p.y, p.w}, {p.x, p.y + 1, p.w + p.x}, {p.x, p.y - 1, p.w - p.x}};
      for (const P& q : nb) {
        std::size_t k = idx(q.x, q.y, q.w);
        if (dist_[k] == kUnseen) {
          dist_[k] = static_cast<std::uint8_t>(r);
          next.push_back(q);
        }
      }
    }
    frontier = std::move(next);
  }

  lo_.assign(static_cast<std::size_t>(R_ + 1) * columns, std::numeric_limits<std::int32_t>::max());
  hi_.assign(static_cast<std::size_t>(R_ + 1) * columns, std::numeric_limits<std::int32_t>::min());
  sizes_.assign(static_cast<std::size_t>(R_ + 1), 0);
  std::vector<std::int64_t> mn(R_ + 1), mx(R_ + 1), cnt(R_ + 1);
  for (std::int64_t x = -R_; x <= R_; ++x) {
    for (std::int64_t y = -R_; y <= R_; ++y) {
      std::fill(mn.begin(), mn.end(), std::numeric_limits<std::int64_t>::max());
      std::fill(mx.begin(), mx.end(), std::numeric_limits<std::int64_t>::min());
      std::fill(cnt.begin(), cnt.end(), 0);
      const std::size_t base = column(x, y) * depth;
      for (std::size_t k = 0; k < depth; ++k) {
        std::uint8_t d = dist_[base + k];
        if (d == kUnseen) continue;
        std::int64_t w = static_cast<std::int64_t>(k) - wmax_;
        mn[d] = std::min(mn[d], w);
        mx[d] = std::max(mx[d], w);
        ++cnt[d];
      }
      std::int64_t lo = std::numeric_limits<std::int64_t>::max(), hi = std::numeric_limits<std::int64_t>::min(), c = 0;
      for (int N = 0; N <= R_; ++N) {
        lo = std::min(lo, mn[N]);
        hi = std::max(hi, mx[N]);
        c += cnt[N];
        if (c == 0) continue;
        if (hi - lo + 1 != c) intervals_ = false;
        std::size_t k = static_cast<std::size_t>(N) * columns + column(x, y);
        lo_[k] = static_cast<std::int32_t>(lo);
        hi_[k] = static_cast<std::int32_t>(hi);
        sizes_[N] += static_cast<std::uint64_t>(c);
      }
    }
  }
}

int HeisenbergBallTable::distance(std::int64_t x, std::int64_t y, std::int64_t z) const {
  std::int64_t w = z + x * y;
  if (std::llabs(x) > R_ || std::llabs(y) > R_ || std::llabs(w) > wmax_) return -1;
  const std::size_t depth = static_cast<std::size_t>(2 * wmax_ + 1);
  std::uint8_t d = dist_[column(x, y) * depth + static_cast<std::size_t>(w + wmax_)];
  return d == kUnseen ? -1 : d;
}

std::uint64_t HeisenbergBallTable::ball_size(int N) const {
  require(N >= 0 && N <= R_, ErrorKind::domain, "radius beyond the Heisenberg table");
  return sizes_[N];
}

HeisenbergBallTable::Fiber HeisenbergBallTable::fiber(int N, std::int64_t x, std::int64_t y) const {
  require(N >= 0 && N <= R_, ErrorKind::domain, "radius beyond the Heisenberg table");
  if (std::llabs(x) + std::llabs(y) > N) return {};
  std::size_t k = static_cast<std::size_t>(N) * (2 * R_ + 1) * (2 * R_ + 1) + column(x, y);
  return {lo_[k], hi_[k]};
}

std::vector<std::uint64_t> HeisenbergBallTable::intersection_counts(int N, const EnumeratedBall& domain) const {
  require(domain.group().kind == GroupKind::heisenberg3, ErrorKind::unsupported, "domain is not a Heisenberg ball");
  require(N >= 0 && N <= R_, ErrorKind::domain, "radius beyond the Heisenberg table");
  require(intervals_, ErrorKind::unsupported, "ball fibers are not intervals; use hashed counting");

  // Points grouped by their (x, y) projection, keyed in matrix coordinates.
  std::map<std::pair<std::int64_t, std::int64_t>, std::vector<std::pair<std::int64_t, std::size_t>>> groups;
  for (std::size_t i = 0; i < domain.size(); ++i) {
    const auto& g = domain[i];
    groups[{g[0], g[1]}].emplace_back(g[2] + g[0] * g[1], i);
  }

  std::vector<std::uint64_t> out(domain.size(), 0);
  std::vector<std::int64_t> impulses;
  const std::size_t columns = static_cast<std::size_t>((2 * R_ + 1) * (2 * R_ + 1));
  const std::int32_t* lo = lo_.data() + static_cast<std::size_t>(N) * columns;
  const std::int32_t* hi = hi_.data() + static_cast<std::size_t>(N) * columns;
  for (const auto& [ab, pts] : groups) {
    const auto [a, b] = ab;
    if (std::llabs(a) + std::llabs(b) > 2 * N) continue;
    std::int64_t cmin = pts.front().first, cmax = cmin;
    for (const auto& p : pts) {
      cmin = std::min(cmin, p.first);
      cmax = std::max(cmax, p.first);
    }
    impulses.assign(static_cast<std::size_t>(cmax - cmin + 1), 0);
    std::int64_t base_val = 0, base_slope = 0;
    auto add = [&](std::int64_t P, std::int64_t w) {
      if (P <= cmin) {
        base_val += w * (cmin - P + 1);
        base_slope += w;
      } else if (P <= cmax) {
        impulses[static_cast<std::size_t>(P - cmin)] += w;
      }
    };
    const std::int64_t xlo = std::max<std::int64_t>(-N, a - N), xhi = std::min<std::int64_t>(N, a + N);
    for (std::int64_t x = xlo; x <= xhi; ++x) {
      const std::int64_t ry = N - std::llabs(x), ry2 = N - std::llabs(x - a);
      const std::int64_t ylo = std::max(-ry, b - ry2), yhi = std::min(ry, b + ry2);
      const std::int64_t c1 = (x + R_) * (2 * R_ + 1) + R_, c2 = (x - a + R_) * (2 * R_ + 1) + R_ - b;
      const std::int32_t* lo1 = lo + c1;
      const std::int32_t* hi1 = hi + c1;
      const std::int32_t* lo2 = lo + c2;
      const std::int32_t* hi2 = hi + c2;
      for (std::int64_t y = ylo; y <= yhi; ++y) {
        // overlap(s) = |[l1,h1] ∩ [l2+s, h2+s]| as four ramp impulses in s,
        // with s = C + a*y - a*b for the domain coordinate C.
        const std::int64_t l1 = lo1[y], h1 = hi1[y], l2 = lo2[y], h2 = hi2[y];
        const std::int64_t m = std::min(h1 - l1, h2 - l2) + 1;
        const std::int64_t off = a * y - a * b;
        const std::int64_t s0 = l1 - h2 - off, s1 = h1 - l2 - off;
        add(s0, 1);
        add(s0 + m, -1);
        add(s1 - m + 2, -1);
        add(s1 + 2, 1);
      }
    }
    std::vector<std::int64_t> val(impulses.size());
    std::int64_t run1 = 0, run2 = 0;
    for (std::size_t k = 0; k < impulses.size(); ++k) {
      run1 += impulses[k];
      run2 += run1;
      val[k] = base_val + base_slope * static_cast<std::int64_t>(k) + run2;
    }
    for (const auto& [c, i] : pts) out[i] = static_cast<std::uint64_t>(val[static_cast<std::size_t>(c - cmin)]);
  }
  return out;
}

}  // namespace ncmult
