// Independent reference implementations used only by tests. None of these
// call into the library code they check.
#ifndef STALLWATCH_TESTS_ORACLES_HPP
#define STALLWATCH_TESTS_ORACLES_HPP

#include <algorithm>
#include <cmath>
#include <functional>
#include <random>
#include <vector>

namespace stallwatch::oracle {

// Best total score over all partial one-to-one matchings that only use
// pairs with score >= gate and score > 0. Exponential; sizes <= 6.
inline double brute_force_best_matching(const std::vector<std::vector<double>>& score, double gate) {
  const std::size_t rows = score.size();
  const std::size_t cols = rows ? score[0].size() : 0;
  std::vector<char> used(cols, 0);
  std::function<double(std::size_t)> rec = [&](std::size_t r) -> double {
    if (r == rows) return 0.0;
    double best = rec(r + 1);  // leave row r unmatched
    for (std::size_t c = 0; c < cols; ++c) {
      if (used[c] || !(score[r][c] >= gate && score[r][c] > 0.0)) continue;
      used[c] = 1;
      best = std::max(best, score[r][c] + rec(r + 1));
      used[c] = 0;
    }
    return best;
  };
  return rec(0);
}

// IoU of integer-aligned boxes by counting covered unit cells.
inline double raster_iou(int ax, int ay, int aw, int ah, int bx, int by, int bw, int bh) {
  const int x0 = std::min(ax, bx), x1 = std::max(ax + aw, bx + bw);
  const int y0 = std::min(ay, by), y1 = std::max(ay + ah, by + bh);
  int inter = 0, uni = 0;
  for (int y = y0; y < y1; ++y) {
    for (int x = x0; x < x1; ++x) {
      const bool in_a = x >= ax && x < ax + aw && y >= ay && y < ay + ah;
      const bool in_b = x >= bx && x < bx + bw && y >= by && y < by + bh;
      inter += in_a && in_b;
      uni += in_a || in_b;
    }
  }
  return uni ? static_cast<double>(inter) / uni : 0.0;
}

struct P2 {
  double x, y;
};

// Point-in-convex-polygon by consistent edge-side signs.
inline bool in_convex(const std::vector<P2>& poly, double x, double y) {
  int sign = 0;
  for (std::size_t i = 0; i < poly.size(); ++i) {
    const P2 a = poly[i], b = poly[(i + 1) % poly.size()];
    const double c = (b.x - a.x) * (y - a.y) - (b.y - a.y) * (x - a.x);
    const int s = c > 0 ? 1 : (c < 0 ? -1 : 0);
    if (s == 0) continue;
    if (sign == 0) sign = s;
    if (s != sign) return false;
  }
  return true;
}

// Even-odd ray casting, written independently of the library version.
inline bool in_polygon(const std::vector<P2>& poly, double x, double y) {
  int crossings = 0;
  for (std::size_t i = 0; i < poly.size(); ++i) {
    const P2 a = poly[i], b = poly[(i + 1) % poly.size()];
    if ((a.y <= y && b.y > y) || (b.y <= y && a.y > y)) {
      const double t = (y - a.y) / (b.y - a.y);
      if (x < a.x + t * (b.x - a.x)) ++crossings;
    }
  }
  return crossings % 2 == 1;
}

// Monte-Carlo estimate of area(box ∩ poly) / area(box).
template <typename Inside>
double mc_overlap_ratio(double bx, double by, double bw, double bh, Inside inside, int samples,
                        std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> ux(bx, bx + bw), uy(by, by + bh);
  int hits = 0;
  for (int i = 0; i < samples; ++i) hits += inside(ux(rng), uy(rng));
  return static_cast<double>(hits) / samples;
}

// The frame aggregation rule written as a literal lookup on (inside, not_localized, outside) counts.
enum class RuleState { outside_invisible, outside_visible, not_localized, inside_visible, multiple_inside };
inline RuleState aggregation_rule(int n_inside, int n_not_localized, int n_outside) {
  if (n_inside == 0 && n_not_localized == 0 && n_outside == 0) return RuleState::outside_invisible;
  if (n_inside == 0 && n_not_localized == 0 && n_outside >= 1) return RuleState::outside_visible;
  if (n_inside == 0 && n_not_localized >= 1) return RuleState::not_localized;
  if (n_inside == 1) return RuleState::inside_visible;
  return RuleState::multiple_inside;
}

// Scalar position/velocity Kalman filter for one axis.
struct AxisFilter {
  double x, v, pxx, pxv, pvv;
  double q_pos, q_vel, r;

  void predict() {
    x += v;
    const double nxx = pxx + 2 * pxv + pvv + q_pos;
    const double nxv = pxv + pvv;
    pxx = nxx;
    pxv = nxv;
    pvv += q_vel;
  }
  void update(double z) {
    const double s = pxx + r;
    const double kx = pxx / s, kv = pxv / s;
    const double innov = z - x;
    x += kx * innov;
    v += kv * innov;
    const double nxx = (1 - kx) * pxx;
    const double nxv = (1 - kx) * pxv;
    const double nvv = pvv - kv * pxv;
    pxx = nxx;
    pxv = nxv;
    pvv = nvv;
  }
};

}  // namespace stallwatch::oracle

#endif  // STALLWATCH_TESTS_ORACLES_HPP
