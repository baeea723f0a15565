#include "rit/tour.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>

#include "rit/geometry.hpp"

namespace rit {

namespace {

double path_length(Vec2 start, std::span<const Vec2> pts,
                   const std::vector<int>& order) {
  double len = 0.0;
  Vec2 at = start;
  for (int idx : order) {
    len += dist(at, pts[idx]);
    at = pts[idx];
  }
  return len;
}

std::vector<int> nearest_neighbour_order(Vec2 start,
                                         std::span<const Vec2> pts) {
  const int n = static_cast<int>(pts.size());
  std::vector<int> order;
  order.reserve(n);
  std::vector<char> used(n, 0);
  Vec2 at = start;
  for (int step = 0; step < n; ++step) {
    int best = -1;
    double best_d = std::numeric_limits<double>::infinity();
    for (int k = 0; k < n; ++k) {
      if (used[k]) continue;
      double d = dist(at, pts[k]);
      if (d < best_d) {  // tie keeps the smaller index
        best_d = d;
        best = k;
      }
    }
    used[best] = 1;
    order.push_back(best);
    at = pts[best];
  }
  return order;
}

// First-improvement 2-opt on an open path.  Reversing order[i..j] replaces
// the edge into order[i] and (when j is interior) the edge out of order[j];
// interior edges only flip direction.  Candidate evaluations are capped at
// 50 n^2 so the pass count cannot blow up on adversarial inputs.
void two_opt(Vec2 start, std::span<const Vec2> pts, std::vector<int>& order) {
  const int n = static_cast<int>(order.size());
  if (n < 3) return;
  std::uint64_t budget = 50ull * static_cast<std::uint64_t>(n) *
                         static_cast<std::uint64_t>(n);
  bool improved = true;
  while (improved && budget > 0) {
    improved = false;
    for (int i = 0; i + 1 < n && budget > 0; ++i) {
      const Vec2 prev = i == 0 ? start : pts[order[i - 1]];
      for (int j = i + 1; j < n && budget > 0; ++j) {
        --budget;
        double delta = dist(prev, pts[order[j]]) - dist(prev, pts[order[i]]);
        if (j + 1 < n)
          delta += dist(pts[order[i]], pts[order[j + 1]]) -
                   dist(pts[order[j]], pts[order[j + 1]]);
        if (delta < -1e-12) {
          std::reverse(order.begin() + i, order.begin() + j + 1);
          improved = true;
        }
      }
    }
  }
}

}  // namespace

Square Square::bounding(std::span<const Vec2> pts) {
  if (pts.empty()) return {{0.0, 0.0}, 0.0};
  Vec2 lo = pts[0];
  Vec2 hi = pts[0];
  for (const Vec2& p : pts) {
    lo.x = std::min(lo.x, p.x);
    lo.y = std::min(lo.y, p.y);
    hi.x = std::max(hi.x, p.x);
    hi.y = std::max(hi.y, p.y);
  }
  return {lo, std::max(hi.x - lo.x, hi.y - lo.y)};
}

TourPlan strip_path(Vec2 start, std::span<const Vec2> pts, const Square& box) {
  const int n = static_cast<int>(pts.size());
  TourPlan plan;
  if (n == 0) return plan;

  const int m = std::max(
      1, static_cast<int>(std::ceil(std::sqrt(0.5 * static_cast<double>(n)))));
  const double h = box.side > 0.0 ? box.side / m : 0.0;

  struct Key {
    int strip;
    double x;
    double y;
    int idx;
  };
  std::vector<Key> keys(n);
  std::vector<int> order(n);

  constexpr int kOffsetCandidates = 128;
  double best_len = std::numeric_limits<double>::infinity();
  for (int cand = 0; cand < kOffsetCandidates; ++cand) {
    const double shift = h * cand / kOffsetCandidates;
    for (int k = 0; k < n; ++k) {
      int s = 0;
      if (h > 0.0)
        s = std::clamp(
            static_cast<int>(std::floor((pts[k].y - box.min.y + shift) / h)),
            0, m - 1);
      keys[k] = {s, pts[k].x, pts[k].y, k};
    }
    std::sort(keys.begin(), keys.end(), [](const Key& a, const Key& b) {
      if (a.strip != b.strip) return a.strip < b.strip;
      const bool rev = a.strip & 1;  // odd strips run right-to-left
      if (a.x != b.x) return rev ? a.x > b.x : a.x < b.x;
      if (a.y != b.y) return a.y < b.y;
      return a.idx < b.idx;
    });
    for (int k = 0; k < n; ++k) order[k] = keys[k].idx;
    double len = path_length(start, pts, order);
    if (len < best_len) {
      best_len = len;
      plan.order = order;
    }
    if (h <= 0.0) break;  // every candidate buckets identically
  }
  plan.length = best_len;
  return plan;
}

TourPlan emhp_heuristic(Vec2 start, std::span<const Vec2> pts) {
  TourPlan plan;
  plan.order = nearest_neighbour_order(start, pts);
  two_opt(start, pts, plan.order);
  plan.length = path_length(start, pts, plan.order);

  if (pts.size() >= 3) {
    TourPlan strips = strip_path(start, pts, Square::bounding(pts));
    if (strips.length < plan.length) return strips;
  }
  return plan;
}

}  // namespace rit
