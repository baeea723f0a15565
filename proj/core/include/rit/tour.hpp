#pragma once

#include <span>
#include <vector>

#include "rit/vec2.hpp"

namespace rit {

struct TourPlan {
  std::vector<int> order;  // indexes into the input point span
  double length = 0.0;     // includes the start-to-first-point leg
};

struct Square {  // axis-aligned
  Vec2 min;
  double side = 0.0;

  static Square centered(Vec2 center, double side) {
    return {{center.x - 0.5 * side, center.y - 0.5 * side}, side};
  }
  // Tight bounding square: side = larger extent of the bounding box.
  static Square bounding(std::span<const Vec2> pts);
};

// Serpentine strip tour over ceil(sqrt(n/2)) horizontal strips of `box`.
// Points are visited strip by strip, alternately left-to-right and
// right-to-left.  The strip grid's vertical offset is chosen from a fixed
// candidate set to minimise the total vertical detour (the averaging step of
// the classical construction); this is what keeps the path-through-points
// length within the side*sqrt(2n) + 1.75*side envelope.  The hop from
// `start` to the first point is on top of that envelope.
TourPlan strip_path(Vec2 start, std::span<const Vec2> pts, const Square& box);

// Euclidean open-path heuristic: nearest-neighbour order from `start`, then
// first-improvement 2-opt (scan i ascending, j ascending, continuing past an
// applied move; budget 50 n^2 candidate evaluations), then the better of
// that and strip_path over the points' tight bounding square.
TourPlan emhp_heuristic(Vec2 start, std::span<const Vec2> pts);

}  // namespace rit
