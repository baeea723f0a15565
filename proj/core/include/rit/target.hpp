#pragma once

#include <optional>

#include "rit/config.hpp"
#include "rit/vec2.hpp"

namespace rit {

// pending -> active -> captured | escaped; nothing moves backwards.
enum class TargetState { pending, active, captured, escaped };

struct Target {
  int id = 0;  // position in arrival order; doubles as the event tie-breaker
  double arrival_time = 0.0;
  double theta = 0.0;  // bearing of the inward ray, fixed for life
  TargetState state = TargetState::pending;
  double resolution_time = 0.0;  // set on capture or escape

  double radius_at(double t, const SimConfig& c) const {
    return c.capital_d - c.v * (t - arrival_time);
  }

  Vec2 position_at(double t, const SimConfig& c) const {
    return polar(radius_at(t, c), theta);
  }

  // Instant the radius reaches rho; absent when v == 0 (never escapes).
  std::optional<double> escape_time(const SimConfig& c) const {
    if (c.v <= 0.0) return std::nullopt;
    return arrival_time + (c.capital_d - c.rho) / c.v;
  }
};

}  // namespace rit
