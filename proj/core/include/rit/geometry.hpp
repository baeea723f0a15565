#pragma once

#include <span>

#include "rit/vec2.hpp"

namespace rit {

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kTwoPi = 6.28318530717958647692;

// Unsigned angular separation, wrapped to [0, pi].
double angle_distance(double a, double b);

struct InterceptSolution {
  double time = 0.0;  // earliest meeting time >= 0
  Vec2 point;         // meeting point
  double radius_at_intercept = 0.0;  // target radius when met; may be below
                                     // the perimeter or negative (past the
                                     // origin) -- callers decide what that means
};

// Earliest time a unit-speed vehicle at `vehicle` meets a target currently at
// polar (target_radius, target_theta) and moving radially inward at speed v.
// Root of (v^2 - 1) T^2 + 2 v (c - r0) T + (r0^2 - 2 c r0 + |p|^2) = 0 with
// c = p . (cos theta, sin theta); the smallest nonnegative root is returned.
// For v < 1 a meeting always exists.  v = 1 with a non-approaching target
// yields time = +infinity.
InterceptSolution intercept(Vec2 vehicle, double target_radius,
                            double target_theta, double v);

inline bool feasible_before_perimeter(const InterceptSolution& s, double rho) {
  return s.radius_at_intercept >= rho;
}

// Largest radius at which a target on bearing theta is still catchable at or
// outside the perimeter by a vehicle sitting at (x, 0):
// min(capital_d, rho + v * sqrt(rho^2 + x^2 - 2 x rho cos theta)).
double capturable_radius(double x, double v, double rho, double capital_d,
                         double target_theta);

// Membership test for the capturable set; the boundary is excluded.
bool in_capturable_set(double x, double v, double rho, double capital_d,
                       double target_r, double target_theta);

// Reachable set of a perimeter-bound vehicle at angle phi (arc speed 1, so
// angular rate 1/rho): the vehicle gets to the perimeter point underneath a
// target at (r, theta) no later than the target does iff
//   r - rho >= v * rho * angle_distance(theta, phi).
// Inclusive: arriving exactly on time counts as reachable.
bool is_reachable(double phi, double target_r, double target_theta, double v,
                  double rho);

// Length of the polyline through the points, in order.
double static_path_length(std::span<const Vec2> points);

struct PolarPos {
  double r = 0.0;
  double theta = 0.0;
};

// Chained interception of a fixed sequence of inward movers; each leg is an
// intercept() starting where and when the previous leg ended.  `targets`
// holds polar positions at the common start instant.  feasible goes false if
// some leg would meet its target at negative radius (past the origin).
struct SequentialResult {
  double total_time = 0.0;
  bool feasible = true;
};
SequentialResult sequential_intercept_time(Vec2 start,
                                           std::span<const PolarPos> targets,
                                           double v);

// Unrolled chart of the annulus used by the scheduling analysis:
// (r, theta) -> (theta * rho, r - rho).  Positions only, no area rescaling.
Vec2 annulus_to_rectangle(double r, double theta, double rho);
PolarPos rectangle_to_annulus(Vec2 q, double rho);

}  // namespace rit
