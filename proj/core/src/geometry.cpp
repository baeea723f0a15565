#include "rit/geometry.hpp"

#include <cmath>
#include <limits>

namespace rit {

double angle_distance(double a, double b) {
  double d = std::fabs(std::remainder(a - b, kTwoPi));
  return d;  // remainder lands in [-pi, pi], so |.| is the wrapped distance
}

InterceptSolution intercept(Vec2 p, double r0, double theta, double v) {
  const double ct = std::cos(theta);
  const double st = std::sin(theta);
  const double c = p.x * ct + p.y * st;  // projection of p onto the ray
  const double a = v * v - 1.0;
  const double b = 2.0 * v * (c - r0);
  const double k = r0 * r0 - 2.0 * c * r0 + dot(p, p);  // |target(0) - p|^2

  double T;
  if (k <= 0.0) {
    T = 0.0;  // coincident already; k < 0 is rounding noise
  } else if (a == 0.0) {
    // v == 1: degenerate linear case.  b >= 0 means the gap never closes.
    T = b < 0.0 ? -k / b : std::numeric_limits<double>::infinity();
  } else {
    // a < 0 and k > 0: the discriminant is positive and the roots straddle
    // zero, so the meeting time is the unique positive root.  Computed the
    // numerically stable way (no cancellation between b and the radical).
    const double disc = b * b - 4.0 * a * k;
    const double sq = std::sqrt(disc);
    const double q = b >= 0.0 ? -0.5 * (b + sq) : -0.5 * (b - sq);
    const double t1 = q / a;
    const double t2 = k / q;
    T = t1 > t2 ? t1 : t2;
  }

  const double r_at = r0 - v * T;
  return {T, {r_at * ct, r_at * st}, r_at};
}

double capturable_radius(double x, double v, double rho, double capital_d,
                         double target_theta) {
  const double chord2 =
      rho * rho + x * x - 2.0 * x * rho * std::cos(target_theta);
  const double r = rho + v * std::sqrt(chord2 > 0.0 ? chord2 : 0.0);
  return r < capital_d ? r : capital_d;
}

bool in_capturable_set(double x, double v, double rho, double capital_d,
                       double target_r, double target_theta) {
  return target_r < capturable_radius(x, v, rho, capital_d, target_theta);
}

bool is_reachable(double phi, double target_r, double target_theta, double v,
                  double rho) {
  return target_r - rho >= v * rho * angle_distance(target_theta, phi);
}

double static_path_length(std::span<const Vec2> points) {
  double len = 0.0;
  for (std::size_t i = 1; i < points.size(); ++i)
    len += dist(points[i - 1], points[i]);
  return len;
}

SequentialResult sequential_intercept_time(Vec2 start,
                                           std::span<const PolarPos> targets,
                                           double v) {
  SequentialResult out;
  Vec2 pos = start;
  double elapsed = 0.0;
  for (const PolarPos& tgt : targets) {
    // The target has been drifting inward since the common start instant.
    const double r_now = tgt.r - v * elapsed;
    const InterceptSolution sol = intercept(pos, r_now, tgt.theta, v);
    if (sol.radius_at_intercept < 0.0) out.feasible = false;
    elapsed += sol.time;
    pos = sol.point;
  }
  out.total_time = elapsed;
  return out;
}

Vec2 annulus_to_rectangle(double r, double theta, double rho) {
  return {theta * rho, r - rho};
}

PolarPos rectangle_to_annulus(Vec2 q, double rho) {
  return {q.y + rho, q.x / rho};
}

}  // namespace rit
