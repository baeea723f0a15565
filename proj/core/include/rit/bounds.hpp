#pragma once

#include <cstddef>

namespace rit {

// Error function via the classical fifth-order rational approximation
// (Abramowitz-Stegun 7.1.26 shape): |error| <= 1.5e-7 everywhere, exactly
// odd by reflection.  Kept internal so the library has no math dependency
// beyond libm.
double erf(double x);

inline constexpr double kFewConstant = 1.75;
inline constexpr double kTspBeta = 0.7120;  // +/- 0.0002, unit-density tour constant
inline constexpr double kRmhpAlpha = 8.48528137423857029281;  // 6 * sqrt(2)
inline constexpr double kRmhpAlphaImproved = 2.81994184337195152;  // 3.988 / sqrt(2)

// Capture-fraction ceiling for any policy: min(1, (1+v) sqrt(2/(v lambda pi rho))).
// lambda = 0 or v = 0 makes the expression blow up; the bound saturates at 1
// (vacuous) and evaluate_bounds() flags it.
double upper_bound(double lambda, double v, double rho);

// First-come-first-served guarantee via the dash-out comparator: 1/(1 + 2 lambda rho).
double fcfs_lower_bound(double lambda, double rho);

// Lookahead guarantee, independent of v:
// 1 / (pi sqrt(lambda rho) erf(sqrt(lambda pi rho)) + exp(-lambda pi rho)).
double la_lower_bound(double lambda, double rho);

// Multiplier tying the causal lookahead policy to its clairvoyant variant:
// 1 - v pi rho / (capital_d - rho).  Meaningful only when
// capital_d - rho >= v pi rho.
double la_relative_factor(double v, double rho, double capital_d);
bool la_relative_applicable(double v, double rho, double capital_d);

// Batched-tour guarantee in the heavy-traffic regime:
// min(1, (1-v) / (alpha sqrt(v lambda rho (1 + sqrt(v))))) with alpha = 6 sqrt(2).
double rmhp_lower_bound(double lambda, double v, double rho);

// Mean time to reach the nearest outstanding target from a steady-state
// snapshot is at least (1/(1+v)) sqrt(pi v rho / (2 lambda)).
double travel_time_lower_bound(double lambda, double v, double rho);

// Shortest-path envelope for n points in a square of the given side:
// side * sqrt(2 n) + 1.75 * side.
double few_bound(std::size_t n, double side);

struct OptimalityRatio {
  double ratio = 0.0;           // upper / batched-tour lower, unsaturated branch
  double improved_ratio = 0.0;  // same with the beta-based alpha
  bool informative = false;     // false when either side saturates at 1
};

// Gap between the ceiling and the batched-tour guarantee.  As v -> 0+ the
// ratio tends to 12/sqrt(pi) ~ 6.77 and the improved variant to
// 3.988/sqrt(pi) ~ 2.25.
OptimalityRatio optimality_ratio(double lambda, double v, double rho);

// Everything the `bounds` subcommand prints for one parameter point.
struct BoundReport {
  double upper = 1.0;
  double fcfs_lower = 0.0;
  bool la_applicable = false;
  double la_lower = 0.0;   // valid whenever lambda > 0; gating uses la_applicable
  double la_factor = 0.0;  // valid only when la_applicable
  double rmhp_lower = 0.0;
  double travel_time = 0.0;  // +infinity when lambda == 0
  OptimalityRatio ratio;
  bool degenerate = false;  // lambda == 0 or v == 0: rate bounds are vacuous
};
BoundReport evaluate_bounds(double lambda, double v, double rho,
                            double capital_d);

}  // namespace rit
