#include "rit/bounds.hpp"

#include <cmath>
#include <limits>

#include "rit/geometry.hpp"

namespace rit {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

double erf(double x) {
  // Fifth-order rational fit in t = 1/(1 + p x), absolute error <= 1.5e-7.
  // Evaluated on |x| and reflected, so erf(-x) == -erf(x) exactly.
  constexpr double p = 0.3275911;
  constexpr double a1 = 0.254829592;
  constexpr double a2 = -0.284496736;
  constexpr double a3 = 1.421413741;
  constexpr double a4 = -1.453152027;
  constexpr double a5 = 1.061405429;
  if (x == 0.0) return x;  // the fit's constant term is 1e-9, not 0
  const double ax = std::fabs(x);
  const double t = 1.0 / (1.0 + p * ax);
  const double poly = t * (a1 + t * (a2 + t * (a3 + t * (a4 + t * a5))));
  const double y = 1.0 - poly * std::exp(-ax * ax);
  return std::copysign(y, x);
}

double upper_bound(double lambda, double v, double rho) {
  if (lambda <= 0.0 || v <= 0.0) return 1.0;  // vacuous
  const double b = (1.0 + v) * std::sqrt(2.0 / (v * lambda * kPi * rho));
  return b < 1.0 ? b : 1.0;
}

double fcfs_lower_bound(double lambda, double rho) {
  return 1.0 / (1.0 + 2.0 * lambda * rho);
}

double la_lower_bound(double lambda, double rho) {
  const double lr = lambda * rho;
  return 1.0 / (kPi * std::sqrt(lr) * erf(std::sqrt(lr * kPi)) +
                std::exp(-lr * kPi));
}

double la_relative_factor(double v, double rho, double capital_d) {
  return 1.0 - v * kPi * rho / (capital_d - rho);
}

bool la_relative_applicable(double v, double rho, double capital_d) {
  return capital_d - rho >= v * kPi * rho;
}

namespace {
double rmhp_lower_with_alpha(double lambda, double v, double rho,
                             double alpha) {
  if (lambda <= 0.0 || v <= 0.0) return 1.0;  // vacuous
  const double denom =
      alpha * std::sqrt(v * lambda * rho * (1.0 + std::sqrt(v)));
  const double b = (1.0 - v) / denom;
  return b < 1.0 ? b : 1.0;
}
}  // namespace

double rmhp_lower_bound(double lambda, double v, double rho) {
  return rmhp_lower_with_alpha(lambda, v, rho, kRmhpAlpha);
}

double travel_time_lower_bound(double lambda, double v, double rho) {
  if (lambda <= 0.0) return kInf;  // no targets to travel to
  return std::sqrt(kPi * v * rho / (2.0 * lambda)) / (1.0 + v);
}

double few_bound(std::size_t n, double side) {
  return side * std::sqrt(2.0 * static_cast<double>(n)) +
         kFewConstant * side;
}

OptimalityRatio optimality_ratio(double lambda, double v, double rho) {
  OptimalityRatio out;
  const double up = upper_bound(lambda, v, rho);
  const double lo = rmhp_lower_bound(lambda, v, rho);
  const double lo_improved = rmhp_lower_with_alpha(lambda, v, rho, kRmhpAlphaImproved);
  out.informative = up < 1.0 && lo < 1.0;
  out.ratio = up / lo;
  out.improved_ratio = up / lo_improved;
  return out;
}

BoundReport evaluate_bounds(double lambda, double v, double rho,
                            double capital_d) {
  BoundReport r;
  r.degenerate = lambda <= 0.0 || v <= 0.0;
  r.upper = upper_bound(lambda, v, rho);
  r.fcfs_lower = fcfs_lower_bound(lambda, rho);
  r.la_applicable = la_relative_applicable(v, rho, capital_d);
  r.la_lower = la_lower_bound(lambda, rho);
  r.la_factor = la_relative_factor(v, rho, capital_d);
  r.rmhp_lower = rmhp_lower_bound(lambda, v, rho);
  r.travel_time = travel_time_lower_bound(lambda, v, rho);
  r.ratio = optimality_ratio(lambda, v, rho);
  return r;
}

}  // namespace rit
