#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace rit {

// Scenario parameters.  Targets appear on the circle of radius capital_d at
// Poisson rate lambda, move radially inward at constant speed v, and are lost
// when they reach the perimeter circle of radius rho.  The defending vehicle
// moves at unit speed, so v < 1.  capital_d and rho default to the values
// used throughout the reference experiments.
struct SimConfig {
  double lambda = 1.0;      // arrivals per unit time
  double v = 0.5;           // target speed; v = 0 is legal but degenerate
  double rho = 3.0;         // perimeter radius
  double capital_d = 20.0;  // generation radius
  double horizon = 1000.0;  // simulated time span
  double warmup = -1.0;     // counting starts here; negative = 0.2 * horizon
  std::uint64_t seed = 0;

  double effective_warmup() const {
    return warmup < 0.0 ? 0.2 * horizon : warmup;
  }

  void validate() const {
    auto bad = [](const std::string& msg) { throw std::invalid_argument("config: " + msg); };
    if (!(lambda >= 0.0) || !std::isfinite(lambda)) bad("lambda must be finite and >= 0");
    if (!(v >= 0.0) || !(v < 1.0)) bad("v must lie in [0, 1)");
    if (!(rho > 0.0) || !std::isfinite(rho)) bad("rho must be positive");
    if (!(capital_d > rho)) bad("capital_d must exceed rho");
    if (!(horizon > 0.0) || !std::isfinite(horizon)) bad("horizon must be positive");
    const double w = effective_warmup();
    if (!(w >= 0.0) || !(w < horizon)) bad("warmup must lie in [0, horizon)");
  }
};

}  // namespace rit
