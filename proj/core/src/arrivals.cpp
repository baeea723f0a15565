#include "rit/arrivals.hpp"

#include <cmath>

#include "rit/geometry.hpp"
#include "rit/rng.hpp"

namespace rit {

ArrivalStream generate_arrivals(const SimConfig& config) {
  config.validate();
  ArrivalStream stream;
  if (config.lambda <= 0.0) return stream;  // legal, empty

  SplitMix64 rng(config.seed);
  double t = 0.0;
  while (true) {
    // Inverse CDF on (0,1): gap is strictly positive, so times never tie.
    const double u = rng.uniform01_open();
    t += -std::log1p(-u) / config.lambda;
    if (!(t <= config.horizon)) break;
    const double theta = rng.uniform01() * kTwoPi;
    stream.arrivals.push_back({t, theta});
  }
  return stream;
}

}  // namespace rit
