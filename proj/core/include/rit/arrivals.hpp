#pragma once

#include <vector>

#include "rit/config.hpp"

namespace rit {

struct Arrival {
  double time = 0.0;
  double theta = 0.0;
};

// One run's arrival trace: times strictly increasing in (0, horizon], angles
// uniform on [0, 2*pi).
struct ArrivalStream {
  std::vector<Arrival> arrivals;
};

// Poisson process sampled by inverse-CDF exponential gaps.  Per target the
// generator draws the gap first and the angle second, always in that order,
// so a stream is a pure function of (seed, lambda, horizon) and extending the
// horizon appends to the stream without disturbing the prefix.
ArrivalStream generate_arrivals(const SimConfig& config);

}  // namespace rit
