#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "rit/config.hpp"

namespace rit {

// Tie order at equal timestamps: escapes, then captures, then arrivals, then
// decision points; remaining ties break on target id, then insertion order.
enum class EventKind : int { escape = 0, capture = 1, arrival = 2, decision = 3 };

struct EventRecord {
  double time = 0.0;
  EventKind kind = EventKind::decision;
  int target_id = -1;  // -1 on decision records
};

struct RunOptions {
  bool record_events = false;
};

struct RunMetrics {
  long n_captured = 0;  // resolutions inside [warmup, horizon]
  long n_escaped = 0;
  std::optional<double> capture_fraction;  // absent when nothing resolved
  std::uint64_t seed = 0;
  std::string policy;
  std::vector<EventRecord> events;  // filled only when requested
};

// One deterministic run: replaying the same (config, policy) pair reproduces
// the event sequence exactly.  Targets still unresolved at the horizon are
// counted on neither side.
RunMetrics run_simulation(const SimConfig& config, std::string_view policy_name,
                          const RunOptions& options = {});

struct EstimateResult {
  double mean = 0.0;
  double stddev = 0.0;
  double ci_low = 0.0;  // normal-approximation 95 percent interval
  double ci_high = 0.0;
  int runs_used = 0;
  std::vector<int> degenerate_runs;  // replicas with nothing resolved
  std::vector<RunMetrics> per_run;
};

// runs >= 2 independent replicas; replica k streams from
// derive_seed(config.seed, k).  Replicas may run on worker threads; results
// are merged by index, so scheduling cannot change the outcome.
EstimateResult estimate(const SimConfig& config, std::string_view policy_name,
                        int runs);

// Vehicle-free check of the arrival field: per-replica count of targets whose
// radius lies in [r_lo, r_hi] and bearing in [theta_lo, theta_hi] at time t.
// Requires v > 0 and r_lo >= max(rho, capital_d - v t) so the band is fully
// populated and nothing in it has escaped.
std::vector<long> no_interception_census(const SimConfig& config, double r_lo,
                                         double r_hi, double theta_lo,
                                         double theta_hi, double t, int runs);

}  // namespace rit
