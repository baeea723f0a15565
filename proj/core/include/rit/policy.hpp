#pragma once

#include <memory>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "rit/arrivals.hpp"
#include "rit/config.hpp"
#include "rit/target.hpp"
#include "rit/vec2.hpp"

namespace rit {

class SimEngine;

// What a policy may see of one target.
struct TargetView {
  int id = -1;
  double arrival_time = 0.0;
  double theta = 0.0;
  double radius = 0.0;  // at Snapshot::now()
};

// Causal world view handed to policies: the present, nothing else.  Target
// lookup goes through an engine-owned skip index, so walking the outstanding
// set costs what the policy actually touches rather than the whole backlog.
class Snapshot {
 public:
  double now() const { return now_; }
  const SimConfig& config() const { return *config_; }
  Vec2 vehicle() const { return vehicle_; }
  // Perimeter-bound vehicles only; tracked exactly, never recovered by atan2.
  double vehicle_angle() const { return vehicle_angle_; }

  // Outstanding targets in arrival (= id) order; -1 terminates.
  int first() const { return first_at_or_after(0); }
  int next(int id) const { return first_at_or_after(id + 1); }
  int first_at_or_after(int id) const;
  bool outstanding(int id) const;
  TargetView get(int id) const;
  double escape_time(int id) const;  // +infinity when v == 0

 private:
  friend class SimEngine;
  double now_ = 0.0;
  const SimConfig* config_ = nullptr;
  Vec2 vehicle_{};
  double vehicle_angle_ = 0.0;
  const std::vector<Target>* targets_ = nullptr;
  const std::vector<double>* escape_times_ = nullptr;
  std::vector<int>* skip_ = nullptr;
};

enum class DecisionReason { start, arrival, capture, escape, command_done, wake };

// A single vehicle instruction; the engine executes it until it finishes or
// the policy replaces it at a later decision point.
struct Command {
  enum class Kind {
    wait,                  // hold position
    wait_until,            // hold position, ask again at `time`
    move_to,               // straight line to `point` at unit speed
    intercept,             // fly to the moving-target meeting point, capture there
    capture_at_perimeter,  // go to the target's perimeter point (arc when the
                           // vehicle is perimeter-bound, else straight), wait,
                           // capture the instant the target reaches radius rho
  };
  Kind kind = Kind::wait;
  Vec2 point{};
  int target_id = -1;
  double time = 0.0;

  static Command wait() { return {}; }
  static Command wait_until(double t) {
    Command c;
    c.kind = Kind::wait_until;
    c.time = t;
    return c;
  }
  static Command move_to(Vec2 p) {
    Command c;
    c.kind = Kind::move_to;
    c.point = p;
    return c;
  }
  static Command intercept_target(int id) {
    Command c;
    c.kind = Kind::intercept;
    c.target_id = id;
    return c;
  }
  static Command capture_at_perimeter(int id) {
    Command c;
    c.kind = Kind::capture_at_perimeter;
    c.target_id = id;
    return c;
  }
};

class Policy {
 public:
  virtual ~Policy() = default;
  virtual std::string_view name() const = 0;
  virtual bool perimeter_bound() const { return false; }
  virtual Vec2 start_position(const SimConfig& c) const = 0;
  // nullopt means: keep the current command.
  virtual std::optional<Command> decide(const Snapshot& snap,
                                        DecisionReason why) = 0;
};

// Known policies: fcfs, sac, la, ncla, rmhp.  `trace` is read only by the
// clairvoyant planner (ncla); causal policies never receive it, so they
// cannot depend on the future by construction.
std::unique_ptr<Policy> make_policy(std::string_view name,
                                    const SimConfig& config,
                                    const ArrivalStream* trace = nullptr);
std::span<const std::string_view> policy_names();

// Planning cores, exposed for direct testing.
struct PerimeterSchedule {
  std::vector<int> target_ids;        // capture order along the perimeter
  std::vector<double> capture_times;  // when each target reaches radius rho
};

// Longest feasible capture chain over the outstanding set, planned from the
// given perimeter angle at snap.now().
PerimeterSchedule la_plan(const Snapshot& snap, double vehicle_angle);

// Clairvoyant chain over the whole trace, planned at time zero with virtual
// radii capital_d + v * arrival_time.
PerimeterSchedule ncla_plan(const ArrivalStream& trace, double vehicle_angle,
                            const SimConfig& config);

}  // namespace rit
