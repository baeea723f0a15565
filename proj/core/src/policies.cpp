#include "rit/policy.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "rit/geometry.hpp"
#include "rit/reachability_graph.hpp"
#include "rit/tour.hpp"

namespace rit {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kTimeSlack = 1e-9;
}  // namespace

// ---------------------------------------------------------------------------
// Snapshot

int Snapshot::first_at_or_after(int id) const {
  const std::vector<Target>& ts = *targets_;
  std::vector<int>& skip = *skip_;
  const int n = static_cast<int>(ts.size());
  int i = std::max(id, 0);
  while (i < n && (ts[i].state == TargetState::captured ||
                   ts[i].state == TargetState::escaped))
    i = std::max(skip[i], i + 1);
  // Path-compress over the resolved run; everything in [id, i) stays resolved
  // forever, so pointing it at i is permanently valid.  A pending stop is a
  // valid compression bound too -- we just must not jump past it.
  int j = std::max(id, 0);
  while (j < i) {
    int hop = std::max(skip[j], j + 1);
    skip[j] = i;
    j = hop;
  }
  if (i >= n || ts[i].state == TargetState::pending) return -1;
  return i;
}

bool Snapshot::outstanding(int id) const {
  if (id < 0 || id >= static_cast<int>(targets_->size())) return false;
  return (*targets_)[id].state == TargetState::active;
}

TargetView Snapshot::get(int id) const {
  const Target& t = targets_->at(id);
  if (t.state == TargetState::pending)
    throw std::logic_error("snapshot: access to a target that has not arrived");
  return {t.id, t.arrival_time, t.theta, t.radius_at(now_, *config_)};
}

double Snapshot::escape_time(int id) const { return escape_times_->at(id); }

// ---------------------------------------------------------------------------
// Planning cores

namespace {

PerimeterSchedule schedule_from_path(const ReachabilityDag& dag,
                                     const std::vector<std::uint32_t>& path,
                                     const std::vector<double>& cross_times) {
  PerimeterSchedule sched;
  sched.target_ids.reserve(path.size() - 1);
  sched.capture_times.reserve(path.size() - 1);
  for (std::size_t i = 1; i < path.size(); ++i) {
    const DagVertex& vx = dag.vertices[path[i]];
    sched.target_ids.push_back(vx.id);
    sched.capture_times.push_back(cross_times[vx.id]);
  }
  return sched;
}

}  // namespace

PerimeterSchedule la_plan(const Snapshot& snap, double vehicle_angle) {
  const SimConfig& c = snap.config();
  std::vector<DagItem> items;
  std::vector<double> cross_times;
  for (int id = snap.first(); id != -1; id = snap.next(id)) {
    TargetView tv = snap.get(id);
    items.push_back({id, tv.radius, tv.theta});
    if (static_cast<int>(cross_times.size()) <= id)
      cross_times.resize(id + 1, kInf);
    cross_times[id] = snap.escape_time(id);
  }
  ReachabilityDag dag = build_reachability_graph(vehicle_angle, items, c.v, c.rho);
  return schedule_from_path(dag, longest_path(dag), cross_times);
}

PerimeterSchedule ncla_plan(const ArrivalStream& trace, double vehicle_angle,
                            const SimConfig& config) {
  // Virtual radius capital_d + v * arrival_time places every arrival, past or
  // future, on the common time-zero chart; its perimeter-crossing instant is
  // unchanged, so one static reachability graph covers the whole trace.
  const std::size_t n = trace.arrivals.size();
  std::vector<DagItem> items(n);
  std::vector<double> cross_times(n);
  for (std::size_t k = 0; k < n; ++k) {
    const Arrival& a = trace.arrivals[k];
    items[k] = {static_cast<int>(k), config.capital_d + config.v * a.time,
                a.theta};
    cross_times[k] = a.time + (config.capital_d - config.rho) / config.v;
  }
  ReachabilityDag dag =
      build_reachability_graph(vehicle_angle, items, config.v, config.rho);
  return schedule_from_path(dag, longest_path(dag), cross_times);
}

// ---------------------------------------------------------------------------
// fcfs: chase outstanding targets in arrival order, dropping any that can no
// longer be met at or outside the perimeter; idle at the origin.

namespace {

class FcfsPolicy final : public Policy {
 public:
  std::string_view name() const override { return "fcfs"; }
  Vec2 start_position(const SimConfig&) const override { return {0.0, 0.0}; }

  std::optional<Command> decide(const Snapshot& snap,
                                DecisionReason) override {
    if (current_ != -1 && snap.outstanding(current_))
      return std::nullopt;  // stay on the current chase
    current_ = -1;
    const SimConfig& c = snap.config();
    for (int id = snap.first_at_or_after(cursor_); id != -1;
         id = snap.next(id)) {
      TargetView tv = snap.get(id);
      InterceptSolution sol = intercept(snap.vehicle(), tv.radius, tv.theta, c.v);
      if (feasible_before_perimeter(sol, c.rho)) {
        cursor_ = id;
        current_ = id;
        return Command::intercept_target(id);
      }
      cursor_ = id + 1;  // missed for good: it will cross before we can reach it
    }
    if (norm(snap.vehicle()) <= kTimeSlack) return Command::wait();
    return Command::move_to({0.0, 0.0});
  }

 private:
  int cursor_ = 0;
  int current_ = -1;
};

// ---------------------------------------------------------------------------
// sac: sit at the origin; for the next servable target leave at exactly
// escape_time - rho, meet it on the perimeter, come straight back.

class SacPolicy final : public Policy {
 public:
  std::string_view name() const override { return "sac"; }
  Vec2 start_position(const SimConfig&) const override { return {0.0, 0.0}; }

  std::optional<Command> decide(const Snapshot& snap,
                                DecisionReason why) override {
    switch (why) {
      case DecisionReason::capture:
        current_ = -1;
        phase_ = Phase::returning;
        return Command::move_to({0.0, 0.0});
      case DecisionReason::wake:
        if (phase_ == Phase::armed && snap.outstanding(current_)) {
          phase_ = Phase::dashing;
          return Command::capture_at_perimeter(current_);
        }
        return scan(snap);
      case DecisionReason::command_done:
        phase_ = Phase::idle;
        return scan(snap);
      case DecisionReason::start:
        return scan(snap);
      case DecisionReason::arrival:
        if (phase_ != Phase::idle) return std::nullopt;
        return scan(snap);
      case DecisionReason::escape:
        return std::nullopt;
    }
    return std::nullopt;
  }

 private:
  enum class Phase { idle, armed, dashing, returning };

  std::optional<Command> scan(const Snapshot& snap) {
    const double rho = snap.config().rho;
    for (int id = snap.first_at_or_after(cursor_); id != -1;
         id = snap.next(id)) {
      double t_esc = snap.escape_time(id);
      if (!std::isfinite(t_esc)) break;  // nothing ever crosses; stay put
      if (t_esc < snap.now() + rho - kTimeSlack) {
        cursor_ = id + 1;  // cannot make it there in time any more
        continue;
      }
      cursor_ = id;
      current_ = id;
      double leave_at = t_esc - rho;
      if (snap.now() >= leave_at - kTimeSlack) {
        phase_ = Phase::dashing;
        return Command::capture_at_perimeter(id);
      }
      phase_ = Phase::armed;
      return Command::wait_until(leave_at);
    }
    phase_ = Phase::idle;
    current_ = -1;
    return Command::wait();
  }

  Phase phase_ = Phase::idle;
  int cursor_ = 0;
  int current_ = -1;
};

// ---------------------------------------------------------------------------
// la: perimeter-bound; on every arrival or capture rebuild the longest
// feasible capture chain over the outstanding set and walk toward its head.

class LaPolicy final : public Policy {
 public:
  std::string_view name() const override { return "la"; }
  bool perimeter_bound() const override { return true; }
  Vec2 start_position(const SimConfig& c) const override { return {c.rho, 0.0}; }

  std::optional<Command> decide(const Snapshot& snap,
                                DecisionReason why) override {
    if (why != DecisionReason::start && why != DecisionReason::arrival &&
        why != DecisionReason::capture)
      return std::nullopt;  // escapes elsewhere never shorten our chain
    PerimeterSchedule sched = la_plan(snap, snap.vehicle_angle());
    if (sched.target_ids.empty()) {
      head_ = -1;
      return Command::wait();
    }
    int head = sched.target_ids.front();
    if (head == head_) return std::nullopt;  // already walking toward it
    head_ = head;
    return Command::capture_at_perimeter(head);
  }

 private:
  int head_ = -1;
};

// ---------------------------------------------------------------------------
// ncla: perimeter-bound, plans once over the full arrival trace (virtual
// radii) and then walks the planned chain, claiming each stop in turn.

class NclaPolicy final : public Policy {
 public:
  NclaPolicy(const SimConfig& config, const ArrivalStream* trace)
      : config_(config), trace_(trace) {
    if (trace_ == nullptr)
      throw std::invalid_argument("ncla requires the arrival trace");
  }

  std::string_view name() const override { return "ncla"; }
  bool perimeter_bound() const override { return true; }
  Vec2 start_position(const SimConfig& c) const override { return {c.rho, 0.0}; }

  std::optional<Command> decide(const Snapshot& snap,
                                DecisionReason why) override {
    switch (why) {
      case DecisionReason::start:
        plan_ = ncla_plan(*trace_, snap.vehicle_angle(), config_).target_ids;
        at_ = 0;
        return issue(snap);
      case DecisionReason::capture:
        ++at_;
        return issue(snap);
      case DecisionReason::escape:
        // A planned stop we somehow missed (never under the claim discipline,
        // but do not wait forever on a resolved target).
        if (at_ < plan_.size() && !snap.outstanding(plan_[at_]) &&
            snap.escape_time(plan_[at_]) <= snap.now()) {
          ++at_;
          return issue(snap);
        }
        return std::nullopt;
      default:
        return std::nullopt;
    }
  }

 private:
  std::optional<Command> issue(const Snapshot&) {
    if (at_ >= plan_.size()) return Command::wait();
    return Command::capture_at_perimeter(plan_[at_]);
  }

  SimConfig config_;
  const ArrivalStream* trace_;
  std::vector<int> plan_;
  std::size_t at_ = 0;
};

// ---------------------------------------------------------------------------
// rmhp: repeated moving-horizon batches.  Every rho/v the policy freezes the
// targets in the (2 rho, 3 rho) band, orders them with the open-path tour
// heuristic, and serves the prefix whose interception plus the radial ride
// home still fits in the iteration; then it parks on the 2 rho circle.

class RmhpPolicy final : public Policy {
 public:
  explicit RmhpPolicy(const SimConfig& c)
      : iter_len_(c.v > 0.0 ? c.rho / c.v : kInf) {}

  std::string_view name() const override { return "rmhp"; }
  Vec2 start_position(const SimConfig& c) const override {
    return {2.0 * c.rho, 0.0};
  }

  std::optional<Command> decide(const Snapshot& snap,
                                DecisionReason why) override {
    switch (why) {
      case DecisionReason::start:
      case DecisionReason::wake:
        if (!std::isfinite(iter_len_)) return Command::wait();
        iter_end_ = snap.now() + iter_len_;
        return new_batch(snap);
      case DecisionReason::capture:
        return serve_next(snap);
      case DecisionReason::command_done:
        if (phase_ == Phase::homing) {
          phase_ = Phase::parked;
          return Command::wait_until(iter_end_);
        }
        return std::nullopt;
      case DecisionReason::arrival:
      case DecisionReason::escape:
        return std::nullopt;  // batches are frozen for the whole iteration
    }
    return std::nullopt;
  }

 private:
  enum class Phase { serving, homing, parked };

  std::optional<Command> new_batch(const Snapshot& snap) {
    const SimConfig& c = snap.config();
    legs_.clear();
    leg_ = 0;
    std::vector<Vec2> pts;
    for (int id = snap.first(); id != -1; id = snap.next(id)) {
      TargetView tv = snap.get(id);
      if (tv.radius > 2.0 * c.rho && tv.radius < 3.0 * c.rho) {
        legs_.push_back(id);
        pts.push_back(polar(tv.radius, tv.theta));
      }
    }
    if (!legs_.empty()) {
      TourPlan plan = emhp_heuristic(snap.vehicle(), pts);
      std::vector<int> ordered(legs_.size());
      for (std::size_t k = 0; k < legs_.size(); ++k)
        ordered[k] = legs_[plan.order[k]];
      legs_ = std::move(ordered);
      phase_ = Phase::serving;
      return serve_next(snap);
    }
    return home_or_park(snap);
  }

  std::optional<Command> serve_next(const Snapshot& snap) {
    const SimConfig& c = snap.config();
    while (leg_ < legs_.size()) {
      int id = legs_[leg_];
      if (!snap.outstanding(id)) {
        ++leg_;
        continue;
      }
      TargetView tv = snap.get(id);
      InterceptSolution sol = intercept(snap.vehicle(), tv.radius, tv.theta, c.v);
      double done_by =
          snap.now() + sol.time + std::abs(sol.radius_at_intercept - 2.0 * c.rho);
      if (done_by <= iter_end_ + kTimeSlack &&
          sol.radius_at_intercept >= c.rho) {
        ++leg_;
        return Command::intercept_target(id);
      }
      break;  // the tour is a path: once a stop is dropped the rest are stale
    }
    return home_or_park(snap);
  }

  std::optional<Command> home_or_park(const Snapshot& snap) {
    const double rho = snap.config().rho;
    Vec2 pos = snap.vehicle();
    if (std::abs(norm(pos) - 2.0 * rho) > kTimeSlack) {
      phase_ = Phase::homing;
      return Command::move_to(polar(2.0 * rho, std::atan2(pos.y, pos.x)));
    }
    phase_ = Phase::parked;
    return Command::wait_until(iter_end_);
  }

  double iter_len_;
  double iter_end_ = 0.0;
  std::vector<int> legs_;
  std::size_t leg_ = 0;
  Phase phase_ = Phase::parked;
};

}  // namespace

// ---------------------------------------------------------------------------

std::span<const std::string_view> policy_names() {
  static constexpr std::string_view kNames[] = {"fcfs", "sac", "la", "ncla",
                                                "rmhp"};
  return kNames;
}

std::unique_ptr<Policy> make_policy(std::string_view name,
                                    const SimConfig& config,
                                    const ArrivalStream* trace) {
  if (name == "fcfs") return std::make_unique<FcfsPolicy>();
  if (name == "sac") return std::make_unique<SacPolicy>();
  if (name == "la") return std::make_unique<LaPolicy>();
  if (name == "ncla") return std::make_unique<NclaPolicy>(config, trace);
  if (name == "rmhp") return std::make_unique<RmhpPolicy>(config);
  throw std::invalid_argument("unknown policy: " + std::string(name));
}

}  // namespace rit
