#include "rit/engine.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <limits>
#include <mutex>
#include <queue>
#include <stdexcept>
#include <thread>
#include <vector>

#include "rit/arrivals.hpp"
#include "rit/geometry.hpp"
#include "rit/policy.hpp"
#include "rit/rng.hpp"
#include "rit/target.hpp"

namespace rit {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kCaptureSlack = 1e-9;  // fp tolerance on meeting a target

// Closed-form vehicle motion between commands.  Endpoints are stored exactly
// and returned verbatim once the motion is over, so repeated interpolation
// can never walk an endpoint off its intended value.
struct Motion {
  enum class Kind { hold, line, arc };
  Kind kind = Kind::hold;
  double t0 = 0.0;
  double end = kInf;
  Vec2 from{};
  Vec2 to{};
  double theta0 = 0.0;  // vehicle angle while holding / at arc start
  double theta1 = 0.0;  // exact arc destination angle
  double dtheta = 0.0;  // signed arc sweep
  double radius = 0.0;

  Vec2 pos(double t) const {
    switch (kind) {
      case Kind::hold:
        return from;
      case Kind::line:
        if (t >= end) return to;
        if (t <= t0 || end <= t0) return from;
        {
          double s = (t - t0) / (end - t0);
          return {from.x + (to.x - from.x) * s, from.y + (to.y - from.y) * s};
        }
      case Kind::arc:
        return polar(radius, ang(t));
    }
    return from;
  }

  double ang(double t) const {
    if (kind != Kind::arc || t >= end) return kind == Kind::arc ? theta1 : theta0;
    if (t <= t0 || end <= t0) return theta0;
    return theta0 + dtheta * ((t - t0) / (end - t0));
  }
};

struct Event {
  double time = 0.0;
  int kind = 0;  // EventKind numeric: ties break escape < capture < arrival < decision
  int target_id = -1;
  std::uint64_t push_seq = 0;  // insertion order, the final tie-breaker
  std::uint64_t bind_seq = 0;  // command the event belongs to (capture/decision)
  Vec2 point{};
  DecisionReason reason = DecisionReason::wake;
};

struct EventAfter {
  bool operator()(const Event& a, const Event& b) const {
    if (a.time != b.time) return a.time > b.time;
    if (a.kind != b.kind) return a.kind > b.kind;
    if (a.target_id != b.target_id) return a.target_id > b.target_id;
    return a.push_seq > b.push_seq;
  }
};

}  // namespace

// Matches the friend declaration on Snapshot, so only the engine can fill one.
class SimEngine {
 public:
  SimEngine(const SimConfig& config, std::string_view policy_name,
            const RunOptions& options)
      : config_(config), options_(options) {
    config_.validate();
    trace_ = generate_arrivals(config_);
    const int n = static_cast<int>(trace_.arrivals.size());
    targets_.resize(n);
    escape_times_.resize(n);
    skip_index_.resize(n);
    for (int i = 0; i < n; ++i) {
      targets_[i] = {i, trace_.arrivals[i].time, trace_.arrivals[i].theta,
                     TargetState::pending, 0.0};
      auto esc = targets_[i].escape_time(config_);
      escape_times_[i] = esc ? *esc : kInf;
      skip_index_[i] = i + 1;
    }
    policy_ = make_policy(policy_name, config_, &trace_);

    snapshot_.config_ = &config_;
    snapshot_.targets_ = &targets_;
    snapshot_.escape_times_ = &escape_times_;
    snapshot_.skip_ = &skip_index_;
  }

  RunMetrics run() {
    Vec2 start = policy_->start_position(config_);
    motion_ = Motion{};
    motion_.from = start;
    motion_.theta0 = std::atan2(start.y, start.x);

    for (const Target& t : targets_) {
      push({t.arrival_time, static_cast<int>(EventKind::arrival), t.id});
      if (std::isfinite(escape_times_[t.id]))
        push({escape_times_[t.id], static_cast<int>(EventKind::escape), t.id});
    }

    decide(DecisionReason::start, 0.0);

    while (!queue_.empty()) {
      Event ev = queue_.top();
      if (ev.time > config_.horizon) break;
      queue_.pop();
      switch (static_cast<EventKind>(ev.kind)) {
        case EventKind::escape:
          on_escape(ev);
          break;
        case EventKind::capture:
          on_capture(ev);
          break;
        case EventKind::arrival:
          targets_[ev.target_id].state = TargetState::active;
          record(ev.time, EventKind::arrival, ev.target_id);
          decide(DecisionReason::arrival, ev.time);
          break;
        case EventKind::decision:
          if (ev.bind_seq != cmd_seq_) break;  // superseded command
          guard_cascade(ev.time);
          decide(ev.reason, ev.time);
          break;
      }
    }

    RunMetrics m;
    m.seed = config_.seed;
    m.policy = std::string(policy_->name());
    const double w = config_.effective_warmup();
    for (const Target& t : targets_) {
      if (t.state != TargetState::captured && t.state != TargetState::escaped)
        continue;
      if (t.resolution_time < w || t.resolution_time > config_.horizon) continue;
      if (t.state == TargetState::captured)
        ++m.n_captured;
      else
        ++m.n_escaped;
    }
    if (m.n_captured + m.n_escaped > 0)
      m.capture_fraction = static_cast<double>(m.n_captured) /
                           static_cast<double>(m.n_captured + m.n_escaped);
    m.events = std::move(log_);
    return m;
  }

 private:
  void push(Event ev) {
    ev.push_seq = ++push_counter_;
    queue_.push(ev);
  }

  void record(double t, EventKind k, int id) {
    if (options_.record_events) log_.push_back({t, k, id});
  }

  void guard_cascade(double t) {
    if (t == last_decision_time_) {
      if (++same_time_decisions_ > 64)
        throw std::logic_error("engine: decision livelock at t=" +
                               std::to_string(t));
    } else {
      last_decision_time_ = t;
      same_time_decisions_ = 0;
    }
  }

  bool claim_covers(int id, double by_time) const {
    return claim_seq_ == cmd_seq_ && claimed_target_ == id &&
           claimed_time_ <= by_time + kCaptureSlack;
  }

  void on_escape(const Event& ev) {
    Target& t = targets_[ev.target_id];
    if (t.state != TargetState::active) return;
    if (claim_covers(ev.target_id, ev.time)) return;  // a capture lands first
    t.state = TargetState::escaped;
    t.resolution_time = ev.time;
    record(ev.time, EventKind::escape, ev.target_id);
    decide(DecisionReason::escape, ev.time);
  }

  void on_capture(const Event& ev) {
    if (ev.bind_seq != cmd_seq_) return;  // superseded command
    Target& t = targets_[ev.target_id];
    if (t.state != TargetState::active) {
      // The chase outlived its target; the motion still ends here, so let the
      // policy pick a new task.
      guard_cascade(ev.time);
      decide(DecisionReason::command_done, ev.time);
      return;
    }
    Vec2 vpos = motion_.pos(ev.time);
    Vec2 tpos = t.position_at(ev.time, config_);
    double r = t.radius_at(ev.time, config_);
    if (dist(vpos, tpos) > kCaptureSlack || r < config_.rho - kCaptureSlack ||
        r > config_.capital_d + kCaptureSlack)
      throw std::logic_error("engine: capture scheduled where vehicle and "
                             "target do not meet");
    t.state = TargetState::captured;
    t.resolution_time = ev.time;
    record(ev.time, EventKind::capture, ev.target_id);
    decide(DecisionReason::capture, ev.time);
  }

  void decide(DecisionReason why, double now) {
    snapshot_.now_ = now;
    snapshot_.vehicle_ = motion_.pos(now);
    snapshot_.vehicle_angle_ = motion_.ang(now);
    std::optional<Command> cmd = policy_->decide(snapshot_, why);
    if (cmd) apply(*cmd, now);
  }

  void apply(const Command& cmd, double now) {
    const Vec2 pos = motion_.pos(now);
    const double ang = motion_.ang(now);
    ++cmd_seq_;

    Motion m;
    m.t0 = now;
    m.from = pos;
    m.theta0 = ang;

    switch (cmd.kind) {
      case Command::Kind::wait:
        break;
      case Command::Kind::wait_until:
        if (std::isfinite(cmd.time)) {
          Event ev{std::max(cmd.time, now), static_cast<int>(EventKind::decision),
                   -1};
          ev.bind_seq = cmd_seq_;
          ev.reason = DecisionReason::wake;
          push(ev);
        }
        break;
      case Command::Kind::move_to: {
        m.kind = Motion::Kind::line;
        m.to = cmd.point;
        m.end = now + dist(pos, cmd.point);
        Event ev{m.end, static_cast<int>(EventKind::decision), -1};
        ev.bind_seq = cmd_seq_;
        ev.reason = DecisionReason::command_done;
        push(ev);
        break;
      }
      case Command::Kind::intercept: {
        const Target& t = targets_.at(cmd.target_id);
        if (t.state != TargetState::active)
          throw std::logic_error("engine: intercept on a non-outstanding target");
        InterceptSolution sol =
            intercept(pos, t.radius_at(now, config_), t.theta, config_.v);
        if (!std::isfinite(sol.time))
          throw std::logic_error("engine: intercept has no meeting point");
        m.kind = Motion::Kind::line;
        m.to = sol.point;
        m.end = now + sol.time;
        schedule_capture(cmd.target_id, m.end, sol.point);
        break;
      }
      case Command::Kind::capture_at_perimeter: {
        const Target& t = targets_.at(cmd.target_id);
        if (t.state == TargetState::captured || t.state == TargetState::escaped)
          throw std::logic_error(
              "engine: perimeter capture on a resolved target");
        Vec2 point = polar(config_.rho, t.theta);
        if (policy_->perimeter_bound()) {
          m.kind = Motion::Kind::arc;
          m.radius = config_.rho;
          m.theta1 = t.theta;
          double d = std::remainder(t.theta - ang, kTwoPi);
          if (d == -kPi) d = kPi;  // half-turn ties go counter-clockwise
          m.dtheta = d;
          m.end = now + config_.rho * std::abs(d);
        } else {
          m.kind = Motion::Kind::line;
          m.to = point;
          m.end = now + dist(pos, point);
        }
        double t_cap = escape_times_[cmd.target_id];
        if (std::isfinite(t_cap)) schedule_capture(cmd.target_id, t_cap, point);
        break;
      }
    }
    motion_ = m;
  }

  void schedule_capture(int id, double when, Vec2 point) {
    Event ev{when, static_cast<int>(EventKind::capture), id};
    ev.bind_seq = cmd_seq_;
    ev.point = point;
    push(ev);
    claimed_target_ = id;
    claimed_time_ = when;
    claim_seq_ = cmd_seq_;
  }

  SimConfig config_;
  RunOptions options_;
  ArrivalStream trace_;
  std::vector<Target> targets_;
  std::vector<double> escape_times_;
  std::vector<int> skip_index_;
  std::unique_ptr<Policy> policy_;
  Snapshot snapshot_;
  Motion motion_;
  std::priority_queue<Event, std::vector<Event>, EventAfter> queue_;
  std::vector<EventRecord> log_;
  std::uint64_t push_counter_ = 0;
  std::uint64_t cmd_seq_ = 0;
  int claimed_target_ = -1;
  double claimed_time_ = kInf;
  std::uint64_t claim_seq_ = 0;  // claims are valid only for the live command
  double last_decision_time_ = -kInf;
  int same_time_decisions_ = 0;
};

RunMetrics run_simulation(const SimConfig& config, std::string_view policy_name,
                          const RunOptions& options) {
  SimEngine engine(config, policy_name, options);
  return engine.run();
}

EstimateResult estimate(const SimConfig& config, std::string_view policy_name,
                        int runs) {
  if (runs < 2) throw std::invalid_argument("estimate: need at least 2 runs");
  config.validate();
  bool known = false;
  for (std::string_view n : policy_names()) known = known || n == policy_name;
  if (!known)
    throw std::invalid_argument("unknown policy: " + std::string(policy_name));

  std::vector<RunMetrics> per_run(runs);
  unsigned workers = std::thread::hardware_concurrency();
  if (workers == 0) workers = 1;
  workers = std::min<unsigned>(workers, static_cast<unsigned>(runs));

  auto one = [&](int k) {
    SimConfig c = config;
    c.seed = derive_seed(config.seed, static_cast<std::uint64_t>(k));
    per_run[k] = run_simulation(c, policy_name);
  };

  if (workers <= 1) {
    for (int k = 0; k < runs; ++k) one(k);
  } else {
    std::atomic<int> next{0};
    std::exception_ptr error;
    std::mutex error_mu;
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (int k = next.fetch_add(1); k < runs; k = next.fetch_add(1)) {
          try {
            one(k);
          } catch (...) {
            std::lock_guard<std::mutex> lock(error_mu);
            if (!error) error = std::current_exception();
          }
        }
      });
    }
    for (std::thread& th : pool) th.join();
    if (error) std::rethrow_exception(error);
  }

  EstimateResult res;
  double sum = 0.0;
  for (int k = 0; k < runs; ++k) {
    if (per_run[k].capture_fraction) {
      sum += *per_run[k].capture_fraction;
      ++res.runs_used;
    } else {
      res.degenerate_runs.push_back(k);
    }
  }
  if (res.runs_used > 0) {
    res.mean = sum / res.runs_used;
    double ss = 0.0;
    for (int k = 0; k < runs; ++k)
      if (per_run[k].capture_fraction) {
        double d = *per_run[k].capture_fraction - res.mean;
        ss += d * d;
      }
    if (res.runs_used > 1) res.stddev = std::sqrt(ss / (res.runs_used - 1));
    double half = 1.96 * res.stddev / std::sqrt(static_cast<double>(res.runs_used));
    res.ci_low = res.mean - half;
    res.ci_high = res.mean + half;
  }
  res.per_run = std::move(per_run);
  return res;
}

std::vector<long> no_interception_census(const SimConfig& config, double r_lo,
                                         double r_hi, double theta_lo,
                                         double theta_hi, double t, int runs) {
  config.validate();
  if (!(config.v > 0.0))
    throw std::invalid_argument("census: requires inward motion (v > 0)");
  if (!(runs >= 1)) throw std::invalid_argument("census: runs must be >= 1");
  if (!(t > 0.0 && t <= config.horizon))
    throw std::invalid_argument("census: t must lie in (0, horizon]");
  if (!(r_lo < r_hi) || r_hi > config.capital_d + 1e-9 ||
      r_lo < std::max(config.rho, config.capital_d - config.v * t) - 1e-9)
    throw std::invalid_argument(
        "census: radius band must sit inside [max(rho, capital_d - v t), "
        "capital_d]");
  if (!(theta_lo < theta_hi) || theta_lo < 0.0 || theta_hi > kTwoPi)
    throw std::invalid_argument("census: need 0 <= theta_lo < theta_hi <= 2 pi");

  // A target sits at radius r at time t iff it arrived at t - (capital_d - r)/v.
  const double t_early = t - (config.capital_d - r_lo) / config.v;
  const double t_late = t - (config.capital_d - r_hi) / config.v;

  std::vector<long> counts(runs, 0);
  for (int k = 0; k < runs; ++k) {
    SimConfig c = config;
    c.seed = derive_seed(config.seed, static_cast<std::uint64_t>(k));
    ArrivalStream stream = generate_arrivals(c);
    long n = 0;
    for (const Arrival& a : stream.arrivals) {
      if (a.time < t_early) continue;
      if (a.time > t_late) break;  // arrivals are time-sorted
      if (a.theta >= theta_lo && a.theta <= theta_hi) ++n;
    }
    counts[k] = n;
  }
  return counts;
}

}  // namespace rit
