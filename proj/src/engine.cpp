#include "srsearch/engine.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <sstream>

#include "srsearch/errors.hpp"

namespace srsearch {
namespace {

struct Robot {
  Role role;
  std::unique_ptr<Controller> ctl;
  Command cmd = Command::wait();
  double x = 0.0;
  bool touching_target = false;
  bool replaced = false;  // command replaced during the current instant
};

std::string num(double x) {
  std::ostringstream os;
  os.precision(17);
  os << x;
  return os.str();
}

void check_command(const Command& c, Role who) {
  if (c.kind != Command::Kind::Move) return;
  if (!(c.speed > 0.0) || c.speed > 1.0)
    throw IllegalStrategy(std::string(to_string(who)) + " requested speed " + num(c.speed) +
                          " outside (0, 1]");
  if (std::isnan(c.destination))
    throw IllegalStrategy(std::string(to_string(who)) + " requested a NaN destination");
}

class Run {
 public:
  Run(const Team& team, std::optional<TargetSpec> spec, std::size_t max_events,
      double horizon = kInf)
      : spec_(spec), max_events_(max_events), horizon_(horizon) {
    robots_[0] = Robot{Role::Sender, team.sender->start()};
    robots_[1] = Robot{Role::Receiver, team.receiver->start()};
    if (spec_) tr_.spec = *spec_;
    tr_.pathS.append(0.0, 0.0);
    tr_.pathR.append(0.0, 0.0);
  }

  Transcript run(const std::function<bool(const Transcript&)>& done) {
    together_ = true;
    for (Robot& r : robots_) deliver(r, Cue::Start, std::nullopt);

    const std::size_t max_steps = 4 * max_events_ + 64;
    for (std::size_t step = 0;; ++step) {
      if (tr_.capture_time) return std::move(tr_);
      if (done && done(tr_)) return std::move(tr_);
      if (tr_.events.size() >= max_events_ || step >= max_steps) {
        if (!spec_) return std::move(tr_);
        throw EventLimitExceeded("event limit " + std::to_string(max_events_) +
                                 " reached at t=" + num(t_));
      }
      const double next = next_event_time();
      if (!spec_ && next > horizon_) {
        advance(horizon_);
        return std::move(tr_);
      }
      if (!std::isfinite(next)) {
        if (!spec_) return std::move(tr_);
        throw EventLimitExceeded("no pending events at t=" + num(t_) +
                                 "; the run can never capture");
      }
      advance(next);
      resolve_instant();
    }
  }

 private:
  Robot& sender() { return robots_[0]; }
  Robot& receiver() { return robots_[1]; }

  double target_x() const { return spec_ ? target_position(*spec_, t_) : kInf; }
  double target_v() const { return spec_ ? spec_->velocity() : 0.0; }

  double velocity(const Robot& r) const {
    switch (r.cmd.kind) {
      case Command::Kind::Wait:
        return 0.0;
      case Command::Kind::Escort:
        return std::clamp(target_v(), -1.0, 1.0);
      case Command::Kind::Move: {
        const double gap = r.cmd.destination - r.x;
        if (gap == 0.0) return 0.0;
        return gap > 0.0 ? r.cmd.speed : -r.cmd.speed;
      }
    }
    return 0.0;
  }

  double next_event_time() const {
    double best = kInf;
    for (const Robot& r : robots_) {
      const double vel = velocity(r);
      if (r.cmd.kind == Command::Kind::Move && std::isfinite(r.cmd.destination))
        best = std::min(best, t_ + std::abs(r.cmd.destination - r.x) / r.cmd.speed);
      if (spec_ && !r.touching_target) {
        if (auto m = meeting_time(r.x, vel, target_x(), target_v(), t_)) best = std::min(best, *m);
      }
    }
    if (!together_) {
      const Robot& s = robots_[0];
      const Robot& r = robots_[1];
      if (auto m = meeting_time(s.x, velocity(s), r.x, velocity(r), t_)) best = std::min(best, *m);
    }
    return best;
  }

  void advance(double next) {
    const double dt = next - t_;
    std::array<double, 2> nx{};
    for (std::size_t i = 0; i < 2; ++i) {
      const Robot& r = robots_[i];
      const double vel = velocity(r);
      double x = r.x + vel * dt;
      if (r.cmd.kind == Command::Kind::Move && std::isfinite(r.cmd.destination)) {
        const double dest = r.cmd.destination;
        if ((vel > 0.0 && x > dest) || (vel < 0.0 && x < dest)) x = dest;
      }
      nx[i] = x;
    }
    t_ = next;
    for (std::size_t i = 0; i < 2; ++i) {
      Robot& r = robots_[i];
      r.x = nx[i];
      // An escorting robot that keeps pace stays exactly on the target.
      if (spec_ && r.cmd.kind == Command::Kind::Escort && r.touching_target &&
          std::abs(target_v()) <= 1.0)
        r.x = target_x();
    }
    record_positions();
  }

  void record_positions() {
    tr_.pathS.append(t_, sender().x);
    tr_.pathR.append(t_, receiver().x);
  }

  void log(EventKind kind, std::optional<Role> who, std::optional<Intel> payload = std::nullopt) {
    Event e;
    e.t = t_;
    e.kind = kind;
    e.robot = who;
    e.payload = payload;
    e.xS = sender().x;
    e.xR = receiver().x;
    e.xT = spec_ ? target_x() : 0.0;
    tr_.events.push_back(e);
  }

  Observation observe(const Robot& r, Cue cue, std::optional<Intel> intel) const {
    return Observation{cue, t_, r.x, together_, r.touching_target, intel};
  }

  void deliver(Robot& r, Cue cue, std::optional<Intel> intel) {
    Reaction re = r.ctl->react(observe(r, cue, intel));
    if (re.command) {
      check_command(*re.command, r.role);
      r.cmd = *re.command;
      r.replaced = true;
    }
    if (re.broadcast) {
      if (r.role != Role::Sender) throw IllegalStrategy("receiver transmitted a wireless message");
      log(EventKind::WirelessMsg, Role::Sender, re.broadcast);
      deliver(receiver(), Cue::Message, re.broadcast);
    }
  }

  void resolve_instant() {
    const double xt = target_x();
    std::array<bool, 2> sighted{};
    std::array<bool, 2> arrived{};
    for (std::size_t i = 0; i < 2; ++i) {
      Robot& r = robots_[i];
      r.replaced = false;
      const bool touching = spec_ && colocated(r.x, xt);
      sighted[i] = touching && !r.touching_target;
      r.touching_target = touching;
      if (r.cmd.kind == Command::Kind::Move && std::isfinite(r.cmd.destination) &&
          colocated(r.x, r.cmd.destination)) {
        arrived[i] = true;
        r.x = r.cmd.destination;
      }
    }
    const bool was_together = together_;
    together_ = colocated(sender().x, receiver().x);
    const bool met = together_ && !was_together;
    record_positions();

    if (sender().touching_target && receiver().touching_target) {
      log(EventKind::Capture, std::nullopt);
      tr_.capture_time = t_;
      return;
    }

    for (std::size_t i = 0; i < 2; ++i) {
      if (!sighted[i]) continue;
      log(EventKind::Sighting, robots_[i].role);
      deliver(robots_[i], Cue::Sighted, Intel{t_, xt});
    }
    if (met) {
      log(EventKind::F2FMeeting, std::nullopt);
      const auto memo_s = sender().ctl->memo();
      const auto memo_r = receiver().ctl->memo();
      deliver(sender(), Cue::Met, memo_r);
      deliver(receiver(), Cue::Met, memo_s);
    }
    for (std::size_t i = 0; i < 2; ++i) {
      Robot& r = robots_[i];
      if (!arrived[i] || r.replaced) continue;
      log(EventKind::Turnaround, r.role);
      r.replaced = false;
      deliver(r, Cue::Arrived, std::nullopt);
      if (!r.replaced) r.cmd = Command::wait();
    }
  }

  std::optional<TargetSpec> spec_;
  std::size_t max_events_;
  double horizon_;
  std::array<Robot, 2> robots_;
  Transcript tr_;
  double t_ = 0.0;
  bool together_ = true;
};

}  // namespace

Transcript simulate(const Team& team, const TargetSpec& spec, const SimLimits& limits) {
  validate(spec);
  if (limits.max_events < 1) throw InvalidParam("max_events must be at least 1");
  if (!team.sender || !team.receiver) throw InvalidParam("team is missing a strategy");
  team.sender->precheck(spec);
  team.receiver->precheck(spec);
  return Run(team, spec, limits.max_events).run(nullptr);
}

Transcript trace_plan(const Team& team, const std::function<bool(const Transcript&)>& done,
                      std::size_t max_events, double horizon) {
  if (!team.sender || !team.receiver) throw InvalidParam("team is missing a strategy");
  if (!(horizon > 0.0)) throw InvalidParam("horizon must be positive");
  return Run(team, std::nullopt, max_events, horizon).run(done);
}

}  // namespace srsearch
