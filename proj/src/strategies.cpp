#include "srsearch/strategies.hpp"

#include <cmath>
#include <memory>
#include <string>

#include "srsearch/errors.hpp"

namespace srsearch {
namespace {

double toward(double from, double to) { return to < from ? -1.0 : 1.0; }

// ---------------------------------------------------------------------------
// Opposite directions (Algorithms 1 and 3). The two models share the same
// choreography; only the target's motion differs.

class OppositeSender final : public Controller {
 public:
  explicit OppositeSender(double u) : u_(u) {}

  Reaction react(const Observation& o) override {
    switch (o.cue) {
      case Cue::Start:
        return Reaction::go(Command::travel(-1.0, u_));
      case Cue::Sighted:
        return {Command::escort(), Intel{o.t, o.x}};
      case Cue::Met:
        // R caught up after finding the target on its side.
        if (o.intel) return Reaction::go(Command::travel(toward(o.x, o.intel->x)));
        return Reaction::none();
      default:
        return Reaction::none();
    }
  }

 private:
  double u_;
};

class OppositeReceiver final : public Controller {
 public:
  Reaction react(const Observation& o) override {
    switch (o.cue) {
      case Cue::Start:
        return Reaction::go(Command::travel(1.0));
      case Cue::Sighted:
        if (sweeping_) {
          sweeping_ = false;
          found_ = Intel{o.t, o.x};
          return Reaction::go(Command::travel(-1.0));  // go fetch S
        }
        return Reaction::go(Command::escort());
      case Cue::Message:
        sweeping_ = false;
        return Reaction::go(Command::travel(toward(o.x, o.intel->x)));
      case Cue::Met:
        if (found_) return Reaction::go(Command::travel(toward(o.x, found_->x)));
        return Reaction::none();
      default:
        return Reaction::none();
    }
  }

  std::optional<Intel> memo() const override { return found_; }

 private:
  bool sweeping_ = true;
  std::optional<Intel> found_;
};

class OppositeSenderPlan final : public Strategy {
 public:
  OppositeSenderPlan(double u, bool away) : u_(u), away_(away) {}
  std::unique_ptr<Controller> start() const override {
    return std::make_unique<OppositeSender>(u_);
  }
  void precheck(const TargetSpec& spec) const override {
    if (away_ && spec.direction == Direction::Away && spec.side < 0 && u_ <= spec.v)
      throw NoCapturePossible("S moves at u=" + std::to_string(u_) +
                              " <= v=" + std::to_string(spec.v) +
                              " and can never reach a target on its side");
  }

 private:
  double u_;
  bool away_;
};

template <class C>
class SimplePlan final : public Strategy {
 public:
  std::unique_ptr<Controller> start() const override { return std::make_unique<C>(); }
};

Team opposite(double u, bool away) {
  if (!(u > 0.0 && u < 1.0)) throw InvalidParam("u must lie in (0, 1)");
  return Team{away ? "alg3" : "alg1", std::make_shared<OppositeSenderPlan>(u, away),
              std::make_shared<SimplePlan<OppositeReceiver>>()};
}

// ---------------------------------------------------------------------------
// Waiting.

class Stay final : public Controller {
 public:
  Reaction react(const Observation& o) override {
    if (o.cue == Cue::Start) return Reaction::go(Command::wait());
    return Reaction::none();
  }
};

// ---------------------------------------------------------------------------
// Algorithm 4.

class SweepTogether final : public Controller {
 public:
  explicit SweepTogether(double d) : d_(d) {}

  Reaction react(const Observation& o) override {
    switch (o.cue) {
      case Cue::Start:
        return Reaction::go(Command::move_to(d_));
      case Cue::Arrived:
        return Reaction::go(Command::travel(-1.0));
      case Cue::Sighted:
        return Reaction::go(Command::escort());
      default:
        return Reaction::none();
    }
  }

 private:
  double d_;
};

class SweepPlan final : public Strategy {
 public:
  explicit SweepPlan(double d) : d_(d) {}
  std::unique_ptr<Controller> start() const override {
    return std::make_unique<SweepTogether>(d_);
  }

 private:
  double d_;
};

// ---------------------------------------------------------------------------
// Algorithm 2.

class ZigZagRobot final : public Controller {
 public:
  ZigZagRobot(ZigZagPlan plan, Role role) : plan_(plan), role_(role) {}

  Reaction react(const Observation& o) override {
    switch (o.cue) {
      case Cue::Start:
        return head_out();
      case Cue::Arrived:
        if (phase_ == Phase::Out) {
          phase_ = Phase::Back;
          return Reaction::go(Command::move_to(next_meeting()));
        }
        if (phase_ == Phase::Back) {
          if (o.partner_here) {
            y_ = next_meeting();
            ++round_;
            return head_out();
          }
          // Missed rendezvous: the partner is with the target further on.
          phase_ = Phase::Pursue;
          return Reaction::go(Command::travel(role_ == Role::Sender ? 1.0 : -1.0));
        }
        return Reaction::none();
      case Cue::Sighted:
        phase_ = Phase::Escort;
        if (role_ == Role::Sender) return {Command::escort(), Intel{o.t, o.x}};
        return Reaction::go(Command::escort());
      case Cue::Message:
        phase_ = Phase::Pursue;
        return Reaction::go(Command::travel(toward(o.x, o.intel->x)));
      default:
        return Reaction::none();
    }
  }

 private:
  enum class Phase { Out, Back, Pursue, Escort };

  Reaction head_out() {
    phase_ = Phase::Out;
    const double turn = role_ == Role::Sender ? -plan_.extent(2 * round_)
                                              : plan_.extent(2 * round_ + 1);
    return Reaction::go(Command::move_to(turn));
  }

  double next_meeting() const {
    return plan_.extent(2 * round_ + 1) - plan_.extent(2 * round_) - y_;
  }

  ZigZagPlan plan_;
  Role role_;
  Phase phase_ = Phase::Out;
  std::size_t round_ = 0;
  double y_ = 0.0;
};

class ZigZagStrategy final : public Strategy {
 public:
  ZigZagStrategy(ZigZagPlan plan, Role role) : plan_(plan), role_(role) {}
  std::unique_ptr<Controller> start() const override {
    return std::make_unique<ZigZagRobot>(plan_, role_);
  }

 private:
  ZigZagPlan plan_;
  Role role_;
};

}  // namespace

ZigZagPlan::ZigZagPlan(double a) : a_(a) {
  if (!(a > 1.0) || !std::isfinite(a))
    throw InvalidParam("zigzag expansion base a must exceed 1");
}

double ZigZagPlan::extent(std::size_t i) const {
  return std::pow(a_, static_cast<double>(i + 1));
}

double ZigZagPlan::meeting_point(std::size_t k) const {
  double y = 0.0;
  for (std::size_t i = 1; i <= k; ++i) y = extent(2 * i - 1) - extent(2 * i - 2) - y;
  return y;
}

Team opposite_direction_toward(double u) { return opposite(u, false); }
Team opposite_direction_away(double u) { return opposite(u, true); }

Team zigzag(double a) {
  ZigZagPlan plan(a);
  return Team{"zigzag", std::make_shared<ZigZagStrategy>(plan, Role::Sender),
              std::make_shared<ZigZagStrategy>(plan, Role::Receiver)};
}

Team waiting() {
  auto plan = std::make_shared<SimplePlan<Stay>>();
  return Team{"waiting", plan, plan};
}

Team nospeed_toward(double d) {
  if (!(d > 0.0) || !std::isfinite(d)) throw InvalidParam("d must be positive");
  auto plan = std::make_shared<SweepPlan>(d);
  return Team{"alg4", plan, plan};
}

}  // namespace srsearch
