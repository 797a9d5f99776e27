#pragma once

// Exact event-driven simulation of the sender S, the receiver R and one
// oblivious target. Between events every body moves with constant velocity,
// so each candidate event time is the root of a linear equation.

#include <cstddef>
#include <functional>
#include <limits>
#include <memory>
#include <optional>
#include <string>

#include "srsearch/kinematics.hpp"
#include "srsearch/transcript.hpp"

namespace srsearch {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

/// What a robot is told when the engine wakes it up.
enum class Cue {
  Start,     ///< t = 0
  Sighted,   ///< became co-located with the target
  Message,   ///< wireless report from S (receiver only)
  Met,       ///< became co-located with the other robot
  Arrived,   ///< reached the destination of its Move command
};

struct Observation {
  Cue cue = Cue::Start;
  double t = 0.0;
  double x = 0.0;
  bool partner_here = false;
  bool target_here = false;
  /// Message payload, or the partner's memo on Met.
  std::optional<Intel> intel;
};

/// Motion order for one robot; held until replaced.
struct Command {
  enum class Kind { Move, Wait, Escort };

  Kind kind = Kind::Wait;
  /// Move: destination; +-infinity means travel without a stop.
  double destination = 0.0;
  double speed = 0.0;

  static Command move_to(double x, double speed = 1.0) { return {Kind::Move, x, speed}; }
  static Command travel(double direction, double speed = 1.0) {
    return {Kind::Move, direction < 0 ? -kInf : kInf, speed};
  }
  static Command wait() { return {Kind::Wait, 0.0, 0.0}; }
  /// Match the target's velocity (capped at unit speed).
  static Command escort() { return {Kind::Escort, 0.0, 0.0}; }
};

struct Reaction {
  std::optional<Command> command;
  std::optional<Intel> broadcast;

  static Reaction none() { return {}; }
  static Reaction go(Command c) { return {c, std::nullopt}; }
};

/// Per-run state machine of one robot.
class Controller {
 public:
  virtual ~Controller() = default;
  virtual Reaction react(const Observation& obs) = 0;
  /// What this robot tells its partner face to face.
  virtual std::optional<Intel> memo() const { return std::nullopt; }
};

/// Immutable plan for one robot. Safe to share between threads.
class Strategy {
 public:
  virtual ~Strategy() = default;
  virtual std::unique_ptr<Controller> start() const = 0;
  /// Optional diagnostic on an instance the plan can never capture.
  virtual void precheck(const TargetSpec&) const {}
};

/// An S plan and an R plan.
struct Team {
  std::string name;
  std::shared_ptr<const Strategy> sender;
  std::shared_ptr<const Strategy> receiver;
};

struct SimLimits {
  std::size_t max_events = 1'000'000;
};

/// Runs the team against the target until capture.
/// Throws EventLimitExceeded (event budget exhausted or nothing left to
/// happen) and IllegalStrategy (speed above 1, receiver transmitting).
Transcript simulate(const Team& team, const TargetSpec& spec, const SimLimits& limits = {});

/// Runs the team with no target at all until `done` returns true, no event
/// is pending before `horizon`, or the event budget is spent. With a finite
/// horizon the paths are extended up to it. The returned transcript has no
/// capture and its spec is a placeholder. Used to read off excursion plans.
Transcript trace_plan(const Team& team, const std::function<bool(const Transcript&)>& done,
                      std::size_t max_events = 10'000, double horizon = kInf);

}  // namespace srsearch
