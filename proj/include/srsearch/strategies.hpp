#pragma once

// Search plans for the sender/receiver pair. S always opens toward the
// negative half-line and R toward the positive one.

#include <cstddef>
#include <optional>
#include <vector>

#include "srsearch/engine.hpp"

namespace srsearch {

/// Integer exponent sequences behind the speed guesses v_i = 1 - 2^-f_i and
/// the distance guesses d_i = 2^g_i.
///
/// The default schedule doubles: f_i = 2^i and g_i = 2^i for i >= 1 with
/// g_0 = 0. It ends at i = 9, the last term for which 2^f_i is a finite
/// double. An explicit schedule is finite too; asking past the end yields
/// nullopt and the plan stops there.
class GuessSchedule {
 public:
  static GuessSchedule doubling();
  /// Throws InvalidParam unless f_0 = 1, g_0 = 0 and both strictly increase.
  static GuessSchedule explicit_lists(std::vector<int> f, std::vector<int> g);

  std::optional<int> f(std::size_t i) const;
  std::optional<int> g(std::size_t i) const;

  /// 1 - 2^-f_i.
  std::optional<double> speed_guess(std::size_t i) const;
  /// 2^g_i.
  std::optional<double> distance_guess(std::size_t i) const;

  bool unbounded() const { return unbounded_; }

 private:
  bool unbounded_ = true;
  std::vector<int> f_;
  std::vector<int> g_;
};

/// Turning point of one excursion: reached at time t at position x.
struct Turn {
  double t;
  double x;
};

/// One round of the guessing protocol, starting with both robots together
/// at (start_t, start_x): S runs out left and R right, each far enough to
/// intercept a target matching its guesses; they return to a rendezvous;
/// then both sweep left together on R's guesses before the next round.
struct GuessRound {
  std::size_t index = 0;
  double start_t = 0.0;
  double start_x = 0.0;
  Turn sender_turn{};
  Turn receiver_turn{};
  Turn rendezvous{};
  Turn confirm_turn{};
};

/// Guess-driven excursion planner shared by both robots. With a known
/// distance every round uses it; otherwise distances come from g.
class GuessPlan {
 public:
  GuessPlan(std::optional<double> known_d, GuessSchedule schedule);

  /// nullopt once the schedule is exhausted.
  std::optional<GuessRound> round(std::size_t i, double start_t, double start_x) const;

  const GuessSchedule& schedule() const { return schedule_; }

 private:
  std::optional<double> known_d_;
  GuessSchedule schedule_;
};

/// Zigzag geometry with excursion extents x_i = a^(i+1): in round k S turns
/// at -x_{2k}, R at +x_{2k+1}, and they meet again at y_{k+1}, where
/// y_k = x_{2k-1} - x_{2k-2} - y_{k-1} and y_0 = 0.
class ZigZagPlan {
 public:
  explicit ZigZagPlan(double a);

  double a() const { return a_; }
  double extent(std::size_t i) const;
  /// y_k, built by running the recurrence forward.
  double meeting_point(std::size_t k) const;

 private:
  double a_;
};

/// Algorithm 1: S walks left at speed u, R right at unit speed.
Team opposite_direction_toward(double u);
/// Algorithm 3: same choreography for a target moving away.
Team opposite_direction_away(double u);
/// Algorithm 2: alternating excursions until a missed rendezvous.
Team zigzag(double a);
/// Both robots stay at the origin.
Team waiting();
/// Algorithm 4: sweep [0, d] together, then turn back together.
Team nospeed_toward(double d);
/// Algorithm 5: speed guessing with a known distance.
Team nospeed_away(double d, GuessSchedule schedule = GuessSchedule::doubling());
/// Algorithm 6: speed and distance guessing.
Team noknowledge_away(GuessSchedule schedule = GuessSchedule::doubling());

}  // namespace srsearch
