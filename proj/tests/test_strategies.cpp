#include <cmath>

#include "doctest.h"
#include "srsearch/analysis.hpp"
#include "srsearch/engine.hpp"
#include "srsearch/errors.hpp"
#include "srsearch/strategies.hpp"

using namespace srsearch;

TEST_CASE("doubling schedule") {
  const auto s = GuessSchedule::doubling();
  CHECK(*s.f(0) == 1);
  CHECK(*s.f(3) == 8);
  CHECK(*s.g(0) == 0);
  CHECK(*s.g(1) == 2);
  CHECK(*s.g(4) == 16);
  CHECK(*s.speed_guess(0) == 0.5);
  CHECK(*s.speed_guess(2) == 0.9375);
  CHECK(*s.distance_guess(0) == 1.0);
  CHECK(*s.distance_guess(2) == 16.0);
  CHECK(s.f(9).has_value());
  CHECK_FALSE(s.f(10).has_value());
  CHECK(std::isfinite(std::ldexp(1.0, *s.f(9))));
}

TEST_CASE("explicit schedules are validated") {
  CHECK_NOTHROW(GuessSchedule::explicit_lists({1, 2, 3}, {0, 1, 5}));
  CHECK_THROWS_AS(GuessSchedule::explicit_lists({2, 3}, {0, 1}), InvalidParam);
  CHECK_THROWS_AS(GuessSchedule::explicit_lists({1, 1}, {0, 1}), InvalidParam);
  CHECK_THROWS_AS(GuessSchedule::explicit_lists({1, 2}, {1, 2}), InvalidParam);
  const auto s = GuessSchedule::explicit_lists({1, 3}, {0, 4});
  CHECK_FALSE(s.f(2).has_value());
  CHECK(*s.speed_guess(1) == 0.875);
}

TEST_CASE("guess round geometry") {
  const GuessPlan plan(2.0, GuessSchedule::doubling());
  const auto r = plan.round(0, 0.0, 0.0);
  REQUIRE(r);
  // S guesses v = 1/2: target at -(2 + t/2) is met at t = 4, x = -4
  CHECK(r->sender_turn.t == doctest::Approx(4.0));
  CHECK(r->sender_turn.x == doctest::Approx(-4.0));
  // R guesses v = 3/4: 2 + 3t/4 = t at t = 8
  CHECK(r->receiver_turn.t == doctest::Approx(8.0));
  CHECK(r->receiver_turn.x == doctest::Approx(8.0));
  // both reach the rendezvous at unit speed from their turns
  const double ts = r->rendezvous.t - r->sender_turn.t;
  const double tr = r->rendezvous.t - r->receiver_turn.t;
  CHECK(std::abs(r->rendezvous.x - r->sender_turn.x) == doctest::Approx(ts));
  CHECK(std::abs(r->rendezvous.x - r->receiver_turn.x) == doctest::Approx(tr));
  // the confirming sweep intercepts -(2 + 3t/4)
  CHECK(r->confirm_turn.x == doctest::Approx(-(2.0 + 0.75 * r->confirm_turn.t)));
  CHECK(r->confirm_turn.t - r->rendezvous.t ==
        doctest::Approx(r->rendezvous.x - r->confirm_turn.x));

  const GuessPlan blind(std::nullopt, GuessSchedule::explicit_lists({1}, {0}));
  CHECK_FALSE(blind.round(0, 0.0, 0.0).has_value());  // R needs index 1
}

TEST_CASE("zigzag meeting points follow the recurrence") {
  const double a = 1.7;
  const ZigZagPlan z(a);
  CHECK(z.extent(0) == doctest::Approx(a));
  CHECK(z.extent(3) == doctest::Approx(std::pow(a, 4)));
  CHECK(z.meeting_point(0) == 0.0);
  CHECK(z.meeting_point(1) == doctest::Approx(a * a - a));
  // oracle: y_k = x_{2k-1} - x_{2k-2} - y_{k-1} written out
  double y = 0;
  for (int k = 1; k <= 6; ++k) {
    y = std::pow(a, 2 * k) - std::pow(a, 2 * k - 1) - y;
    CHECK(z.meeting_point(k) == doctest::Approx(y));
  }
  CHECK_THROWS_AS(ZigZagPlan(1.0), InvalidParam);
}

TEST_CASE("zigzag robots meet where planned") {
  const double a = 1.5;
  const ZigZagPlan z(a);
  const auto tr = trace_plan(zigzag(a), [](const Transcript& t) {
    int n = 0;
    for (const auto& e : t.events) n += e.kind == EventKind::F2FMeeting;
    return n >= 4;
  });
  int k = 0;
  for (const auto& e : tr.events) {
    if (e.kind != EventKind::F2FMeeting) continue;
    ++k;
    CHECK(e.xS == doctest::Approx(z.meeting_point(k)));
    CHECK(e.xR == doctest::Approx(z.meeting_point(k)));
  }
  CHECK(k == 4);
}

TEST_CASE("opposite-direction parameters") {
  CHECK_THROWS_AS(opposite_direction_toward(0.0), InvalidParam);
  CHECK_THROWS_AS(opposite_direction_away(1.0), InvalidParam);
  CHECK(opposite_direction_away(0.4).name == "alg3");
  CHECK_THROWS_AS(nospeed_toward(-1), InvalidParam);
}

TEST_CASE("receiver finding first fetches the sender") {
  // R finds at t = d, walks back to S, both return
  const double u = 0.5, d = 1.0;
  const auto tr = simulate(opposite_direction_away(u), TargetSpec::make(1, Direction::Away, d, 0.0));
  // R meets S at time t with t - d = d + u t  =>  t = 2d/(1-u) = 4, at x = -2
  // then both walk to +1: 3 more
  CHECK(*tr.capture_time == doctest::Approx(7.0));
  CHECK(tr.ratio() == doctest::Approx(alg3_ratio_receiver_finds(u, 0.0)));
}

TEST_CASE("guessing strategies always capture") {
  for (double v : {0.0, 0.3, 0.6, 0.9, 0.95}) {
    for (double d : {0.1, 1.0, 37.0}) {
      for (int side : {-1, 1}) {
        const auto spec = TargetSpec::make(side, Direction::Away, d, v);
        CHECK(simulate(nospeed_away(d), spec).capture_time.has_value());
        CHECK(simulate(noknowledge_away(), spec).capture_time.has_value());
      }
    }
  }
}

TEST_CASE("exhausted schedule stops the search") {
  const auto tiny = GuessSchedule::explicit_lists({1, 2}, {0, 1});
  // guesses top out at v = 3/4; a faster target is never intercepted
  CHECK_THROWS_AS(simulate(nospeed_away(1.0, tiny), TargetSpec::make(1, Direction::Away, 1.0, 0.9)),
                  EventLimitExceeded);
}
