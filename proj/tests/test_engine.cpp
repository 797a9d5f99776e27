#include <cmath>
#include <memory>

#include "doctest.h"
#include "srsearch/analysis.hpp"
#include "srsearch/engine.hpp"
#include "srsearch/errors.hpp"
#include "srsearch/strategies.hpp"

using namespace srsearch;

namespace {

// Controller that replies to Start with a fixed command and otherwise idles;
// optionally broadcasts at start.
class Scripted final : public Controller {
 public:
  Scripted(Command c, bool shout) : c_(c), shout_(shout) {}
  Reaction react(const Observation& o) override {
    if (o.cue != Cue::Start) return Reaction::none();
    Reaction r = Reaction::go(c_);
    if (shout_) r.broadcast = Intel{0.0, 0.0};
    return r;
  }

 private:
  Command c_;
  bool shout_;
};

class ScriptedPlan final : public Strategy {
 public:
  ScriptedPlan(Command c, bool shout = false) : c_(c), shout_(shout) {}
  std::unique_ptr<Controller> start() const override { return std::make_unique<Scripted>(c_, shout_); }

 private:
  Command c_;
  bool shout_;
};

Team scripted(Command s, Command r, bool r_shouts = false) {
  return Team{"scripted", std::make_shared<ScriptedPlan>(s), std::make_shared<ScriptedPlan>(r, r_shouts)};
}

const double kSqrt2 = std::sqrt(2.0);

}  // namespace

TEST_CASE("static target is evacuated at 3 + 2 sqrt 2") {
  for (int side : {-1, 1}) {
    const auto tr = simulate(opposite_direction_away(kSqrt2 - 1),
                             TargetSpec::make(side, Direction::Away, 1.0, 0.0));
    REQUIRE(tr.capture_time);
    CHECK(tr.ratio() == doctest::Approx(3 + 2 * kSqrt2).epsilon(1e-12));
  }
}

TEST_CASE("waiting captures when the target arrives") {
  for (int side : {-1, 1}) {
    const auto tr = simulate(waiting(), TargetSpec::make(side, Direction::Toward, 1.0, 0.5));
    CHECK(*tr.capture_time == doctest::Approx(2.0));
    CHECK(tr.ratio() == doctest::Approx(3.0));
  }
}

TEST_CASE("sweep-together on the wrong side costs three times the optimum") {
  for (double v : {0.0, 0.3, 0.9, 1.7}) {
    const auto tr = simulate(nospeed_toward(1.0), TargetSpec::make(-1, Direction::Toward, 1.0, v));
    CHECK(tr.ratio() == doctest::Approx(3.0).epsilon(1e-12));
  }
}

TEST_CASE("speed above one is illegal") {
  const Team t = scripted(Command::move_to(5, 1.5), Command::wait());
  CHECK_THROWS_AS(simulate(t, TargetSpec::make(1, Direction::Away, 1, 0)), IllegalStrategy);
  const Team z = scripted(Command::move_to(5, 0.0), Command::wait());
  CHECK_THROWS_AS(simulate(z, TargetSpec::make(1, Direction::Away, 1, 0)), IllegalStrategy);
}

TEST_CASE("receiver cannot transmit") {
  const Team t = scripted(Command::wait(), Command::wait(), true);
  CHECK_THROWS_AS(simulate(t, TargetSpec::make(1, Direction::Away, 1, 0)), IllegalStrategy);
}

TEST_CASE("a run that cannot capture hits the event limit") {
  CHECK_THROWS_AS(simulate(waiting(), TargetSpec::make(1, Direction::Toward, 1, 0)),
                  EventLimitExceeded);
  CHECK_THROWS_AS(simulate(opposite_direction_toward(0.5), TargetSpec::make(1, Direction::Toward, 1, 3.0)),
                  EventLimitExceeded);
}

TEST_CASE("invalid limits and specs") {
  CHECK_THROWS_AS(simulate(waiting(), TargetSpec{1, Direction::Away, 1, 0}, SimLimits{0}), InvalidParam);
  CHECK_THROWS_AS(simulate(waiting(), TargetSpec{1, Direction::Away, -1, 0}), InvalidParam);
}

TEST_CASE("S on the far side of an outrunning target is diagnosed") {
  CHECK_THROWS_AS(simulate(opposite_direction_away(0.3), TargetSpec::make(-1, Direction::Away, 1, 0.5)),
                  NoCapturePossible);
}

TEST_CASE("simulation is deterministic") {
  const auto spec = TargetSpec::make(-1, Direction::Away, 3.7, 0.6);
  const auto a = to_json(simulate(noknowledge_away(), spec)).dump();
  const auto b = to_json(simulate(noknowledge_away(), spec)).dump();
  CHECK(a == b);
}

TEST_CASE("constant-phase algorithms produce at most six events") {
  for (double d : {0.1, 1.0, 7.3, 300.0}) {
    for (int side : {-1, 1}) {
      for (double v : {0.0, 0.2, 0.5, 0.9}) {
        const auto away = simulate(opposite_direction_away(optimal_u_away(v)),
                                   TargetSpec::make(side, Direction::Away, d, v));
        CHECK(away.events.size() <= 6);
        const auto alg4 = simulate(nospeed_toward(d), TargetSpec::make(side, Direction::Toward, d, v));
        CHECK(alg4.events.size() <= 6);
      }
      for (double v : {0.05, 0.5, 1.0}) {
        const auto toward = simulate(opposite_direction_toward(optimal_u_toward(v)),
                                     TargetSpec::make(side, Direction::Toward, d, v));
        CHECK(toward.events.size() <= 6);
      }
    }
  }
}

TEST_CASE("paths obey the speed limit and capture is co-located") {
  const Team teams[] = {zigzag(zigzag_root(0.1)), noknowledge_away(), nospeed_away(2.0)};
  for (const Team& t : teams) {
    const Direction dir = t.name == "zigzag" ? Direction::Toward : Direction::Away;
    for (double d : {0.3, 2.0, 9.0}) {
      for (int side : {-1, 1}) {
        const auto tr = simulate(t, TargetSpec::make(side, dir, d, 0.1));
        for (const PiecewisePath* p : {&tr.pathS, &tr.pathR}) {
          const auto& pts = p->points();
          for (std::size_t i = 1; i < pts.size(); ++i) {
            const double slope = std::abs(pts[i].x - pts[i - 1].x) / (pts[i].t - pts[i - 1].t);
            CHECK(slope <= 1.0 + 1e-12);
          }
        }
        const double xt = target_position(tr.spec, *tr.capture_time);
        const double tol = 1e-9 * (1 + std::abs(xt));
        CHECK(std::abs(tr.pathS.position(*tr.capture_time) - xt) <= tol);
        CHECK(std::abs(tr.pathR.position(*tr.capture_time) - xt) <= tol);
        CHECK(validate_transcript(tr).ok());
      }
    }
  }
}

TEST_CASE("sender finds first: message then capture") {
  const auto tr = simulate(opposite_direction_away(0.5), TargetSpec::make(-1, Direction::Away, 1, 0.0));
  REQUIRE(tr.events.size() == 3);
  CHECK(tr.events[0].kind == EventKind::Sighting);
  CHECK(tr.events[1].kind == EventKind::WirelessMsg);
  CHECK(tr.events[2].kind == EventKind::Capture);
  // S at speed 1/2 reaches -1 at t = 2, R then comes back from +2: t = 2 + 3
  CHECK(*tr.capture_time == doctest::Approx(5.0));
}

TEST_CASE("plan tracing without a target") {
  const auto tr = trace_plan(zigzag(2.0), [](const Transcript& t) { return t.events.size() >= 4; });
  CHECK(tr.events.size() >= 4);
  CHECK_FALSE(tr.capture_time);
  // nothing ever happens for robots walking away forever: stops at the horizon
  const auto walk = trace_plan(opposite_direction_toward(0.5), nullptr, 100, 10.0);
  CHECK(walk.pathR.points().back().t == 10.0);
  CHECK(walk.pathR.points().back().x == doctest::Approx(10.0));
  CHECK(walk.pathS.points().back().x == doctest::Approx(-5.0));
}
