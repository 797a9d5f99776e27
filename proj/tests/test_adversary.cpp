#include <algorithm>
#include <cmath>

#include "doctest.h"
#include "srsearch/adversary.hpp"
#include "srsearch/analysis.hpp"
#include "srsearch/errors.hpp"
#include "srsearch/strategies.hpp"

using namespace srsearch;

namespace {

bool contains_near(const std::vector<double>& xs, double x, double rel) {
  return std::any_of(xs.begin(), xs.end(), [&](double y) { return std::abs(y / x - 1) <= rel; });
}

}  // namespace

TEST_CASE("default distance grid") {
  const auto g = log_distance_grid();
  CHECK(g.ds.size() == 127);
  CHECK(g.ds.front() == 0.0625);
  CHECK(g.ds.back() == 1024.0);
  CHECK(g.ds[9] == doctest::Approx(0.125));
  CHECK(g.sides == std::vector<int>{-1, 1});
  const auto merged = with_distances(g, {3.0, 0.0625});
  CHECK(merged.ds.size() == 128);
  CHECK(std::is_sorted(merged.ds.begin(), merged.ds.end()));
}

TEST_CASE("contender registry") {
  CHECK(make_contender("alg1", 0.2).model == Direction::Toward);
  CHECK(make_contender("alg6", 0.2).model == Direction::Away);
  CHECK(make_contender("alg5", 0.2).knows_distance);
  CHECK_THROWS_AS(make_contender("alg7", 0.2), InvalidParam);
  CHECK_THROWS_AS(make_contender("alg1", 0.2, {{"a", 2.0}}), InvalidParam);
  CHECK_THROWS_AS(make_contender("zigzag", 0.5), InvalidParam);
  CHECK_NOTHROW(make_contender("zigzag", 0.5, {{"a", 1.5}}));
}

TEST_CASE("empirical ratios of the exact theorems") {
  const auto g = log_distance_grid(-4, 10, 3);
  const auto alg3 = empirical_cr(make_contender("alg3", 0.0, {{"u", std::sqrt(2.0) - 1}}), 0.0, g);
  CHECK(alg3.sup == doctest::Approx(3 + 2 * std::sqrt(2.0)).epsilon(1e-9));
  // constant across d
  for (const auto& i : alg3.instances) CHECK(i.ratio == doctest::Approx(alg3.sup).epsilon(1e-9));

  const auto alg4 = empirical_cr(make_contender("alg4", 0.7), 0.7, g);
  CHECK(alg4.sup == doctest::Approx(3.0));
  CHECK(alg4.worst.side == -1);

  const auto w = empirical_cr(make_contender("waiting", 0.25), 0.25, g);
  CHECK(w.sup == 5.0);
  CHECK(w.violations == 0);
  // every instance ties exactly; the smallest d is kept
  CHECK(w.worst.d == g.ds.front());
  CHECK(w.worst.side == -1);
}

TEST_CASE("a perturbed speed breaks the exact match") {
  const auto g = log_distance_grid(0, 4, 2);
  const double v = 0.3;
  const auto e = empirical_cr(make_contender("alg3", v, {{"u", optimal_u_away(v) + 0.05}}), v, g);
  CHECK(std::abs(e.sup / cr_nodistance_away(v) - 1) > 1e-6);
  CHECK(e.sup > cr_nodistance_away(v));
}

TEST_CASE("parallel evaluation matches serial") {
  const auto g = log_distance_grid(-2, 6, 4);
  const auto c = make_contender("alg6", 0.0);
  const auto a = empirical_cr(c, 0.5, g, 1);
  const auto b = empirical_cr(c, 0.5, g, 4);
  CHECK(a.sup == b.sup);
  CHECK(a.worst == b.worst);
  REQUIRE(a.instances.size() == b.instances.size());
  for (std::size_t i = 0; i < a.instances.size(); ++i) CHECK(a.instances[i].ratio == b.instances[i].ratio);
}

TEST_CASE("engine errors name the instance") {
  const InstanceGrid g{{1.0, 2.0}, {1}};
  try {
    empirical_cr(make_contender("waiting", 0.0), 0.0, g);
    FAIL("expected an error");
  } catch (const EventLimitExceeded& e) {
    CHECK(std::string(e.what()).find("d=1") != std::string::npos);
  }
  CHECK_THROWS_AS(empirical_cr(make_contender("waiting", 0.1), 0.1, InstanceGrid{}), InvalidParam);
}

TEST_CASE("critical distances of the zigzag plan") {
  const double a = 2.0;
  const auto c = make_contender("zigzag", 0.0, {{"a", a}});
  const auto ds = critical_distances(c, 0.0, 1024.0);
  // S turns at -a, -a^3, ...; R at a^2, a^4, ...
  for (int k = 1; k <= 9; ++k) {
    const double x = std::pow(a, k);
    CHECK(contains_near(ds, x * (1 + 1e-6), 1e-12));
    CHECK(contains_near(ds, x * (1 - 1e-6), 1e-12));
  }
  CHECK(std::all_of(ds.begin(), ds.end(), [](double d) { return d > 0 && d <= 1024; }));

  // moving target: a turn at p at time t is reached by a target from |p| + v t
  const double v = 0.1;
  const auto moving = critical_distances(c, v, 100.0);
  CHECK(contains_near(moving, (a + v * a) * (1 + 1e-6), 1e-12));
}

TEST_CASE("critical distances of the guessing plans") {
  CHECK(critical_distances(make_contender("alg5", 0.5), 0.5, 100).empty());
  CHECK(critical_distances(make_contender("alg1", 0.5), 0.5, 100).empty());
  const auto ds = critical_distances(make_contender("alg6", 0.0), 0.0, 1024.0);
  REQUIRE_FALSE(ds.empty());
  // first round: S turns at -(1 * 2^1) = -2 with d guess 2^0 and v guess 1/2
  const GuessPlan plan(std::nullopt, GuessSchedule::doubling());
  const auto r0 = *plan.round(0, 0, 0);
  CHECK(contains_near(ds, std::abs(r0.sender_turn.x) * (1 + 1e-6), 1e-12));
  CHECK(contains_near(ds, std::abs(r0.receiver_turn.x) * (1 - 1e-6), 1e-12));
}

TEST_CASE("critical distances never lower the sup") {
  const double v = 0.1;
  const auto c = make_contender("zigzag", v);
  const auto g = log_distance_grid(-4, 10, 2);
  const auto plain = empirical_cr(c, v, g);
  const auto more = empirical_cr(c, v, with_distances(g, critical_distances(c, v, 1024)));
  CHECK(more.sup >= plain.sup);
}

TEST_CASE("lower-bound instance for unknown speed") {
  for (const char* name : {"alg3", "alg5", "alg6"}) {
    for (double v : {0.0, 0.5}) {
      const double d = 1.0, eps = 1e-6;
      const auto c = make_contender(name, v);
      const auto spec = lb_nospeed_away_instance(lb_nospeed_away_prefix(c, d, v, eps), d, v, eps);
      CHECK(spec.d == d);
      CHECK(spec.v == v);
      CHECK(spec.direction == Direction::Away);
      const double r = simulate(c.make(d), spec).ratio();
      CHECK(r >= lb_nospeed_away_finite(d, v, eps) - 1e-9);
      CHECK(r >= lb_nospeed_away(v) * (1 - 1e-5));
    }
  }
}

TEST_CASE("lower-bound instance from a hand-made prefix") {
  Transcript tr;
  tr.pathS = PiecewisePath({{0, 0}, {1, -1}, {5, 3}});
  tr.pathR = PiecewisePath({{0, 0}, {5, 2.5}});
  // reach 2: S gets to +2 at t = 4, R at t = 4 as well; S is checked first
  CHECK(lb_nospeed_away_instance(tr, 1.0, 0.5, 0.0).side == -1);
  // reach 0.9: S gets to -0.9 first
  CHECK(lb_nospeed_away_instance(tr, 0.9, 0.0, 0.0).side == 1);
  CHECK_THROWS_AS(lb_nospeed_away_instance(tr, 10.0, 0.5, 0.0), PrefixTooShort);
  // robots that never move never reach anything
  const auto idle = lb_nospeed_away_prefix(make_contender("waiting", 0.5), 1, 0.5, 1e-6);
  CHECK_THROWS_AS(lb_nospeed_away_instance(idle, 1, 0.5, 1e-6), PrefixTooShort);
}

TEST_CASE("lower-bound instance for unknown speed and distance") {
  auto s = lb_noknowledge_toward_instance(0, 1, 1);
  CHECK(s.v == 1.0);
  CHECK(s.side == -1);
  s = lb_noknowledge_toward_instance(1, 1, 1);
  CHECK(s.v == 0.5);
  CHECK(s.d == 1.0);
  s = lb_noknowledge_toward_instance(0, -2, 1);
  CHECK(s.side == 1);
  CHECK_THROWS_AS(lb_noknowledge_toward_instance(0, 0, 1), InvalidParam);

  // R of alg1 has covered x = 1 at t = 1: the instance forces at least 1 + 1/v
  const auto hard = lb_noknowledge_toward_instance(0, 1, 1);
  const double v = hard.v;
  const auto r1 = simulate(make_contender("alg1", v).make(1), hard).ratio();
  CHECK(r1 >= cr_waiting(v) - 1e-9);
  // waiting attains the bound exactly
  CHECK(simulate(waiting(), hard).ratio() == doctest::Approx(cr_waiting(v)));
}

TEST_CASE("envelope shapes") {
  CHECK(alg5_envelope_shape(0.0) == 0.0);
  CHECK(alg5_envelope_shape(0.5) == doctest::Approx(std::pow(2, 10.0 / 3)));
  CHECK(alg6_envelope_shape(2.0, 0.0) == 0.0);
  CHECK(alg6_envelope_shape(16.0, 0.0) == doctest::Approx(std::pow(16, 16.0 / 3) * 4 * std::pow(2, 1.5)));
  CHECK(alg6_envelope_shape(1.0, 0.9375) == doctest::Approx(alg6_envelope_shape(16.0, 0.0)));
}

TEST_CASE("report serialization") {
  CrReport r;
  r.criterion = 4;
  r.check = "exact";
  r.strategy = "waiting";
  r.model = "toward";
  r.v = 0.5;
  r.empirical = 3;
  r.prediction = 3;
  r.pass = true;
  r.worst = TargetSpec::make(1, Direction::Toward, 2, 0.5);
  const auto j = to_json(r);
  CHECK(j["verdict"] == "pass");
  CHECK(j["v"] == 0.5);
  CHECK(j["worst"]["d"] == 2.0);
  CrReport none;
  CHECK(to_json(none)["v"].is_null());
  CHECK(to_json(none)["verdict"] == "fail");
}
