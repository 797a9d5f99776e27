#include "srsearch/adversary.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <sstream>
#include <thread>

#include "srsearch/analysis.hpp"
#include "srsearch/errors.hpp"
#include "srsearch/strategies.hpp"

namespace srsearch {
namespace {

std::string describe(const TargetSpec& s) {
  std::ostringstream os;
  os.precision(17);
  os << "side=" << s.side << " direction=" << to_string(s.direction) << " d=" << s.d
     << " v=" << s.v;
  return os.str();
}

Contender fixed(std::string name, Direction model, Team team) {
  auto shared = std::make_shared<const Team>(std::move(team));
  return Contender{std::move(name), model, false, [shared](double) { return *shared; }};
}

}  // namespace

Contender make_contender(const std::string& name, double v,
                         const std::map<std::string, double>& params) {
  auto param = [&](const std::string& key) -> std::optional<double> {
    auto it = params.find(key);
    if (it == params.end()) return std::nullopt;
    return it->second;
  };
  auto only = [&](std::initializer_list<const char*> allowed) {
    for (const auto& [k, _] : params) {
      if (std::none_of(allowed.begin(), allowed.end(), [&](const char* a) { return k == a; }))
        throw InvalidParam("strategy " + name + " takes no parameter '" + k + "'");
    }
  };

  if (name == "alg1") {
    only({"u"});
    return fixed(name, Direction::Toward,
                 opposite_direction_toward(param("u").value_or(optimal_u_toward(v))));
  }
  if (name == "alg3") {
    only({"u"});
    const auto u = param("u");
    if (!u && v >= 1.0) throw InvalidParam("alg3 needs v < 1");
    return fixed(name, Direction::Away, opposite_direction_away(u ? *u : optimal_u_away(v)));
  }
  if (name == "zigzag") {
    only({"a"});
    const auto a = param("a");
    if (!a && v >= 1.0 / 3.0) throw InvalidParam("zigzag needs v < 1/3 unless a is given");
    return fixed(name, Direction::Toward, zigzag(a ? *a : zigzag_root(v)));
  }
  if (name == "waiting") {
    only({});
    return fixed(name, Direction::Toward, waiting());
  }
  if (name == "alg4") {
    only({});
    return Contender{name, Direction::Toward, true, [](double d) { return nospeed_toward(d); }};
  }
  if (name == "alg5") {
    only({});
    return Contender{name, Direction::Away, true, [](double d) { return nospeed_away(d); }};
  }
  if (name == "alg6") {
    only({});
    return fixed(name, Direction::Away, noknowledge_away());
  }
  throw InvalidParam("unknown strategy '" + name + "'");
}

InstanceGrid log_distance_grid(int lo_exp, int hi_exp, int per_octave) {
  if (hi_exp < lo_exp || per_octave < 1) throw InvalidParam("bad distance grid");
  InstanceGrid g;
  const int n = (hi_exp - lo_exp) * per_octave;
  for (int k = 0; k <= n; ++k)
    g.ds.push_back(std::exp2(lo_exp + static_cast<double>(k) / per_octave));
  return g;
}

InstanceGrid with_distances(InstanceGrid grid, const std::vector<double>& extra) {
  grid.ds.insert(grid.ds.end(), extra.begin(), extra.end());
  std::sort(grid.ds.begin(), grid.ds.end());
  grid.ds.erase(std::unique(grid.ds.begin(), grid.ds.end()), grid.ds.end());
  return grid;
}

EmpiricalCr empirical_cr(const Contender& c, double v, const InstanceGrid& grid, unsigned jobs,
                         const SimLimits& limits) {
  if (grid.ds.empty() || grid.sides.empty()) throw InvalidParam("empty instance grid");
  std::vector<double> ds = grid.ds;
  std::sort(ds.begin(), ds.end());
  std::vector<int> sides = grid.sides;
  std::sort(sides.begin(), sides.end());

  std::vector<TargetSpec> specs;
  for (double d : ds)
    for (int s : sides) specs.push_back(TargetSpec::make(s, c.model, d, v));

  const std::size_t n = specs.size();
  std::vector<double> ratios(n, 0.0);
  std::vector<std::string> first_code(n);
  std::vector<std::size_t> bad(n, 0);
  std::vector<std::exception_ptr> errors(n);

  std::optional<Team> shared_team;
  if (!c.knows_distance) shared_team = c.make(ds.front());

  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < n; i = next++) {
      try {
        try {
          const Team team = shared_team ? *shared_team : c.make(specs[i].d);
          const Transcript tr = simulate(team, specs[i], limits);
          ratios[i] = tr.ratio();
          const ValidationReport rep = validate_transcript(tr);
          bad[i] = rep.violations.size();
          if (!rep.ok()) first_code[i] = rep.violations.front().code;
        } catch (const Error& e) {
          rethrow_with(e, c.name + " at " + describe(specs[i]));
        }
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };

  unsigned workers = jobs ? jobs : std::max(1u, std::thread::hardware_concurrency());
  workers = static_cast<unsigned>(std::min<std::size_t>(workers, n));
  if (workers <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);

  EmpiricalCr out;
  out.instances.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    out.instances.push_back({specs[i], ratios[i]});
    // Instances are in increasing d, so a strict comparison keeps the
    // smallest d among ties.
    if (i == 0 || ratios[i] > out.sup) {
      out.sup = ratios[i];
      out.worst = specs[i];
    }
    out.violations += bad[i];
    if (out.first_violation.empty() && bad[i]) out.first_violation = first_code[i];
  }
  return out;
}

std::vector<double> critical_distances(const Contender& c, double v, double d_max,
                                       double delta) {
  if (c.knows_distance) return {};
  if (!(d_max > 0.0) || !(delta > 0.0 && delta < 1.0))
    throw InvalidParam("critical distances need d_max > 0 and 0 < delta < 1");
  const bool toward = c.model == Direction::Toward;
  auto reach = [&](const Event& e) {
    const double p = e.robot == Role::Sender ? e.xS : e.xR;
    return toward ? std::abs(p) + v * e.t : std::abs(p) - v * e.t;
  };
  auto past_both_ends = [&](const Transcript& tr) {
    bool left = false, right = false;
    for (const Event& e : tr.events) {
      if (e.kind != EventKind::Turnaround || reach(e) <= d_max) continue;
      const double p = e.robot == Role::Sender ? e.xS : e.xR;
      (p < 0.0 ? left : right) = true;
    }
    return left && right;
  };
  const Transcript plan = trace_plan(c.make(1.0), past_both_ends);

  std::vector<double> out;
  for (const Event& e : plan.events) {
    if (e.kind != EventKind::Turnaround) continue;
    const double d = reach(e);
    if (!(d > 0.0)) continue;
    for (double x : {d * (1.0 - delta), d * (1.0 + delta)})
      if (x <= d_max) out.push_back(x);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

TargetSpec lb_nospeed_away_instance(const Transcript& prefix, double d, double v, double eps) {
  if (!(d > 0.0) || !(v >= 0.0 && v < 1.0) || !(eps >= 0.0))
    throw InvalidParam("lower-bound instance needs d > 0, 0 <= v < 1, eps >= 0");
  const double reach = d / (1.0 - v) - eps;
  if (!(reach > 0.0)) throw InvalidParam("eps leaves nothing to reach");

  std::optional<double> best_t;
  double best_x = 0.0;
  for (Role role : {Role::Sender, Role::Receiver}) {
    const auto& pts = prefix.path(role).points();
    for (std::size_t i = 1; i < pts.size(); ++i) {
      const Breakpoint& a = pts[i - 1];
      const Breakpoint& b = pts[i];
      std::optional<double> hit;
      for (double s : {-1.0, 1.0}) {
        if (s * b.x >= reach && s * a.x < reach) {
          const double t = a.t + (s * reach - a.x) / (b.x - a.x) * (b.t - a.t);
          if (!hit || t < *hit) hit = t;
        }
      }
      if (hit) {
        if (!best_t || *hit < *best_t) {
          best_t = hit;
          best_x = b.x;
        }
        break;
      }
    }
  }
  if (!best_t)
    throw PrefixTooShort("no robot reaches distance " + std::to_string(reach) + " in the prefix");
  return TargetSpec::make(best_x > 0.0 ? -1 : 1, Direction::Away, d, v);
}

Transcript lb_nospeed_away_prefix(const Contender& c, double d, double v, double eps) {
  const double reach = d / (1.0 - v) - eps;
  auto far_enough = [reach](const Transcript& tr) {
    return std::abs(tr.pathS.points().back().x) >= reach ||
           std::abs(tr.pathR.points().back().x) >= reach;
  };
  return trace_plan(c.make(d), far_enough, 100'000, 1e9 * std::max(reach, 1.0));
}

TargetSpec lb_noknowledge_toward_instance(double t, double x, double d) {
  if (!(t >= 0.0) || x == 0.0 || !std::isfinite(x) || !(d > 0.0))
    throw InvalidParam("needs t >= 0, x != 0, d > 0");
  return TargetSpec::make(x > 0.0 ? -1 : 1, Direction::Toward, d, d / (t + std::abs(x)));
}

double alg5_envelope_shape(double v) {
  const double u = 1.0 / (1.0 - v);
  return std::pow(u, 10.0 / 3.0) * std::log2(u);
}

double alg6_envelope_shape(double d, double v) {
  const double m = std::max(d, 1.0 / (1.0 - v));
  const double ll = std::log2(std::log2(m));
  if (!(ll > 0.0)) return 0.0;
  return std::pow(m, 16.0 / 3.0) * std::log2(m) * std::pow(ll, 1.5);
}

nlohmann::json to_json(const CrReport& r) {
  nlohmann::json j{{"criterion", r.criterion},   {"check", r.check},
                   {"strategy", r.strategy},     {"model", r.model},
                   {"empirical", r.empirical},   {"prediction", r.prediction},
                   {"tolerance", r.tolerance},   {"verdict", r.pass ? "pass" : "fail"},
                   {"runs", r.runs},             {"violations", r.violations},
                   {"note", r.note}};
  j["v"] = r.v ? nlohmann::json(*r.v) : nlohmann::json(nullptr);
  j["worst"] = r.worst ? to_json(*r.worst) : nlohmann::json(nullptr);
  return j;
}

}  // namespace srsearch
