#pragma once

// Empirical competitive ratios over instance grids, the adversarial
// constructions behind the lower bounds, and the theorem regression suite.

#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "srsearch/engine.hpp"

namespace srsearch {

/// A named strategy bound to its model. Distance-aware strategies are
/// rebuilt per instance, which is why `make` takes the initial distance.
struct Contender {
  std::string name;
  Direction model = Direction::Toward;
  bool knows_distance = false;
  std::function<Team(double d)> make;
};

/// Known names: alg1, alg3 (param u), zigzag (param a), waiting, alg4,
/// alg5, alg6. Unset parameters default to their optimal values for v.
/// Throws InvalidParam on unknown names or parameters.
Contender make_contender(const std::string& name, double v,
                         const std::map<std::string, double>& params = {});

struct InstanceGrid {
  std::vector<double> ds;
  std::vector<int> sides{-1, 1};
};

/// 2^lo .. 2^hi with per_octave points per doubling, both ends included.
InstanceGrid log_distance_grid(int lo_exp = -4, int hi_exp = 10, int per_octave = 9);
/// The grid with extra distances merged in (sorted, deduplicated).
InstanceGrid with_distances(InstanceGrid grid, const std::vector<double>& extra);

struct InstanceResult {
  TargetSpec spec;
  double ratio = 0.0;
};

struct EmpiricalCr {
  double sup = 0.0;
  TargetSpec worst;
  std::vector<InstanceResult> instances;  // sorted by (d, side)
  std::size_t violations = 0;
  std::string first_violation;
};

/// Simulates every grid instance (jobs threads; 0 means all cores) and
/// merges by max; ties go to the smaller d. Engine errors are rethrown with
/// the offending instance appended.
EmpiricalCr empirical_cr(const Contender& c, double v, const InstanceGrid& grid,
                         unsigned jobs = 0, const SimLimits& limits = {});

/// Distances at which a target of speed v is just reached at one of the
/// turning points of the contender's plan, each emitted as d(1-delta) and
/// d(1+delta) and clipped to (0, d_max]. Empty when the distance is known.
std::vector<double> critical_distances(const Contender& c, double v, double d_max,
                                       double delta = 1e-6);

/// Places an away target on the side opposite to the first robot that
/// reaches d/(1-v) - eps in the prefix. PrefixTooShort if none does.
TargetSpec lb_nospeed_away_instance(const Transcript& prefix, double d, double v, double eps);
/// Target-free run of the contender long enough for the construction above.
Transcript lb_nospeed_away_prefix(const Contender& c, double d, double v, double eps);

/// A robot that has left the origin by x (signed) at time t + |x| faces a
/// target at distance d on the other side with speed d / (t + |x|).
/// InvalidParam if t < 0, x = 0 or d <= 0.
TargetSpec lb_noknowledge_toward_instance(double t, double x, double d = 1.0);

struct Tolerances {
  double static_abs = 1e-6;
  double exact_rel = 1e-6;
  double crossover_abs = 1e-9;
  double zigzag_edge_abs = 1e-3;
  double waiting_abs = 1e-9;
  double nospeed_abs = 1e-9;
  double zigzag_slack = 1e-9;
  double quintic_residual = 1e-12;
  double lower_bound_rel = 0.01;
  double envelope_stability = 0.10;
};

struct CrReport {
  int criterion = 0;
  std::string check;     // exact | upper | lower | envelope | property
  std::string strategy;
  std::string model;
  std::optional<double> v;
  double empirical = 0.0;
  std::optional<TargetSpec> worst;
  double prediction = 0.0;
  double tolerance = 0.0;
  bool pass = false;
  std::size_t runs = 0;
  std::size_t violations = 0;
  std::string note;
};

nlohmann::json to_json(const CrReport& r);

/// Every theorem check, in criterion order; the last report covers model
/// legality of all runs before it. Failures are data, never exceptions.
std::vector<CrReport> verify_all(const Tolerances& tol = {}, unsigned jobs = 0);

/// Envelope shapes: u^(10/3) log2 u with u = 1/(1-v), and
/// M^(16/3) log2 M (log2 log2 M)^(3/2) with M = max(d, 1/(1-v)).
double alg5_envelope_shape(double v);
double alg6_envelope_shape(double d, double v);

}  // namespace srsearch
