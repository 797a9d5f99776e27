#include "srsearch/kinematics.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "srsearch/errors.hpp"

namespace srsearch {

std::string_view to_string(Direction d) {
  return d == Direction::Toward ? "toward" : "away";
}

Direction direction_from_string(std::string_view s) {
  if (s == "toward") return Direction::Toward;
  if (s == "away") return Direction::Away;
  throw InvalidParam("unknown model '" + std::string(s) + "' (expected toward|away)");
}

bool colocated(double x, double y, double eps) {
  return std::abs(x - y) <= eps * (1.0 + std::max(std::abs(x), std::abs(y)));
}

TargetSpec TargetSpec::make(int side, Direction direction, double d, double v) {
  TargetSpec s{side, direction, d, v};
  validate(s);
  return s;
}

void validate(const TargetSpec& s) {
  if (s.side != 1 && s.side != -1) throw InvalidParam("side must be +1 or -1");
  if (!(s.d > 0.0) || !std::isfinite(s.d)) throw InvalidParam("d must be positive and finite");
  if (!(s.v >= 0.0) || !std::isfinite(s.v)) throw InvalidParam("v must be non-negative and finite");
  if (s.direction == Direction::Away && s.v >= 1.0)
    throw InvalidParam("an away-moving target needs v < 1 to be capturable");
}

double TargetSpec::velocity() const {
  return direction == Direction::Away ? side * v : -side * v;
}

double target_position(const TargetSpec& spec, double t) {
  return spec.side * spec.d + spec.velocity() * t;
}

double t_opt(const TargetSpec& spec) {
  return spec.direction == Direction::Toward ? spec.d / (1.0 + spec.v)
                                             : spec.d / (1.0 - spec.v);
}

std::optional<double> meeting_time(double xa, double va, double xb, double vb,
                                   double t0) {
  const double gap = xb - xa;
  if (gap == 0.0) return t0;
  const double closing = va - vb;
  if (closing == 0.0) return std::nullopt;
  const double dt = gap / closing;
  if (dt < 0.0) return std::nullopt;
  return t0 + dt;
}

}  // namespace srsearch
