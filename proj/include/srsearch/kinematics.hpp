#pragma once

// Closed-form motion on the real line: the oblivious target, the offline
// optimum, and the linear meeting-time solver every event is built on.

#include <optional>
#include <string_view>

namespace srsearch {

enum class Direction { Toward, Away };

std::string_view to_string(Direction d);
Direction direction_from_string(std::string_view s);

/// Co-location tolerance: |x - y| <= kPosEps * (1 + max(|x|, |y|)).
inline constexpr double kPosEps = 1e-9;
/// Robot speed slack used when validating recorded paths.
inline constexpr double kSpeedEps = 1e-12;

bool colocated(double x, double y, double eps = kPosEps);

/// Initial placement and motion of the oblivious target.
///
/// side is +1 (the receiver's half-line) or -1 (the sender's half-line).
/// A Toward target crosses the origin and keeps its velocity afterwards.
struct TargetSpec {
  int side = 1;
  Direction direction = Direction::Away;
  double d = 1.0;
  double v = 0.0;

  /// Builds a spec and enforces d > 0, v >= 0, side in {-1,+1} and v < 1
  /// for Away targets. Throws InvalidParam otherwise.
  static TargetSpec make(int side, Direction direction, double d, double v);

  /// Signed constant velocity of the target.
  double velocity() const;

  bool operator==(const TargetSpec&) const = default;
};

void validate(const TargetSpec& spec);

double target_position(const TargetSpec& spec, double t);

/// Offline optimum: d/(1+v) toward, d/(1-v) away.
double t_opt(const TargetSpec& spec);

/// Earliest t >= t0 with xa + va (t - t0) == xb + vb (t - t0).
/// Returns t0 when the bodies already coincide, nullopt when they never meet.
std::optional<double> meeting_time(double xa, double va, double xb, double vb,
                                   double t0);

}  // namespace srsearch
