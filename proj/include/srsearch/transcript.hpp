#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "srsearch/kinematics.hpp"

namespace srsearch {

enum class Role { Sender, Receiver };

std::string_view to_string(Role r);

struct Breakpoint {
  double t;
  double x;
};

/// Piecewise-linear trajectory; constant velocity between breakpoints.
class PiecewisePath {
 public:
  PiecewisePath() = default;
  explicit PiecewisePath(std::vector<Breakpoint> points) : points_(std::move(points)) {}

  /// Appends a breakpoint; a point at the same time as the last one
  /// replaces it.
  void append(double t, double x);

  /// Position at time t; clamps to the last breakpoint after the end.
  double position(double t) const;

  const std::vector<Breakpoint>& points() const { return points_; }
  std::vector<Breakpoint>& mutable_points() { return points_; }
  bool empty() const { return points_.empty(); }

 private:
  std::vector<Breakpoint> points_;
};

/// Payload of a sighting report: where the target was and when.
struct Intel {
  double t;
  double x;

  bool operator==(const Intel&) const = default;
};

enum class EventKind { Sighting, WirelessMsg, F2FMeeting, Turnaround, Capture };

std::string_view to_string(EventKind k);

struct Event {
  double t = 0.0;
  EventKind kind = EventKind::Turnaround;
  /// Robot concerned (sighting, turnaround) or the transmitter (wireless).
  std::optional<Role> robot;
  std::optional<Intel> payload;
  double xS = 0.0;
  double xR = 0.0;
  double xT = 0.0;
};

struct Transcript {
  TargetSpec spec;
  PiecewisePath pathS;
  PiecewisePath pathR;
  std::vector<Event> events;
  std::optional<double> capture_time;

  const PiecewisePath& path(Role r) const { return r == Role::Sender ? pathS : pathR; }

  /// capture_time / t_opt(spec); throws std::logic_error without a capture.
  double ratio() const;
};

struct Violation {
  std::string code;
  std::string detail;
  double t = 0.0;
};

struct ValidationReport {
  std::vector<Violation> violations;

  bool ok() const { return violations.empty(); }
  bool has(std::string_view code) const;
};

/// Checks a transcript against the model: unit speed limit, sender-only
/// wireless, face-to-face co-location, capture co-location of both robots,
/// target consistency with the spec, event ordering.
ValidationReport validate_transcript(const Transcript& tr);

nlohmann::json to_json(const Transcript& tr);
Transcript transcript_from_json(const nlohmann::json& j);

nlohmann::json to_json(const TargetSpec& spec);

}  // namespace srsearch
