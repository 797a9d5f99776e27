#include "srsearch/transcript.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "srsearch/errors.hpp"

namespace srsearch {

using nlohmann::json;

std::string_view to_string(Role r) { return r == Role::Sender ? "S" : "R"; }

std::string_view to_string(EventKind k) {
  switch (k) {
    case EventKind::Sighting: return "sighting";
    case EventKind::WirelessMsg: return "wireless_msg";
    case EventKind::F2FMeeting: return "f2f_meeting";
    case EventKind::Turnaround: return "turnaround";
    case EventKind::Capture: return "capture";
  }
  return "?";
}

namespace {

EventKind event_kind_from_string(std::string_view s) {
  for (auto k : {EventKind::Sighting, EventKind::WirelessMsg, EventKind::F2FMeeting,
                 EventKind::Turnaround, EventKind::Capture}) {
    if (to_string(k) == s) return k;
  }
  throw InvalidParam("unknown event kind '" + std::string(s) + "'");
}

Role role_from_string(std::string_view s) {
  if (s == "S") return Role::Sender;
  if (s == "R") return Role::Receiver;
  throw InvalidParam("unknown robot '" + std::string(s) + "'");
}

// Rounding slack for a segment between positions of magnitude |x0|, |x1|.
double rounding_slack(double x0, double x1) {
  return 64.0 * std::numeric_limits<double>::epsilon() *
         (1.0 + std::abs(x0) + std::abs(x1));
}

std::string fmt(double x) {
  std::ostringstream os;
  os.precision(17);
  os << x;
  return os.str();
}

}  // namespace

void PiecewisePath::append(double t, double x) {
  if (!points_.empty() && points_.back().t == t) {
    points_.back().x = x;
    return;
  }
  points_.push_back({t, x});
}

double PiecewisePath::position(double t) const {
  if (points_.empty()) return 0.0;
  if (t <= points_.front().t) return points_.front().x;
  if (t >= points_.back().t) return points_.back().x;
  auto it = std::upper_bound(points_.begin(), points_.end(), t,
                             [](double tt, const Breakpoint& b) { return tt < b.t; });
  const Breakpoint& b = *it;
  const Breakpoint& a = *(it - 1);
  const double w = (t - a.t) / (b.t - a.t);
  return a.x + (b.x - a.x) * w;
}

double Transcript::ratio() const {
  if (!capture_time) throw std::logic_error("transcript has no capture");
  return *capture_time / t_opt(spec);
}

bool ValidationReport::has(std::string_view code) const {
  return std::any_of(violations.begin(), violations.end(),
                     [&](const Violation& v) { return v.code == code; });
}

ValidationReport validate_transcript(const Transcript& tr) {
  ValidationReport rep;
  auto flag = [&](std::string code, std::string detail, double t) {
    rep.violations.push_back({std::move(code), std::move(detail), t});
  };

  for (Role role : {Role::Sender, Role::Receiver}) {
    const auto& pts = tr.path(role).points();
    const std::string who(to_string(role));
    if (pts.empty()) {
      flag("path malformed", who + " has no breakpoints", 0.0);
      continue;
    }
    if (pts.front().t != 0.0 || pts.front().x != 0.0)
      flag("path malformed", who + " does not start at the origin at t=0", pts.front().t);
    for (std::size_t i = 1; i < pts.size(); ++i) {
      const auto& a = pts[i - 1];
      const auto& b = pts[i];
      if (!(b.t > a.t)) {
        flag("path malformed", who + " breakpoint times not strictly increasing", b.t);
        continue;
      }
      const double dx = std::abs(b.x - a.x);
      const double dt = b.t - a.t;
      if (dx > (1.0 + kSpeedEps) * dt + rounding_slack(a.x, b.x))
        flag("speed limit exceeded", who + " moves at speed " + fmt(dx / dt), a.t);
    }
  }

  double last_t = -std::numeric_limits<double>::infinity();
  std::size_t captures = 0;
  for (std::size_t i = 0; i < tr.events.size(); ++i) {
    const Event& e = tr.events[i];
    if (e.t < last_t) flag("event order", "event times decrease", e.t);
    last_t = e.t;

    const double xs = tr.pathS.position(e.t);
    const double xr = tr.pathR.position(e.t);
    const double xt = target_position(tr.spec, e.t);
    if (!colocated(xs, e.xS) || !colocated(xr, e.xR))
      flag("event position mismatch", "recorded robot positions disagree with paths", e.t);
    if (!colocated(xt, e.xT))
      flag("target inconsistent", "recorded target position disagrees with spec", e.t);

    switch (e.kind) {
      case EventKind::WirelessMsg:
        if (e.robot != Role::Sender) flag("receiver transmitted", "wireless message not from S", e.t);
        break;
      case EventKind::F2FMeeting:
        if (!colocated(xs, xr)) flag("f2f without colocation", "robots apart at F2F meeting", e.t);
        break;
      case EventKind::Capture:
        ++captures;
        if (i + 1 != tr.events.size()) flag("capture not last", "events follow the capture", e.t);
        if (!colocated(xs, xt) || !colocated(xr, xt))
          flag("capture without colocation",
               "|xS-xT|=" + fmt(std::abs(xs - xt)) + " |xR-xT|=" + fmt(std::abs(xr - xt)), e.t);
        if (!tr.capture_time || *tr.capture_time != e.t)
          flag("capture time mismatch", "capture_time differs from capture event", e.t);
        break;
      case EventKind::Sighting: {
        const double xrob = e.robot == Role::Receiver ? xr : xs;
        if (!colocated(xrob, xt)) flag("sighting without colocation", "robot not at target", e.t);
        break;
      }
      case EventKind::Turnaround:
        break;
    }
  }
  if (captures > 1) flag("multiple captures", "more than one capture event", last_t);
  if (tr.capture_time && captures == 0)
    flag("capture time mismatch", "capture_time set without a capture event", *tr.capture_time);
  return rep;
}

json to_json(const TargetSpec& spec) {
  return json{{"side", spec.side},
              {"direction", std::string(to_string(spec.direction))},
              {"d", spec.d},
              {"v", spec.v}};
}

json to_json(const Transcript& tr) {
  auto path_json = [](const PiecewisePath& p) {
    json arr = json::array();
    for (const auto& b : p.points()) arr.push_back(json::array({b.t, b.x}));
    return arr;
  };
  json events = json::array();
  for (const Event& e : tr.events) {
    json je{{"t", e.t}, {"kind", std::string(to_string(e.kind))},
            {"xS", e.xS}, {"xR", e.xR}, {"xT", e.xT}};
    if (e.robot) je["robot"] = std::string(to_string(*e.robot));
    if (e.payload) je["payload"] = json{{"t", e.payload->t}, {"x", e.payload->x}};
    events.push_back(std::move(je));
  }
  json j;
  j["spec"] = to_json(tr.spec);
  j["paths"] = json{{"S", path_json(tr.pathS)}, {"R", path_json(tr.pathR)}};
  j["events"] = std::move(events);
  j["capture_time"] = tr.capture_time ? json(*tr.capture_time) : json(nullptr);
  return j;
}

Transcript transcript_from_json(const json& j) {
  Transcript tr;
  const json& s = j.at("spec");
  tr.spec = TargetSpec{s.at("side").get<int>(),
                       direction_from_string(s.at("direction").get<std::string>()),
                       s.at("d").get<double>(), s.at("v").get<double>()};
  auto read_path = [](const json& arr) {
    std::vector<Breakpoint> pts;
    for (const auto& p : arr) pts.push_back({p.at(0).get<double>(), p.at(1).get<double>()});
    return PiecewisePath(std::move(pts));
  };
  tr.pathS = read_path(j.at("paths").at("S"));
  tr.pathR = read_path(j.at("paths").at("R"));
  for (const auto& je : j.at("events")) {
    Event e;
    e.t = je.at("t").get<double>();
    e.kind = event_kind_from_string(je.at("kind").get<std::string>());
    e.xS = je.at("xS").get<double>();
    e.xR = je.at("xR").get<double>();
    e.xT = je.at("xT").get<double>();
    if (je.contains("robot")) e.robot = role_from_string(je.at("robot").get<std::string>());
    if (je.contains("payload"))
      e.payload = Intel{je.at("payload").at("t").get<double>(), je.at("payload").at("x").get<double>()};
    tr.events.push_back(e);
  }
  if (!j.at("capture_time").is_null()) tr.capture_time = j.at("capture_time").get<double>();
  return tr;
}

}  // namespace srsearch
