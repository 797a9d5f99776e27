#include "srsearch/cli.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "srsearch/adversary.hpp"
#include "srsearch/analysis.hpp"
#include "srsearch/errors.hpp"

namespace srsearch {
namespace {

std::string num(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string one_line(std::string s) {
  for (char& c : s)
    if (c == '\n' || c == '\r') c = ' ';
  return s;
}

std::map<std::string, double> parse_params(const std::vector<std::string>& kvs) {
  std::map<std::string, double> out;
  for (const auto& kv : kvs) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos || eq == 0) throw InvalidParam("--param expects key=value, got '" + kv + "'");
    const std::string key = kv.substr(0, eq);
    const std::string val = kv.substr(eq + 1);
    std::size_t used = 0;
    double x = 0.0;
    try {
      x = std::stod(val, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != val.size() || val.empty()) throw InvalidParam("--param " + key + " is not a number");
    out[key] = x;
  }
  return out;
}

// Writes to --out when given, else to the command's stdout.
void emit(const std::string& text, const std::string& path, std::ostream& out) {
  if (path.empty()) {
    out << text;
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw InvalidParam("cannot write " + path);
  f << text;
  if (!f) throw InvalidParam("failed writing " + path);
}

struct Options {
  std::string strategy;
  std::optional<std::string> model;
  std::optional<double> v, d;
  int side = 1;
  std::vector<std::string> params;
  std::string out_path;
  std::string format = "csv";
  unsigned jobs = 0;
  std::size_t max_events = 1'000'000;
  std::optional<double> vmin, vmax, vstep;
  std::vector<std::string> tolerances;
};

int cmd_simulate(const Options& o, std::ostream& out) {
  if (!o.v || !o.d) throw InvalidParam("simulate needs --v and --d");
  const Contender c = make_contender(o.strategy, *o.v, parse_params(o.params));
  if (o.model && direction_from_string(*o.model) != c.model)
    throw InvalidParam(o.strategy + " is defined for the " + std::string(to_string(c.model)) +
                       " model only");
  const TargetSpec spec = TargetSpec::make(o.side, c.model, *o.d, *o.v);
  const Transcript tr = simulate(c.make(spec.d), spec, SimLimits{o.max_events});
  const std::string json = to_json(tr).dump(2) + "\n";
  if (!o.out_path.empty()) emit(json, o.out_path, out);
  if (o.format == "json" && o.out_path.empty()) {
    out << json;
  } else {
    out << "strategy=" << c.name << " capture_time=" << num(*tr.capture_time)
        << " t_opt=" << num(t_opt(spec)) << " ratio=" << num(tr.ratio())
        << " events=" << tr.events.size() << "\n";
  }
  return kExitOk;
}

std::string toward_csv(const std::vector<TowardRow>& rows) {
  std::string s = "v,cr_alg1,cr_zigzag,cr_waiting,best\n";
  for (const auto& r : rows)
    s += num(r.v) + "," + num(r.alg1) + "," + (r.zigzag ? num(*r.zigzag) : "") + "," +
         num(r.waiting) + "," + r.best + "\n";
  return s;
}

std::string toward_json(const std::vector<TowardRow>& rows) {
  nlohmann::json j = nlohmann::json::array();
  for (const auto& r : rows)
    j.push_back({{"v", r.v},
                 {"cr_alg1", r.alg1},
                 {"cr_zigzag", r.zigzag ? nlohmann::json(*r.zigzag) : nlohmann::json(nullptr)},
                 {"cr_waiting", r.waiting},
                 {"best", r.best}});
  return j.dump(2) + "\n";
}

std::string away_csv(const std::vector<AwayRow>& rows) {
  std::string s = "v,cr_alg3,u_alg3,lb_nospeed_away\n";
  for (const auto& r : rows)
    s += num(r.v) + "," + num(r.alg3) + "," + num(r.u) + "," + num(r.lower_bound) + "\n";
  return s;
}

std::string away_json(const std::vector<AwayRow>& rows) {
  nlohmann::json j = nlohmann::json::array();
  for (const auto& r : rows)
    j.push_back({{"v", r.v}, {"cr_alg3", r.alg3}, {"u_alg3", r.u}, {"lb_nospeed_away", r.lower_bound}});
  return j.dump(2) + "\n";
}

int cmd_curve(const Options& o, std::ostream& out, bool figure) {
  const Direction model = figure ? Direction::Toward
                                 : direction_from_string(o.model.value_or("toward"));
  double lo = 0.01, hi = 1.0, step = 0.01;
  if (!figure) {
    if (model == Direction::Toward) {
      lo = 0.05, hi = 2.0, step = 0.05;
    } else {
      lo = 0.0, hi = 0.95, step = 0.05;
    }
  }
  const auto vs = speed_grid(o.vmin.value_or(lo), o.vmax.value_or(hi), o.vstep.value_or(step));
  std::string text;
  if (model == Direction::Toward) {
    const auto rows = toward_curve(vs, figure);
    text = o.format == "json" ? toward_json(rows) : toward_csv(rows);
  } else {
    const auto rows = away_curve(vs);
    text = o.format == "json" ? away_json(rows) : away_csv(rows);
  }
  emit(text, o.out_path, out);
  return kExitOk;
}

int cmd_root(const Options& o, std::ostream& out) {
  if (!o.v) throw InvalidParam("root needs --v");
  const QuinticRoot q = solve_zigzag_quintic(*o.v);
  out << "a=" << num(q.a) << " residual=" << num(q.residual)
      << " sign_changes=" << q.sign_changes << " bound=" << num(cr_zigzag_bound(*o.v, q.a))
      << "\n";
  return kExitOk;
}

Tolerances parse_tolerances(const std::vector<std::string>& kvs) {
  Tolerances t;
  const std::map<std::string, double*> slots{
      {"static_abs", &t.static_abs},         {"exact_rel", &t.exact_rel},
      {"crossover_abs", &t.crossover_abs},   {"zigzag_edge_abs", &t.zigzag_edge_abs},
      {"waiting_abs", &t.waiting_abs},       {"nospeed_abs", &t.nospeed_abs},
      {"zigzag_slack", &t.zigzag_slack},     {"quintic_residual", &t.quintic_residual},
      {"lower_bound_rel", &t.lower_bound_rel}, {"envelope_stability", &t.envelope_stability}};
  for (const auto& [k, x] : parse_params(kvs)) {
    auto it = slots.find(k);
    if (it == slots.end()) throw InvalidParam("unknown tolerance '" + k + "'");
    if (!(x >= 0.0)) throw InvalidParam("tolerance " + k + " must be >= 0");
    *it->second = x;
  }
  return t;
}

int cmd_verify(const Options& o, std::ostream& out) {
  const auto reports = verify_all(parse_tolerances(o.tolerances), o.jobs);
  nlohmann::json j = nlohmann::json::array();
  bool ok = true;
  for (const auto& r : reports) {
    j.push_back(to_json(r));
    ok = ok && r.pass;
  }
  emit(j.dump(2) + "\n", o.out_path, out);
  return ok ? kExitOk : kExitVerifyFailed;
}

int exit_code_for(const Error& e) {
  const std::string& k = e.kind();
  if (k == "InvalidParam" || k == "DomainError") return kExitConfig;
  return kExitEngine;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Two-robot sender/receiver search on a line"};
  app.require_subcommand(1);
  Options o;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--out", o.out_path, "Output file");
    sub->add_option("--format", o.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  };
  auto add_range = [&](CLI::App* sub) {
    sub->add_option("--vmin", o.vmin);
    sub->add_option("--vmax", o.vmax);
    sub->add_option("--vstep", o.vstep);
  };

  auto* sim = app.add_subcommand("simulate", "Run one instance and report the ratio");
  sim->add_option("--strategy", o.strategy, "alg1 alg3 zigzag waiting alg4 alg5 alg6")->required();
  sim->add_option("--model", o.model, "toward or away");
  sim->add_option("--v", o.v, "Target speed");
  sim->add_option("--d", o.d, "Initial distance");
  sim->add_option("--side", o.side, "+1 or -1");
  sim->add_option("--param", o.params, "Strategy parameter key=value");
  sim->add_option("--max-events", o.max_events);
  add_common(sim);

  auto* curve = app.add_subcommand("curve", "Closed-form ratio curves as CSV");
  curve->add_option("--model", o.model, "toward or away");
  add_range(curve);
  add_common(curve);

  auto* figure = app.add_subcommand("figure", "Toward-model comparison with the crossover row");
  add_range(figure);
  add_common(figure);

  auto* root = app.add_subcommand("root", "Zigzag expansion base for a speed");
  root->add_option("--v", o.v)->required();

  auto* verify = app.add_subcommand("verify", "Theorem regression suite as JSON");
  verify->add_option("--jobs", o.jobs, "Worker threads (0: all cores)");
  verify->add_option("--tol", o.tolerances, "Tolerance override key=value");
  add_common(verify);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: ConfigError: " << one_line(e.what()) << "\n";
    return kExitConfig;
  }

  try {
    if (sim->parsed()) return cmd_simulate(o, out);
    if (curve->parsed()) return cmd_curve(o, out, false);
    if (figure->parsed()) return cmd_curve(o, out, true);
    if (root->parsed()) return cmd_root(o, out);
    return cmd_verify(o, out);
  } catch (const Error& e) {
    err << "error: " << e.kind() << ": " << one_line(e.what()) << "\n";
    return exit_code_for(e);
  } catch (const std::exception& e) {
    err << "error: InternalError: " << one_line(e.what()) << "\n";
    return kExitEngine;
  }
}

}  // namespace srsearch
