#include "srsearch/analysis.hpp"

#include <algorithm>
#include <cmath>

#include "srsearch/errors.hpp"

namespace srsearch {
namespace {

constexpr double kThird = 1.0 / 3.0;

void need_nonnegative(double v) {
  if (!(v >= 0.0) || !std::isfinite(v)) throw DomainError("v must be a finite value >= 0");
}

void need_away(double v) {
  need_nonnegative(v);
  if (v >= 1.0) throw DomainError("v must be below 1 for a target moving away");
}

}  // namespace

double cr_nodistance_toward(double v) {
  need_nonnegative(v);
  const double s = std::sqrt(v * v + 2.0 * v + 2.0);
  return (s + 1.0) / (s - 1.0);
}

double optimal_u_toward(double v) {
  need_nonnegative(v);
  return std::sqrt(v * v + 2.0 * v + 2.0) - v - 1.0;
}

double alg1_ratio_sender_finds(double u, double v) { return 1.0 + 2.0 / (u + v); }

double alg1_ratio_receiver_finds(double u, double v) {
  return (u - u * v + 3.0 + v) / ((1.0 + v) * (1.0 - u));
}

double cr_nodistance_away(double v) {
  need_away(v);
  const double s = std::sqrt(v * v - 2.0 * v + 2.0);
  return (s + 1.0) / (s - 1.0);
}

double optimal_u_away(double v) {
  need_away(v);
  return (v - 1.0) + std::sqrt(v * v - 2.0 * v + 2.0);
}

double alg3_ratio_sender_finds(double u, double v) {
  if (!(u > v)) throw DomainError("S never reaches a target that outruns it");
  return (2.0 - v + u) / (u - v);
}

double alg3_ratio_receiver_finds(double u, double v) {
  return (3.0 - v + u + v * u) / ((1.0 - v) * (1.0 - u));
}

double zigzag_polynomial(double v, double a) {
  const double a2 = a * a;
  return (1.0 + v) * a2 * a2 * a + 8.0 * v * a2 + (11.0 * v - 5.0) * a + 4.0 * (v - 1.0);
}

QuinticRoot solve_zigzag_quintic(double v) {
  need_nonnegative(v);
  if (v >= kThird) throw DomainError("zigzag needs v < 1/3 for an expansion base above 1");

  QuinticRoot out;
  constexpr int kSamples = 2000;
  double prev = zigzag_polynomial(v, 1.0);
  for (int i = 1; i <= kSamples; ++i) {
    const double cur = zigzag_polynomial(v, 1.0 + 2.0 * i / kSamples);
    if ((prev < 0.0) != (cur < 0.0)) ++out.sign_changes;
    prev = cur;
  }

  // p(1) = 24v - 8 < 0 and p(3) > 0 on the whole domain.
  double lo = 1.0, hi = 3.0;
  while (hi - lo > 1e-13) {
    const double mid = 0.5 * (lo + hi);
    if (zigzag_polynomial(v, mid) < 0.0)
      lo = mid;
    else
      hi = mid;
  }
  double a = 0.5 * (lo + hi);
  const double dp = 5.0 * (1.0 + v) * std::pow(a, 4) + 16.0 * v * a + (11.0 * v - 5.0);
  if (dp != 0.0) {
    const double polished = a - zigzag_polynomial(v, a) / dp;
    if (std::abs(zigzag_polynomial(v, polished)) <= std::abs(zigzag_polynomial(v, a))) a = polished;
  }
  out.a = a;
  out.residual = std::abs(zigzag_polynomial(v, a));
  return out;
}

double zigzag_root(double v) { return solve_zigzag_quintic(v).a; }

double cr_zigzag_bound(double v, double a) {
  need_nonnegative(v);
  if (!(a >= 1.0)) throw DomainError("zigzag expansion base must be at least 1");
  const double a4 = std::pow(a, 4);
  const double den = a4 + v * a4 + 2.0 * a * v + v - 1.0;
  if (!(den > 0.0)) throw DomainError("zigzag bound denominator is not positive");
  return 1.0 + 2.0 * (a4 * a + a4) / den;
}

std::optional<double> cr_zigzag(double v) {
  need_nonnegative(v);
  if (v < kThird) return cr_zigzag_bound(v, zigzag_root(v));
  if (std::abs(v - kThird) <= 1e-12) return cr_zigzag_bound(v, 1.0);
  return std::nullopt;
}

double cr_waiting(double v) {
  if (!(v > 0.0) || !std::isfinite(v)) throw DomainError("waiting needs v > 0");
  return 1.0 + 1.0 / v;
}

double cr_nospeed_toward() { return 3.0; }

double lb_nospeed_away(double v) {
  need_away(v);
  return 1.0 + 2.0 / (1.0 - v);
}

double lb_nospeed_away_finite(double d, double v, double eps) {
  need_away(v);
  const double g = 1.0 - v;
  return ((d - 2.0 * eps) / g - eps + 2.0 * d / (g * g)) / (d / g);
}

BestChoice best_toward_algorithm(double v) {
  if (!(v > 0.0)) throw DomainError("best_toward_algorithm needs v > 0");
  BestChoice best{"alg1", cr_nodistance_toward(v)};
  const auto beats = [&](double r) { return r < best.ratio * (1.0 - 1e-9); };
  if (v < kThird) {
    const double z = cr_zigzag_bound(v, zigzag_root(v));
    if (beats(z)) best = {"zigzag", z};
  }
  const double w = cr_waiting(v);
  if (beats(w)) best = {"waiting", w};
  return best;
}

std::vector<double> speed_grid(double vmin, double vmax, double step) {
  if (!std::isfinite(vmin) || !std::isfinite(vmax) || !std::isfinite(step))
    throw InvalidParam("speed range must be finite");
  if (!(step > 0.0)) throw InvalidParam("speed step must be positive");
  if (vmin > vmax) throw InvalidParam("vmin exceeds vmax");
  std::vector<double> out;
  const double slack = 1e-9 * step;
  for (long i = 0;; ++i) {
    // Rounded to 12 decimals so that 0.01 * 30 prints as 0.3.
    double v = vmin + static_cast<double>(i) * step;
    if (v > vmax + slack) break;
    v = std::round(v * 1e12) / 1e12;
    out.push_back(std::min(v, vmax));
    if (out.size() > 10'000'000) throw InvalidParam("speed range has too many points");
  }
  return out;
}

std::vector<TowardRow> toward_curve(const std::vector<double>& vs, bool add_crossover) {
  std::vector<double> grid = vs;
  if (add_crossover && !grid.empty()) {
    const auto [lo, hi] = std::minmax_element(grid.begin(), grid.end());
    const bool present = std::any_of(grid.begin(), grid.end(),
                                     [](double v) { return std::abs(v - kThird) <= 1e-12; });
    if (!present && *lo <= kThird && kThird <= *hi) {
      grid.insert(std::upper_bound(grid.begin(), grid.end(), kThird), kThird);
    }
  }
  std::vector<TowardRow> rows;
  rows.reserve(grid.size());
  for (double v : grid) {
    if (!(v > 0.0)) throw InvalidParam("toward curves need v > 0");
    TowardRow r;
    r.v = v;
    r.alg1 = cr_nodistance_toward(v);
    r.zigzag = cr_zigzag(v);
    r.waiting = cr_waiting(v);
    r.best = best_toward_algorithm(v).name;
    rows.push_back(std::move(r));
  }
  return rows;
}

std::vector<AwayRow> away_curve(const std::vector<double>& vs) {
  std::vector<AwayRow> rows;
  rows.reserve(vs.size());
  for (double v : vs) {
    if (!(v >= 0.0 && v < 1.0)) throw InvalidParam("away curves need 0 <= v < 1");
    rows.push_back({v, cr_nodistance_away(v), optimal_u_away(v), lb_nospeed_away(v)});
  }
  return rows;
}

}  // namespace srsearch
