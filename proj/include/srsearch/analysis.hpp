#pragma once

// Closed-form competitive ratios, equalizing speeds, the zigzag expansion
// base and the lower-bound expressions. Everything here is a pure function.

#include <optional>
#include <string>
#include <vector>

namespace srsearch {

// Opposite-direction search, target moving toward the origin.
double cr_nodistance_toward(double v);
double optimal_u_toward(double v);
/// Ratio when S (moving at u) finds the target.
double alg1_ratio_sender_finds(double u, double v);
/// Ratio when R finds the target and has to fetch S.
double alg1_ratio_receiver_finds(double u, double v);

// Same choreography, target moving away. DomainError for v >= 1.
double cr_nodistance_away(double v);
double optimal_u_away(double v);
/// Requires u > v; DomainError otherwise.
double alg3_ratio_sender_finds(double u, double v);
double alg3_ratio_receiver_finds(double u, double v);

struct QuinticRoot {
  double a = 0.0;
  double residual = 0.0;
  /// Sign changes of the polynomial over a uniform sampling of [1, 3].
  int sign_changes = 0;
};

/// (1+v) a^5 + 8 v a^2 + (11 v - 5) a + 4 (v - 1).
double zigzag_polynomial(double v, double a);
/// Root in (1, 3) by bisection to 1e-13 and one Newton step.
/// DomainError unless 0 <= v < 1/3.
QuinticRoot solve_zigzag_quintic(double v);
double zigzag_root(double v);
/// DomainError if a < 1 or the denominator is not positive.
double cr_zigzag_bound(double v, double a);
/// Bound at the optimal base for v < 1/3, its a = 1 limit at v = 1/3,
/// nullopt beyond.
std::optional<double> cr_zigzag(double v);

double cr_waiting(double v);
double cr_nospeed_toward();
double lb_nospeed_away(double v);
/// Ratio forced by the adversary that waits for a robot to reach
/// d/(1-v) - eps and then hides on the other side.
double lb_nospeed_away_finite(double d, double v, double eps);

struct BestChoice {
  std::string name;
  double ratio = 0.0;
};

/// Cheapest of alg1, zigzag (v < 1/3) and waiting; near-ties go to alg1.
/// DomainError for v <= 0.
BestChoice best_toward_algorithm(double v);

struct TowardRow {
  double v = 0.0;
  double alg1 = 0.0;
  std::optional<double> zigzag;
  double waiting = 0.0;
  std::string best;
};

struct AwayRow {
  double v = 0.0;
  double alg3 = 0.0;
  double u = 0.0;
  double lower_bound = 0.0;
};

/// Grid vmin, vmin + step, ... up to vmax inclusive. InvalidParam on an
/// empty or ill-formed range.
std::vector<double> speed_grid(double vmin, double vmax, double step);

/// Toward curves on the grid; with add_crossover the row v = 1/3 is
/// inserted in order when it lies inside [vmin, vmax]. Needs vmin > 0.
std::vector<TowardRow> toward_curve(const std::vector<double>& vs, bool add_crossover);
/// Needs every v in [0, 1).
std::vector<AwayRow> away_curve(const std::vector<double>& vs);

}  // namespace srsearch
