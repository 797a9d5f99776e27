#include <algorithm>
#include <cmath>
#include <functional>
#include <sstream>

#include "srsearch/adversary.hpp"
#include "srsearch/analysis.hpp"
#include "srsearch/errors.hpp"

namespace srsearch {
namespace {

std::string fmt(double x) {
  std::ostringstream os;
  os.precision(10);
  os << x;
  return os.str();
}

// k / per_unit for k in [from, to].
std::vector<double> steps(int from, int to, double per_unit) {
  std::vector<double> out;
  for (int k = from; k <= to; ++k) out.push_back(k / per_unit);
  return out;
}

class Suite {
 public:
  Suite(const Tolerances& tol, unsigned jobs) : tol_(tol), jobs_(jobs) {}

  std::vector<CrReport> run() {
    static_target();
    exact_match();
    crossover();
    waiting_ratio();
    nospeed_toward_ratio();
    zigzag_soundness();
    lower_bound_realization();
    alg5_envelope();
    alg6_envelope();
    legality();
    return std::move(reports_);
  }

 private:
  CrReport base(int criterion, std::string check, const std::string& strategy, Direction model,
                std::optional<double> v) {
    CrReport r;
    r.criterion = criterion;
    r.check = std::move(check);
    r.strategy = strategy;
    r.model = std::string(to_string(model));
    r.v = v;
    return r;
  }

  // Runs body; an engine error becomes a failing report instead.
  void guarded(CrReport r, const std::function<void(CrReport&)>& body) {
    try {
      body(r);
    } catch (const std::exception& e) {
      r.pass = false;
      r.note = std::string("error: ") + e.what();
    }
    reports_.push_back(std::move(r));
  }

  EmpiricalCr measure(const Contender& c, double v, const InstanceGrid& grid, CrReport& r) {
    EmpiricalCr e = empirical_cr(c, v, grid, jobs_);
    r.runs += e.instances.size();
    r.violations += e.violations;
    r.empirical = e.sup;
    r.worst = e.worst;
    return e;
  }

  void static_target() {
    const double u = std::sqrt(2.0) - 1.0;
    guarded(base(1, "exact", "alg3", Direction::Away, 0.0), [&](CrReport& r) {
      const auto e = measure(make_contender("alg3", 0.0, {{"u", u}}), 0.0, grid_, r);
      r.prediction = 3.0 + 2.0 * std::sqrt(2.0);
      r.tolerance = tol_.static_abs;
      double worst = 0.0;
      for (const auto& i : e.instances) worst = std::max(worst, std::abs(i.ratio - r.prediction));
      r.pass = worst <= r.tolerance;
      r.note = "max |ratio - prediction| over all d = " + fmt(worst);
    });
  }

  void exact_match() {
    for (double v : steps(1, 20, 20)) {
      guarded(base(2, "exact", "alg1", Direction::Toward, v), [&](CrReport& r) {
        const double u = optimal_u_toward(v);
        exact_case(r, make_contender("alg1", v), v, cr_nodistance_toward(v),
                   alg1_ratio_sender_finds(u, v), alg1_ratio_receiver_finds(u, v));
      });
    }
    for (double v : steps(0, 19, 20)) {
      guarded(base(2, "exact", "alg3", Direction::Away, v), [&](CrReport& r) {
        const double u = optimal_u_away(v);
        exact_case(r, make_contender("alg3", v), v, cr_nodistance_away(v),
                   alg3_ratio_sender_finds(u, v), alg3_ratio_receiver_finds(u, v));
      });
    }
  }

  void exact_case(CrReport& r, const Contender& c, double v, double formula, double s_case,
                  double r_case) {
    const auto e = measure(c, v, grid_, r);
    r.prediction = formula;
    r.tolerance = tol_.exact_rel;
    const double sup_err = std::abs(e.sup / formula - 1.0);
    double s_err = 0.0, r_err = 0.0;
    for (const auto& i : e.instances) {
      if (i.spec.side < 0)
        s_err = std::max(s_err, std::abs(i.ratio / s_case - 1.0));
      else
        r_err = std::max(r_err, std::abs(i.ratio / r_case - 1.0));
    }
    r.pass = sup_err <= r.tolerance && s_err <= r.tolerance && r_err <= r.tolerance;
    r.note = "relative error: sup " + fmt(sup_err) + ", S-finds case " + fmt(s_err) +
             ", R-finds case " + fmt(r_err);
  }

  void crossover() {
    const double third = 1.0 / 3.0;
    guarded(base(3, "exact", "alg1", Direction::Toward, third), [&](CrReport& r) {
      r.empirical = cr_nodistance_toward(third);
      r.prediction = 4.0;
      r.tolerance = tol_.crossover_abs;
      r.pass = std::abs(r.empirical - 4.0) <= r.tolerance;
    });
    guarded(base(3, "exact", "waiting", Direction::Toward, third), [&](CrReport& r) {
      r.empirical = cr_waiting(third);
      r.prediction = 4.0;
      r.tolerance = tol_.crossover_abs;
      r.pass = std::abs(r.empirical - 4.0) <= r.tolerance;
    });
    const double edge = third - 1e-5;
    guarded(base(3, "exact", "zigzag", Direction::Toward, edge), [&](CrReport& r) {
      r.empirical = cr_zigzag_bound(edge, zigzag_root(edge));
      r.prediction = 4.0;
      r.tolerance = tol_.zigzag_edge_abs;
      r.pass = std::abs(r.empirical - 4.0) <= r.tolerance;
      r.note = "bound at the optimal base just below v = 1/3";
    });
    guarded(base(3, "property", "best", Direction::Toward, std::nullopt), [&](CrReport& r) {
      std::string wrong;
      for (double v : steps(1, 6, 20))
        if (best_toward_algorithm(v).name != "alg1") wrong += " " + fmt(v);
      for (double v : steps(8, 20, 20))
        if (best_toward_algorithm(v).name != "waiting") wrong += " " + fmt(v);
      r.pass = wrong.empty();
      r.note = wrong.empty() ? "alg1 on 0.05..0.30, waiting on 0.40..1.0"
                             : "unexpected choice at v =" + wrong;
    });
  }

  void waiting_ratio() {
    for (double v : {0.1, 0.25, 0.5, 1.0, 2.0}) {
      guarded(base(4, "exact", "waiting", Direction::Toward, v), [&](CrReport& r) {
        const auto e = measure(make_contender("waiting", v), v, grid_, r);
        r.prediction = cr_waiting(v);
        r.tolerance = tol_.waiting_abs;
        double worst = 0.0;
        for (const auto& i : e.instances)
          worst = std::max(worst, std::abs(i.ratio - r.prediction));
        r.pass = worst <= r.tolerance;
        r.note = "max |ratio - prediction| = " + fmt(worst);
      });
    }
  }

  void nospeed_toward_ratio() {
    for (double v : steps(0, 40, 20)) {
      guarded(base(5, "exact", "alg4", Direction::Toward, v), [&](CrReport& r) {
        const auto e = measure(make_contender("alg4", v), v, grid_, r);
        r.prediction = cr_nospeed_toward();
        r.tolerance = tol_.nospeed_abs;
        double wrong_side = 0.0;
        for (const auto& i : e.instances)
          if (i.spec.side < 0) wrong_side = std::max(wrong_side, std::abs(i.ratio - 3.0));
        r.pass = wrong_side <= r.tolerance && e.sup <= 3.0 + r.tolerance;
        r.note = "wrong side max |ratio - 3| = " + fmt(wrong_side);
      });
    }
  }

  void zigzag_soundness() {
    for (double v : steps(1, 6, 20)) {
      guarded(base(6, "upper", "zigzag", Direction::Toward, v), [&](CrReport& r) {
        const QuinticRoot q = solve_zigzag_quintic(v);
        const Contender c = make_contender("zigzag", v);
        const auto grid = with_distances(grid_, critical_distances(c, v, grid_.ds.back()));
        const auto e = measure(c, v, grid, r);
        r.prediction = cr_zigzag_bound(v, q.a);
        r.tolerance = tol_.zigzag_slack;
        const bool root_ok =
            q.a > 1.0 && q.residual < tol_.quintic_residual && q.sign_changes == 1;
        r.pass = root_ok && e.sup <= r.prediction + r.tolerance;
        // Large-d behaviour separately: the bound is a limit in d.
        double far = 0.0;
        for (const auto& i : e.instances)
          if (i.spec.d >= 64.0) far = std::max(far, i.ratio);
        r.note = "a = " + fmt(q.a) + ", residual " + fmt(q.residual) + ", sign changes " +
                 std::to_string(q.sign_changes) + ", " + std::to_string(grid.ds.size()) +
                 " distances, sup over d >= 64 is " + fmt(far);
      });
    }
    guarded(base(6, "property", "zigzag", Direction::Toward, 0.35), [&](CrReport& r) {
      try {
        zigzag_root(0.35);
        r.note = "no DomainError";
      } catch (const DomainError&) {
        r.pass = true;
        r.note = "DomainError raised";
      }
    });
  }

  void lower_bound_realization() {
    constexpr double kEps = 1e-6;
    for (const char* name : {"alg3", "alg5", "alg6"}) {
      for (double v : {0.0, 0.25, 0.5, 0.75}) {
        guarded(base(7, "lower", name, Direction::Away, v), [&](CrReport& r) {
          const Contender c = make_contender(name, v);
          r.prediction = lb_nospeed_away(v);
          r.tolerance = tol_.lower_bound_rel;
          double low = kInf;
          for (double d : {1.0, 8.0}) {
            const TargetSpec spec =
                lb_nospeed_away_instance(lb_nospeed_away_prefix(c, d, v, kEps), d, v, kEps);
            InstanceGrid one{{d}, {spec.side}};
            const auto e = empirical_cr(c, v, one, 1);
            r.runs += 1;
            r.violations += e.violations;
            if (e.sup < low) {
              low = e.sup;
              r.worst = spec;
            }
          }
          r.empirical = low;
          r.pass = low >= r.prediction * (1.0 - r.tolerance);
          r.note = "finite-eps construction value at d = 1: " +
                   fmt(lb_nospeed_away_finite(1.0, v, kEps));
        });
      }
    }
  }

  void alg5_envelope() {
    const std::vector<double> vs{0.0, 0.5, 0.75, 0.875, 0.9375};
    const Contender c = make_contender("alg5", 0.0);
    const InstanceGrid fine = log_distance_grid(-4, 10, 18);
    std::vector<double> coarse_sup(vs.size(), 0.0), fine_sup(vs.size(), 0.0);
    std::vector<CrReport> rows;
    for (std::size_t k = 0; k < vs.size(); ++k) {
      CrReport r = base(8, "envelope", "alg5", Direction::Away, vs[k]);
      try {
        coarse_sup[k] = measure(c, vs[k], grid_, r).sup;
        fine_sup[k] = measure(c, vs[k], fine, r).sup;
        r.pass = true;
      } catch (const std::exception& e) {
        r.note = std::string("error: ") + e.what();
      }
      r.empirical = fine_sup[k];
      rows.push_back(std::move(r));
    }
    const double c_coarse = fit(vs, coarse_sup, [](double v) { return alg5_envelope_shape(v); });
    const double c_fine = fit(vs, fine_sup, [](double v) { return alg5_envelope_shape(v); });
    for (std::size_t k = 0; k < vs.size(); ++k) {
      CrReport& r = rows[k];
      const double shape = alg5_envelope_shape(vs[k]);
      r.prediction = 1.0 + c_coarse * shape;
      r.tolerance = tol_.envelope_stability;
      const bool inside = fine_sup[k] <= 1.0 + c_coarse * (1.0 + r.tolerance) * shape;
      if (r.note.empty())
        r.note = "C = " + fmt(c_coarse) + ", shape = " + fmt(shape) +
                 (shape > 0.0 ? "" : " (log2 u = 0: envelope collapses to 1)");
      r.pass = r.pass && inside;
      reports_.push_back(std::move(r));
    }
    stability_report("alg5", c_coarse, c_fine);
  }

  void alg6_envelope() {
    const std::vector<double> vs{0.0, 0.5, 0.75, 0.875, 0.9375};
    const Contender c = make_contender("alg6", 0.0);
    // The shape needs log2 log2 M > 0, so distances start at 4.
    auto from_four = [](InstanceGrid g) {
      std::erase_if(g.ds, [](double d) { return d < 4.0; });
      return g;
    };

    struct Row {
      CrReport report;
      std::vector<InstanceResult> coarse, fine;
    };
    std::vector<Row> rows;
    for (double v : vs) {
      Row row{base(8, "envelope", "alg6", Direction::Away, v), {}, {}};
      try {
        const auto crit = critical_distances(c, v, grid_.ds.back());
        row.coarse = measure(c, v, from_four(with_distances(grid_, crit)), row.report).instances;
        row.fine = measure(c, v, from_four(with_distances(log_distance_grid(-4, 10, 18), crit)),
                           row.report)
                       .instances;
        row.report.pass = true;
      } catch (const std::exception& e) {
        row.report.note = std::string("error: ") + e.what();
      }
      rows.push_back(std::move(row));
    }
    auto constant = [](const std::vector<InstanceResult>& xs) {
      double best = 0.0;
      for (const auto& i : xs) {
        const double shape = alg6_envelope_shape(i.spec.d, i.spec.v);
        best = std::max(best, shape > 0.0 ? (i.ratio - 1.0) / shape : kInf);
      }
      return best;
    };
    double c_coarse = 0.0, c_fine = 0.0;
    for (const Row& row : rows) {
      c_coarse = std::max(c_coarse, constant(row.coarse));
      c_fine = std::max(c_fine, constant(row.fine));
    }
    for (Row& row : rows) {
      CrReport& r = row.report;
      const double own = constant(row.fine);
      r.empirical = own;
      r.prediction = c_coarse;
      r.tolerance = tol_.envelope_stability;
      r.pass = r.pass && own <= c_coarse * (1.0 + r.tolerance);
      if (r.note.empty())
        r.note = "empirical = max (ratio - 1)/shape over d in [4, 1024] with critical distances";
      reports_.push_back(std::move(r));
    }
    stability_report("alg6", c_coarse, c_fine);
  }

  static double fit(const std::vector<double>& vs, const std::vector<double>& sups,
                    const std::function<double(double)>& shape) {
    double c = 0.0;
    for (std::size_t k = 0; k < vs.size(); ++k) {
      const double s = shape(vs[k]);
      if (s > 0.0) c = std::max(c, (sups[k] - 1.0) / s);
    }
    return c;
  }

  void stability_report(const std::string& name, double c_coarse, double c_fine) {
    CrReport r = base(8, "property", name, Direction::Away, std::nullopt);
    r.empirical = c_fine;
    r.prediction = c_coarse;
    r.tolerance = tol_.envelope_stability;
    r.pass = std::isfinite(c_coarse) && c_coarse > 0.0 &&
             std::abs(c_fine / c_coarse - 1.0) <= r.tolerance;
    r.note = "fitted constant: 9 vs 18 distances per octave";
    reports_.push_back(std::move(r));
  }

  void legality() {
    CrReport r;
    r.criterion = 9;
    r.check = "property";
    r.strategy = "all";
    r.model = "both";
    for (const CrReport& x : reports_) {
      r.runs += x.runs;
      r.violations += x.violations;
    }
    r.empirical = static_cast<double>(r.violations);
    r.prediction = 0.0;
    r.pass = r.violations == 0 && r.runs > 0;
    r.note = std::to_string(r.runs) + " transcripts validated";
    reports_.push_back(std::move(r));
  }

  Tolerances tol_;
  unsigned jobs_;
  InstanceGrid grid_ = log_distance_grid();
  std::vector<CrReport> reports_;
};

}  // namespace

std::vector<CrReport> verify_all(const Tolerances& tol, unsigned jobs) {
  return Suite(tol, jobs).run();
}

}  // namespace srsearch
