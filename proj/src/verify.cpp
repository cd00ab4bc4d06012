#include "radialqc/verify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>

#include "radialqc/distortion.hpp"
#include "radialqc/powermap.hpp"
#include "radialqc/random.hpp"
#include "radialqc/uqrmap.hpp"
#include "radialqc/zoom.hpp"

namespace radialqc {

namespace {

constexpr double kFiniteDifferenceTol = 1e-6;
constexpr double kAttractionTol = 1e-6;
constexpr double kExactRelTol = 1e-12;
constexpr double kRelStep = 1e-6;

class Suite {
 public:
  explicit Suite(double tol) : tol_(tol) {}

  void at_most(std::string module, std::string name, double measured, double threshold) {
    results_.push_back({std::move(module), std::move(name), measured, "<=", threshold,
                        measured <= threshold});
  }
  void at_least(std::string module, std::string name, double measured, double threshold) {
    results_.push_back({std::move(module), std::move(name), measured, ">=", threshold,
                        measured >= threshold});
  }
  void residual(std::string module, std::string name, double measured) {
    at_most(std::move(module), std::move(name), measured, tol_);
  }

  double tol() const { return tol_; }
  std::vector<CheckResult> take() { return std::move(results_); }

 private:
  double tol_;
  std::vector<CheckResult> results_;
};

LogRadius interior_point(const PiecewisePowerMap& f, std::uint64_t n, double frac) {
  const double hi = f.log2_breakpoint(n - 1);
  const double lo = f.log2_breakpoint(n);
  return LogRadius::from_log2(lo + frac * (hi - lo));
}

void check_powermap(const PiecewisePowerMap& f, std::size_t grid_points, Suite& s) {
  const auto depth = f.depth();

  // Recurrence log2 r_n = log2 r_{n-1} - 1/k_n, summed with Neumaier compensation.
  double rec = 0.0, carry = 0.0;
  double worst_rec = 0.0, worst_anchor = 0.0, worst_cont = 0.0, worst_value = 0.0;
  for (std::uint64_t n = 1; n <= depth; ++n) {
    const double term = -1.0 / f.exponent(n);
    const double sum = rec + term;
    carry += std::fabs(rec) >= std::fabs(term) ? (rec - sum) + term : (term - sum) + rec;
    rec = sum;
    const double Ln = f.log2_breakpoint(n);
    worst_rec = std::max(worst_rec, std::fabs(rec + carry - Ln));
    worst_anchor = std::max(worst_anchor,
                            std::fabs(f.log2_coefficient(n) + static_cast<double>(n) + f.exponent(n) * Ln));
    const double left = f.log2_coefficient(n) + f.exponent(n) * Ln;
    const double right = f.log2_coefficient(n + 1) + f.exponent(n + 1) * Ln;
    worst_cont = std::max(worst_cont, std::fabs(left - right));
    worst_value = std::max(worst_value, std::fabs(f.eval_log(f.breakpoint(n)).log2() + static_cast<double>(n)));
  }
  s.residual("powermap", "closed_form_vs_recurrence", worst_rec);
  s.residual("powermap", "coefficient_anchor", worst_anchor);
  s.residual("powermap", "continuity_at_breakpoints", worst_cont);
  s.residual("powermap", "value_at_breakpoints", worst_value);

  double worst_rs = 0.0, worst_sub = 0.0;
  const double shift = 1.0 / f.K();
  for (std::uint64_t n = 1; 2 * n < depth; ++n) {
    const double L2n = f.log2_breakpoint(2 * n);
    for (std::uint64_t m = 1; 2 * n + m <= depth; ++m) {
      worst_rs = std::max(worst_rs, std::fabs(L2n + f.log2_breakpoint(m) - f.log2_breakpoint(2 * n + m)));
    }
  }
  for (std::uint64_t n = 0; 2 * n + 1 <= depth; ++n) {
    const double Lodd = f.log2_breakpoint(2 * n + 1);
    for (std::uint64_t m = 0; 2 * (n + m) + 1 <= depth; ++m) {
      const double lhs = Lodd + f.log2_breakpoint(2 * m + 1);
      worst_sub = std::max(worst_sub, std::fabs(lhs - (f.log2_breakpoint(2 * (n + m) + 1) - shift)));
    }
  }
  s.residual("powermap", "product_identity_even", worst_rs);
  s.residual("powermap", "product_identity_odd", worst_sub);

  const auto grid = log_uniform_grid(3.0 * -f.period(), 0.0, grid_points);
  double worst_mult = 0.0;
  const std::uint64_t n_max = std::min<std::uint64_t>(50, depth / 2);
  for (std::uint64_t n = 1; n <= n_max; ++n) {
    const double L2n = f.log2_breakpoint(2 * n);
    for (const auto x : grid) {
      const double shifted = f.eval_log(LogRadius::from_log2(x.log2() + L2n)).log2();
      worst_mult = std::max(worst_mult, std::fabs(shifted - (f.eval_log(x).log2() - 2.0 * static_cast<double>(n))));
    }
  }
  s.residual("powermap", "even_breakpoint_multiplicativity", worst_mult);

  const auto deep = log_uniform_grid(f.log2_breakpoint(depth), 0.0, grid_points);
  double worst_round = 0.0;
  double violations = 0.0;
  double prev = -std::numeric_limits<double>::infinity();
  for (const auto x : deep) {
    const auto y = f.eval_log(x);
    worst_round = std::max(worst_round, std::fabs(f.inverse_eval_log(y).log2() - x.log2()));
    if (!(y.log2() > prev)) violations += 1.0;
    prev = y.log2();
  }
  s.residual("powermap", "inverse_round_trip", worst_round);
  s.at_most("powermap", "strict_monotonicity_violations", violations, 0.0);
}

void check_zoom(const PiecewisePowerMap& f, std::size_t grid_points, std::mt19937_64& rng, Suite& s) {
  const std::uint64_t n_max = std::min<std::uint64_t>(50, f.depth() / 2);
  const auto grid = log_uniform_grid(3.0 * -f.period(), 0.0, grid_points);
  const LimitFunction P1(LimitKind::P1, f), P2(LimitKind::P2, f), Q1(LimitKind::Q1, f), Q2(LimitKind::Q2, f);

  s.residual("zoom", "even_zoom_equals_P1", zoom_limit_deviation(f, ZoomSequence::Even, P1, 1, n_max, grid));
  s.residual("zoom", "odd_zoom_equals_P2", zoom_limit_deviation(f, ZoomSequence::Odd, P2, 1, n_max, grid));
  s.at_least("zoom", "even_zoom_differs_from_P2",
             zoom_limit_deviation(f, ZoomSequence::Even, P2, 1, n_max, grid), 100.0 * s.tol());

  const auto deep = log_uniform_grid(f.log2_breakpoint(f.depth()), 0.0, grid_points);
  double worst_p1f = 0.0;
  for (const auto x : deep) worst_p1f = std::max(worst_p1f, std::fabs(P1.eval(x).log2() - f.eval_log(x).log2()));
  s.residual("zoom", "P1_coincides_with_f", worst_p1f);

  double worst_norm = 0.0;
  for (const auto* lf : {&P1, &P2, &Q1, &Q2}) {
    worst_norm = std::max(worst_norm, std::fabs(lf->eval(LogRadius::from_log2(0.0)).log2()));
  }
  s.residual("zoom", "unit_ball_normalization", worst_norm);

  double worst_bp = 0.0;
  for (std::uint64_t m = 1; m <= f.depth(); ++m) {
    worst_bp = std::max(worst_bp, std::fabs(P1.eval(f.breakpoint(m)).log2() + static_cast<double>(m)));
    if (m % 2 == 0) {
      worst_bp = std::max(worst_bp, std::fabs(Q1.eval(f.breakpoint(m)).log2() - f.log2_breakpoint(m)));
    }
  }
  s.residual("zoom", "limit_values_at_breakpoints", worst_bp);

  double worst_shift = 0.0;
  for (const auto* lf : {&P2, &Q2}) {
    for (std::uint64_t m = 0; 2 * m + 2 <= f.depth(); ++m) {
      const double b = lf->log2_boundary(2 * m + 1);
      worst_shift = std::max(worst_shift, std::fabs(lf->branch_value(2 * m + 1, b) - lf->branch_value(2 * m + 2, b)));
    }
  }
  s.residual("zoom", "shifted_breakpoint_continuity", worst_shift);

  // Intermediate values: random r0 in the first period, lambda strictly inside.
  double worst_ivt = 0.0;
  int pairs = 0;
  while (pairs < 100) {
    const auto r0 = LogRadius::from_log2(uniform_in(rng, -f.period(), 0.0));
    const double a = P1.eval(r0).log2(), b = P2.eval(r0).log2();
    if (std::fabs(a - b) < 1e-3) continue;
    const double lambda = std::min(a, b) + uniform_in(rng, 0.01, 0.99) * std::fabs(a - b);
    const auto k = static_cast<std::uint64_t>(1 + pairs % std::max<std::uint64_t>(1, f.depth() / 4));
    ++pairs;
    try {
      const auto res = ivt_sample(f, r0, LogRadius::from_log2(lambda), s.tol(), k);
      const double check = rescaled_eval(f, res.scale, r0).log2();
      worst_ivt = std::max(worst_ivt, std::fabs(check - lambda));
    } catch (const std::runtime_error&) {
      // Tolerance below what bisection in double can reach.
      worst_ivt = std::numeric_limits<double>::infinity();
    }
  }
  s.residual("zoom", "ivt_sample_residual", worst_ivt);

  const auto r1 = f.breakpoint(1);
  const double mid = 0.5 * (P1.eval(r1).log2() + P2.eval(r1).log2());
  double decreasing_violations = 0.0;
  double prev = 1.0;
  const std::uint64_t periods = std::min<std::uint64_t>(10, f.depth() / 2);
  for (std::uint64_t k = 1; k <= periods; ++k) {
    try {
      const double t = ivt_sample(f, r1, LogRadius::from_log2(mid), s.tol(), k).scale.log2();
      if (!(t < prev)) decreasing_violations += 1.0;
      prev = t;
    } catch (const std::runtime_error&) {
      decreasing_violations += 1.0;
    }
  }
  s.at_most("zoom", "ivt_scales_strictly_decreasing_violations", decreasing_violations, 0.0);

  const std::vector<LogRadius> samples = {LogRadius::from_log2(0.0), f.breakpoint(1), f.breakpoint(2)};
  s.at_least("zoom", "P1_homogeneity_defect", homogeneity_defect(P1, samples), 100.0 * s.tol());
  s.at_least("zoom", "Q1_homogeneity_defect", homogeneity_defect(Q1, samples), 100.0 * s.tol());
  const RadialPower power(f.K());
  s.at_most("zoom", "pure_power_homogeneity_defect",
            homogeneity_defect([&](LogRadius x) { return power.eval_log(x); }, samples), kExactRelTol);

  double worst_1d = 0.0;
  for (const double delta : {1e-6, 1e-3, 0.1, 0.5, 1.0}) {
    worst_1d = std::max(worst_1d, std::fabs(example_1d_mean_radius(delta) - 0.75 * delta) / delta);
    worst_1d = std::max(worst_1d, std::fabs(example_1d_rescaled(1.0, delta) - 4.0 / 3.0));
    worst_1d = std::max(worst_1d, std::fabs(example_1d_rescaled(-1.0, delta) + 2.0 / 3.0));
  }
  s.at_most("zoom", "one_dimensional_example", worst_1d, kExactRelTol);
}

void check_uqrmap(const PiecewisePowerMap& f, std::size_t grid_points, Suite& s) {
  const ConjugatedMap h(f);
  const double P = f.period();
  const auto grid = log_uniform_grid(f.log2_breakpoint(std::min<std::uint64_t>(20, f.depth())), 0.0, grid_points);

  double worst_oracle = 0.0, worst_conj = 0.0, worst_sq = 0.0;
  for (const auto x : grid) {
    const auto hx = h.eval_log(x);
    worst_oracle = std::max(worst_oracle, std::fabs(hx.log2() - h_via_conjugacy(f, x).log2()));
    worst_conj = std::max(worst_conj, std::fabs(f.eval_log(hx).log2() - (f.eval_log(x).log2() - 1.0)));
    worst_sq = std::max(worst_sq, std::fabs(h.eval_log(hx).log2() - x.log2() + P));
  }
  s.residual("uqrmap", "closed_form_vs_conjugacy", worst_oracle);
  s.residual("uqrmap", "conjugacy_identity", worst_conj);
  s.residual("uqrmap", "second_iterate_similarity", worst_sq);

  double worst_fwd = 0.0;
  for (std::uint64_t n = 0; n + 1 <= f.depth(); ++n) {
    worst_fwd = std::max(worst_fwd, std::fabs(h.eval_log(f.breakpoint(n)).log2() - f.log2_breakpoint(n + 1)));
  }
  s.residual("uqrmap", "breakpoint_forwarding", worst_fwd);

  const auto x = LogRadius::from_log2(std::log2(0.8));
  const double rate = (x.log2() - h.iterate(x, 1000).log2()) / 1000.0;
  s.at_most("uqrmap", "attraction_rate", std::fabs(rate - P / 2.0), kAttractionTol);

  const std::uint64_t n_max = std::min<std::uint64_t>(50, f.depth() / 2);
  const auto zoom_grid = log_uniform_grid(3.0 * -P, 0.0, grid_points);
  const LimitFunction Q1(LimitKind::Q1, f), Q2(LimitKind::Q2, f);
  s.residual("uqrmap", "even_zoom_of_h_equals_Q1", zoom_limit_deviation(h, ZoomSequence::Even, Q1, 1, n_max, zoom_grid));
  s.residual("uqrmap", "odd_zoom_of_h_equals_Q2", zoom_limit_deviation(h, ZoomSequence::Odd, Q2, 1, n_max, zoom_grid));
}

double rel_err(double a, double b) { return std::fabs(a - b) / std::fabs(b); }

double report_rel_err(const DistortionReport& a, const DistortionReport& b) {
  return std::max({rel_err(a.outer, b.outer), rel_err(a.inner, b.inner), rel_err(a.maximal, b.maximal)});
}

void check_distortion(const PiecewisePowerMap& f, int d, std::mt19937_64& rng, Suite& s) {
  const double K = f.K();
  const ConjugatedMap h(f);

  double worst_fd = 0.0, worst_floor = 0.0, worst_dual = 0.0;
  for (const double alpha : {0.3, 0.5, 1.0, 2.0, 3.7}) {
    const RadialPower power(alpha);
    for (const int dim : {2, 3, 4}) {
      const auto closed = radial_power_distortion(alpha, dim);
      const auto dual = radial_power_distortion(1.0 / alpha, dim);
      worst_dual = std::max({worst_dual, rel_err(closed.outer, dual.inner), rel_err(closed.inner, dual.outer)});
      for (int i = 0; i < 20; ++i) {
        const auto x = LogRadius::from_log2(uniform_in(rng, -20.0, -0.01));
        const auto fd = finite_difference_distortion(power, dim, x, kRelStep);
        worst_fd = std::max(worst_fd, report_rel_err(fd, closed));
        worst_floor = std::max({worst_floor, 1.0 - fd.outer, 1.0 - fd.inner});
      }
    }
  }

  double worst_maps = 0.0;
  for (int i = 0; i < 20; ++i) {
    const auto n = static_cast<std::uint64_t>(1 + i % 8);
    const auto x = interior_point(f, n, uniform_in(rng, 0.05, 0.95));
    worst_maps = std::max(worst_maps, report_rel_err(finite_difference_distortion(f, d, x, kRelStep),
                                                     pointwise_distortion(f, d, x)));
    worst_maps = std::max(worst_maps, report_rel_err(finite_difference_distortion(h, d, x, kRelStep),
                                                     pointwise_distortion(h, d, x)));
  }
  s.at_most("distortion", "power_map_closed_form_vs_finite_differences", worst_fd, kFiniteDifferenceTol);
  s.at_most("distortion", "f_and_h_pointwise_vs_finite_differences", worst_maps, kFiniteDifferenceTol);
  s.at_most("distortion", "inner_outer_duality", worst_dual, kExactRelTol);

  double worst_max = 0.0;
  for (const int dim : {2, 3, 4}) {
    worst_max = std::max(worst_max, rel_err(max_distortion(f, dim).maximal, std::pow(K, dim - 1)));
  }
  s.at_most("distortion", "max_distortion_f_equals_K_pow_d_minus_1", worst_max, kExactRelTol);

  const auto iterates = iterate_max_distortion(h, d, 40);
  const double bound = std::pow(K, 2 * (d - 1));
  double worst_iter = 0.0;
  for (std::size_t i = 0; i < iterates.size(); ++i) {
    const double expected = (i + 1) % 2 == 0 ? 1.0 : bound;
    worst_iter = std::max(worst_iter, rel_err(iterates[i].maximal, expected));
    worst_floor = std::max({worst_floor, 1.0 - iterates[i].outer, 1.0 - iterates[i].inner});
  }
  s.at_most("distortion", "iterates_uniformly_bounded", worst_iter, kExactRelTol);
  s.at_most("distortion", "reports_at_least_one", worst_floor, kExactRelTol);

  const double lin = std::max(linear_distortion_radial(f, d), linear_distortion_radial(h, d));
  s.at_most("distortion", "linear_distortion_is_one", lin - 1.0, kExactRelTol);
}

}  // namespace

std::vector<CheckResult> run_verification(const VerifyConfig& config) {
  const auto f = build_standard_map(config.K, config.depth);
  Suite suite(config.tol);
  std::mt19937_64 rng(config.seed);
  check_powermap(f, config.grid_points, suite);
  check_zoom(f, config.grid_points, rng, suite);
  check_uqrmap(f, config.grid_points, suite);
  check_distortion(f, config.dimension, rng, suite);
  return suite.take();
}

}  // namespace radialqc
