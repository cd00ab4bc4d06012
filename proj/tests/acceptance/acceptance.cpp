// Acceptance checks 1-13 at the default configuration (K = 2, depth 10^4).
// One PASS/FAIL line per criterion; exit status is nonzero if any fails.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "radialqc/distortion.hpp"
#include "radialqc/random.hpp"
#include "radialqc/uqrmap.hpp"
#include "radialqc/zoom.hpp"

using namespace radialqc;

namespace {

constexpr double kK = 2.0;
constexpr std::uint64_t kDepth = 10000;
constexpr std::size_t kGridPoints = 1000;
constexpr std::uint64_t kZoomLevels = 50;

constexpr double kIdentityTol = 1e-9;      // log2, absolute
constexpr double kNormalizationTol = 1e-12;
constexpr double kAttractionTol = 1e-6;    // relative
constexpr double kFiniteDiffTol = 1e-6;    // relative
constexpr double kFiniteDiffStep = 1e-6;   // relative step in r
constexpr double kExactRelTol = 1e-12;
constexpr double kGapValue = 0.34;
constexpr double kGapLog2 = 0.75;
constexpr double kIvtTol = 1e-9;
constexpr double kDefectFloor = 0.5;
constexpr double kPureDefectTol = 1e-12;
constexpr double kExampleTol = 0.0;        // bit-exact for dyadic delta
constexpr double kExampleRelTol = 1e-15;   // other delta, one rounding step

struct Outcome {
  bool pass;
  std::string detail;
};

std::string fmt(const char* format, double a, double b) {
  char buf[160];
  std::snprintf(buf, sizeof buf, format, a, b);
  return buf;
}

LogRadius lr(double v) { return LogRadius::from_log2(v); }

struct Fixture {
  PiecewisePowerMap f = build_standard_map(kK, kDepth);
  ConjugatedMap h = build_conjugated_map(f);
  std::vector<double> bp = oracle::recurrence_breakpoints(kK, kDepth);
  std::vector<LogRadius> grid = log_uniform_grid(-3.0 * f.period(), 0.0, kGridPoints);

  double zoom_f(double t, double r) const {
    return oracle::chained_f(kK, bp, r + t) - oracle::chained_f(kK, bp, t);
  }
  double zoom_h(double t, double r) const {
    return oracle::chained_h(kK, bp, r + t) - oracle::chained_h(kK, bp, t);
  }
};

Outcome construction_identities(const Fixture& fx) {
  const auto& f = fx.f;
  double worst = 0.0;
  for (std::uint64_t n = 1; n <= kDepth; ++n) {
    const double Ln = f.log2_breakpoint(n);
    worst = std::max(worst, std::fabs(Ln - fx.bp[n]));
    // f(r_n) = 2^-n from the branch through r_n, and agreement of both branches there.
    worst = std::max(worst, std::fabs(f.log2_coefficient(n) + f.exponent(n) * Ln + static_cast<double>(n)));
    worst = std::max(worst, std::fabs(f.log2_coefficient(n + 1) + f.exponent(n + 1) * Ln + static_cast<double>(n)));
  }
  worst = std::max(worst, std::fabs(f.log2_coefficient(1)));
  // r_{2n} r_m = r_{2n+m} and r_{2n+1} r_{2m+1} = 2^(-1/K) r_{2(n+m)+1}, over the recurrence values.
  for (std::uint64_t n = 1; 2 * n < kDepth; n += 7) {
    for (std::uint64_t m = 1; 2 * n + m <= kDepth; m += 3) {
      worst = std::max(worst, std::fabs(f.log2_breakpoint(2 * n) + f.log2_breakpoint(m) - fx.bp[2 * n + m]));
    }
  }
  for (std::uint64_t n = 0; 2 * n + 1 <= kDepth; n += 7) {
    for (std::uint64_t m = 0; 2 * (n + m) + 1 <= kDepth; m += 3) {
      const double lhs = f.log2_breakpoint(2 * n + 1) + f.log2_breakpoint(2 * m + 1);
      worst = std::max(worst, std::fabs(lhs - (fx.bp[2 * (n + m) + 1] - 1.0 / kK)));
    }
  }
  return {worst <= kIdentityTol, fmt("max residual %.3g <= %.0e", worst, kIdentityTol)};
}

Outcome breakpoint_values(const Fixture& fx) {
  double worst = 0.0;
  for (std::uint64_t n = 1; n <= kDepth; ++n) {
    worst = std::max(worst, std::fabs(fx.f.eval_log(lr(fx.bp[n])).log2() + static_cast<double>(n)));
  }
  return {worst <= kIdentityTol, fmt("max |log2 f(r_n) + n| %.3g <= %.0e", worst, kIdentityTol)};
}

Outcome zoom_exactness(const Fixture& fx) {
  const LimitFunction P1(LimitKind::P1, fx.f), P2(LimitKind::P2, fx.f);
  double worst = std::max(zoom_limit_deviation(fx.f, ZoomSequence::Even, P1, 1, kZoomLevels, fx.grid),
                          zoom_limit_deviation(fx.f, ZoomSequence::Odd, P2, 1, kZoomLevels, fx.grid));
  // Independent zooms against the limit functions.
  for (std::uint64_t n = 1; n <= kZoomLevels; n += 7) {
    for (const auto r : fx.grid) {
      worst = std::max(worst, std::fabs(fx.zoom_f(fx.bp[2 * n], r.log2()) - P1.eval(r).log2()));
      worst = std::max(worst, std::fabs(fx.zoom_f(fx.bp[2 * n - 1], r.log2()) - P2.eval(r).log2()));
    }
  }
  for (const auto r : log_uniform_grid(fx.f.log2_breakpoint(kDepth), 0.0, kGridPoints)) {
    worst = std::max(worst, std::fabs(P1.eval(r).log2() - fx.f.eval_log(r).log2()));
  }
  return {worst <= kIdentityTol, fmt("max deviation %.3g <= %.0e", worst, kIdentityTol)};
}

Outcome non_simplicity(const Fixture& fx) {
  const LimitFunction P1(LimitKind::P1, fx.f), P2(LimitKind::P2, fx.f);
  const auto r1 = lr(fx.bp[1]);
  bool ok = std::fabs(P1.eval(r1).log2() + 1.0) <= kIdentityTol &&
            std::fabs(P2.eval(r1).log2() + 0.25) <= kIdentityTol;
  double gap_value = INFINITY, gap_log = INFINITY;
  for (std::uint64_t k = 1; k <= kZoomLevels; ++k) {
    const double even = fx.zoom_f(fx.bp[2 * k], r1.log2());
    const double odd = fx.zoom_f(fx.bp[2 * k - 1], r1.log2());
    ok = ok && std::fabs(even + 1.0) <= kIdentityTol && std::fabs(odd + 0.25) <= kIdentityTol;
    gap_value = std::min(gap_value, std::exp2(odd) - std::exp2(even));
    gap_log = std::min(gap_log, odd - even);
  }
  ok = ok && gap_value >= kGapValue && gap_log >= kGapLog2;
  return {ok, fmt("gap %.4f in value, %.4f in log2", gap_value, gap_log)};
}

Outcome normalization(const Fixture& fx) {
  double worst = 0.0;
  for (const auto kind : {LimitKind::P1, LimitKind::P2, LimitKind::Q1, LimitKind::Q2}) {
    worst = std::max(worst, std::fabs(LimitFunction(kind, fx.f).eval(lr(0.0)).log2()));
  }
  return {worst <= kNormalizationTol, fmt("max |log2 L(1)| %.3g <= %.0e", worst, kNormalizationTol)};
}

Outcome conjugacy(const Fixture& fx) {
  double worst = 0.0;
  for (const auto x : log_uniform_grid(fx.f.log2_breakpoint(kDepth - 1), 0.0, kGridPoints)) {
    const double hx = fx.h.eval_log(x).log2();
    worst = std::max(worst, std::fabs(fx.f.eval_log(lr(hx)).log2() - (fx.f.eval_log(x).log2() - 1.0)));
    const double oracle = oracle::chained_f_inverse(kK, fx.bp, oracle::chained_f(kK, fx.bp, x.log2()) - 1.0);
    worst = std::max(worst, std::fabs(hx - oracle));
  }
  return {worst <= kIdentityTol, fmt("max residual %.3g <= %.0e", worst, kIdentityTol)};
}

Outcome second_iterate(const Fixture& fx) {
  const double P = kK + 1.0 / kK;
  double worst = 0.0;
  for (const auto x : log_uniform_grid(fx.f.log2_breakpoint(kDepth - 2), 0.0, kGridPoints)) {
    worst = std::max(worst, std::fabs(fx.h.eval_log(fx.h.eval_log(x)).log2() - x.log2() + P));
  }
  double rate_err = 0.0;
  for (const double x0 : {0.0, -0.3, -1.9}) {
    // m = 1000 applications, one at a time.
    auto y = lr(x0);
    for (int m = 0; m < 1000; ++m) y = fx.h.eval_log(y);
    const double rate = (x0 - y.log2()) / 1000.0;
    rate_err = std::max(rate_err, std::fabs(rate - P / 2.0) / (P / 2.0));
  }
  return {worst <= kIdentityTol && rate_err <= kAttractionTol,
          fmt("similarity residual %.3g, attraction rate rel. error %.3g", worst, rate_err)};
}

Outcome h_zoom_limits(const Fixture& fx) {
  const LimitFunction Q1(LimitKind::Q1, fx.f), Q2(LimitKind::Q2, fx.f);
  double worst = std::max(zoom_limit_deviation(fx.h, ZoomSequence::Even, Q1, 1, kZoomLevels, fx.grid),
                          zoom_limit_deviation(fx.h, ZoomSequence::Odd, Q2, 1, kZoomLevels, fx.grid));
  for (std::uint64_t n = 1; n <= kZoomLevels; n += 7) {
    for (const auto r : fx.grid) {
      worst = std::max(worst, std::fabs(fx.zoom_h(fx.bp[2 * n], r.log2()) - Q1.eval(r).log2()));
      worst = std::max(worst, std::fabs(fx.zoom_h(fx.bp[2 * n - 1], r.log2()) - Q2.eval(r).log2()));
    }
  }
  const auto r1 = lr(fx.bp[1]);
  worst = std::max(worst, std::fabs(Q1.eval(r1).log2() + 2.0));
  worst = std::max(worst, std::fabs(Q2.eval(r1).log2() + 0.125));
  return {worst <= kIdentityTol, fmt("max deviation %.3g <= %.0e", worst, kIdentityTol)};
}

Outcome radial_distortion(const Fixture& fx) {
  double worst_fd = 0.0;
  for (const double alpha : {0.3, 0.5, 1.0, 2.0, 3.7}) {
    const RadialPower power(alpha);
    for (const int d : {2, 3, 4}) {
      const auto cf = radial_power_distortion(alpha, d);
      for (const double x : {-0.1, -1.0, -5.3}) {
        // Central difference of r^alpha in linear scale, fed to the singular-value oracle.
        const double r = std::exp2(x), step = kFiniteDiffStep * r;
        const double slope = (std::pow(r + step, alpha) - std::pow(r - step, alpha)) / (2 * step) * r / std::pow(r, alpha);
        const auto o = oracle::from_singular_values(slope, 1.0, d);
        worst_fd = std::max(worst_fd, std::fabs(cf.outer - o.outer) / o.outer);
        worst_fd = std::max(worst_fd, std::fabs(cf.inner - o.inner) / o.inner);
        const auto lib = finite_difference_distortion(power, d, lr(x), kFiniteDiffStep);
        worst_fd = std::max(worst_fd, std::fabs(lib.maximal - cf.maximal) / cf.maximal);
      }
    }
  }
  double worst_max = 0.0;
  for (const int d : {2, 3, 4}) {
    const double expected = std::pow(kK, d - 1);
    worst_max = std::max(worst_max, std::fabs(max_distortion(fx.f, d).maximal - expected) / expected);
  }
  return {worst_fd <= kFiniteDiffTol && worst_max <= kExactRelTol,
          fmt("finite-difference rel. error %.3g, max_distortion rel. error %.3g", worst_fd, worst_max)};
}

Outcome uniform_quasiconformality(const Fixture& fx) {
  bool ok = true;
  double sup_seen = 0.0;
  for (const int d : {2, 3}) {
    const double bound = std::pow(kK, 2 * (d - 1));
    double sup = 0.0;
    const auto reports = iterate_max_distortion(fx.h, d, 40);
    for (std::size_t i = 0; i < reports.size(); ++i) {
      sup = std::max(sup, reports[i].maximal);
      if ((i + 1) % 2 == 0) ok = ok && reports[i].maximal == 1.0;
    }
    ok = ok && std::fabs(sup - bound) <= kExactRelTol * bound;
    sup_seen = std::max(sup_seen, sup);
  }
  return {ok, fmt("sup over m <= 40 is %.6g (d = 3), even iterates exactly %.0f", sup_seen, 1.0)};
}

Outcome ivt_sampler(const Fixture& fx) {
  const LimitFunction P1(LimitKind::P1, fx.f), P2(LimitKind::P2, fx.f);
  std::mt19937_64 rng(20240611);
  double worst = 0.0;
  int sampled = 0;
  while (sampled < 100) {
    const auto r0 = lr(uniform_in(rng, -2.5, -0.01));
    const double a = P1.eval(r0).log2(), b = P2.eval(r0).log2();
    if (std::fabs(a - b) < 1e-3) continue;
    const double lambda = std::min(a, b) + uniform_in(rng, 0.0, 1.0) * std::fabs(a - b);
    const auto res = ivt_sample(fx.f, r0, lr(lambda), kIvtTol, 1 + static_cast<std::uint64_t>(sampled) % 20);
    worst = std::max(worst, std::fabs(fx.zoom_f(res.scale.log2(), r0.log2()) - lambda));
    ++sampled;
  }
  bool decreasing = true;
  double prev = 0.0;
  for (std::uint64_t k = 1; k <= 10; ++k) {
    const double t = ivt_sample(fx.f, lr(fx.bp[1]), LogRadius::from_radius(0.67), kIvtTol, k).scale.log2();
    decreasing = decreasing && t < prev;
    prev = t;
  }
  return {worst <= kIvtTol && decreasing, fmt("max residual %.3g <= %.0e, scales decreasing", worst, kIvtTol)};
}

Outcome one_dimensional_example(const Fixture&) {
  double worst = 0.0;
  for (const double delta : {1.0, 0.5, 0x1p-20, 0x1p-50}) {
    worst = std::max(worst, std::fabs(example_1d_mean_radius(delta) - 0.75 * delta));
    worst = std::max(worst, std::fabs(example_1d_rescaled(1.0, delta) - 4.0 / 3.0));
    worst = std::max(worst, std::fabs(example_1d_rescaled(-1.0, delta) + 2.0 / 3.0));
  }
  double worst_rel = 0.0;
  for (const double delta : {0.1, 0.3, 1e-9, 2.7}) {
    worst_rel = std::max(worst_rel, std::fabs(example_1d_mean_radius(delta) - 0.75 * delta) / delta);
    worst_rel = std::max(worst_rel, std::fabs(example_1d_rescaled(1.0, delta) - 4.0 / 3.0));
    worst_rel = std::max(worst_rel, std::fabs(example_1d_rescaled(-1.0, delta) + 2.0 / 3.0));
  }
  return {worst <= kExampleTol && worst_rel <= kExampleRelTol,
          fmt("dyadic delta error %.3g, other delta error %.3g", worst, worst_rel)};
}

Outcome homogeneity(const Fixture& fx) {
  const LimitFunction P1(LimitKind::P1, fx.f);
  const std::vector<LogRadius> samples = {lr(0.0), lr(fx.bp[1]), lr(fx.bp[2])};
  const double defect = homogeneity_defect(P1, samples);
  const RadialPower power(kK);
  const double pure = homogeneity_defect([&](LogRadius x) { return power.eval_log(x); }, samples);
  return {defect >= kDefectFloor && pure <= kPureDefectTol,
          fmt("defect(P1) %.4f, pure power defect %.3g", defect, pure)};
}

}  // namespace

int main() {
  const Fixture fx;
  const std::vector<std::pair<std::string, std::function<Outcome(const Fixture&)>>> criteria = {
      {"construction identities", construction_identities},
      {"f(r_n) = 2^-n", breakpoint_values},
      {"zoom exactness and P1 = f", zoom_exactness},
      {"non-simplicity witness", non_simplicity},
      {"limit normalization at r = 1", normalization},
      {"conjugacy f(h(r)) = f(r)/2", conjugacy},
      {"second-iterate similarity and attraction rate", second_iterate},
      {"zoom limits of h", h_zoom_limits},
      {"radial power distortion", radial_distortion},
      {"uniform bound over iterates", uniform_quasiconformality},
      {"intermediate-value sampler", ivt_sampler},
      {"one-dimensional example", one_dimensional_example},
      {"homogeneity defect", homogeneity},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second(fx);
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    std::printf("%s %2zu %s: %s\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str(), o.detail.c_str());
    failed += o.pass ? 0 : 1;
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
