#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "radialqc/errors.hpp"
#include "radialqc/log_radius.hpp"
#include "radialqc/powermap.hpp"
#include "radialqc/radial_map.hpp"
#include "radialqc/uqrmap.hpp"

namespace radialqc {

enum class LimitKind { P1, P2, Q1, Q2 };

/// Scales t_k = r_{2k} (Even) or t_k = r_{2k-1} (Odd).
enum class ZoomSequence { Even, Odd };

std::string_view to_string(LimitKind kind);
std::string_view to_string(ZoomSequence seq);
LimitKind parse_limit_kind(std::string_view name);
ZoomSequence parse_zoom_sequence(std::string_view name);

/// One of the four closed-form zoom limits at the origin: P1/P2 for f along
/// even/odd breakpoint scales, Q1/Q2 for h.
///
/// Each is a continuous increasing piecewise power with value 1 at r = 1.
/// Branch i covers [b_i, b_{i-1}] with b_0 = 0. P1 and Q1 break at the r_n;
/// P2 and Q2 break at r_{2m} and at the shifted points 2^(-K+1/K) r_{2m+1}.
class LimitFunction {
 public:
  LimitFunction(LimitKind kind, const PiecewisePowerMap& source);

  LimitKind kind() const { return kind_; }
  double K() const { return K_; }

  LogRadius eval(LogRadius x) const;

  double log2_boundary(std::uint64_t i) const;
  /// Smallest i >= 1 with b_i <= x.
  std::uint64_t branch_index(LogRadius x) const;
  /// Branch formula i evaluated at x (no range check), for continuity tests.
  double branch_value(std::uint64_t i, double x) const;
  double branch_exponent(std::uint64_t i) const;

 private:
  double L(std::uint64_t n) const { return closed_form::log2_breakpoint(K_, n); }
  bool breaks_at_shifted_points() const { return kind_ == LimitKind::P2 || kind_ == LimitKind::Q2; }

  LimitKind kind_;
  double K_;
};

inline LogRadius limit_eval(const LimitFunction& lf, LogRadius x) { return lf.eval(x); }

/// The limit reached by zooming a map along a breakpoint sequence.
LimitKind matched_limit_kind(const PiecewisePowerMap&, ZoomSequence seq);
LimitKind matched_limit_kind(const ConjugatedMap&, ZoomSequence seq);

/// log2 of the k-th scale of the sequence (k >= 1).
double zoom_scale(const PiecewisePowerMap& f, ZoomSequence seq, std::uint64_t k);

/// `count` points uniform in log2 r over [lo, hi], both ends included.
std::vector<LogRadius> log_uniform_grid(double lo, double hi, std::size_t count);

/// log2 of g_t(r) = m(r t) / m(t). For a radial map the image of B(0, t) is
/// B(0, m(t)), so m(t) is the mean-radius normaliser.
template <RadialMap M>
LogRadius rescaled_eval(const M& map, LogRadius t, LogRadius r) {
  if (t.is_origin() || !std::isfinite(t.log2()) || !(t.log2() < 0.0)) {
    throw DomainError("rescaled_eval: zoom scale must satisfy 0 < t < 1");
  }
  if (r.is_origin()) return LogRadius::origin();
  const auto num = map.eval_log(LogRadius::clamped(r.log2() + t.log2()));
  return LogRadius::clamped(num.log2() - map.eval_log(t).log2());
}

/// Largest |log2 g_{t_n}(r) - log2 lf(r)| over n in [n_first, n_last] and the grid.
template <class M>
double zoom_limit_deviation(const M& map, ZoomSequence seq, const LimitFunction& lf,
                            std::uint64_t n_first, std::uint64_t n_last,
                            std::span<const LogRadius> grid) {
  const auto& f = breakpoint_source(map);
  if (lf.K() != f.K()) {
    throw DomainError("zoom_limit_deviation: limit function was built from a different map");
  }
  if (n_first < 1 || n_last < n_first) {
    throw DomainError("zoom_limit_deviation: need 1 <= n_first <= n_last");
  }
  if (n_last > f.depth() / 2) {
    throw DomainError("zoom_limit_deviation: n range exceeds depth / 2");
  }
  double worst = 0.0;
  for (std::uint64_t n = n_first; n <= n_last; ++n) {
    const auto t = LogRadius::from_log2(zoom_scale(f, seq, n));
    for (const auto r : grid) {
      if (r.is_origin()) throw DomainError("zoom_limit_deviation: grid radii must be > 0");
      const double dev = std::fabs(rescaled_eval(map, t, r).log2() - lf.eval(r).log2());
      worst = std::max(worst, dev);
    }
  }
  return worst;
}

struct IvtSample {
  LogRadius scale;       // t with g_t(r0) ~ lambda
  double achieved;       // log2 g_t(r0)
  double residual;       // |achieved - log2 lambda|
  int iterations;
};

/// Finds a scale t in the k-th period [r_{2k}, r_{2k-1}] with
/// |log2 g_t(r0) - lambda| <= tol by bisection in log2 t. g_t(r0) is
/// continuous in t and equals the even limit at r_{2k} and the odd limit at
/// r_{2k-1}, so every lambda between the two limit values is attained in
/// every period. Larger k gives smaller scales.
template <class M>
IvtSample ivt_sample(const M& map, LogRadius r0, LogRadius lambda, double tol, std::uint64_t k = 1) {
  constexpr int kMaxIterations = 200;
  if (!(tol > 0.0)) throw DomainError("ivt_sample: tol must be > 0");
  if (k < 1) throw DomainError("ivt_sample: period index must be >= 1");
  if (r0.is_origin() || lambda.is_origin()) throw DomainError("ivt_sample: r0 and lambda must be > 0");
  const auto& f = breakpoint_source(map);
  const LimitFunction even(matched_limit_kind(map, ZoomSequence::Even), f);
  const LimitFunction odd(matched_limit_kind(map, ZoomSequence::Odd), f);
  const double target = lambda.log2();
  const double v_even = even.eval(r0).log2();
  const double v_odd = odd.eval(r0).log2();
  if (target < std::min(v_even, v_odd) - tol || target > std::max(v_even, v_odd) + tol) {
    throw NoBracketError("ivt_sample: lambda lies outside [" +
                         std::to_string(std::exp2(std::min(v_even, v_odd))) + ", " +
                         std::to_string(std::exp2(std::max(v_even, v_odd))) + "]");
  }
  auto value_at = [&](double log2_t) {
    return rescaled_eval(map, LogRadius::from_log2(log2_t), r0).log2();
  };
  double lo = zoom_scale(f, ZoomSequence::Even, k);
  double hi = zoom_scale(f, ZoomSequence::Odd, k);
  double g_lo = value_at(lo);
  if (std::fabs(g_lo - target) <= tol) {
    return {LogRadius::from_log2(lo), g_lo, std::fabs(g_lo - target), 0};
  }
  double g_hi = value_at(hi);
  if (std::fabs(g_hi - target) <= tol) {
    return {LogRadius::from_log2(hi), g_hi, std::fabs(g_hi - target), 0};
  }
  if ((g_lo - target) * (g_hi - target) > 0.0) {
    throw NoBracketError("ivt_sample: period endpoints do not bracket lambda");
  }
  // Interior stop at tol/4 leaves headroom for re-evaluation by other code paths.
  for (int it = 1; it <= kMaxIterations; ++it) {
    const double mid = 0.5 * (lo + hi);
    const double g_mid = value_at(mid);
    if (std::fabs(g_mid - target) <= 0.25 * tol) {
      return {LogRadius::from_log2(mid), g_mid, std::fabs(g_mid - target), it};
    }
    if ((g_mid - target) * (g_lo - target) < 0.0) {
      hi = mid;
    } else {
      lo = mid;
      g_lo = g_mid;
    }
  }
  throw std::runtime_error("ivt_sample: bisection did not reach tolerance");
}

/// Largest deviation of the points (log2 r, log2 psi(r)) from the
/// least-squares line through the origin. A positively homogeneous psi with
/// psi(1) = 1 is a single power r^D, whose log-log graph is exactly such a
/// line; a positive defect certifies that psi is not homogeneous.
template <class Eval>
double homogeneity_defect(const Eval& eval_log, std::span<const LogRadius> samples) {
  std::vector<double> xs;
  for (const auto s : samples) {
    if (s.is_origin()) throw DomainError("homogeneity_defect: samples must be radii > 0");
    if (std::find(xs.begin(), xs.end(), s.log2()) == xs.end()) xs.push_back(s.log2());
  }
  if (xs.size() < 3) throw DomainError("homogeneity_defect: need at least 3 distinct samples");
  std::vector<double> ys;
  double sxy = 0.0, sxx = 0.0;
  for (const double x : xs) {
    const double y = eval_log(LogRadius::from_log2(x)).log2();
    ys.push_back(y);
    sxy += x * y;
    sxx += x * x;
  }
  const double slope = sxy / sxx;
  double defect = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    defect = std::max(defect, std::fabs(ys[i] - slope * xs[i]));
  }
  return defect;
}

inline double homogeneity_defect(const LimitFunction& lf, std::span<const LogRadius> samples) {
  return homogeneity_defect([&lf](LogRadius x) { return lf.eval(x); }, samples);
}

// One-dimensional illustration: f(x) = x for x >= 0, x/2 for x < 0, zoomed at 0.
double example_1d_map(double x);
/// Half the length of f((-delta, delta)), the 1-D mean radius (3 delta / 4).
double example_1d_mean_radius(double delta);
/// f(delta x) / rho(delta): 4x/3 for x >= 0 and 2x/3 for x < 0, for every delta.
double example_1d_rescaled(double x, double delta);

}  // namespace radialqc
