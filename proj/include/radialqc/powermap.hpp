#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <span>
#include <vector>

#include "radialqc/log_radius.hpp"

namespace radialqc {

/// Closed forms for the alternating-exponent construction with parameter K.
/// Indices follow the interval numbering: interval n is [r_n, r_{n-1}].
namespace closed_form {

/// k_n: K on odd intervals, 1/K on even intervals (n >= 1).
double exponent(double K, std::uint64_t n);

/// log2 r_n. r_{2j} = 2^-(jK + j/K), r_{2j-1} = 2^-((j-1)K + j/K).
double log2_breakpoint(double K, std::uint64_t n);

/// log2 C_n (n >= 1). C_{2j} = 2^(j(1/K^2 - 1)), C_{2j-1} = 2^((j-1)(K^2 - 1)).
double log2_coefficient(double K, std::uint64_t n);

/// Log2 length of one period of the breakpoint lattice: r_{2j+2} = r_2 r_{2j}.
inline double period(double K) { return K + 1.0 / K; }

}  // namespace closed_form

/// The piecewise power-law homeomorphism f of [0,1] with f(r) = C_n r^{k_n}
/// on [r_n, r_{n-1}], f(r_n) = 2^-n and f(1) = 1.
///
/// Immutable after construction. Copies share the cached tables.
class PiecewisePowerMap {
 public:
  static constexpr std::size_t kDefaultDepth = 10000;

  /// Throws DomainError for K <= 1 or depth < 2.
  explicit PiecewisePowerMap(double K, std::size_t depth = kDefaultDepth);

  double K() const { return K_; }
  std::size_t depth() const { return depth_; }
  double period() const { return closed_form::period(K_); }

  double exponent(std::uint64_t n) const;
  /// log2 r_n for any n >= 0; served from the cache up to depth.
  double log2_breakpoint(std::uint64_t n) const;
  LogRadius breakpoint(std::uint64_t n) const { return LogRadius::clamped(log2_breakpoint(n)); }
  double log2_coefficient(std::uint64_t n) const;

  /// Cached log2 r_0 .. log2 r_depth.
  std::span<const double> log2_breakpoints() const { return tables_->log2_r; }

  /// Smallest n >= 1 with log2 r_n <= x, i.e. the interval [r_n, r_{n-1}]
  /// containing x; on a breakpoint the smaller index wins.
  std::uint64_t locate_interval(LogRadius x) const;

  LogRadius eval_log(LogRadius x) const;
  LogRadius inverse_eval_log(LogRadius y) const;
  /// Linear-scale convenience; underflows to 0 for deep radii.
  double eval(double r) const;

  /// Mean radius of F(B(0, delta)) for the radial extension F. The image of
  /// a centred ball is again a centred ball, so this is f(delta).
  LogRadius mean_radius_radial(LogRadius delta) const { return eval_log(delta); }

  // Radial-map interface shared with the other map types.
  std::uint64_t branch_index(LogRadius x) const { return locate_interval(x); }
  bool is_breakpoint(LogRadius x) const;
  double local_exponent(LogRadius x) const;
  std::vector<double> distinct_exponents() const { return {K_, 1.0 / K_}; }

 private:
  struct Tables {
    std::vector<double> log2_r;  // index 0..depth
    std::vector<double> log2_C;  // index 0..depth+1, entry 0 unused
  };

  double K_;
  std::size_t depth_;
  std::shared_ptr<const Tables> tables_;
};

PiecewisePowerMap build_standard_map(double K, std::size_t depth = PiecewisePowerMap::kDefaultDepth);

/// The single power r^alpha, the radial map of the classical power-map
/// distortion computation. Used as a reference map with no breakpoints.
class RadialPower {
 public:
  explicit RadialPower(double alpha);

  double alpha() const { return alpha_; }
  LogRadius eval_log(LogRadius x) const;

  std::uint64_t branch_index(LogRadius) const { return 1; }
  bool is_breakpoint(LogRadius) const { return false; }
  double local_exponent(LogRadius) const { return alpha_; }
  std::vector<double> distinct_exponents() const { return {alpha_}; }

 private:
  double alpha_;
};

/// Tolerance used to decide that a log2 radius sits on a breakpoint.
double breakpoint_tolerance(double log2_x);

}  // namespace radialqc
