#include "radialqc/powermap.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace radialqc {

namespace closed_form {

double exponent(double K, std::uint64_t n) {
  if (n == 0) throw DomainError("exponent index must be >= 1");
  return (n % 2 == 1) ? K : 1.0 / K;
}

double log2_breakpoint(double K, std::uint64_t n) {
  if (n % 2 == 0) {
    const double j = static_cast<double>(n / 2);
    return -(j * K + j / K);
  }
  const double j = static_cast<double>((n + 1) / 2);
  return -((j - 1.0) * K + j / K);
}

double log2_coefficient(double K, std::uint64_t n) {
  if (n == 0) throw DomainError("coefficient index must be >= 1");
  if (n % 2 == 0) {
    const double j = static_cast<double>(n / 2);
    return j * (1.0 / (K * K) - 1.0);
  }
  const double j = static_cast<double>((n + 1) / 2);
  return (j - 1.0) * (K * K - 1.0);
}

}  // namespace closed_form

namespace {

// Beyond this many periods the interval index is no longer an exact double.
constexpr double kMaxPeriods = 1e15;

}  // namespace

double breakpoint_tolerance(double log2_x) {
  return 1e-12 * std::max(1.0, std::fabs(log2_x));
}

PiecewisePowerMap::PiecewisePowerMap(double K, std::size_t depth) : K_(K), depth_(depth) {
  if (!(K > 1.0) || !std::isfinite(K)) {
    throw DomainError("K must be a finite real > 1");
  }
  if (depth < 2) {
    throw DomainError("depth must be >= 2");
  }
  auto tables = std::make_shared<Tables>();
  tables->log2_r.resize(depth + 1);
  tables->log2_C.resize(depth + 2);
  for (std::size_t n = 0; n <= depth; ++n) {
    tables->log2_r[n] = closed_form::log2_breakpoint(K, n);
  }
  tables->log2_C[0] = 0.0;
  for (std::size_t n = 1; n <= depth + 1; ++n) {
    tables->log2_C[n] = closed_form::log2_coefficient(K, n);
  }
  tables_ = std::move(tables);
}

PiecewisePowerMap build_standard_map(double K, std::size_t depth) {
  return PiecewisePowerMap(K, depth);
}

double PiecewisePowerMap::exponent(std::uint64_t n) const {
  return closed_form::exponent(K_, n);
}

double PiecewisePowerMap::log2_breakpoint(std::uint64_t n) const {
  return n <= depth_ ? tables_->log2_r[n] : closed_form::log2_breakpoint(K_, n);
}

double PiecewisePowerMap::log2_coefficient(std::uint64_t n) const {
  if (n == 0) throw DomainError("coefficient index must be >= 1");
  return n <= depth_ + 1 ? tables_->log2_C[n] : closed_form::log2_coefficient(K_, n);
}

std::uint64_t PiecewisePowerMap::locate_interval(LogRadius x) const {
  if (x.is_origin()) {
    throw DomainError("locate_interval: radius 0 lies in no interval");
  }
  const double v = x.log2();
  const double periods = std::floor(-v / period());
  if (periods > kMaxPeriods) {
    throw DomainError("locate_interval: log2 radius " + std::to_string(v) +
                      " is beyond the representable interval index range");
  }
  // Even breakpoints sit at -j*period; the odd one of period j splits it.
  const auto j = static_cast<std::uint64_t>(periods);
  std::uint64_t n = v >= log2_breakpoint(2 * j + 1) ? 2 * j + 1 : 2 * j + 2;
  while (n > 1 && log2_breakpoint(n - 1) <= v) --n;
  while (log2_breakpoint(n) > v) ++n;
  return n;
}

LogRadius PiecewisePowerMap::eval_log(LogRadius x) const {
  if (x.is_origin()) return LogRadius::origin();
  const auto n = locate_interval(x);
  return LogRadius::clamped(log2_coefficient(n) + exponent(n) * x.log2());
}

LogRadius PiecewisePowerMap::inverse_eval_log(LogRadius y) const {
  if (y.is_origin()) return LogRadius::origin();
  const double v = y.log2();
  if (-v > kMaxPeriods) {
    throw DomainError("inverse_eval_log: value beyond the representable interval index range");
  }
  // f maps [r_n, r_{n-1}] onto [2^-n, 2^-(n-1)].
  const auto n = static_cast<std::uint64_t>(std::max(1.0, std::ceil(-v)));
  return LogRadius::clamped((v - log2_coefficient(n)) / exponent(n));
}

double PiecewisePowerMap::eval(double r) const {
  if (!(r >= 0.0 && r <= 1.0)) {
    throw DomainError("eval: radius must lie in [0, 1]");
  }
  const auto y = eval_log(LogRadius::from_radius(r));
  return y.is_origin() ? 0.0 : y.radius();
}

bool PiecewisePowerMap::is_breakpoint(LogRadius x) const {
  if (x.is_origin()) return false;
  const auto n = locate_interval(x);
  const double tol = breakpoint_tolerance(x.log2());
  return std::fabs(x.log2() - log2_breakpoint(n)) <= tol ||
         std::fabs(x.log2() - log2_breakpoint(n - 1)) <= tol;
}

double PiecewisePowerMap::local_exponent(LogRadius x) const {
  if (x.is_origin() || is_breakpoint(x)) {
    throw NotDifferentiableError("f is not differentiable at a breakpoint (log2 r = " +
                                 std::to_string(x.log2()) + ")");
  }
  return exponent(locate_interval(x));
}

RadialPower::RadialPower(double alpha) : alpha_(alpha) {
  if (!(alpha > 0.0) || !std::isfinite(alpha)) {
    throw DomainError("power exponent must be a finite real > 0");
  }
}

LogRadius RadialPower::eval_log(LogRadius x) const {
  if (x.is_origin()) return LogRadius::origin();
  return LogRadius::clamped(alpha_ * x.log2());
}

}  // namespace radialqc
