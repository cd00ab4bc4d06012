#include "radialqc/zoom.hpp"

#include <cmath>

namespace radialqc {

std::string_view to_string(LimitKind kind) {
  switch (kind) {
    case LimitKind::P1: return "P1";
    case LimitKind::P2: return "P2";
    case LimitKind::Q1: return "Q1";
    case LimitKind::Q2: return "Q2";
  }
  return "?";
}

std::string_view to_string(ZoomSequence seq) {
  return seq == ZoomSequence::Even ? "even" : "odd";
}

LimitKind parse_limit_kind(std::string_view name) {
  if (name == "P1") return LimitKind::P1;
  if (name == "P2") return LimitKind::P2;
  if (name == "Q1") return LimitKind::Q1;
  if (name == "Q2") return LimitKind::Q2;
  throw DomainError("unknown limit function '" + std::string(name) + "'");
}

ZoomSequence parse_zoom_sequence(std::string_view name) {
  if (name == "even") return ZoomSequence::Even;
  if (name == "odd") return ZoomSequence::Odd;
  throw DomainError("unknown zoom sequence '" + std::string(name) + "'");
}

LimitFunction::LimitFunction(LimitKind kind, const PiecewisePowerMap& source)
    : kind_(kind), K_(source.K()) {}

double LimitFunction::log2_boundary(std::uint64_t i) const {
  if (i == 0) return 0.0;
  if (breaks_at_shifted_points() && i % 2 == 1) {
    // 2^(-K+1/K) r_{2m+1}, m = (i-1)/2.
    return L(i) - K_ + 1.0 / K_;
  }
  return L(i);
}

std::uint64_t LimitFunction::branch_index(LogRadius x) const {
  if (x.is_origin()) throw DomainError("limit function: radius 0 lies on no branch");
  const double v = x.log2();
  const double periods = std::floor(-v / closed_form::period(K_));
  if (periods > 1e15) throw DomainError("limit function: log2 radius beyond index range");
  const auto j = static_cast<std::uint64_t>(periods);
  std::uint64_t i = v >= log2_boundary(2 * j + 1) ? 2 * j + 1 : 2 * j + 2;
  while (i > 1 && log2_boundary(i - 1) <= v) --i;
  while (log2_boundary(i) > v) ++i;
  return i;
}

double LimitFunction::branch_exponent(std::uint64_t i) const {
  const bool steep = (kind_ == LimitKind::P1 || kind_ == LimitKind::Q1) ? (i % 2 == 1) : (i % 2 == 0);
  const bool squared = kind_ == LimitKind::Q1 || kind_ == LimitKind::Q2;
  const double k = squared ? K_ * K_ : K_;
  return steep ? k : 1.0 / k;
}

double LimitFunction::branch_value(std::uint64_t i, double x) const {
  if (i == 0) throw DomainError("branch index must be >= 1");
  const double K2 = K_ * K_;
  switch (kind_) {
    case LimitKind::P1:
      // (1/2)^i r_i^{-k_i} r^{k_i} on [r_i, r_{i-1}]
      return -static_cast<double>(i) + closed_form::exponent(K_, i) * (x - L(i));
    case LimitKind::P2:
      if (i % 2 == 0) {
        // (1/2)^{2m+2} r_{2m+2}^{-K} r^K, i = 2m+2
        return -static_cast<double>(i) + K_ * (x - L(i));
      } else {
        // (1/2)^{2m} r_{2m}^{-1/K} r^{1/K}, i = 2m+1
        return -static_cast<double>(i - 1) + (x - L(i - 1)) / K_;
      }
    case LimitKind::Q1:
      if (i % 2 == 1) {
        // r_{2m}^{1-K^2} r^{K^2} on [r_{2m+1}, r_{2m}]
        return (1.0 - K2) * L(i - 1) + K2 * x;
      } else {
        // r_{2m}^{1-1/K^2} r^{1/K^2} on [r_{2m}, r_{2m-1}]
        return (1.0 - 1.0 / K2) * L(i) + x / K2;
      }
    case LimitKind::Q2:
      if (i % 2 == 0) {
        // r_{2m+2}^{1-K^2} r^{K^2}
        return (1.0 - K2) * L(i) + K2 * x;
      } else {
        // r_{2m}^{1-1/K^2} r^{1/K^2}
        return (1.0 - 1.0 / K2) * L(i - 1) + x / K2;
      }
  }
  return 0.0;
}

LogRadius LimitFunction::eval(LogRadius x) const {
  if (x.is_origin()) return LogRadius::origin();
  return LogRadius::clamped(branch_value(branch_index(x), x.log2()));
}

LimitKind matched_limit_kind(const PiecewisePowerMap&, ZoomSequence seq) {
  return seq == ZoomSequence::Even ? LimitKind::P1 : LimitKind::P2;
}

LimitKind matched_limit_kind(const ConjugatedMap&, ZoomSequence seq) {
  return seq == ZoomSequence::Even ? LimitKind::Q1 : LimitKind::Q2;
}

double zoom_scale(const PiecewisePowerMap& f, ZoomSequence seq, std::uint64_t k) {
  if (k < 1) throw DomainError("zoom sequence index must be >= 1");
  return f.log2_breakpoint(seq == ZoomSequence::Even ? 2 * k : 2 * k - 1);
}

std::vector<LogRadius> log_uniform_grid(double lo, double hi, std::size_t count) {
  if (!(lo <= hi) || hi > 0.0 || !std::isfinite(lo)) {
    throw DomainError("grid bounds must satisfy lo <= hi <= 0");
  }
  if (count < 1) throw DomainError("grid needs at least one point");
  std::vector<LogRadius> grid;
  grid.reserve(count);
  if (count == 1) {
    grid.push_back(LogRadius::from_log2(hi));
    return grid;
  }
  const double step = (hi - lo) / static_cast<double>(count - 1);
  for (std::size_t i = 0; i < count; ++i) {
    const double v = i + 1 == count ? hi : lo + step * static_cast<double>(i);
    grid.push_back(LogRadius::from_log2(v));
  }
  return grid;
}

double example_1d_map(double x) { return x >= 0.0 ? x : x / 2.0; }

double example_1d_mean_radius(double delta) {
  if (!(delta > 0.0)) throw DomainError("delta must be > 0");
  // f is increasing, so f((-delta, delta)) = (f(-delta), f(delta)); the unit ball has length 2.
  return (example_1d_map(delta) - example_1d_map(-delta)) / 2.0;
}

double example_1d_rescaled(double x, double delta) {
  if (!(std::fabs(x) <= 1.0)) throw DomainError("x must lie in [-1, 1]");
  return example_1d_map(delta * x) / example_1d_mean_radius(delta);
}

}  // namespace radialqc
