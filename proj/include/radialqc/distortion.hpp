#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "radialqc/errors.hpp"
#include "radialqc/log_radius.hpp"
#include "radialqc/radial_map.hpp"
#include "radialqc/uqrmap.hpp"

namespace radialqc {

/// Outer, inner and maximal distortion of a radial map in dimension d.
/// `location` is empty for a supremum over the whole ball.
struct DistortionReport {
  double outer = 1.0;
  double inner = 1.0;
  double maximal = 1.0;
  std::optional<LogRadius> location;
  int dimension = 2;
};

/// x |x|^(alpha-1). alpha >= 1: K_O = alpha^(d-1), K_I = alpha;
/// alpha < 1: K_O = 1/alpha, K_I = alpha^(1-d).
DistortionReport radial_power_distortion(double alpha, int d);

/// Distortion from the singular values of the differential of (r, sigma) ->
/// (m(r), sigma): radial stretch m'(r), tangential stretch m(r)/r with
/// multiplicity d-1. Both are rescaled by r/m(r); the ratios are invariant.
DistortionReport distortion_from_stretches(double radial, double tangential, int d);

void check_dimension(int d);

/// Local exponent closed form. Throws NotDifferentiableError on a breakpoint.
template <RadialMap M>
DistortionReport pointwise_distortion(const M& map, int d, LogRadius x) {
  check_dimension(d);
  auto report = radial_power_distortion(map.local_exponent(x), d);
  report.location = x;
  return report;
}

/// Central-difference estimate of m'(r) r / m(r) with step h = rel_step * r,
/// turned into singular values. Linear scale while r is a normal double,
/// otherwise the same quotient is formed from log2 evaluations.
template <RadialMap M>
DistortionReport finite_difference_distortion(const M& map, int d, LogRadius x, double rel_step) {
  check_dimension(d);
  if (!(rel_step > 0.0 && rel_step < 0.5)) throw DomainError("rel_step must lie in (0, 0.5)");
  if (x.is_origin()) throw DomainError("finite differences need r > 0");
  if (map.is_breakpoint(x)) {
    throw NotDifferentiableError("finite_difference_distortion: x is a breakpoint");
  }
  const auto up = LogRadius::clamped(x.log2() + std::log2(1.0 + rel_step));
  const auto down = LogRadius::from_log2(x.log2() + std::log2(1.0 - rel_step));
  if (x.log2() + std::log2(1.0 + rel_step) > 0.0 ||
      map.branch_index(up) != map.branch_index(x) ||
      map.branch_index(down) != map.branch_index(x) || map.is_breakpoint(up)) {
    throw DomainError("finite_difference_distortion: step crosses a breakpoint");
  }
  double slope;  // m'(r) r / m(r)
  const double r = x.radius();
  const double m_r = map.eval_log(x).radius();
  if (std::isnormal(r) && std::isnormal(m_r) && r * (1.0 + rel_step) <= 1.0) {
    const double h = rel_step * r;
    const double m_up = map.eval_log(LogRadius::from_radius(r + h)).radius();
    const double m_down = map.eval_log(LogRadius::from_radius(r - h)).radius();
    slope = (m_up - m_down) / (2.0 * h) * (r / m_r);
  } else {
    const double base = map.eval_log(x).log2();
    const double q_up = std::exp2(map.eval_log(up).log2() - base);
    const double q_down = std::exp2(map.eval_log(down).log2() - base);
    slope = (q_up - q_down) / (2.0 * rel_step);
  }
  auto report = distortion_from_stretches(slope, 1.0, d);
  report.location = x;
  return report;
}

/// Essential supremum over the ball. Pointwise distortion depends only on the
/// local exponent, so the supremum is a maximum over the distinct exponents;
/// breakpoint spheres are removable.
template <RadialMap M>
DistortionReport max_distortion(const M& map, int d) {
  check_dimension(d);
  DistortionReport sup;
  sup.dimension = d;
  for (const double k : map.distinct_exponents()) {
    const auto r = radial_power_distortion(k, d);
    sup.outer = std::max(sup.outer, r.outer);
    sup.inner = std::max(sup.inner, r.inner);
    sup.maximal = std::max(sup.maximal, r.maximal);
  }
  return sup;
}

/// max_distortion(h^m, d) for m = 1..m_max.
std::vector<DistortionReport> iterate_max_distortion(const ConjugatedMap& h, int d, std::uint64_t m_max);

/// Largest ratio max|F| / min|F| over coordinate-sphere samples, for the
/// radial extension F(x) = m(|x|) x / |x|. Radial symmetry makes both radii
/// equal m(r), so a correct representation returns 1 up to roundoff.
template <RadialMap M>
double linear_distortion_radial(const M& map, int d) {
  check_dimension(d);
  double worst = 1.0;
  for (int j = 1; j <= 48; ++j) {
    const double r = std::exp2(-0.5 * j);
    double longest = 0.0;
    double shortest = std::numeric_limits<double>::infinity();
    std::vector<double> point(static_cast<std::size_t>(d));
    auto sample = [&] {
      double norm2 = 0.0;
      for (const double c : point) norm2 += c * c;
      const double norm = std::sqrt(norm2);
      const double image = map.eval_log(LogRadius::from_radius(std::min(norm, 1.0))).radius();
      double img2 = 0.0;
      for (const double c : point) img2 += (image * c / norm) * (image * c / norm);
      const double len = std::sqrt(img2);
      longest = std::max(longest, len);
      shortest = std::min(shortest, len);
    };
    for (int axis = 0; axis < d; ++axis) {
      for (const double sign : {1.0, -1.0}) {
        std::fill(point.begin(), point.end(), 0.0);
        point[static_cast<std::size_t>(axis)] = sign * r;
        sample();
      }
    }
    std::fill(point.begin(), point.end(), r / std::sqrt(static_cast<double>(d)));
    sample();
    worst = std::max(worst, longest / shortest);
  }
  return worst;
}

}  // namespace radialqc
