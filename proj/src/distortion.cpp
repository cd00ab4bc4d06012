#include "radialqc/distortion.hpp"

namespace radialqc {

void check_dimension(int d) {
  if (d < 2) throw DomainError("dimension must be >= 2");
}

DistortionReport radial_power_distortion(double alpha, int d) {
  check_dimension(d);
  if (!(alpha > 0.0) || !std::isfinite(alpha)) throw DomainError("alpha must be a finite real > 0");
  DistortionReport report;
  report.dimension = d;
  if (alpha >= 1.0) {
    report.outer = std::pow(alpha, d - 1);
    report.inner = alpha;
  } else {
    report.outer = 1.0 / alpha;
    report.inner = std::pow(alpha, 1 - d);
  }
  report.maximal = std::max(report.outer, report.inner);
  return report;
}

DistortionReport distortion_from_stretches(double radial, double tangential, int d) {
  check_dimension(d);
  if (!(radial > 0.0) || !(tangential > 0.0)) {
    throw DomainError("singular values must be positive");
  }
  const double largest = std::max(radial, tangential);
  const double smallest = std::min(radial, tangential);
  const double jacobian = radial * std::pow(tangential, d - 1);
  DistortionReport report;
  report.dimension = d;
  report.outer = std::pow(largest, d) / jacobian;
  report.inner = jacobian / std::pow(smallest, d);
  report.maximal = std::max(report.outer, report.inner);
  return report;
}

std::vector<DistortionReport> iterate_max_distortion(const ConjugatedMap& h, int d, std::uint64_t m_max) {
  check_dimension(d);
  if (m_max < 1) throw DomainError("m_max must be >= 1");
  std::vector<DistortionReport> out;
  out.reserve(m_max);
  for (std::uint64_t m = 1; m <= m_max; ++m) {
    out.push_back(max_distortion(IteratedMap(h, m), d));
  }
  return out;
}

}  // namespace radialqc
