#include "radialqc/uqrmap.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace radialqc {

ConjugatedMap::ConjugatedMap(PiecewisePowerMap f) : f_(std::move(f)) {}

ConjugatedMap build_conjugated_map(const PiecewisePowerMap& f) { return ConjugatedMap(f); }

double ConjugatedMap::exponent(std::uint64_t n) const {
  if (n == 0) throw DomainError("branch index must be >= 1");
  const double K = f_.K();
  return (n % 2 == 1) ? K * K : 1.0 / (K * K);
}

double ConjugatedMap::log2_coefficient(std::uint64_t n) const {
  if (n == 0) throw DomainError("branch index must be >= 1");
  const double K = f_.K();
  if (n % 2 == 1) {
    const double j = static_cast<double>((n + 1) / 2);
    return (j - 1.0) * K * K * K - j / K;
  }
  const double j = static_cast<double>(n / 2);
  return j / (K * K * K) - 1.0 / K - j * K;
}

LogRadius ConjugatedMap::eval_log(LogRadius x) const {
  if (x.is_origin()) return LogRadius::origin();
  const auto n = f_.locate_interval(x);
  return LogRadius::clamped(log2_coefficient(n) + exponent(n) * x.log2());
}

LogRadius ConjugatedMap::iterate(LogRadius x, std::uint64_t m) const {
  if (x.is_origin() || m == 0) return x;
  const double pairs = static_cast<double>(m / 2);
  auto y = LogRadius::clamped(x.log2() - pairs * f_.period());
  return m % 2 == 1 ? eval_log(y) : y;
}

double ConjugatedMap::local_exponent(LogRadius x) const {
  if (x.is_origin() || is_breakpoint(x)) {
    throw NotDifferentiableError("h is not differentiable at a breakpoint (log2 r = " +
                                 std::to_string(x.log2()) + ")");
  }
  return exponent(branch_index(x));
}

std::vector<double> ConjugatedMap::distinct_exponents() const {
  return {exponent(1), exponent(2)};
}

LogRadius h_via_conjugacy(const PiecewisePowerMap& f, LogRadius x) {
  if (x.is_origin()) return x;
  return f.inverse_eval_log(LogRadius::clamped(f.eval_log(x).log2() - 1.0));
}

IteratedMap::IteratedMap(ConjugatedMap h, std::uint64_t m) : h_(std::move(h)), m_(m) {
  if (m == 0) throw DomainError("iterate count must be >= 1");
}

double IteratedMap::local_exponent(LogRadius x) const {
  if (x.is_origin() || is_breakpoint(x)) {
    throw NotDifferentiableError("h^m is not differentiable at a breakpoint (log2 r = " +
                                 std::to_string(x.log2()) + ")");
  }
  // Net power of K^2 collected along the orbit.
  long long power = 0;
  auto y = x;
  for (std::uint64_t i = 0; i < m_; ++i) {
    power += (h_.branch_index(y) % 2 == 1) ? 1 : -1;
    y = h_.eval_log(y);
  }
  const double K2 = h_.K() * h_.K();
  if (power == 0) return 1.0;
  return power > 0 ? std::pow(K2, static_cast<double>(power))
                   : 1.0 / std::pow(K2, static_cast<double>(-power));
}

std::vector<double> IteratedMap::distinct_exponents() const {
  const double r1 = h_.log2_breakpoint(1);
  const double r2 = h_.log2_breakpoint(2);
  std::vector<double> out = {local_exponent(LogRadius::from_log2(0.5 * r1)),
                             local_exponent(LogRadius::from_log2(0.5 * (r1 + r2)))};
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace radialqc
