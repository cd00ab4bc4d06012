#pragma once

#include <cstdint>
#include <vector>

#include "radialqc/log_radius.hpp"
#include "radialqc/powermap.hpp"

namespace radialqc {

/// Radial factor h = f^-1(f / 2) of the uniformly quasiconformal map
/// H(r, sigma) = (h(r), sigma), i.e. x -> x/2 conjugated by the radial
/// extension of f. Spherical coordinates pass through H unchanged, so only
/// the radial factor is stored.
///
/// h maps [r_n, r_{n-1}] onto [r_{n+1}, r_n] as c_n r^{e_n} with
///   e_{2j-1} = K^2,   log2 c_{2j-1} = (j-1) K^3 - j/K,
///   e_{2j}   = 1/K^2, log2 c_{2j}   = j/K^3 - 1/K - j K.
class ConjugatedMap {
 public:
  explicit ConjugatedMap(PiecewisePowerMap f);

  const PiecewisePowerMap& source() const { return f_; }
  double K() const { return f_.K(); }

  double exponent(std::uint64_t n) const;
  double log2_coefficient(std::uint64_t n) const;
  double log2_breakpoint(std::uint64_t n) const { return f_.log2_breakpoint(n); }

  /// Closed-form branch evaluation. Inputs are radii in [0, 1].
  LogRadius eval_log(LogRadius x) const;

  /// m-fold application. Even iterates are the similarity
  /// log2 h^2(x) = x - (K + 1/K); an odd count adds one branch evaluation.
  LogRadius iterate(LogRadius x, std::uint64_t m) const;

  std::uint64_t branch_index(LogRadius x) const { return f_.locate_interval(x); }
  bool is_breakpoint(LogRadius x) const { return f_.is_breakpoint(x); }
  double local_exponent(LogRadius x) const;
  std::vector<double> distinct_exponents() const;

 private:
  PiecewisePowerMap f_;
};

ConjugatedMap build_conjugated_map(const PiecewisePowerMap& f);

/// h(r) computed straight from the conjugacy, f^-1(f(r) / 2).
LogRadius h_via_conjugacy(const PiecewisePowerMap& f, LogRadius x);

/// The iterate h^m viewed as a radial map in its own right.
///
/// Its local exponent at x is the product of h's exponents along the orbit
/// x, h(x), ..., h^{m-1}(x). h shifts the interval partition by one index, so
/// every factor is K^2 or K^-2 and the product is tracked as an integer power
/// of K^2.
class IteratedMap {
 public:
  IteratedMap(ConjugatedMap h, std::uint64_t m);

  std::uint64_t count() const { return m_; }
  const ConjugatedMap& base() const { return h_; }

  LogRadius eval_log(LogRadius x) const { return h_.iterate(x, m_); }

  std::uint64_t branch_index(LogRadius x) const { return h_.branch_index(x); }
  bool is_breakpoint(LogRadius x) const { return h_.is_breakpoint(x); }
  double local_exponent(LogRadius x) const;
  /// Exponents on the two interval classes (odd and even n), computed along
  /// orbits starting inside [r_1, 1] and [r_2, r_1].
  std::vector<double> distinct_exponents() const;

 private:
  ConjugatedMap h_;
  std::uint64_t m_;
};

}  // namespace radialqc
