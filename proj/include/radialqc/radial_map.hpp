#pragma once

#include <concepts>
#include <cstdint>
#include <vector>

#include "radialqc/log_radius.hpp"
#include "radialqc/powermap.hpp"
#include "radialqc/uqrmap.hpp"

namespace radialqc {

/// A radial self-map of the unit ball, described by its radial factor in
/// log2 coordinates. Every map of interest is a power C r^k on each branch.
template <class M>
concept RadialMap = requires(const M& m, LogRadius x) {
  { m.eval_log(x) } -> std::same_as<LogRadius>;
  { m.branch_index(x) } -> std::convertible_to<std::uint64_t>;
  { m.is_breakpoint(x) } -> std::same_as<bool>;
  { m.local_exponent(x) } -> std::convertible_to<double>;
  { m.distinct_exponents() } -> std::convertible_to<std::vector<double>>;
};

static_assert(RadialMap<PiecewisePowerMap>);
static_assert(RadialMap<ConjugatedMap>);
static_assert(RadialMap<IteratedMap>);
static_assert(RadialMap<RadialPower>);

/// The power-law map whose breakpoints a map is built on.
inline const PiecewisePowerMap& breakpoint_source(const PiecewisePowerMap& f) { return f; }
inline const PiecewisePowerMap& breakpoint_source(const ConjugatedMap& h) { return h.source(); }

}  // namespace radialqc
