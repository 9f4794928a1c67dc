#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "geodist/checker_constants.hpp"
#include "geodist/numerics.hpp"
#include "geodist/profile.hpp"
#include "geodist/report.hpp"

namespace geodist {

// Twelve points as four three-point clusters {c - w, c, c + w}. Clusters come
// in two pairs (a, a + s) and (b, b + s'): w resolves second derivatives, s
// resolves radial derivatives of f0, and |a - b| compares two scales.
struct TwelvePointConfig {
    std::array<double, 4> centers{};
    double half_width = 0;
    std::array<double, 12> points() const;
};

struct ConfigurationSet {
    std::vector<TwelvePointConfig> configs;
    bool degraded = false;  // interval too short to separate the three scales
};

// Deterministic for a given (I, budget, seed). budget = 1 yields a single
// configuration symmetric about the midpoint of I.
ConfigurationSet twelve_point_configurations(Interval I, std::size_t budget, std::uint64_t seed = 0);

// Evaluates every checked inequality on each configuration, with derivatives
// replaced by divided differences over the clusters. Records:
//   metric_condition, rhoddot_ratio, kappa_bound, kappa_holder, phi0_variation,
//   phi0_bound, f0_bound, f0_slope, f0_slope_holder, f0_cross_scale.
// Throws DomainError if a configuration point lies outside the profile domain.
CheckerReport finiteness_check(const DistanceProfile& p, const CheckerConstants& consts,
                               const std::vector<TwelvePointConfig>& configs);

}  // namespace geodist
