#pragma once

#include <functional>
#include <vector>

#include "geodist/checker_constants.hpp"
#include "geodist/report.hpp"

namespace geodist {

// Curvature along one radial ray, with its declared bounds.
struct RadialCurvature {
    std::function<double(double)> K;  // must accept r in [0, R]
    double R = 1;
    double H = 1;      // sup |K|
    double L = 0;      // alpha-Holder seminorm bound
    double alpha = 1;

    // Sampled check of the declared bounds and of H R^2 <= pi^2/4.
    // Throws DomainError.
    void validate(std::size_t samples = 128) const;
};

struct RadialSolution {
    std::vector<double> r;
    std::vector<double> G;
    std::vector<double> dG;
    std::vector<double> h;   // dG / G
};

// G'' + K G = 0, G ~ r at the origin; classical RK4 at fixed step.
RadialSolution solve_jacobi(const RadialCurvature& k, double step);

// h' + h^2 + K = 0, h ~ 1/r, integrated through g = r^2 (h - 1/r),
// which is regular at r = 0. G is recovered from log(G/r)' = g / r^2.
RadialSolution solve_riccati(const RadialCurvature& k, double step);

// Conclusions (a)-(d) for f = h1 - h2 on [r_min, R]. T defaults to the
// measured sup |K1 - K2| on the nodes when negative.
CheckerReport riccati_stability_check(const RadialCurvature& k1, const RadialCurvature& k2,
                                      double r_min, const CheckerConstants& consts,
                                      double T = -1, double step = 0);

}  // namespace geodist
