#pragma once

#include <vector>

#include "geodist/metric_grid.hpp"
#include "geodist/profile.hpp"

namespace geodist {

struct GeodesicPath {
    std::vector<double> t;
    std::vector<double> rho, rho_dot, rho_ddot;
    std::vector<double> phi, phi_dot;
    double unit_speed_residual = 0;

    std::size_t size() const { return t.size(); }
};

// Integrates rho'' = h (1 - rho'^2), phi' = s sqrt(1 - rho'^2) / G with RK4
// at a fixed step for arclength `length` (>= 0). Throws GeodesicEscapeError
// when the path leaves r <= R or drops below the grid's r_floor.
GeodesicPath geodesic_integrate(const MetricGrid& m, PolarPoint start, double rho_dot0, int direction_sign,
                                double length, double step);

// Same geodesic followed both ways: t in [t_lo, t_hi] with t_lo <= 0 <= t_hi.
GeodesicPath geodesic_integrate_span(const MetricGrid& m, PolarPoint start, double rho_dot0,
                                     int direction_sign, double t_lo, double t_hi, double step);

struct DistanceOptions {
    double tol_hit = 1e-6;   // relative to R: |rho(at target angle) - r_q|
    int max_iter = 200;
    double eta = 0.004;      // step = eta * rho (relative resolution of the shooting ODE)
};

struct DistanceResult {
    double distance = 0;
    double miss = 0;         // |rho - r_q| at the target angle
    int iterations = 0;
    bool radial = false;     // answered by the radial closed form
};

// Geodesic distance by shooting over rho'(0) at p.
DistanceResult distance_detailed(const MetricGrid& m, PolarPoint p, PolarPoint q, const DistanceOptions& opts = {});
double distance(const MetricGrid& m, PolarPoint p, PolarPoint q, const DistanceOptions& opts = {});

// In polar normal coordinates d(gamma(t), 0) = rho, so the profile is the path's
// radial component; derivatives are the ones carried by the integrator.
DistanceProfile distance_profile(const MetricGrid& m, const GeodesicPath& path);

// max |rho'' - h(rho, phi) (1 - rho'^2)| along the supplied samples.
double geodesic_residual(const MetricGrid& m, const std::vector<double>& rho, const std::vector<double>& rho_dot,
                         const std::vector<double>& rho_ddot, const std::vector<double>& phi);
// max |rho'^2 + G(rho, phi)^2 phi'^2 - 1|.
double unit_speed_residual(const MetricGrid& m, const std::vector<double>& rho, const std::vector<double>& rho_dot,
                           const std::vector<double>& phi, const std::vector<double>& phi_dot);

// Second derivative of node data by five-point (nonuniform) differences.
std::vector<double> second_difference(const std::vector<double>& t, const std::vector<double>& y);
std::vector<double> first_difference(const std::vector<double>& t, const std::vector<double>& y);

}  // namespace geodist
