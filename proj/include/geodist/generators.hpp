#pragma once

#include <cstdint>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "geodist/geodesy.hpp"
#include "geodist/metric_grid.hpp"
#include "geodist/numerics.hpp"
#include "geodist/profile.hpp"
#include "geodist/radial_ode.hpp"

namespace geodist {

// Random radial field: constant + two sinusoids + a Holder cusp, scaled so
// that H R^2 <= 0.9 pi^2/4. H and L are rigorous bounds for the formula.
RadialCurvature random_holder_field(std::mt19937_64& rng, double R, double alpha);

// A curvature field on the disc with declared sup and Holder bounds.
struct CurvatureField {
    std::string name;
    std::function<double(double, double)> K;  // K(r, theta)
    double H = 0;  // sup |K|
    double L = 0;  // Euclidean alpha-Holder seminorm bound
    bool constant = false;
    double K_const = 0;
};

CurvatureField constant_curvature_field(double K);
// K = Kc + A r^alpha (radial Holder cusp at the centre)
CurvatureField radial_cusp_field(double Kc, double A, double alpha);
// K = Kc + A sin(omega r)
CurvatureField radial_wave_field(double Kc, double A, double omega, double alpha);
// K = Kc + A r cos(theta - theta1) (a linear function in Cartesian coordinates)
CurvatureField tilted_field(double Kc, double A, double theta1, double alpha);

MetricGrid metric_from_field(const CurvatureField& field, double R, double alpha, std::size_t n_theta,
                             double step);

// Closed-form profile of a unit-speed geodesic at distance m from the centre of a
// surface of constant curvature K (t0 = 0), evaluated in long double.
DistanceProfile constant_curvature_profile(double K, double m, Interval I, std::size_t nodes = 1201);
// Angle phi(t) of the same geodesic, phi(0) = 0.
double constant_curvature_angle(double K, double m, double t);

// The two cautionary examples: sqrt(1 + t^2) - c and sqrt(eps^2 + t^2) + eps^(3 + beta).
DistanceProfile euclid_offset_profile(double c, Interval I, std::size_t nodes = 1201);
DistanceProfile eps_bump_profile(double eps, double beta, Interval I, std::size_t nodes = 1201);

struct GeneratedProfile {
    std::string name;
    CurvatureField field;
    double m = 0;
    Interval I;
    DistanceProfile profile;
    GeodesicPath path;   // empty for closed-form profiles
};

// Geodesic through (m, 0) perpendicular to the radius, integrated on the grid
// with fixed-step pieces of step eta * rho.
GeneratedProfile geodesic_profile(const MetricGrid& grid, const CurvatureField& field, double m, Interval I,
                                  double eta = 0.004);

struct SuiteOptions {
    double alpha = 0.5;
    double C1 = 0.05;       // max rho
    double m_min = 1e-3;
    double m_max = 0.05 / 2;
    double K_abs_max = 1.0; // constant curvature range
    bool variable_fields = true;
};

// Deterministic mixture: flat, spherical, hyperbolic and variable-curvature profiles.
std::vector<GeneratedProfile> generator_suite(std::uint64_t seed, std::size_t count, const SuiteOptions& opts = {});

}  // namespace geodist
