#pragma once

#include <vector>

#include "geodist/geodesy.hpp"
#include "geodist/profile.hpp"

namespace geodist {

// q = rho rho'' / (1 - rho'^2); equals rho h(gamma) on a genuine profile.
long double rho_ddot_ratio(long double rho, long double rho_dot, long double rho_ddot);

// kappa = phi^{-1}(q) / rho^2: a curvature value attained on the segment from
// the centre to gamma(t). Snaps to 0 when q is 1 to rounding (flat data).
// Throws DomainError if |rho'| >= 1 or q is outside the range of phi.
double kappa_from_jet(long double rho, long double rho_dot, long double rho_ddot);
double kappa(const DistanceProfile& p, double t);

// f0 = rho'' / (1 - rho'^2) - cot_{K0}(rho)
double f0_from_jet(long double rho, long double rho_dot, long double rho_ddot, double K0);
double f0(const DistanceProfile& p, double t, double K0);

// phi0(t) = int_{t0}^t sqrt(1 - rho'^2) / sin_{K0}(rho) ds, tabulated on the
// profile nodes and completed by quadrature between nodes.
class Phi0Curve {
public:
    Phi0Curve() = default;
    Phi0Curve(const DistanceProfile& p, double t0, double K0);
    double operator()(double t) const;
    double derivative(double t) const;
    double K0() const { return K0_; }

private:
    double integrate(double a, double b) const;
    const DistanceProfile* p_ = nullptr;
    double t0_ = 0, K0_ = 0;
    std::vector<double> at_nodes_;
};

struct AnalysisSummary {
    double t0 = 0;  // leftmost argmin of rho
    double m = 0;   // rho(t0)
    double K0 = 0;  // kappa(t0)
    double max_rho = 0;
    // node-wise curves
    std::vector<double> t, rho, q, kappa, phi0, f0;
    double phi0_min = 0, phi0_max = 0;
};

struct ProfileMinimum {
    double t0 = 0, m = 0;
};
// Leftmost node minimiser, refined by bisection on the sign change of rho'.
ProfileMinimum profile_minimum(const DistanceProfile& p);

// Throws DomainError if kappa(t0) cannot be evaluated or K0 max rho^2 >= pi^2.
AnalysisSummary analyze(const DistanceProfile& p);

// sup |log(phi' / phi0')| over the path nodes inside the profile domain, with
// phi' read off the geodesic itself. Small on genuine profiles: of order
// (H R^2)^(1 + alpha/2).
double phi_phi0_log_ratio(const GeodesicPath& path, const Phi0Curve& phi0, Interval domain);

}  // namespace geodist
