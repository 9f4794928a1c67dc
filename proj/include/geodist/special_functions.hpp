#pragma once

namespace geodist {

// Comparison functions of constant curvature.
//   phi(x) = sqrt(x) cot sqrt(x), psi(x) = sin sqrt(x) / sqrt(x)
// with the hyperbolic continuation for x < 0 and phi(0) = psi(0) = 1.
// Both are analytic and decreasing on (-inf, pi^2).
double phi(double x);
double psi(double x);
double phi_derivative(double x);

long double phi(long double x);

// sin_K(r) = r psi(K r^2),  cot_K(r) = phi(K r^2) / r.
double sin_k(double K, double r);
double cot_k(double K, double r);
long double cot_k(long double K, long double r);

struct PhiInverseOptions {
    double tol = 1e-13;        // on |phi(x) - y| / max(1, |y|)
    double lower = -1e6;       // left end of the search bracket
    double upper_gap = 1e-9;   // bracket ends at pi^2 - upper_gap
    int max_iter = 200;
};

// Inverse of phi on (lower, pi^2 - upper_gap).
// Throws DomainError when y is outside phi of that bracket,
// ConvergenceError if the safeguarded Newton iteration stalls.
double phi_inverse(double y, const PhiInverseOptions& opts = {});

// Supremum of |x| for which phi is evaluated in Taylor form.
inline constexpr double kSeriesThreshold = 1e-4;

}  // namespace geodist
