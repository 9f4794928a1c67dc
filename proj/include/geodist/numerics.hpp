#pragma once

#include <array>
#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace geodist {

// Closed interval [lo, hi].
struct Interval {
    double lo = 0, hi = 0;
    double length() const { return hi - lo; }
    double mid() const { return 0.5 * (lo + hi); }
    bool contains(double x) const { return x >= lo && x <= hi; }
};

// Composite 5-point Gauss-Legendre on [a, b] with n equal panels.
double integrate_gl(const std::function<double(double)>& f, double a, double b, int panels = 1);

// Panels concentrated geometrically toward `a` (useful for r -> 0 integrands).
double integrate_gl_graded(const std::function<double(double)>& f, double a, double b,
                           int panels_per_octave = 4, double a_floor = 0.0);

// Cubic Hermite on [x0, x1] with values y and slopes d.
double hermite3(double x0, double x1, double y0, double y1, double d0, double d1, double x);
double hermite3_derivative(double x0, double x1, double y0, double y1, double d0, double d1, double x);

// Quintic smoothstep S(u) = 6u^5 - 15u^4 + 10u^3, clamped to [0, 1] outside.
double smoothstep(double u);
double smoothstep_derivative(double u);
double smoothstep_second(double u);

// Shape-preserving piecewise cubic (weighted harmonic slopes) with
// one-sided secant end slopes. Outside the nodes it extends linearly.
class Pchip {
public:
    Pchip() = default;
    Pchip(std::vector<double> x, std::vector<double> y);
    double operator()(double x) const;
    double derivative(double x) const;
    const std::vector<double>& nodes() const { return x_; }
    const std::vector<double>& values() const { return y_; }
    const std::vector<double>& slopes() const { return d_; }
    bool empty() const { return x_.empty(); }

private:
    std::size_t segment(double x) const;
    std::vector<double> x_, y_, d_;
};

// sup_{i != j} |y_i - y_j| / |x_i - x_j|^alpha over all pairs.
double holder_seminorm(std::span<const double> x, std::span<const double> y, double alpha);

// Fornberg finite-difference weights for derivatives 0..2 at z on stencil x[0..n).
void fd_weights(double z, const double* x, int n, double c[][3]);

// First and second derivatives at every node from a sliding stencil of `width` (<= 9) nodes.
void differentiate_nodes(std::span<const double> t, std::span<const double> y, std::vector<double>& d1,
                         std::vector<double>& d2, int width = 7);

// Index of the interval [x_i, x_{i+1}] containing v (clamped to the ends).
std::size_t locate(std::span<const double> x, double v);

}  // namespace geodist
