#include "geodist/special_functions.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "geodist/errors.hpp"

namespace geodist {

namespace {

template <class T>
T phi_impl(T x) {
    if (std::abs(x) < T(kSeriesThreshold)) {
        // 1 - x/3 - x^2/45 - 2x^3/945 - x^4/4725
        return T(1) + x * (T(-1) / 3 + x * (T(-1) / 45 + x * (T(-2) / 945 + x * (T(-1) / 4725))));
    }
    if (x > 0) {
        const T s = std::sqrt(x);
        return s / std::tan(s);
    }
    const T s = std::sqrt(-x);
    return s / std::tanh(s);
}

}  // namespace

double phi(double x) { return phi_impl(x); }
long double phi(long double x) { return phi_impl(x); }

double psi(double x) {
    if (std::abs(x) < kSeriesThreshold) {
        return 1 + x * (-1.0 / 6 + x * (1.0 / 120 + x * (-1.0 / 5040 + x * (1.0 / 362880))));
    }
    if (x > 0) {
        const double s = std::sqrt(x);
        return std::sin(s) / s;
    }
    const double s = std::sqrt(-x);
    return std::sinh(s) / s;
}

double phi_derivative(double x) {
    if (std::abs(x) < kSeriesThreshold) {
        return -1.0 / 3 + x * (-2.0 / 45 + x * (-6.0 / 945 + x * (-4.0 / 4725)));
    }
    const double p = phi(x);
    return (p - p * p - x) / (2 * x);
}

double sin_k(double K, double r) { return r * psi(K * r * r); }

double cot_k(double K, double r) { return phi(K * r * r) / r; }

long double cot_k(long double K, long double r) { return phi(K * r * r) / r; }

double phi_inverse(double y, const PhiInverseOptions& opts) {
    double lo = opts.lower;
    double hi = std::numbers::pi * std::numbers::pi - opts.upper_gap;
    const double f_lo = phi(lo);
    const double f_hi = phi(hi);
    if (!(y <= f_lo && y >= f_hi)) {
        std::ostringstream msg;
        msg << "phi_inverse: y = " << y << " outside [" << f_hi << ", " << f_lo << "]";
        throw DomainError(msg.str());
    }
    const double scale = std::max(1.0, std::abs(y));
    // Starting guess from the series near y = 1, else midpoint.
    double x = std::abs(1 - y) < 0.5 ? 3 * (1 - y) : 0.5 * (lo + hi);
    for (int it = 0; it < opts.max_iter; ++it) {
        const double fx = phi(x) - y;
        if (std::abs(fx) <= opts.tol * scale) return x;
        if (fx > 0) lo = x; else hi = x;  // phi decreasing
        const double d = phi_derivative(x);
        double next = x - fx / d;
        if (!(next > lo && next < hi) || !std::isfinite(next)) next = 0.5 * (lo + hi);
        if (next == x) return x;
        x = next;
        if (hi - lo <= 4 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::abs(x))) {
            return x;
        }
    }
    throw ConvergenceError("phi_inverse did not converge", lo, hi);
}

}  // namespace geodist
