#include "geodist/profile.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "geodist/errors.hpp"

namespace geodist {


std::vector<double> graded_nodes(double a, double b, double t0, double m, std::size_t n) {
    if (!(b > a) || n < 2 || !(m > 0)) throw DomainError("graded_nodes: invalid arguments");
    const double ua = std::asinh((a - t0) / m), ub = std::asinh((b - t0) / m);
    std::vector<double> t(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double u = ua + (ub - ua) * static_cast<double>(i) / static_cast<double>(n - 1);
        t[i] = t0 + m * std::sinh(u);
    }
    t.front() = a;
    t.back() = b;
    return t;
}

DistanceProfile DistanceProfile::from_samples(std::vector<double> t, std::vector<double> rho) {
    DistanceProfile p;
    p.t_ = std::move(t);
    p.rho_ = std::move(rho);
    if (p.t_.size() != p.rho_.size()) throw InputError("profile: t and rho sizes differ");
    p.validate();
    const std::size_t n = p.t_.size();
    if (n < 3) throw InputError("profile: need at least 3 samples");
    differentiate_nodes(p.t_, p.rho_, p.rho_dot_, p.rho_ddot_, 7);
    return p;
}

DistanceProfile DistanceProfile::from_jets(std::vector<double> t, std::vector<double> rho,
                                           std::vector<double> rho_dot, std::vector<double> rho_ddot) {
    DistanceProfile p;
    p.t_ = std::move(t);
    p.rho_ = std::move(rho);
    p.rho_dot_ = std::move(rho_dot);
    p.rho_ddot_ = std::move(rho_ddot);
    p.check_shape();
    p.validate();
    return p;
}

DistanceProfile DistanceProfile::from_function(Analytic f, std::vector<double> t) {
    DistanceProfile p;
    p.t_ = std::move(t);
    p.f_ = std::move(f);
    const std::size_t n = p.t_.size();
    p.rho_.resize(n);
    p.rho_dot_.resize(n);
    p.rho_ddot_.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        const auto v = p.f_(p.t_[i]);
        p.rho_[i] = static_cast<double>(v[0]);
        p.rho_dot_[i] = static_cast<double>(v[1]);
        p.rho_ddot_[i] = static_cast<double>(v[2]);
    }
    p.validate();
    return p;
}

void DistanceProfile::check_shape() const {
    const std::size_t n = t_.size();
    if (rho_.size() != n || rho_dot_.size() != n || rho_ddot_.size() != n) {
        throw InputError("profile: array sizes differ");
    }
}

void DistanceProfile::validate() const {
    if (t_.size() < 2) throw InputError("profile: need at least 2 samples");
    for (std::size_t i = 0; i < t_.size(); ++i) {
        if (!std::isfinite(t_[i]) || !std::isfinite(rho_[i])) throw InputError("profile: non-finite sample");
        if (!(rho_[i] > 0)) {
            std::ostringstream msg;
            msg << "profile: rho must be positive (row " << i << ")";
            throw InputError(msg.str());
        }
        if (i > 0 && !(t_[i] > t_[i - 1])) {
            std::ostringstream msg;
            msg << "profile: t must be strictly increasing (row " << i << ")";
            throw InputError(msg.str());
        }
    }
}

double DistanceProfile::max_rho() const { return *std::max_element(rho_.begin(), rho_.end()); }

double DistanceProfile::metric_condition_violation() const {
    double worst = -1e300;
    for (std::size_t i = 0; i < t_.size(); ++i) {
        for (std::size_t j = i + 1; j < t_.size(); ++j) {
            const double dt = t_[j] - t_[i];
            const double dr = std::abs(rho_[j] - rho_[i]);
            worst = std::max({worst, dr - dt, dt - (rho_[i] + rho_[j])});
        }
    }
    return worst;
}

std::array<long double, 3> DistanceProfile::hermite(long double t) const {
    std::size_t i = locate(t_, static_cast<double>(t));
    const long double t0 = t_[i], h = static_cast<long double>(t_[i + 1]) - t0;
    const long double s = (t - t0) / h;
    const long double c0 = rho_[i];
    const long double c1 = h * rho_dot_[i];
    const long double c2 = h * h * static_cast<long double>(rho_ddot_[i]) / 2;
    const long double A = static_cast<long double>(rho_[i + 1]) - (c0 + c1 + c2);
    const long double B = h * static_cast<long double>(rho_dot_[i + 1]) - (c1 + 2 * c2);
    const long double C = h * h * static_cast<long double>(rho_ddot_[i + 1]) - 2 * c2;
    const long double c3 = 10 * A - 4 * B + C / 2;
    const long double c4 = -15 * A + 7 * B - C;
    const long double c5 = 6 * A - 3 * B + C / 2;
    const long double v = c0 + s * (c1 + s * (c2 + s * (c3 + s * (c4 + s * c5))));
    const long double d = c1 + s * (2 * c2 + s * (3 * c3 + s * (4 * c4 + s * 5 * c5)));
    const long double dd = 2 * c2 + s * (6 * c3 + s * (12 * c4 + s * 20 * c5));
    return {v, d / h, dd / (h * h)};
}

long double DistanceProfile::value(long double t) const {
    const long double tol = 1e-12L * (static_cast<long double>(t_.back()) - t_.front());
    if (t < t_.front() - tol || t > t_.back() + tol) {
        std::ostringstream msg;
        msg << "profile: t = " << static_cast<double>(t) << " outside [" << t_.front() << ", " << t_.back() << "]";
        throw DomainError(msg.str());
    }
    if (f_) return f_(t)[0];
    return hermite(t)[0];
}

Jet DistanceProfile::jet(double t) const {
    value(t);  // domain check
    const auto v = f_ ? f_(t) : hermite(t);
    return {static_cast<double>(v[0]), static_cast<double>(v[1]), static_cast<double>(v[2])};
}

std::array<long double, 3> DistanceProfile::jet_long(long double t) const {
    value(t);
    return f_ ? f_(t) : hermite(t);
}

}  // namespace geodist
