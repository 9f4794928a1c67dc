#pragma once

#include <array>
#include <functional>
#include <vector>

#include "geodist/numerics.hpp"

namespace geodist {

struct Jet {
    double rho = 0, rho_dot = 0, rho_ddot = 0;
};

// rho(t) = distance from gamma(t) to the origin, sampled on strictly
// increasing nodes. Off-node values come either from an analytic callback
// or from a quintic Hermite interpolant through the node jets; both are
// evaluated in long double so that tight divided differences stay accurate.
class DistanceProfile {
public:
    using Analytic = std::function<std::array<long double, 3>(long double)>;

    DistanceProfile() = default;

    // Jets estimated with high-order finite differences on the nodes.
    static DistanceProfile from_samples(std::vector<double> t, std::vector<double> rho);
    static DistanceProfile from_jets(std::vector<double> t, std::vector<double> rho,
                                     std::vector<double> rho_dot, std::vector<double> rho_ddot);
    static DistanceProfile from_function(Analytic f, std::vector<double> t);

    long double value(long double t) const;
    Jet jet(double t) const;
    std::array<long double, 3> jet_long(long double t) const;  // rho, rho', rho''

    const std::vector<double>& t() const { return t_; }
    const std::vector<double>& rho() const { return rho_; }
    const std::vector<double>& rho_dot() const { return rho_dot_; }
    const std::vector<double>& rho_ddot() const { return rho_ddot_; }
    std::size_t size() const { return t_.size(); }
    Interval domain() const { return {t_.front(), t_.back()}; }
    double max_rho() const;
    bool analytic() const { return static_cast<bool>(f_); }

    // Strictly increasing nodes, rho > 0, finite values; throws InputError.
    void validate() const;
    // Largest violation of rho(t) - rho(t') <= |t - t'| <= rho(t) + rho(t') over node pairs
    // (<= 0 means satisfied).
    double metric_condition_violation() const;

private:
    void check_shape() const;
    std::array<long double, 3> hermite(long double t) const;

    std::vector<double> t_, rho_, rho_dot_, rho_ddot_;
    Analytic f_;
};

// Nodes t0 + m sinh(u) on [a, b]: fine near t0, coarse far away.
std::vector<double> graded_nodes(double a, double b, double t0, double m, std::size_t n);

}  // namespace geodist
