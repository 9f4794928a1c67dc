#include "geodist/profile_analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "geodist/errors.hpp"
#include "geodist/special_functions.hpp"

namespace geodist {

long double rho_ddot_ratio(long double rho, long double rho_dot, long double rho_ddot) {
    const long double one_minus = 1 - rho_dot * rho_dot;
    if (!(one_minus > 0)) throw DomainError("|rho'| >= 1");
    return rho * rho_ddot / one_minus;
}

double kappa_from_jet(long double rho, long double rho_dot, long double rho_ddot) {
    if (!(rho > 0)) throw DomainError("kappa: rho must be positive");
    const long double q = rho_ddot_ratio(rho, rho_dot, rho_ddot);
    if (std::abs(q - 1) <= 8 * std::numeric_limits<double>::epsilon()) return 0.0;
    return static_cast<double>(phi_inverse(static_cast<double>(q)) / (rho * rho));
}

double kappa(const DistanceProfile& p, double t) {
    const auto j = p.jet_long(t);
    return kappa_from_jet(j[0], j[1], j[2]);
}

double f0_from_jet(long double rho, long double rho_dot, long double rho_ddot, double K0) {
    const long double one_minus = 1 - rho_dot * rho_dot;
    if (!(one_minus > 0)) throw DomainError("f0: |rho'| >= 1");
    if (K0 > 0 && K0 * rho * rho >= std::numbers::pi * std::numbers::pi) throw DomainError("f0: pole of cot_K0");
    return static_cast<double>(rho_ddot / one_minus - cot_k(static_cast<long double>(K0), rho));
}

double f0(const DistanceProfile& p, double t, double K0) {
    const auto j = p.jet_long(t);
    return f0_from_jet(j[0], j[1], j[2], K0);
}

Phi0Curve::Phi0Curve(const DistanceProfile& p, double t0, double K0) : p_(&p), t0_(t0), K0_(K0) {
    if (K0 > 0 && K0 * p.max_rho() * p.max_rho() >= std::numbers::pi * std::numbers::pi) {
        throw DomainError("phi0: K0 max(rho)^2 >= pi^2");
    }
    const auto& t = p.t();
    const std::size_t n = t.size();
    at_nodes_.assign(n, 0.0);
    // Accumulate outward from t0 so that phi0(t0) = 0 exactly.
    const std::size_t k = static_cast<std::size_t>(std::lower_bound(t.begin(), t.end(), t0) - t.begin());
    if (k < n) {
        at_nodes_[k] = integrate(t0, t[k]);
        for (std::size_t i = k + 1; i < n; ++i) at_nodes_[i] = at_nodes_[i - 1] + integrate(t[i - 1], t[i]);
    }
    if (k > 0) {
        at_nodes_[k - 1] = integrate(t0, t[k - 1]);
        for (std::size_t i = k - 1; i-- > 0;) at_nodes_[i] = at_nodes_[i + 1] + integrate(t[i + 1], t[i]);
    }
}

double Phi0Curve::derivative(double t) const {
    const auto j = p_->jet_long(t);
    const long double one_minus = 1 - j[1] * j[1];
    if (!(one_minus > 0)) throw DomainError("phi0: |rho'| >= 1");
    return static_cast<double>(std::sqrt(one_minus) / sin_k(K0_, static_cast<double>(j[0])));
}

double Phi0Curve::integrate(double a, double b) const {
    if (a == b) return 0.0;
    return integrate_gl([this](double s) { return derivative(s); }, a, b, 2);
}

double Phi0Curve::operator()(double t) const {
    const auto& nodes = p_->t();
    const std::size_t i = locate(nodes, t);
    // Start from whichever of t0 and the bracketing nodes is closest.
    double best_from = t0_, best_val = 0;
    for (std::size_t c : {i, std::min(i + 1, nodes.size() - 1)}) {
        if (std::abs(nodes[c] - t) < std::abs(best_from - t)) {
            best_from = nodes[c];
            best_val = at_nodes_[c];
        }
    }
    return best_val + integrate(best_from, t);
}

ProfileMinimum profile_minimum(const DistanceProfile& p) {
    const auto& t = p.t();
    const auto& rho = p.rho();
    const std::size_t imin = static_cast<std::size_t>(std::min_element(rho.begin(), rho.end()) - rho.begin());
    ProfileMinimum pm{t[imin], rho[imin]};
    auto rd = [&](double x) { return static_cast<double>(p.jet_long(x)[1]); };
    double lo = t[imin > 0 ? imin - 1 : 0], hi = t[std::min(imin + 1, t.size() - 1)];
    if (rd(lo) < 0 && rd(hi) > 0) {
        for (int it = 0; it < 200 && hi - lo > 4 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::abs(lo));
             ++it) {
            const double mid = 0.5 * (lo + hi);
            (rd(mid) < 0 ? lo : hi) = mid;
        }
        const double cand = 0.5 * (lo + hi);
        if (p.value(cand) <= p.value(pm.t0)) pm.t0 = cand;
    }
    pm.m = static_cast<double>(p.value(pm.t0));
    return pm;
}

AnalysisSummary analyze(const DistanceProfile& p) {
    p.validate();
    AnalysisSummary s;
    const auto& t = p.t();
    const auto& rho = p.rho();
    const ProfileMinimum pm = profile_minimum(p);
    s.t0 = pm.t0;
    s.m = pm.m;
    s.K0 = kappa(p, s.t0);
    s.max_rho = p.max_rho();
    const Phi0Curve phi0(p, s.t0, s.K0);
    s.phi0_min = std::numeric_limits<double>::infinity();
    s.phi0_max = -s.phi0_min;
    for (std::size_t i = 0; i < t.size(); ++i) {
        const auto j = p.jet_long(t[i]);
        s.t.push_back(t[i]);
        s.rho.push_back(rho[i]);
        s.q.push_back(static_cast<double>(rho_ddot_ratio(j[0], j[1], j[2])));
        s.kappa.push_back(kappa_from_jet(j[0], j[1], j[2]));
        s.f0.push_back(f0_from_jet(j[0], j[1], j[2], s.K0));
        s.phi0.push_back(phi0(t[i]));
        s.phi0_min = std::min(s.phi0_min, s.phi0.back());
        s.phi0_max = std::max(s.phi0_max, s.phi0.back());
    }
    return s;
}

double phi_phi0_log_ratio(const GeodesicPath& path, const Phi0Curve& phi0, Interval domain) {
    double worst = 0;
    for (std::size_t i = 0; i < path.size(); ++i) {
        if (path.t[i] < domain.lo || path.t[i] > domain.hi) continue;
        worst = std::max(worst, std::abs(std::log(std::abs(path.phi_dot[i]) / phi0.derivative(path.t[i]))));
    }
    return worst;
}

}  // namespace geodist
