#include "geodist/geodesy.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <sstream>

#include "geodist/errors.hpp"
#include "geodist/numerics.hpp"

namespace geodist {

namespace {

constexpr double kRadialThreshold = 1e-10;

// y = (rho, rho', swept angle a >= 0); phi = theta0 + s a.
struct State {
    double rho, rho_dot, a;
};

struct Derivative {
    double drho, drho_dot, da;
};

class GeodesicSystem {
public:
    GeodesicSystem(const MetricGrid& m, double theta0, int sign) : m_(m), theta0_(theta0), sign_(sign) {}

    Derivative rhs(const State& y, double t) const {
        if (y.rho > m_.R() * (1 + 1e-12)) {
            throw GeodesicEscapeError("geodesic exits the domain", GeodesicEscapeError::Kind::ExitedDomain, t);
        }
        if (y.rho < m_.r_floor()) {
            throw GeodesicEscapeError("geodesic reaches r_floor", GeodesicEscapeError::Kind::HitOrigin, t);
        }
        const auto s = m_.at(y.rho, phi(y.a));
        const double rd = std::clamp(y.rho_dot, -1.0, 1.0);
        const double w = 1 - rd * rd;
        if (w < kRadialThreshold) return {rd, s.h() * w, 0.0};
        return {rd, s.h() * w, std::sqrt(w) / s.G};
    }

    State step(const State& y, double t, double dt, Derivative& k1_out) const {
        const Derivative k1 = rhs(y, t);
        k1_out = k1;
        const Derivative k2 = rhs(advance(y, k1, dt / 2), t + dt / 2);
        const Derivative k3 = rhs(advance(y, k2, dt / 2), t + dt / 2);
        const Derivative k4 = rhs(advance(y, k3, dt), t + dt);
        State out{y.rho + dt / 6 * (k1.drho + 2 * k2.drho + 2 * k3.drho + k4.drho),
                  y.rho_dot + dt / 6 * (k1.drho_dot + 2 * k2.drho_dot + 2 * k3.drho_dot + k4.drho_dot),
                  y.a + dt / 6 * (k1.da + 2 * k2.da + 2 * k3.da + k4.da)};
        out.rho_dot = std::clamp(out.rho_dot, -1.0, 1.0);
        return out;
    }

    double phi(double a) const { return theta0_ + sign_ * a; }
    int sign() const { return sign_; }

private:
    static State advance(const State& y, const Derivative& d, double h) {
        return {y.rho + h * d.drho, std::clamp(y.rho_dot + h * d.drho_dot, -1.0, 1.0), y.a + h * d.da};
    }

    const MetricGrid& m_;
    double theta0_;
    int sign_;
};

}  // namespace

GeodesicPath geodesic_integrate(const MetricGrid& m, PolarPoint start, double rho_dot0, int direction_sign,
                                double length, double step) {
    if (!(std::abs(rho_dot0) < 1)) throw DomainError("geodesic_integrate: |rho_dot0| must be < 1");
    if (direction_sign != 1 && direction_sign != -1) throw DomainError("geodesic_integrate: sign must be +-1");
    if (!(length >= 0) || !(step > 0)) throw DomainError("geodesic_integrate: need length >= 0, step > 0");
    const GeodesicSystem sys(m, start.theta, direction_sign);
    GeodesicPath path;
    State y{start.r, rho_dot0, 0.0};
    const std::size_t n = length == 0 ? 0 : static_cast<std::size_t>(std::ceil(length / step - 1e-9));
    const double dt = n == 0 ? 0 : length / static_cast<double>(n);
    auto record = [&](double t, const State& s, const Derivative& d) {
        path.t.push_back(t);
        path.rho.push_back(s.rho);
        path.rho_dot.push_back(s.rho_dot);
        path.rho_ddot.push_back(d.drho_dot);
        path.phi.push_back(sys.phi(s.a));
        path.phi_dot.push_back(direction_sign * d.da);
        const double G = m.at(s.rho, sys.phi(s.a)).G;
        const double res = std::abs(s.rho_dot * s.rho_dot + G * G * d.da * d.da - 1);
        path.unit_speed_residual = std::max(path.unit_speed_residual, res);
    };
    Derivative d{};
    for (std::size_t i = 0; i < n; ++i) {
        const State next = sys.step(y, dt * static_cast<double>(i), dt, d);
        record(dt * static_cast<double>(i), y, d);
        y = next;
    }
    d = sys.rhs(y, length);
    record(length, y, d);
    return path;
}

GeodesicPath geodesic_integrate_span(const MetricGrid& m, PolarPoint start, double rho_dot0, int direction_sign,
                                     double t_lo, double t_hi, double step) {
    if (!(t_lo <= 0 && t_hi >= 0)) throw DomainError("geodesic_integrate_span: need t_lo <= 0 <= t_hi");
    const GeodesicPath fwd = geodesic_integrate(m, start, rho_dot0, direction_sign, t_hi, step);
    const GeodesicPath bwd = geodesic_integrate(m, start, -rho_dot0, -direction_sign, -t_lo, step);
    GeodesicPath out;
    for (std::size_t k = bwd.size(); k-- > 1;) {
        out.t.push_back(-bwd.t[k]);
        out.rho.push_back(bwd.rho[k]);
        out.rho_dot.push_back(-bwd.rho_dot[k]);
        out.rho_ddot.push_back(bwd.rho_ddot[k]);
        out.phi.push_back(bwd.phi[k]);
        out.phi_dot.push_back(-bwd.phi_dot[k]);
    }
    for (std::size_t k = 0; k < fwd.size(); ++k) {
        out.t.push_back(fwd.t[k]);
        out.rho.push_back(fwd.rho[k]);
        out.rho_dot.push_back(fwd.rho_dot[k]);
        out.rho_ddot.push_back(fwd.rho_ddot[k]);
        out.phi.push_back(fwd.phi[k]);
        out.phi_dot.push_back(fwd.phi_dot[k]);
    }
    out.unit_speed_residual = std::max(fwd.unit_speed_residual, bwd.unit_speed_residual);
    return out;
}

namespace {

enum class ShotKind { Hit, Over, Under };

struct Shot {
    ShotKind kind;
    double rho = 0;
    double t = 0;
};

Shot shoot(const MetricGrid& m, PolarPoint p, int sign, double target, double c, double t_max, double eta) {
    const GeodesicSystem sys(m, p.theta, sign);
    State y{p.r, c, 0.0};
    double t = 0;
    try {
        Derivative d0 = sys.rhs(y, t);
        while (t < t_max) {
            const double dt = eta * y.rho;
            Derivative unused;
            const State next = sys.step(y, t, dt, unused);
            const Derivative d1 = sys.rhs(next, t + dt);
            if (next.a >= target) {
                // Locate the crossing on the cubic Hermite of a(t), then read rho there.
                double lo = 0, hi = dt;
                for (int it = 0; it < 80; ++it) {
                    const double mid = 0.5 * (lo + hi);
                    const double a = hermite3(0, dt, y.a, next.a, d0.da, d1.da, mid);
                    if (a < target) lo = mid; else hi = mid;
                }
                const double tau = 0.5 * (lo + hi);
                return {ShotKind::Hit, hermite3(0, dt, y.rho, next.rho, d0.drho, d1.drho, tau), t + tau};
            }
            y = next;
            d0 = d1;
            t += dt;
        }
    } catch (const GeodesicEscapeError& e) {
        return {e.kind() == GeodesicEscapeError::Kind::HitOrigin ? ShotKind::Under : ShotKind::Over, 0, t};
    } catch (const DomainError&) {
        return {ShotKind::Over, 0, t};
    }
    return {ShotKind::Over, 0, t};
}

}  // namespace

DistanceResult distance_detailed(const MetricGrid& m, PolarPoint p, PolarPoint q, const DistanceOptions& opts) {
    const double R = m.R();
    if (p.r < 0 || q.r < 0 || p.r > R * (1 + 1e-12) || q.r > R * (1 + 1e-12)) {
        throw DomainError("distance: points must lie in the grid disc");
    }
    DistanceResult res;
    if (p.r == 0 || q.r == 0) {
        res.distance = p.r + q.r;
        res.radial = true;
        return res;
    }
    const double dtheta = wrap_angle(q.theta - p.theta);
    const double adt = std::abs(dtheta);
    if (adt < 1e-12) {
        res.distance = std::abs(p.r - q.r);
        res.radial = true;
        return res;
    }
    if (std::numbers::pi - adt < 1e-12) {
        res.distance = p.r + q.r;
        res.radial = true;
        return res;
    }
    if (p.r <= m.r_floor()) throw DomainError("distance: p must lie outside r_floor");
    const int sign = dtheta > 0 ? 1 : -1;
    const double tol = opts.tol_hit * R;
    const double t_max = 1.5 * (p.r + q.r);
    double lo = -1, hi = 1;
    bool lo_from_origin = false;
    for (int it = 1; it <= opts.max_iter; ++it) {
        const double c = 0.5 * (lo + hi);
        const Shot s = shoot(m, p, sign, adt, c, t_max, opts.eta);
        res.iterations = it;
        if (s.kind == ShotKind::Hit) {
            const double diff = s.rho - q.r;
            if (std::abs(diff) <= tol) {
                res.distance = std::min(s.t, p.r + q.r);
                res.miss = std::abs(diff);
                return res;
            }
            if (diff > 0) {
                hi = c;
            } else {
                lo = c;
                lo_from_origin = false;
            }
        } else if (s.kind == ShotKind::Over) {
            hi = c;
        } else {
            lo = c;
            lo_from_origin = true;
        }
        if (hi - lo < 1e-16) break;
    }
    if (lo_from_origin) {
        // The minimizing geodesic passes inside r_floor: use the path through the origin.
        res.distance = p.r + q.r;
        res.radial = true;
        return res;
    }
    std::ostringstream msg;
    msg << "distance: shooting did not converge, bracket on rho'(0) = [" << lo << ", " << hi << "]";
    throw ConvergenceError(msg.str(), lo, hi);
}

double distance(const MetricGrid& m, PolarPoint p, PolarPoint q, const DistanceOptions& opts) {
    if (p.r == q.r && wrap_angle(p.theta - q.theta) == 0) return 0;
    return distance_detailed(m, p, q, opts).distance;
}

DistanceProfile distance_profile(const MetricGrid& m, const GeodesicPath& path) {
    for (std::size_t i = 0; i < path.size(); ++i) {
        if (path.rho[i] > m.R() * (1 + 1e-12)) throw DomainError("distance_profile: path leaves the grid");
    }
    return DistanceProfile::from_jets(path.t, path.rho, path.rho_dot, path.rho_ddot);
}

double geodesic_residual(const MetricGrid& m, const std::vector<double>& rho, const std::vector<double>& rho_dot,
                         const std::vector<double>& rho_ddot, const std::vector<double>& phi) {
    double worst = 0;
    for (std::size_t i = 0; i < rho.size(); ++i) {
        const double h = m.at(rho[i], phi[i]).h();
        worst = std::max(worst, std::abs(rho_ddot[i] - h * (1 - rho_dot[i] * rho_dot[i])));
    }
    return worst;
}

double unit_speed_residual(const MetricGrid& m, const std::vector<double>& rho, const std::vector<double>& rho_dot,
                           const std::vector<double>& phi, const std::vector<double>& phi_dot) {
    double worst = 0;
    for (std::size_t i = 0; i < rho.size(); ++i) {
        const double G = m.at(rho[i], phi[i]).G;
        worst = std::max(worst, std::abs(rho_dot[i] * rho_dot[i] + G * G * phi_dot[i] * phi_dot[i] - 1));
    }
    return worst;
}

std::vector<double> first_difference(const std::vector<double>& t, const std::vector<double>& y) {
    std::vector<double> d1, d2;
    differentiate_nodes(t, y, d1, d2, 5);
    return d1;
}

std::vector<double> second_difference(const std::vector<double>& t, const std::vector<double>& y) {
    std::vector<double> d1, d2;
    differentiate_nodes(t, y, d1, d2, 5);
    return d2;
}

}  // namespace geodist
