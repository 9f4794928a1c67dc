#include "geodist/generators.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "geodist/errors.hpp"
#include "geodist/special_functions.hpp"

namespace geodist {

RadialCurvature random_holder_field(std::mt19937_64& rng, double R, double alpha) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    const double c0 = 2 * u(rng) - 1;
    const double a1 = 0.5 * u(rng), a2 = 0.5 * u(rng);
    const double w1 = (1 + 19 * u(rng)) / R, w2 = (1 + 19 * u(rng)) / R;
    const double p1 = 2 * std::numbers::pi * u(rng), p2 = 2 * std::numbers::pi * u(rng);
    const double b = 2 * u(rng) - 1;
    const double c = R * u(rng);
    const double H_raw = std::abs(c0) + a1 + a2 + std::abs(b) * std::pow(std::max(c, R - c) / R, alpha);
    const double L_raw = std::pow(2.0, 1 - alpha) * (a1 * std::pow(w1, alpha) + a2 * std::pow(w2, alpha)) +
                         std::abs(b) * std::pow(R, -alpha);
    const double cap = 0.9 * std::numbers::pi * std::numbers::pi / (4 * R * R);
    const double s = (0.2 + 0.8 * u(rng)) * cap / H_raw;
    RadialCurvature k;
    k.K = [=](double r) {
        return s * (c0 + a1 * std::sin(w1 * r + p1) + a2 * std::sin(w2 * r + p2) +
                    b * std::pow(std::abs(r - c) / R, alpha));
    };
    k.R = R;
    k.H = s * H_raw;
    k.L = s * L_raw;
    k.alpha = alpha;
    return k;
}

CurvatureField constant_curvature_field(double K) {
    std::ostringstream name;
    name << "constant(K=" << K << ")";
    return {name.str(), [K](double, double) { return K; }, std::abs(K), 0.0, true, K};
}

CurvatureField radial_cusp_field(double Kc, double A, double alpha) {
    std::ostringstream name;
    name << "cusp(Kc=" << Kc << ",A=" << A << ")";
    return {name.str(), [=](double r, double) { return Kc + A * std::pow(r, alpha); }, std::abs(Kc) + std::abs(A),
            std::abs(A), false, 0};
}

CurvatureField radial_wave_field(double Kc, double A, double omega, double alpha) {
    std::ostringstream name;
    name << "wave(Kc=" << Kc << ",A=" << A << ",w=" << omega << ")";
    return {name.str(), [=](double r, double) { return Kc + A * std::sin(omega * r); }, std::abs(Kc) + std::abs(A),
            std::abs(A) * std::pow(2.0, 1 - alpha) * std::pow(omega, alpha), false, 0};
}

CurvatureField tilted_field(double Kc, double A, double theta1, double alpha) {
    std::ostringstream name;
    name << "tilted(Kc=" << Kc << ",A=" << A << ",th=" << theta1 << ")";
    // Lipschitz |A| on the unit disc, hence alpha-Holder with 2^(1-alpha) |A|.
    return {name.str(), [=](double r, double th) { return Kc + A * r * std::cos(th - theta1); },
            std::abs(Kc) + std::abs(A), std::abs(A) * std::pow(2.0, 1 - alpha), false, 0};
}

MetricGrid metric_from_field(const CurvatureField& field, double R, double alpha, std::size_t n_theta,
                             double step) {
    const double H = std::max(field.H, 1e-12);
    return MetricGrid::from_curvature(field.K, R, H, alpha, n_theta, step);
}

namespace {

using LD = long double;

std::array<LD, 3> constant_curvature_jet(LD K, LD m, LD t) {
    if (K == 0) {
        const LD rho = std::sqrt(m * m + t * t);
        return {rho, t / rho, m * m / (rho * rho * rho)};
    }
    const LD a = std::sqrt(std::abs(K));
    LD rho, rho_dot;
    if (K > 0) {
        const LD sm = std::sin(a * m / 2), st = std::sin(a * t / 2);
        rho = 2 / a * std::asin(std::sqrt(sm * sm + std::cos(a * m) * st * st));
        rho_dot = std::cos(a * m) * std::sin(a * t) / std::sin(a * rho);
    } else {
        const LD sm = std::sinh(a * m / 2), st = std::sinh(a * t / 2);
        rho = 2 / a * std::asinh(std::sqrt(sm * sm + std::cosh(a * m) * st * st));
        rho_dot = std::cosh(a * m) * std::sinh(a * t) / std::sinh(a * rho);
    }
    const LD rho_ddot = cot_k(K, rho) * (1 - rho_dot * rho_dot);
    return {rho, rho_dot, rho_ddot};
}

}  // namespace

DistanceProfile constant_curvature_profile(double K, double m, Interval I, std::size_t nodes) {
    if (!(m > 0)) throw DomainError("constant_curvature_profile: m must be positive");
    if (K > 0 && std::sqrt(K) * (m + std::max(std::abs(I.lo), std::abs(I.hi))) >= std::numbers::pi / 2) {
        throw DomainError("constant_curvature_profile: geodesic leaves the convex disc");
    }
    const LD KL = K, mL = m;
    auto f = [KL, mL](LD t) { return constant_curvature_jet(KL, mL, t); };
    return DistanceProfile::from_function(f, graded_nodes(I.lo, I.hi, 0.0, m, nodes));
}

double constant_curvature_angle(double K, double m, double t) {
    if (K == 0) return std::atan2(t, m);
    const double a = std::sqrt(std::abs(K));
    if (K > 0) return std::atan2(std::sin(a * t), std::sin(a * m) * std::cos(a * t));
    return std::atan2(std::sinh(a * t), std::sinh(a * m) * std::cosh(a * t));
}

DistanceProfile euclid_offset_profile(double c, Interval I, std::size_t nodes) {
    if (!(c < 1)) throw DomainError("euclid_offset_profile: need c < 1");
    const LD cL = c;
    auto f = [cL](LD t) -> std::array<LD, 3> {
        const LD s = std::sqrt(1 + t * t);
        return {s - cL, t / s, 1 / (s * s * s)};
    };
    return DistanceProfile::from_function(f, graded_nodes(I.lo, I.hi, 0.0, 1 - c, nodes));
}

DistanceProfile eps_bump_profile(double eps, double beta, Interval I, std::size_t nodes) {
    if (!(eps > 0)) throw DomainError("eps_bump_profile: need eps > 0");
    const LD e = eps, bump = std::pow(static_cast<LD>(eps), 3 + static_cast<LD>(beta));
    auto f = [e, bump](LD t) -> std::array<LD, 3> {
        const LD s = std::sqrt(e * e + t * t);
        return {s + bump, t / s, e * e / (s * s * s)};
    };
    return DistanceProfile::from_function(f, graded_nodes(I.lo, I.hi, 0.0, eps, nodes));
}

GeneratedProfile geodesic_profile(const MetricGrid& grid, const CurvatureField& field, double m, Interval I,
                                  double eta) {
    // Piecewise fixed-step integration with the step tied to the current radius.
    auto leg = [&](double length, int sign) {
        GeodesicPath out;
        PolarPoint p{m, 0.0};
        double rho_dot = 0;
        double done = 0;
        while (true) {
            const double dt = std::max(eta * p.r, 1e-12);
            const double seg = std::min(length - done, 16 * dt);
            GeodesicPath piece = geodesic_integrate(grid, p, rho_dot, sign, std::max(seg, 0.0), dt);
            const std::size_t first = out.t.empty() ? 0 : 1;
            for (std::size_t k = first; k < piece.size(); ++k) {
                out.t.push_back(done + piece.t[k]);
                out.rho.push_back(piece.rho[k]);
                out.rho_dot.push_back(piece.rho_dot[k]);
                out.rho_ddot.push_back(piece.rho_ddot[k]);
                out.phi.push_back(piece.phi[k]);
                out.phi_dot.push_back(piece.phi_dot[k]);
            }
            out.unit_speed_residual = std::max(out.unit_speed_residual, piece.unit_speed_residual);
            done += seg;
            if (done >= length - 1e-15 * length || seg <= 0) break;
            p = {piece.rho.back(), piece.phi.back()};
            rho_dot = piece.rho_dot.back();
        }
        return out;
    };
    GeodesicPath path;
    const double t_hi = std::max(I.hi, 0.0), t_lo = std::min(I.lo, 0.0);
    const GeodesicPath fwd = leg(t_hi, 1);
    const GeodesicPath bwd = leg(-t_lo, -1);
    for (std::size_t k = bwd.size(); k-- > 1;) {
        path.t.push_back(-bwd.t[k]);
        path.rho.push_back(bwd.rho[k]);
        path.rho_dot.push_back(-bwd.rho_dot[k]);
        path.rho_ddot.push_back(bwd.rho_ddot[k]);
        path.phi.push_back(bwd.phi[k]);
        path.phi_dot.push_back(-bwd.phi_dot[k]);
    }
    for (std::size_t k = 0; k < fwd.size(); ++k) {
        path.t.push_back(fwd.t[k]);
        path.rho.push_back(fwd.rho[k]);
        path.rho_dot.push_back(fwd.rho_dot[k]);
        path.rho_ddot.push_back(fwd.rho_ddot[k]);
        path.phi.push_back(fwd.phi[k]);
        path.phi_dot.push_back(fwd.phi_dot[k]);
    }
    path.unit_speed_residual = std::max(fwd.unit_speed_residual, bwd.unit_speed_residual);
    // Restrict to I.
    GeodesicPath cut;
    for (std::size_t k = 0; k < path.size(); ++k) {
        if (path.t[k] < I.lo - 1e-15 || path.t[k] > I.hi + 1e-15) continue;
        cut.t.push_back(path.t[k]);
        cut.rho.push_back(path.rho[k]);
        cut.rho_dot.push_back(path.rho_dot[k]);
        cut.rho_ddot.push_back(path.rho_ddot[k]);
        cut.phi.push_back(path.phi[k]);
        cut.phi_dot.push_back(path.phi_dot[k]);
    }
    cut.unit_speed_residual = path.unit_speed_residual;
    GeneratedProfile g;
    g.name = field.name;
    g.field = field;
    g.m = m;
    g.I = {cut.t.front(), cut.t.back()};
    g.profile = distance_profile(grid, cut);
    g.path = std::move(cut);
    return g;
}

std::vector<GeneratedProfile> generator_suite(std::uint64_t seed, std::size_t count, const SuiteOptions& opts) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::vector<GeneratedProfile> out;
    const double grid_R = 1.25 * opts.C1;
    for (std::size_t i = 0; i < count; ++i) {
        const double m = opts.m_min * std::pow(opts.m_max / opts.m_min, u(rng));
        const double T = 0.95 * std::sqrt(opts.C1 * opts.C1 - m * m);
        const double r1 = u(rng), r2 = u(rng), r3 = u(rng);
        Interval I{-T * (0.3 + 0.7 * r1), T * (0.3 + 0.7 * r2)};
        if (r3 < 1.0 / 6) I.lo = T * 0.1 * u(rng);  // one-sided: closest point outside I
        const int kind = opts.variable_fields ? static_cast<int>(i % 4) : 0;
        if (kind == 0) {
            double K = opts.K_abs_max * (2 * u(rng) - 1);
            if (i % 8 == 0) K = 0;
            GeneratedProfile g;
            g.field = constant_curvature_field(K);
            g.name = g.field.name;
            g.m = m;
            g.I = I;
            g.profile = constant_curvature_profile(K, m, I);
            out.push_back(std::move(g));
            continue;
        }
        CurvatureField field;
        std::size_t n_theta = 1;
        const double Kc = 0.5 * (2 * u(rng) - 1);
        if (kind == 1) {
            field = radial_cusp_field(Kc, 0.5 * (2 * u(rng) - 1), opts.alpha);
        } else if (kind == 2) {
            const double omega = 20 + 80 * u(rng);
            const double amp = std::min(0.4, 1 / (std::pow(2.0, 1 - opts.alpha) * std::pow(omega, opts.alpha)));
            field = radial_wave_field(Kc, amp * (2 * u(rng) - 1), omega, opts.alpha);
        } else {
            field = tilted_field(Kc, 0.5 * (2 * u(rng) - 1), 2 * std::numbers::pi * u(rng), opts.alpha);
            n_theta = 256;
        }
        const MetricGrid grid = metric_from_field(field, grid_R, opts.alpha, n_theta, grid_R / 2000);
        out.push_back(geodesic_profile(grid, field, m, I, 0.004));
    }
    return out;
}

}  // namespace geodist
