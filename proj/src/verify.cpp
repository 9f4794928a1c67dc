#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>

#include "geodist/errors.hpp"
#include "geodist/special_functions.hpp"
#include "geodist/synthesis.hpp"

namespace geodist {

std::vector<std::vector<double>> grid_curvature(const MetricGrid& m, double K_ref) {
    // Stencils on [0, r_0, ..., r_{n-1}] with G(0) = 0.
    const auto& rn = m.r_nodes();
    const std::size_t n = rn.size();
    std::vector<double> x(n + 1);
    x[0] = 0;
    std::copy(rn.begin(), rn.end(), x.begin() + 1);
    constexpr int width = 5;
    const std::size_t w = std::min<std::size_t>(width, x.size());
    std::vector<std::vector<double>> weights(n, std::vector<double>(w));
    std::vector<std::size_t> first(n);
    double c[width][3];
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t e = i + 1;  // index in x
        std::size_t lo = e >= w / 2 ? e - w / 2 : 0;
        lo = std::min(lo, x.size() - w);
        fd_weights(x[e], &x[lo], static_cast<int>(w), c);
        for (std::size_t a = 0; a < w; ++a) weights[i][a] = c[a][2];
        first[i] = lo;
    }
    // Only the deviation from sin_{K_ref} is differenced: where G equals the
    // reference exactly the result carries no rounding noise.
    std::vector<double> ref(n);
    for (std::size_t i = 0; i < n; ++i) ref[i] = sin_k(K_ref, rn[i]);
    std::vector<std::vector<double>> K(m.G().size(), std::vector<double>(n));
    for (std::size_t j = 0; j < m.G().size(); ++j) {
        const auto& g = m.G()[j];
        for (std::size_t i = 0; i < n; ++i) {
            double d2 = 0;
            for (std::size_t a = 0; a < w; ++a) {
                const std::size_t e = first[i] + a;
                d2 += weights[i][a] * (e == 0 ? 0.0 : g[e - 1] - ref[e - 1]);
            }
            K[j][i] = (K_ref * ref[i] - d2) / g[i];
        }
    }
    return K;
}

HolderEstimate sampled_holder(const std::vector<double>& r, const std::vector<double>& theta,
                              const std::vector<std::vector<double>>& v, double alpha, std::size_t random_pairs,
                              std::uint64_t seed) {
    HolderEstimate est;
    const std::size_t nr = r.size(), nt = theta.size();
    if (nr == 0 || nt == 0) return est;
    std::vector<double> ct(nt), st(nt);
    for (std::size_t j = 0; j < nt; ++j) {
        ct[j] = std::cos(theta[j]);
        st[j] = std::sin(theta[j]);
    }
    auto consider = [&](std::size_t i1, std::size_t j1, std::size_t i2, std::size_t j2) {
        const double dx = r[i1] * ct[j1] - r[i2] * ct[j2];
        const double dy = r[i1] * st[j1] - r[i2] * st[j2];
        const double d = std::hypot(dx, dy);
        if (!(d > 0)) return;
        const double q = std::abs(v[j1][i1] - v[j2][i2]) / std::pow(d, alpha);
        if (q > est.value) {
            est.value = q;
            est.witness = {r[i1], theta[j1], r[i2], theta[j2]};
        }
    };
    for (std::size_t j = 0; j < nt; ++j) {
        const std::size_t jn = (j + 1) % nt;
        for (std::size_t i = 0; i < nr; ++i) {
            if (i + 1 < nr) consider(i, j, i + 1, j);
            if (nt > 1) {
                consider(i, j, i, jn);
                if (i + 1 < nr) {
                    consider(i, j, i + 1, jn);
                    consider(i + 1, j, i, jn);
                }
            }
        }
    }
    // Multiscale random pairs: a node, a log-uniform distance, a random direction.
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<std::size_t> pick_r(0, nr - 1), pick_t(0, nt - 1);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    const double R = r.back();
    auto nearest = [](const std::vector<double>& xs, double x) {
        const std::size_t i = locate(xs, x);
        if (i + 1 < xs.size() && std::abs(xs[i + 1] - x) < std::abs(xs[i] - x)) return i + 1;
        return i;
    };
    for (std::size_t s = 0; s < random_pairs; ++s) {
        const std::size_t i1 = pick_r(rng), j1 = pick_t(rng);
        const double scale = R * std::exp2(-20 * u(rng));
        const double dir = 2 * std::numbers::pi * u(rng);
        const double x = r[i1] * ct[j1] + scale * std::cos(dir);
        const double y = r[i1] * st[j1] + scale * std::sin(dir);
        const double r2 = std::hypot(x, y);
        if (r2 > R || r2 < r.front()) continue;
        const std::size_t i2 = nearest(r, r2);
        std::size_t j2 = 0;
        if (nt > 1) {
            const double th = wrap_angle(std::atan2(y, x));
            j2 = nearest(theta, th);
            // Wrap-around neighbour.
            const double d_first = std::abs(wrap_angle(theta.front() - th));
            const double d_j2 = std::abs(wrap_angle(theta[j2] - th));
            if (d_first < d_j2) j2 = 0;
        }
        consider(i1, j1, i2, j2);
    }
    return est;
}

SynthesisResult reconstruct_synthesis(MetricGrid metric, const DistanceProfile& p, double phi_t0) {
    SynthesisResult res;
    res.metric = std::move(metric);
    const ProfileMinimum pm = profile_minimum(p);
    res.t0 = pm.t0;
    res.m = pm.m;
    res.max_rho = p.max_rho();
    try {
        res.K0 = kappa(p, pm.t0);
    } catch (const std::exception&) {
        res.K0 = std::numeric_limits<double>::quiet_NaN();
    }
    const MetricGrid& g = res.metric;
    auto rhs = [&](double t, double ph) {
        const Jet j = p.jet(t);
        return std::sqrt(std::max(0.0, 1 - j.rho_dot * j.rho_dot)) / g.at(j.rho, ph).G;
    };
    auto step = [&](double a, double b, double ph) {
        constexpr int sub = 4;
        const double h = (b - a) / sub;
        for (int s = 0; s < sub; ++s) {
            const double t = a + s * h;
            const double k1 = rhs(t, ph);
            const double k2 = rhs(t + h / 2, ph + h / 2 * k1);
            const double k3 = rhs(t + h / 2, ph + h / 2 * k2);
            const double k4 = rhs(t + h, ph + h * k3);
            ph += h / 6 * (k1 + 2 * k2 + 2 * k3 + k4);
        }
        return ph;
    };
    const auto& t = p.t();
    const std::size_t n = t.size();
    std::vector<double> ph(n);
    const std::size_t k = static_cast<std::size_t>(std::lower_bound(t.begin(), t.end(), pm.t0) - t.begin());
    if (k < n) {
        ph[k] = step(pm.t0, t[k], phi_t0);
        for (std::size_t i = k + 1; i < n; ++i) ph[i] = step(t[i - 1], t[i], ph[i - 1]);
    }
    if (k > 0) {
        ph[k - 1] = step(pm.t0, t[k - 1], phi_t0);
        for (std::size_t i = k - 1; i-- > 0;) ph[i] = step(t[i + 1], t[i], ph[i + 1]);
    }
    res.gamma.t = t;
    for (std::size_t i = 0; i < n; ++i) {
        const Jet j = p.jet(t[i]);
        res.gamma.rho.push_back(j.rho);
        res.gamma.rho_dot.push_back(j.rho_dot);
        res.gamma.rho_ddot.push_back(j.rho_ddot);
        res.gamma.phi.push_back(wrap_angle(ph[i]));
        res.gamma.phi_dot.push_back(rhs(t[i], ph[i]));
    }
    return res;
}

CheckerReport verify_synthesis(const SynthesisResult& res, const DistanceProfile& p, const CheckerConstants& consts,
                               const VerifyOptions& opts) {
    CheckerReport rep;
    rep.constants_version = consts.version;
    const MetricGrid& g = res.metric;
    const auto& rn = g.r_nodes();
    const auto& th = g.theta_nodes();
    const double alpha = consts.alpha;
    const double C2H = consts.C2 * consts.H;
    const double max_rho = res.max_rho > 0 ? res.max_rho : p.max_rho();

    // (i) G / r -> 1 at the origin.
    {
        auto& rec = rep.add("G_origin");
        const double r0 = rn.front();
        double worst = 0;
        for (const auto& row : g.G()) worst = std::max(worst, std::abs(row.front() / r0 - 1));
        rec.update(worst, C2H * r0 * r0, {r0});
    }

    // (ii) curvature bounds from the G table.
    const auto K = grid_curvature(g, std::isfinite(res.K0) ? res.K0 : 0.0);
    double K_sup = 0, swept_max = -std::numeric_limits<double>::infinity(), swept_min = -swept_max;
    std::vector<double> K_where;
    double phi_lo = std::numeric_limits<double>::infinity(), phi_hi = -phi_lo;
    for (double v : res.gamma.phi) {
        phi_lo = std::min(phi_lo, v);
        phi_hi = std::max(phi_hi, v);
    }
    for (std::size_t j = 0; j < K.size(); ++j) {
        for (std::size_t i = 0; i < rn.size(); ++i) {
            const double v = K[j][i];
            if (std::abs(v) > K_sup || !std::isfinite(v)) {
                K_sup = std::isfinite(v) ? std::abs(v) : std::numeric_limits<double>::infinity();
                K_where = {rn[i], th[j]};
            }
            if (rn[i] <= max_rho && th[j] >= phi_lo && th[j] <= phi_hi) {
                swept_max = std::max(swept_max, v);
                swept_min = std::min(swept_min, v);
            }
        }
    }
    rep.add("K_sup").update(K_sup, C2H, K_where);
    const HolderEstimate kh = sampled_holder(rn, th, K, alpha, opts.holder_pairs, opts.seed);
    rep.add("K_holder").update(kh.value, std::pow(C2H, 1 + alpha / 2), kh.witness);
    rep.add("strong_convexity").update(K_sup * g.R() * g.R(), std::numbers::pi * std::numbers::pi / 4, {g.R()});

    // (iii), (iv) geodesic equation and unit speed along gamma.
    const auto& gm = res.gamma;
    auto& geo = rep.add("geodesic_residual");
    auto& unit = rep.add("unit_speed_residual");
    for (std::size_t i = 0; i < gm.size(); ++i) {
        try {
            const auto s = g.at(gm.rho[i], gm.phi[i]);
            const double one_minus = 1 - gm.rho_dot[i] * gm.rho_dot[i];
            geo.update(std::abs(gm.rho_ddot[i] - s.h() * one_minus), opts.tol_geo, {gm.t[i]});
            const double G = s.G;
            unit.update(std::abs(gm.rho_dot[i] * gm.rho_dot[i] + G * G * gm.phi_dot[i] * gm.phi_dot[i] - 1),
                        opts.tol_unit, {gm.t[i]});
        } catch (const std::exception&) {
            geo.fail({gm.t[i]});
            unit.fail({gm.t[i]});
        }
    }

    // (v) shooting distance between points of gamma equals |t - t'|.
    auto& dist = rep.add("distance_residual");
    if (gm.size() >= 2) {
        static constexpr double fractions[][2] = {{0.0, 1.0},   {0.1, 0.9},  {0.25, 0.75}, {0.4, 0.6},
                                                  {0.05, 0.5},  {0.5, 0.95}, {0.3, 0.35},  {0.48, 0.52},
                                                  {0.15, 0.45}, {0.6, 0.85}};
        const std::size_t count = std::min(opts.distance_pairs, std::size(fractions));
        const double a = gm.t.front(), b = gm.t.back();
        auto node = [&](double fr) {
            const double want = a + fr * (b - a);
            const std::size_t i = locate(gm.t, want);
            return (i + 1 < gm.size() && std::abs(gm.t[i + 1] - want) < std::abs(gm.t[i] - want)) ? i + 1 : i;
        };
        DistanceOptions dopt;
        dopt.tol_hit = 1e-7;
        for (std::size_t c = 0; c < count; ++c) {
            const std::size_t i1 = node(fractions[c][0]), i2 = node(fractions[c][1]);
            if (i1 == i2) continue;
            const double want = std::abs(gm.t[i2] - gm.t[i1]);
            try {
                const DistanceResult d =
                    distance_detailed(g, {gm.rho[i1], gm.phi[i1]}, {gm.rho[i2], gm.phi[i2]}, dopt);
                dist.update(std::abs(d.distance - want), opts.tol_dist * max_rho, {gm.t[i1], gm.t[i2]});
            } catch (const std::exception&) {
                dist.fail({gm.t[i1], gm.t[i2]});
            }
        }
    }

    rep.values["R"] = g.R();
    rep.values["r0"] = rn.front();
    rep.values["n_r"] = static_cast<double>(rn.size());
    rep.values["n_theta"] = static_cast<double>(th.size());
    rep.values["K_sup"] = K_sup;
    if (std::isfinite(swept_max)) {
        rep.values["K_swept_max"] = swept_max;
        rep.values["K_swept_min"] = swept_min;
    }
    rep.values["K0"] = res.K0;
    if (!res.F.empty()) rep.values["F_bilipschitz"] = res.F.bilipschitz();
    return rep;
}

}  // namespace geodist
