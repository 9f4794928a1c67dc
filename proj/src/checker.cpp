#include "geodist/checker.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>

#include "geodist/errors.hpp"
#include "geodist/profile_analysis.hpp"
#include "geodist/special_functions.hpp"

namespace geodist {

std::array<double, 12> TwelvePointConfig::points() const {
    std::array<double, 12> p{};
    for (std::size_t i = 0; i < 4; ++i) {
        p[3 * i] = centers[i] - half_width;
        p[3 * i + 1] = centers[i];
        p[3 * i + 2] = centers[i] + half_width;
    }
    return p;
}

ConfigurationSet twelve_point_configurations(Interval I, std::size_t budget, std::uint64_t seed) {
    if (budget < 1) throw DomainError("twelve_point_configurations: budget must be >= 1");
    if (!(I.hi > I.lo)) throw DomainError("twelve_point_configurations: empty interval");
    ConfigurationSet out;
    const double len = I.length();
    double w = std::ldexp(len, -20);
    // Divided differences below this width are dominated by rounding of t itself.
    const double floor = 64 * std::numeric_limits<double>::epsilon() * std::max(std::abs(I.lo), std::abs(I.hi));
    if (w < floor) {
        w = floor;
        out.degraded = true;
    }
    // Clusters keep the finest pair scale from each other and from the ends
    // of I, so each can widen its own stencil without touching another.
    const double sep = std::ldexp(len, -10);
    const double lo = I.lo + sep, hi = I.hi - sep;
    if (budget == 1) {
        const double c = 0.25 * len, s = std::ldexp(len, -6), mid = I.mid();
        out.configs.push_back({{mid - c - s, mid - c, mid + c, mid + c + s}, w});
        return out;
    }
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(0, 1);
    auto place_pair = [&](double a, double s) -> std::array<double, 2> {
        a = std::clamp(a, lo, hi);
        if (a + s <= hi) return {a, a + s};
        return {a - s, a};
    };
    for (std::size_t i = 0; i < budget; ++i) {
        TwelvePointConfig cfg;
        cfg.half_width = w;
        for (int attempt = 0;; ++attempt) {
            const double a = lo + (hi - lo) * (static_cast<double>(i) + u(rng)) / static_cast<double>(budget);
            const double s1 = len * std::exp2(-10 + 7 * u(rng));
            const double s2 = len * std::exp2(-10 + 7 * u(rng));
            const double off = len * std::exp2(-10 * u(rng));
            double b = u(rng) < 0.5 ? a - off : a + off;
            if (b < lo || b > hi) b = 2 * a - b;
            const auto A = place_pair(a, s1);
            const auto B = place_pair(b, s2);
            cfg.centers = {A[0], A[1], B[0], B[1]};
            bool ok = true;
            for (std::size_t p = 0; p < 4 && ok; ++p) {
                for (std::size_t q = p + 1; q < 4; ++q) {
                    if (std::abs(cfg.centers[p] - cfg.centers[q]) < sep) ok = false;
                }
            }
            for (double x : cfg.centers) ok = ok && x >= lo && x <= hi;
            if (ok) break;
            if (attempt > 1000) {
                out.degraded = true;
                break;
            }
        }
        out.configs.push_back(cfg);
    }
    return out;
}

namespace {

struct ClusterData {
    double t = 0;
    long double rho = 0, rho_dot = 0, rho_ddot = 0;
    bool ok = false;
    double q = 0, kappa = 0, f0 = 0, phi0 = 0, phi0_dot = 0;
    bool kappa_ok = false;
};

struct Stencil {
    long double rho, rho_dot, rho_ddot;
};

Stencil three_point(const DistanceProfile& p, double c, double w) {
    const double tm = c - w, tp = c + w;
    const long double rm = p.value(tm), r0 = p.value(c), rp = p.value(tp);
    const long double hm = static_cast<long double>(c) - tm, hp = static_cast<long double>(tp) - c;
    // Divided differences on a possibly uneven stencil (t +- w rounds).
    const long double s1 = (r0 - rm) / hm, s2 = (rp - r0) / hp;
    return {r0, (s1 * hp + s2 * hm) / (hm + hp), 2 * (s2 - s1) / (hm + hp)};
}

// Profile evaluation carries a relative rounding of a few long-double ulps.
constexpr long double kValueRounding = 1e-18L;

ClusterData evaluate_cluster(const DistanceProfile& p, double c, double w_pilot, double w_max, double K0,
                             const Phi0Curve* phi0) {
    ClusterData d;
    d.t = c;
    // Pilot width from the configuration, then the width that balances the
    // O(w^2) truncation of q against the rounding eps rho^2 / ((1 - rho'^2) w^2).
    Stencil st = three_point(p, c, w_pilot);
    const long double gap = 1 - st.rho_dot * st.rho_dot;
    if (gap > 0 && st.rho > 0) {
        const double w = static_cast<double>(st.rho * std::pow(4 * kValueRounding / gap, 0.25L));
        st = three_point(p, c, std::clamp(w, w_pilot / 16, std::max(w_max, w_pilot)));
    }
    d.rho = st.rho;
    d.rho_dot = st.rho_dot;
    d.rho_ddot = st.rho_ddot;
    const long double r0 = st.rho;
    if (!(std::abs(d.rho_dot) < 1) || !(r0 > 0)) return d;
    d.ok = true;
    d.q = static_cast<double>(rho_ddot_ratio(d.rho, d.rho_dot, d.rho_ddot));
    try {
        d.kappa = kappa_from_jet(d.rho, d.rho_dot, d.rho_ddot);
        d.kappa_ok = true;
    } catch (const DomainError&) {
        d.kappa_ok = false;
    }
    if (!phi0) return d;
    d.f0 = f0_from_jet(d.rho, d.rho_dot, d.rho_ddot, K0);
    d.phi0 = (*phi0)(c);
    d.phi0_dot = static_cast<double>(std::sqrt(1 - d.rho_dot * d.rho_dot)) / sin_k(K0, static_cast<double>(d.rho));
    return d;
}

}  // namespace

CheckerReport finiteness_check(const DistanceProfile& p, const CheckerConstants& consts,
                               const std::vector<TwelvePointConfig>& configs) {
    p.validate();
    struct {
        double t0, m, K0, max_rho;
    } s{};
    const ProfileMinimum pm = profile_minimum(p);
    s.t0 = pm.t0;
    s.m = pm.m;
    s.max_rho = p.max_rho();
    bool K0_ok = true;
    try {
        s.K0 = kappa(p, s.t0);
    } catch (const DomainError&) {
        K0_ok = false;
    }
    const bool kappa_t0_ok = K0_ok;
    // phi0 and f0 need K0 max(rho)^2 < pi^2; otherwise those records fail outright.
    Phi0Curve phi0;
    if (K0_ok) {
        try {
            phi0 = Phi0Curve(p, s.t0, s.K0);
        } catch (const DomainError&) {
            K0_ok = false;
        }
    }
    const double alpha = consts.alpha, H = consts.H, L = consts.L();
    const Interval dom = p.domain();

    CheckerReport rep;
    rep.constants_version = consts.version;
    const char* names[] = {"metric_condition", "rhoddot_ratio",  "kappa_bound",     "kappa_holder",
                           "phi0_variation",   "phi0_bound",     "f0_bound",        "f0_slope",
                           "f0_slope_holder",  "f0_cross_scale"};
    for (const char* n : names) rep.add(n);
    auto rec = [&](int i) -> CheckRecord& { return rep.records[static_cast<std::size_t>(i)]; };
    enum { kMetric, kRatio, kKappa, kKappaHolder, kPhi0Vary, kPhi0Bound, kF0, kF0Slope, kF0Holder, kF0Cross };

    rep.values["t0"] = s.t0;
    rep.values["m"] = s.m;
    rep.values["K0"] = s.K0;
    rep.values["max_rho"] = s.max_rho;
    rep.values["C1"] = consts.C1;
    rep.values["within_working_radius"] = s.max_rho <= consts.C1 ? 1.0 : 0.0;
    rep.values["configurations"] = static_cast<double>(configs.size());
    // |kappa(t0)| <= H is checked even when phi0 cannot be formed.
    if (kappa_t0_ok)
        rec(kKappa).update(std::abs(s.K0), consts.c_kappa * H, {s.t0});
    else
        rec(kKappa).fail({s.t0});
    if (!K0_ok) {
        for (int r : {kPhi0Vary, kPhi0Bound, kF0, kF0Slope, kF0Holder, kF0Cross}) rec(r).fail({s.t0});
    }

    // Convexity makes the extremes of rho on [a, b] easy: max at an end,
    // min at an end or at t0.
    auto rho_range = [&](const ClusterData& a, const ClusterData& b) {
        double mn = static_cast<double>(std::min(a.rho, b.rho)), mx = static_cast<double>(std::max(a.rho, b.rho));
        if (std::min(a.t, b.t) <= s.t0 && s.t0 <= std::max(a.t, b.t)) mn = std::min(mn, s.m);
        return std::array<double, 2>{mn, mx};
    };
    auto xi = [&](const ClusterData& a, const ClusterData& b) {
        const double drho = static_cast<double>(std::abs(a.rho - b.rho));
        if (drho == 0) return std::numeric_limits<double>::infinity();
        return std::pow(static_cast<double>(a.rho), 1 + alpha) * std::pow(std::abs(a.phi0_dot), alpha) *
               std::pow(std::abs(a.t - b.t), alpha) / drho;
    };
    auto slope = [](const ClusterData& a, const ClusterData& b) {
        return (a.f0 - b.f0) / static_cast<double>(a.rho - b.rho);
    };

    for (const auto& cfg : configs) {
        const auto pts = cfg.points();
        for (double t : pts) {
            if (!(t > dom.lo && t < dom.hi)) throw DomainError("finiteness_check: configuration point outside I");
        }
        std::array<ClusterData, 4> c;
        for (std::size_t i = 0; i < 4; ++i) {
            // the adapted stencil stays clear of the other clusters and of the ends of I
            double w_max = 0.5 * std::min(cfg.centers[i] - dom.lo, dom.hi - cfg.centers[i]);
            for (std::size_t j = 0; j < 4; ++j) {
                if (j != i) w_max = std::min(w_max, 0.25 * std::abs(cfg.centers[i] - cfg.centers[j]));
            }
            c[i] = evaluate_cluster(p, cfg.centers[i], cfg.half_width, w_max, s.K0, K0_ok ? &phi0 : nullptr);
        }

        // 1-Lipschitz and triangle inequality on every pair of the twelve points.
        std::array<long double, 12> rv{};
        for (std::size_t i = 0; i < 12; ++i) rv[i] = p.value(pts[i]);
        double worst = 0;
        std::vector<double> where;
        for (std::size_t i = 0; i < 12; ++i) {
            for (std::size_t j = i + 1; j < 12; ++j) {
                const long double dt = std::abs(static_cast<long double>(pts[i]) - pts[j]);
                const double v = static_cast<double>(std::max(std::abs(rv[i] - rv[j]) / dt, dt / (rv[i] + rv[j])));
                if (v > worst) {
                    worst = v;
                    where = {pts[i], pts[j]};
                }
            }
        }
        rec(kMetric).update(worst, 1.0, where);

        for (const auto& d : c) {
            if (!d.ok) {
                for (int r : {kRatio, kKappa, kPhi0Bound, kF0}) rec(r).fail({d.t});
                continue;
            }
            const double ratio = d.q > 0 ? std::max(d.q / consts.c_rhoest1_hi, consts.c_rhoest1_lo / d.q)
                                         : std::numeric_limits<double>::infinity();
            rec(kRatio).update(ratio, 1.0, {d.t});
            if (d.kappa_ok) {
                rec(kKappa).update(std::abs(d.kappa), consts.c_kappa * H, {d.t});
            } else {
                rec(kKappa).fail({d.t});
            }
            if (!K0_ok) continue;
            rec(kPhi0Bound).update(std::abs(d.phi0), 0.75 * std::numbers::pi, {d.t});
            rec(kF0).update(std::abs(d.f0), consts.c_f0est1 * L * std::pow(static_cast<double>(d.rho), 1 + alpha),
                            {d.t});
        }

        for (std::size_t i = 0; i < 4; ++i) {
            for (std::size_t j = i + 1; j < 4; ++j) {
                const auto& a = c[i];
                const auto& b = c[j];
                if (!a.ok || !b.ok) continue;
                if (a.kappa_ok && b.kappa_ok) {
                    rec(kKappaHolder).update(std::abs(a.kappa - b.kappa),
                                             consts.c_kappa_holder * L *
                                                 std::pow(static_cast<double>(a.rho + b.rho), alpha),
                                             {a.t, b.t});
                }
                if (!K0_ok) continue;
                const auto rr = rho_range(a, b);
                const double M = rr[1] / rr[0];
                const double vary = std::max(a.phi0_dot / b.phi0_dot, b.phi0_dot / a.phi0_dot);
                rec(kPhi0Vary).update(vary, consts.c_phi0vary_C * std::pow(M, consts.c_phi0vary_Cprime), {a.t, b.t});
                if (M <= 4 && a.rho != b.rho) {
                    const double r = std::sqrt(rr[0] * rr[1]);
                    const double x = std::min(xi(a, b), xi(b, a));
                    rec(kF0Slope).update(std::abs(slope(a, b)), consts.c_f0est2 * L * (std::pow(r, alpha) + x),
                                         {a.t, b.t});
                }
            }
        }

        // The three ways of splitting four clusters into two pairs.
        if (!K0_ok) continue;
        const std::size_t splits[3][4] = {{0, 1, 2, 3}, {0, 2, 1, 3}, {0, 3, 1, 2}};
        for (const auto& sp : splits) {
            const auto& a = c[sp[0]];
            const auto& b = c[sp[1]];
            const auto& e = c[sp[2]];
            const auto& g = c[sp[3]];
            if (!a.ok || !b.ok || !e.ok || !g.ok || a.rho == b.rho || e.rho == g.rho) continue;
            const auto r1 = rho_range(a, b), r2 = rho_range(e, g);
            if (r1[1] > 4 * r1[0] || r2[1] > 4 * r2[0]) continue;
            const double tmin = std::min({a.t, b.t, e.t, g.t}), tmax = std::max({a.t, b.t, e.t, g.t});
            const double diam = std::pow(tmax - tmin, alpha);
            const double xab = std::min(xi(a, b), xi(b, a)), xeg = std::min(xi(e, g), xi(g, e));
            const double d1 = slope(a, b), d2 = slope(e, g);
            const std::vector<double> where4{a.t, b.t, e.t, g.t};
            // Single-scale comparison needs all four points in one J.
            double mn = std::min(r1[0], r2[0]);
            if (tmin <= s.t0 && s.t0 <= tmax) mn = std::min(mn, s.m);
            const bool one_J = std::max(r1[1], r2[1]) <= 4 * mn;
            if (one_J) {
                rec(kF0Holder).update(std::abs(d1 - d2), consts.c_f0est3 * L * (diam + xab + xeg), where4);
            }
            // Cross-scale comparison; t1 and t3 pick which point carries the 2 f0 cot term.
            double best = std::numeric_limits<double>::infinity(), best_m = 0, best_b = 0;
            for (const ClusterData* p1 : {&a, &b}) {
                const ClusterData* p2 = p1 == &a ? &b : &a;
                for (const ClusterData* p3 : {&e, &g}) {
                    const ClusterData* p4 = p3 == &e ? &g : &e;
                    const double lhs = std::abs(
                        d1 + 2 * p1->f0 * static_cast<double>(cot_k(static_cast<long double>(s.K0), p1->rho)) - d2 -
                        2 * p3->f0 * static_cast<double>(cot_k(static_cast<long double>(s.K0), p3->rho)));
                    const double rhs = consts.c_f0est4 * L * (diam + xi(*p1, *p2) + xi(*p3, *p4));
                    if (lhs / rhs < best) {
                        best = lhs / rhs;
                        best_m = lhs;
                        best_b = rhs;
                    }
                }
            }
            rec(kF0Cross).update(best_m, best_b, where4);
        }
    }
    return rep;
}

}  // namespace geodist
