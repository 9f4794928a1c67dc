#include "geodist/radial_ode.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "geodist/errors.hpp"
#include "geodist/numerics.hpp"

namespace geodist {

void RadialCurvature::validate(std::size_t samples) const {
    if (!K) throw DomainError("RadialCurvature: K not set");
    if (!(R > 0) || !(H > 0) || !(L >= 0) || !(alpha > 0 && alpha <= 1)) {
        throw DomainError("RadialCurvature: invalid parameters");
    }
    if (H * R * R > std::numbers::pi * std::numbers::pi / 4 * (1 + 1e-12)) {
        throw DomainError("RadialCurvature: H R^2 exceeds pi^2/4");
    }
    std::vector<double> r(samples), v(samples);
    for (std::size_t i = 0; i < samples; ++i) {
        r[i] = R * static_cast<double>(i + 1) / static_cast<double>(samples);
        v[i] = K(r[i]);
        if (!std::isfinite(v[i]) || std::abs(v[i]) > H * (1 + 1e-12)) {
            std::ostringstream msg;
            msg << "RadialCurvature: |K(" << r[i] << ")| = " << std::abs(v[i]) << " exceeds H = " << H;
            throw DomainError(msg.str());
        }
    }
    const double seminorm = holder_seminorm(r, v, alpha);
    if (seminorm > L * (1 + 1e-9) + 1e-14) {
        std::ostringstream msg;
        msg << "RadialCurvature: sampled Holder seminorm " << seminorm << " exceeds L = " << L;
        throw DomainError(msg.str());
    }
}

namespace {

std::vector<double> radial_nodes(double r0, double R, double step) {
    std::vector<double> r{r0};
    while (r.back() + step < R - 1e-12 * R) r.push_back(r.back() + step);
    r.push_back(R);
    return r;
}

void check_step(const RadialCurvature& k, double step) {
    if (!(step > 0) || step > k.R / 100 * (1 + 1e-12)) {
        throw DomainError("radial solver: step must lie in (0, R/100]");
    }
}

}  // namespace

RadialSolution solve_jacobi(const RadialCurvature& k, double step) {
    check_step(k, step);
    k.validate();
    const double r0 = std::max(step, k.R * 1e-4);
    const double K0 = k.K(0.0);
    // Series start; the linear term of K is estimated from a chord.
    const double K1 = (k.K(r0) - K0) / r0;
    double G = r0 - K0 * r0 * r0 * r0 / 6 - K1 * std::pow(r0, 4) / 12;
    double dG = 1 - K0 * r0 * r0 / 2 - K1 * r0 * r0 * r0 / 3;

    RadialSolution sol;
    sol.r = radial_nodes(r0, k.R, step);
    sol.G.reserve(sol.r.size());
    sol.dG.reserve(sol.r.size());
    sol.h.reserve(sol.r.size());
    auto push = [&](std::size_t i) {
        if (!(G > 0) || !std::isfinite(G) || !std::isfinite(dG)) {
            std::ostringstream msg;
            msg << "solve_jacobi: G left (0, inf) at r = " << sol.r[i];
            throw BlowUpError(msg.str(), i, sol.r[i]);
        }
        sol.G.push_back(G);
        sol.dG.push_back(dG);
        sol.h.push_back(dG / G);
    };
    push(0);
    for (std::size_t i = 0; i + 1 < sol.r.size(); ++i) {
        const double r = sol.r[i];
        const double hs = sol.r[i + 1] - r;
        const double Ka = k.K(r), Km = k.K(r + hs / 2), Kb = k.K(r + hs);
        const double k1g = dG, k1d = -Ka * G;
        const double k2g = dG + hs / 2 * k1d, k2d = -Km * (G + hs / 2 * k1g);
        const double k3g = dG + hs / 2 * k2d, k3d = -Km * (G + hs / 2 * k2g);
        const double k4g = dG + hs * k3d, k4d = -Kb * (G + hs * k3g);
        G += hs / 6 * (k1g + 2 * k2g + 2 * k3g + k4g);
        dG += hs / 6 * (k1d + 2 * k2d + 2 * k3d + k4d);
        push(i + 1);
    }
    return sol;
}

RadialSolution solve_riccati(const RadialCurvature& k, double step) {
    check_step(k, step);
    k.validate();
    // State (g, l): g = x^2 (h - 1/x), l = log(G / x).
    //   g' = -x^2 K - g^2 / x^2,   l' = g / x^2,  g(0) = l(0) = 0.
    // g = O(x^3) so g / x^2 and g^2 / x^2 vanish at x = 0.
    auto rhs = [&](double x, double g, double& dg, double& dl) {
        if (x == 0) {
            dg = 0;
            dl = 0;
            return;
        }
        const double q = g / (x * x);
        dg = -x * x * k.K(x) - g * q;
        dl = q;
    };
    auto rk4 = [&](double x, double hs, double& g, double& l) {
        double a1, b1, a2, b2, a3, b3, a4, b4;
        rhs(x, g, a1, b1);
        rhs(x + hs / 2, g + hs / 2 * a1, a2, b2);
        rhs(x + hs / 2, g + hs / 2 * a2, a3, b3);
        rhs(x + hs, g + hs * a3, a4, b4);
        g += hs / 6 * (a1 + 2 * a2 + 2 * a3 + a4);
        l += hs / 6 * (b1 + 2 * b2 + 2 * b3 + b4);
    };

    // RK4 stages misjudge g / x^2 by O(1) when the step is comparable to x,
    // leaving an O(K step^2) error in l -- as large as l itself near the
    // origin. Substeps are kept below kGrade * x until they reach `step`,
    // starting from the series g = -K(0) x^3 / 3, l = -K(0) x^2 / 6.
    constexpr double kGrade = 0.02;
    auto advance = [&](double x0, double x1, double& g, double& l) {
        double x = x0;
        while (x < x1) {
            const double hs = std::min(kGrade * x, x1 - x);
            const double xn = (x1 - x - hs <= 1e-12 * x1) ? x1 : x + hs;
            rk4(x, xn - x, g, l);
            x = xn;
        }
    };

    const double r0 = std::max(step, k.R * 1e-4);
    const double x_start = r0 * 1e-9, K00 = k.K(0);
    double g = -K00 * x_start * x_start * x_start / 3, l = -K00 * x_start * x_start / 6;
    advance(x_start, r0, g, l);

    RadialSolution sol;
    sol.r = radial_nodes(r0, k.R, step);
    auto push = [&](std::size_t i) {
        const double x = sol.r[i];
        const double h = 1 / x + g / (x * x);
        const double G = x * std::exp(l);
        if (!std::isfinite(h) || !(G > 0) || !std::isfinite(G)) {
            std::ostringstream msg;
            msg << "solve_riccati: solution not finite at r = " << x;
            throw BlowUpError(msg.str(), i, x);
        }
        sol.G.push_back(G);
        sol.dG.push_back(G * h);
        sol.h.push_back(h);
    };
    push(0);
    for (std::size_t i = 0; i + 1 < sol.r.size(); ++i) {
        const double x0 = sol.r[i], x1 = sol.r[i + 1];
        if (x1 - x0 > kGrade * x0)
            advance(x0, x1, g, l);
        else
            rk4(x0, x1 - x0, g, l);
        push(i + 1);
    }
    return sol;
}

CheckerReport riccati_stability_check(const RadialCurvature& k1, const RadialCurvature& k2,
                                      double r_min, const CheckerConstants& consts, double T,
                                      double step) {
    const double R = std::min(k1.R, k2.R);
    if (!(r_min > 0) || !(r_min < R)) throw DomainError("riccati_stability_check: need 0 < r_min < R");
    if (step <= 0) step = R / 1000;
    RadialCurvature a = k1, b = k2;
    a.R = b.R = R;
    const RadialSolution s1 = solve_riccati(a, step);
    const RadialSolution s2 = solve_riccati(b, step);

    std::vector<double> r, f, df;
    double measured_T = 0;
    for (std::size_t i = 0; i < s1.r.size(); ++i) {
        const double x = s1.r[i];
        const double K1 = a.K(x), K2 = b.K(x);
        measured_T = std::max(measured_T, std::abs(K1 - K2));
        if (x < r_min) continue;
        r.push_back(x);
        f.push_back(s1.h[i] - s2.h[i]);
        // f' from the Riccati equations themselves
        df.push_back(-s1.h[i] * s1.h[i] - K1 + s2.h[i] * s2.h[i] + K2);
    }
    if (T < 0) T = measured_T;
    const double alpha = std::min(a.alpha, b.alpha);
    const double L = std::max(a.L, b.L);

    double f_sup = 0, df_sup = 0;
    std::size_t i_f = 0, i_df = 0;
    for (std::size_t i = 0; i < r.size(); ++i) {
        if (std::abs(f[i]) > f_sup) { f_sup = std::abs(f[i]); i_f = i; }
        if (std::abs(df[i]) > df_sup) { df_sup = std::abs(df[i]); i_df = i; }
    }
    CheckerReport rep;
    rep.constants_version = consts.version;
    rep.add("riccati_f_sup").update(f_sup, consts.c_a * T * R, {r.empty() ? 0 : r[i_f]});
    rep.add("riccati_df_sup").update(df_sup, consts.c_b * T, {r.empty() ? 0 : r[i_df]});
    rep.add("riccati_f_holder").update(holder_seminorm(r, f, alpha),
                                       consts.c_c * T * std::pow(R, 1 - alpha), {});
    rep.add("riccati_df_holder").update(
        holder_seminorm(r, df, alpha),
        consts.c_d * (L + T * std::pow(R, -alpha) * (1 + R / r_min)), {});
    rep.values["T"] = T;
    return rep;
}

}  // namespace geodist
