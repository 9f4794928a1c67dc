// One line per acceptance criterion: PASS/FAIL, wall time, the measured numbers.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>
#include <string>

#include "geodist/checker.hpp"
#include "geodist/generators.hpp"
#include "geodist/geodesy.hpp"
#include "geodist/profile_analysis.hpp"
#include "geodist/radial_ode.hpp"
#include "geodist/special_functions.hpp"
#include "geodist/synthesis.hpp"
#include "geodist/whitney.hpp"

using namespace geodist;

namespace {

struct Outcome {
    bool pass = true;
    std::ostringstream detail;
    void require(bool ok, const std::string& what) {
        if (!ok) {
            pass = false;
            detail << "[violated: " << what << "] ";
        }
    }
};

double rel(double a, double b) { return std::abs(a - b) / std::max(1.0, std::abs(b)); }

// r cot_K(r) = Phi(K r^2), sin_K(r) / r = Psi(K r^2), Phi(Phi^-1(y)) = y.
void special_functions(Outcome& o) {
    auto phi_ref = [](double x) {
        if (x == 0) return 1.0;
        const double s = std::sqrt(std::abs(x));
        return x > 0 ? s * std::cos(s) / std::sin(s) : s * std::cosh(s) / std::sinh(s);
    };
    auto psi_ref = [](double x) {
        if (x == 0) return 1.0;
        const double s = std::sqrt(std::abs(x));
        return x > 0 ? std::sin(s) / s : std::sinh(s) / s;
    };
    double e1 = 0, e2 = 0, e3 = 0, e4 = 0;
    const int n = 1000;
    for (int i = 0; i < n; ++i) {
        const double x = -40.0 + (std::numbers::pi * std::numbers::pi - 0.05 + 40.0) * i / (n - 1);
        const double r = 0.05 + 0.9 * ((i * 7919) % n) / double(n);
        const double K = x / (r * r);
        e1 = std::max(e1, rel(r * cot_k(K, r), phi(x)));
        e1 = std::max(e1, rel(phi(x), phi_ref(x)));
        e2 = std::max(e2, rel(sin_k(K, r) / r, psi(x)));
        e2 = std::max(e2, rel(psi(x), psi_ref(x)));
        const double y = phi(x);
        e3 = std::max(e3, rel(phi(phi_inverse(y)), y));
        // small arguments, where the series branch is used
        const double xs = 1e-3 * (2.0 * i / (n - 1) - 1);
        e4 = std::max({e4, rel(phi(xs), phi_ref(xs)), rel(psi(xs), psi_ref(xs)), rel(phi(phi_inverse(phi(xs))), phi(xs))});
    }
    o.detail << "cot " << e1 << ", sin " << e2 << ", inverse " << e3 << ", near 0 " << e4;
    o.require(std::max({e1, e2, e3, e4}) <= 1e-10, "relative error <= 1e-10");
}

RadialCurvature constant_field(double K) {
    return RadialCurvature{[K](double) { return K; }, 1.0, std::max(std::abs(K), 1e-3), 0.0, 1.0};
}

void ode_exactness(Outcome& o) {
    double worst = 0;
    for (double K : {-1.0, -0.5, 0.0, 0.5, 1.0}) {
        const auto jac = solve_jacobi(constant_field(K), 1e-3);
        const auto ric = solve_riccati(constant_field(K), 1e-3);
        for (std::size_t i = 0; i < jac.r.size(); ++i) {
            const double r = jac.r[i];
            worst = std::max({worst, std::abs(jac.G[i] - sin_k(K, r)), std::abs(ric.G[i] - sin_k(K, r))});
            // h ~ 1/r: compare r h, which is what both solvers carry accurately near 0
            if (r > 0) {
                worst = std::max({worst, std::abs(r * jac.h[i] - r * cot_k(K, r)),
                                  std::abs(r * ric.h[i] - r * cot_k(K, r))});
            }
        }
    }
    o.detail << "sup error " << worst;
    o.require(worst <= 1e-7, "sup error <= 1e-7");
}

void riccati_sandwich(Outcome& o) {
    const auto consts = CheckerConstants::defaults();
    std::mt19937_64 rng(2024);  // not the calibration seed
    std::size_t sandwich = 0, stability = 0;
    double worst_margin = 0;
    for (int i = 0; i < 200; ++i) {
        const RadialCurvature k1 = random_holder_field(rng, 1.0, 0.5);
        const RadialCurvature k2 = random_holder_field(rng, 1.0, 0.5);
        o.require(k1.H * k1.R * k1.R <= std::numbers::pi * std::numbers::pi / 4, "H R^2 <= pi^2/4");
        const auto s = solve_riccati(k1, 1e-3);
        for (std::size_t j = 1; j < s.r.size(); ++j) {
            const double r = s.r[j];
            const double lo = cot_k(k1.H, r), hi = cot_k(-k1.H, r);
            if (s.h[j] < lo - 1e-10 * std::abs(lo) || s.h[j] > hi + 1e-10 * std::abs(hi)) ++sandwich;
            if (s.G[j] < sin_k(k1.H, r) - 1e-12 || s.G[j] > sin_k(-k1.H, r) + 1e-12) ++sandwich;
        }
        const auto rep = riccati_stability_check(k1, k2, 0.01, consts);
        for (const auto& r : rep.records) {
            worst_margin = std::max(worst_margin, r.margin);
            if (!r.pass) ++stability;
        }
    }
    o.detail << "sandwich violations " << sandwich << ", (a)-(d) violations " << stability << ", worst margin "
             << worst_margin;
    o.require(sandwich == 0 && stability == 0, "zero violations");
}

void geodesic_oracle(Outcome& o) {
    double closed = 0, integrated = 0, law = 0;
    for (double K : {1.0, -1.0}) {
        const auto field = constant_curvature_field(K);
        const auto grid = metric_from_field(field, 0.4, 1.0, 8, 1e-4);
        for (double m : {0.01, 0.05, 0.1}) {
            const Interval I{-0.2, 0.2};
            // closed form: cos rho = cos m cos t (sphere), cosh rho = cosh m cosh t (hyperbolic plane)
            const auto p = constant_curvature_profile(K, m, I, 801);
            for (std::size_t i = 0; i < p.size(); ++i) {
                const Jet j = p.jet(p.t()[i]);
                closed = std::max(closed, std::abs(j.rho_ddot - cot_k(K, j.rho) * (1 - j.rho_dot * j.rho_dot)));
                const double t = p.t()[i];
                const double c = K > 0 ? std::cos(m) * std::cos(t) : std::cosh(m) * std::cosh(t);
                law = std::max(law, std::abs(p.rho()[i] - (K > 0 ? std::acos(c) : std::acosh(c))));
            }
            // geodesic integrated on the grid
            const auto g = geodesic_profile(grid, field, m, I, 0.002);
            // rho'' and rho' by finite differences of the integrated rho, not the integrator's own rho''
            const auto d1 = first_difference(g.path.t, g.path.rho), d2 = second_difference(g.path.t, g.path.rho);
            for (std::size_t i = 2; i + 2 < g.path.size(); ++i)
                integrated = std::max(integrated,
                                      std::abs(d2[i] - cot_k(K, g.path.rho[i]) * (1 - d1[i] * d1[i])));
            for (std::size_t i = 0; i < g.path.size(); ++i) {
                const double t = g.path.t[i];
                const double c = K > 0 ? std::cos(m) * std::cos(t) : std::cosh(m) * std::cosh(t);
                law = std::max(law, std::abs(g.path.rho[i] - (K > 0 ? std::acos(c) : std::acosh(c))));
            }
        }
    }
    o.detail << "closed-form residual " << closed << ", integrated residual " << integrated
             << ", law-of-cosines error " << law;
    o.require(closed <= 1e-6 && integrated <= 1e-6, "residual <= 1e-6");
    o.require(law <= 1e-6, "rho matches the law of cosines");
}

void kappa_recovery(Outcome& o) {
    double err = 0;
    for (double K : {-1.0, -0.5, 0.5, 1.0}) {
        for (double m : {0.01, 0.05}) {
            const auto p = constant_curvature_profile(K, m, {-0.2, 0.2}, 801);
            for (double t : p.t()) err = std::max(err, std::abs(kappa(p, t) - K));
        }
    }
    double flat = 0;
    const auto f = constant_curvature_profile(0.0, 0.02, {-0.2, 0.2}, 801);
    for (double t : f.t()) flat = std::max(flat, std::abs(kappa(f, t)));
    double euclid = 0, prev = -1;
    bool increasing = true;
    for (double c : {0.0, 0.5, 0.9, 0.99}) {
        const double k = kappa(euclid_offset_profile(c, {-1, 1}), 0.0);
        const double exact = phi_inverse(1 - c) / ((1 - c) * (1 - c));
        euclid = std::max(euclid, std::abs(k - exact) / std::max(1.0, std::abs(exact)));
        increasing = increasing && k > prev;
        prev = k;
    }
    o.detail << "constant K error " << err << ", flat |kappa| " << flat << ", offset-hyperbola rel error " << euclid
             << ", kappa(0) at c=0.99 " << prev;
    o.require(err <= 1e-5, "kappa = K to 1e-5");
    o.require(flat == 0, "kappa = 0 exactly on flat");
    o.require(euclid <= 1e-6, "kappa(0) matches phi^-1(1-c)/(1-c)^2");
    o.require(increasing && prev > 1e4, "kappa(0) diverges as c -> 1");
}

double worst_margin(const CheckerReport& rep) {
    double w = 0;
    for (const auto& r : rep.records) w = std::max(w, r.margin);
    return w;
}

void finiteness_checker(Outcome& o) {
    const auto consts = CheckerConstants::defaults();
    const auto suite = generator_suite(7, 50);  // calibration used seed 1
    std::size_t failed = 0;
    double worst = 0;
    for (std::size_t i = 0; i < suite.size(); ++i) {
        const auto& p = suite[i].profile;
        const auto rep = finiteness_check(p, consts, twelve_point_configurations(p.domain(), 256, i).configs);
        worst = std::max(worst, worst_margin(rep));
        if (!rep.pass()) ++failed;
    }
    const Interval I{-1, 1};
    const auto e = finiteness_check(euclid_offset_profile(0.99, I), consts, twelve_point_configurations(I, 256).configs);
    const auto* ek = e.find("kappa_bound");
    double margins[2];
    bool bumps_fail = true;
    const double eps[2] = {1e-2, 1e-3}, alpha = 0.5, beta = alpha / 2;
    for (int k = 0; k < 2; ++k) {
        const Interval J{-4 * eps[k], 4 * eps[k]};
        const auto rep =
            finiteness_check(eps_bump_profile(eps[k], beta, J), consts, twelve_point_configurations(J, 256).configs);
        bumps_fail = bumps_fail && !rep.pass();
        margins[k] = worst_margin(rep);
    }
    const double growth = margins[1] / margins[0], expect = std::pow(eps[1] / eps[0], beta - alpha);
    o.detail << "suite failures " << failed << "/50 (worst margin " << worst << "), offset-hyperbola kappa margin "
             << ek->margin << ", bump margins " << margins[0] << " -> " << margins[1] << " (growth " << growth
             << " vs eps^(beta-alpha) " << expect << ")";
    o.require(failed == 0, "suite passes");
    o.require(!e.pass() && !ek->pass, "offset hyperbola fails on kappa");
    o.require(bumps_fail, "bumped cones fail");
    o.require(growth >= expect / 3 && growth <= expect * 3, "growth within factor 3");
}

struct RoundTrip {
    GeneratedProfile g;
    SynthesisResult res;
};

RoundTrip round_trip_profile(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> U(0, 1);
    const double K = -0.5 + U(rng), m = 0.01 + 0.0025 * U(rng);
    const double a = 0.02 + 0.025 * U(rng), b = 0.02 + 0.025 * U(rng);
    const auto field = constant_curvature_field(K);
    const auto grid = metric_from_field(field, 0.06, 0.5, 8, 0.06 / 4000);
    RoundTrip rt{geodesic_profile(grid, field, m, {-a, b}), {}};
    rt.res = synthesize(rt.g.profile, CheckerConstants::defaults());
    return rt;
}

void synthesis_round_trip(Outcome& o) {
    const auto consts = CheckerConstants::defaults();
    std::mt19937_64 rng(77);
    std::size_t failed = 0;
    double geo = 0, unit = 0, dist = 0, swept = 0, max_rho = 0;
    for (int i = 0; i < 20; ++i) {
        const RoundTrip rt = round_trip_profile(rng);
        const auto rep = verify_synthesis(rt.res, rt.g.profile, consts);
        if (!rep.pass()) {
            ++failed;
            for (const auto& r : rep.records)
                if (!r.pass) o.detail << "[" << rt.g.name << " " << r.name << " margin " << r.margin << "] ";
        }
        geo = std::max(geo, rep.find("geodesic_residual")->measured);
        unit = std::max(unit, rep.find("unit_speed_residual")->measured);
        dist = std::max(dist, rep.find("distance_residual")->measured / rt.res.metric.R());
        const double K = rt.g.field.K_const;
        swept = std::max({swept, std::abs(rep.values.at("K_swept_max") - K), std::abs(rep.values.at("K_swept_min") - K)});
        max_rho = std::max(max_rho, rt.res.max_rho);
    }
    o.detail << "verify failures " << failed << "/20, geodesic " << geo << ", unit speed " << unit
             << ", distance/R " << dist << ", swept K deviation " << swept << ", max rho " << max_rho;
    o.require(failed == 0, "verify_synthesis passes");
    o.require(geo <= 1e-5 && unit <= 1e-6 && dist <= 1e-4, "residual tolerances");
    o.require(swept <= 0.1, "swept K within 0.1 of the field");
    o.require(max_rho <= 0.05, "max rho <= C1");
}

void whitney(Outcome& o) {
    std::mt19937_64 rng(2);
    double interp = 0;
    for (int i = 0; i < 100; ++i) {
        const auto pb = random_whitney_problem(rng, 0.5);
        const auto F = whitney_extend(pb.data, pb.alpha, pb.T1, pb.T2, pb.interval);
        for (std::size_t j = 0; j < pb.data.size(); ++j)
            interp = std::max(interp, std::abs(F(pb.data.x[j]) - pb.data.y[j]) / std::max(1.0, std::abs(pb.data.y[j])));
    }
    const double recorded = CheckerConstants::defaults().C_w;
    double spread = 0;
    std::ostringstream cs;
    for (std::uint64_t seed : {2, 3, 4}) {
        const double c = measure_whitney_constant(seed, 100, 0.5);
        cs << c << " ";
        spread = std::max(spread, std::abs(c / recorded - 1));
    }
    o.detail << "interpolation error " << interp << ", C_w recorded " << recorded << ", measured " << cs.str()
             << "(max deviation " << 100 * spread << "%)";
    o.require(interp <= 1e-12, "interpolation exact to 1e-12");
    o.require(spread <= 0.1, "C_w stable within 10%");
}

void defect_detection(Outcome& o) {
    const auto consts = CheckerConstants::defaults();
    std::mt19937_64 rng(99);
    const RoundTrip rt = round_trip_profile(rng);
    const auto& g = rt.res.metric;
    const auto clean = verify_synthesis(rt.res, rt.g.profile, consts);
    o.require(clean.find("K_holder")->pass, "unperturbed grid passes");
    int flagged = 0;
    for (int trial = 0; trial < 10; ++trial) {
        auto G = g.G();
        const std::size_t j = rng() % G.size(), i = rng() % G[0].size();
        G[j][i] *= 1.01;
        SynthesisResult bad = rt.res;
        bad.metric = MetricGrid(g.r_nodes(), g.theta_nodes(), G, g.dG_dr(), g.d2G_dr2(), g.H(), g.alpha());
        const auto* rec = verify_synthesis(bad, rt.g.profile, consts).find("K_holder");
        if (!rec->pass) ++flagged;
    }
    o.detail << "flagged " << flagged << "/10 (clean margin " << clean.find("K_holder")->margin << ")";
    o.require(flagged == 10, "10/10 bumps flagged");
}

}  // namespace

int main() {
    struct Criterion {
        const char* name;
        double budget_s;
        std::function<void(Outcome&)> run;
    };
    const Criterion criteria[] = {
        {"special-function identities", 1, special_functions},
        {"constant-curvature ODE exactness", 5, ode_exactness},
        {"Riccati sandwich and stability (a)-(d)", 30, riccati_sandwich},
        {"geodesic-equation oracle", 0, geodesic_oracle},
        {"kappa recovery", 0, kappa_recovery},
        {"finiteness checker", 60, finiteness_checker},
        {"synthesis round trip", 600, synthesis_round_trip},
        {"Whitney extension", 0, whitney},
        {"defect detection", 0, defect_detection},
    };
    int failures = 0, index = 0;
    for (const auto& c : criteria) {
        ++index;
        Outcome o;
        const auto start = std::chrono::steady_clock::now();
        try {
            c.run(o);
        } catch (const std::exception& e) {
            o.pass = false;
            o.detail << "[exception: " << e.what() << "]";
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (c.budget_s > 0 && secs > c.budget_s) {
            o.pass = false;
            o.detail << " [over time budget " << c.budget_s << " s]";
        }
        if (!o.pass) ++failures;
        std::printf("%s %d %s (%.2f s): %s\n", o.pass ? "PASS" : "FAIL", index, c.name, secs, o.detail.str().c_str());
        std::fflush(stdout);
    }
    std::printf("%d/%d criteria passed\n", index - failures, index);
    return failures == 0 ? 0 : 1;
}
