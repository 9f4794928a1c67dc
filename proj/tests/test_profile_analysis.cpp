#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <set>

#include "geodist/checker.hpp"
#include "geodist/errors.hpp"
#include "geodist/generators.hpp"
#include "geodist/profile_analysis.hpp"
#include "geodist/special_functions.hpp"

using namespace geodist;

namespace {

DistanceProfile flat_profile(double m, Interval I) { return constant_curvature_profile(0.0, m, I); }

std::vector<double> sample_points(Interval I, int n) {
    std::vector<double> t;
    for (int i = 1; i < n; ++i) t.push_back(I.lo + I.length() * i / n);
    return t;
}

}  // namespace

TEST_CASE("kappa vanishes on flat profiles") {
    const auto p = flat_profile(0.01, {-0.2, 0.2});
    for (double t : sample_points({-0.2, 0.2}, 97)) CHECK(kappa(p, t) == 0.0);
}

TEST_CASE("kappa recovers constant curvature") {
    for (double K : {-1.0, -0.5, 0.5, 1.0}) {
        for (double m : {0.01, 0.1}) {
            const auto p = constant_curvature_profile(K, m, {-0.2, 0.2});
            for (double t : sample_points({-0.2, 0.2}, 41)) CHECK(kappa(p, t) == doctest::Approx(K).epsilon(1e-6));
        }
    }
}

TEST_CASE("kappa of the offset hyperbola matches phi_inverse") {
    const std::pair<double, double> ref[] = {
        {0.0, 0.0}, {0.5, 5.43413150584655655}, {0.9, 226.3289501258946}, {0.99, 24473.605134339094}};
    for (auto [c, k] : ref) {
        const auto p = euclid_offset_profile(c, {-1, 1});
        CHECK(kappa(p, 0.0) == doctest::Approx(k).epsilon(1e-6));
        CHECK(kappa(p, 0.0) == doctest::Approx(phi_inverse(1 - c) / ((1 - c) * (1 - c))).epsilon(1e-9));
    }
}

TEST_CASE("phi0 closed forms") {
    const double m = 0.05;
    const auto flat = flat_profile(m, {-0.2, 0.3});
    const auto s = analyze(flat);
    CHECK(s.t0 == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(s.K0 == 0.0);
    const Phi0Curve phi0(flat, s.t0, 0.0);
    CHECK(phi0(s.t0) == 0.0);
    double prev = -1e9;
    for (double t : sample_points({-0.2, 0.3}, 50)) {
        CHECK(phi0(t) == doctest::Approx(std::atan(t / m)).epsilon(1e-10));
        CHECK(phi0(t) > prev);
        prev = phi0(t);
    }
    const auto sph = constant_curvature_profile(1.0, m, {-0.2, 0.3});
    const Phi0Curve phis(sph, 0.0, 1.0);
    for (double t : sample_points({-0.2, 0.3}, 50)) {
        CHECK(phis(t) == doctest::Approx(constant_curvature_angle(1.0, m, t)).epsilon(1e-10));
        CHECK(std::abs(phis(t)) < 0.75 * std::numbers::pi);
    }
}

TEST_CASE("f0 closed forms") {
    const auto flat = flat_profile(0.02, {-0.1, 0.1});
    const auto sph = constant_curvature_profile(1.0, 0.02, {-0.1, 0.1});
    for (double t : sample_points({-0.1, 0.1}, 40)) {
        CHECK(std::abs(f0(flat, t, 0.0)) < 1e-10);
        CHECK(std::abs(f0(sph, t, 1.0)) < 1e-8);
        const double r = static_cast<double>(sph.value(t));
        CHECK(f0(sph, t, 0.0) == doctest::Approx(1 / std::tan(r) - 1 / r).epsilon(1e-8));
    }
}

TEST_CASE("analysis summary invariants") {
    for (const auto& g : generator_suite(3, 8)) {
        const auto s = analyze(g.profile);
        CHECK(s.m == doctest::Approx(static_cast<double>(g.profile.value(s.t0))));
        CHECK(s.K0 == doctest::Approx(kappa(g.profile, s.t0)));
        CHECK(s.phi0_max < 0.75 * std::numbers::pi);
        CHECK(s.phi0_min > -0.75 * std::numbers::pi);
        const double HR2 = g.field.H * s.max_rho * s.max_rho;
        for (double q : s.q) {
            CHECK(q >= phi(HR2) - 1e-7);
            CHECK(q <= phi(-HR2) + 1e-7);
        }
        for (double k : s.kappa) CHECK(std::abs(k) <= g.field.H * (1 + 1e-4) + 1e-6);
    }
}

TEST_CASE("phi tracks phi0 on generated profiles") {
    const auto consts = CheckerConstants::defaults();
    for (const auto& g : generator_suite(4, 8)) {
        if (g.path.size() == 0) continue;
        const auto s = analyze(g.profile);
        const Phi0Curve phi0(g.profile, s.t0, s.K0);
        const double ratio = phi_phi0_log_ratio(g.path, phi0, g.profile.domain());
        const double HR2 = s.max_rho * s.max_rho;
        CHECK(ratio <= consts.c_phiphi0 * std::pow(HR2, 1 + consts.alpha / 2));
    }
}

TEST_CASE("kappa rescales with the metric") {
    const double lam = 3.0;
    const auto p = constant_curvature_profile(1.0, 0.1, {-0.2, 0.2});
    const auto q = constant_curvature_profile(1.0 / (lam * lam), 0.1 * lam, {-0.2 * lam, 0.2 * lam});
    for (double t : sample_points({-0.2, 0.2}, 20)) {
        CHECK(kappa(q, lam * t) == doctest::Approx(kappa(p, t) / (lam * lam)).epsilon(1e-8));
    }
}

TEST_CASE("twelve-point configurations") {
    const auto one = twelve_point_configurations({-1, 1}, 1);
    REQUIRE(one.configs.size() == 1);
    const auto pts = one.configs[0].points();
    std::multiset<double> a(pts.begin(), pts.end()), b;
    for (double x : pts) b.insert(-x);
    CHECK(a == b);
    CHECK(twelve_point_configurations({0, 3}, 17).configs.size() == 17);
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        const Interval I{-0.3 + 0.001 * seed, 0.2 + 0.01 * seed};
        const auto set = twelve_point_configurations(I, 8, seed);
        CHECK(!set.degraded);
        for (const auto& c : set.configs) {
            auto p = c.points();
            std::sort(p.begin(), p.end());
            CHECK(p.front() > I.lo);
            CHECK(p.back() < I.hi);
            for (std::size_t i = 1; i < p.size(); ++i) CHECK(p[i] - p[i - 1] >= 1e-9 * I.length());
        }
    }
    const auto x = twelve_point_configurations({0, 1}, 5, 42), y = twelve_point_configurations({0, 1}, 5, 42);
    for (std::size_t i = 0; i < 5; ++i) CHECK(x.configs[i].points() == y.configs[i].points());
    CHECK_THROWS_AS(twelve_point_configurations({0, 1}, 0), DomainError);
}

TEST_CASE("checker: flat passes, offset hyperbola and bumped cone fail") {
    const auto consts = CheckerConstants::defaults();
    {
        const Interval I{-0.2, 0.2};
        const auto rep = finiteness_check(flat_profile(0.1, I), consts, twelve_point_configurations(I, 256).configs);
        CHECK(rep.pass());
    }
    {
        const Interval I{-1, 1};
        const auto rep =
            finiteness_check(euclid_offset_profile(0.99, I), consts, twelve_point_configurations(I, 256).configs);
        CHECK(!rep.pass());
        CHECK(!rep.find("kappa_bound")->pass);
    }
    {
        const Interval I{-0.04, 0.04};
        const auto rep = finiteness_check(eps_bump_profile(1e-2, 0.25, I), consts,
                                          twelve_point_configurations(I, 512).configs);
        CHECK(!rep.pass());
        const bool flagged = !rep.find("f0_bound")->pass || !rep.find("f0_slope")->pass ||
                             !rep.find("f0_slope_holder")->pass || !rep.find("f0_cross_scale")->pass ||
                             !rep.find("kappa_holder")->pass;
        CHECK(flagged);
    }
}

TEST_CASE("checker passes on generated profiles") {
    const auto consts = CheckerConstants::defaults();
    for (const auto& g : generator_suite(5, 12)) {
        const auto rep =
            finiteness_check(g.profile, consts, twelve_point_configurations(g.profile.domain(), 256, 1).configs);
        for (const auto& r : rep.records) {
            INFO(g.name << " " << r.name << " margin " << r.margin);
            CHECK(r.pass);
        }
    }
}

TEST_CASE("configuration points outside the profile are rejected") {
    const auto p = flat_profile(0.1, {-0.2, 0.2});
    CHECK_THROWS_AS(finiteness_check(p, CheckerConstants::defaults(), twelve_point_configurations({-1, 1}, 4).configs),
                    DomainError);
}
