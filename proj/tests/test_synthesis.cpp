#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "geodist/errors.hpp"
#include "geodist/generators.hpp"
#include "geodist/special_functions.hpp"
#include "geodist/synthesis.hpp"

using namespace geodist;

namespace {

CheckerConstants consts() { return CheckerConstants::defaults(); }

double max_rel_G_error(const SynthesisResult& res, double K) {
    const auto& g = res.metric;
    double worst = 0;
    for (std::size_t j = 0; j < g.theta_nodes().size(); ++j) {
        for (std::size_t i = 0; i < g.r_nodes().size(); ++i) {
            const double want = sin_k(K, g.r_nodes()[i]);
            worst = std::max(worst, std::abs(g.G()[j][i] / want - 1));
        }
    }
    return worst;
}

}  // namespace

TEST_CASE("decomposition of a flat profile") {
    const double m = 0.01;
    const auto p = constant_curvature_profile(0, m, {-0.2, 0.2});
    const auto s = analyze(p);
    const auto d = decompose_annuli(p, s, 0.5);
    REQUIRE(!d.pieces.empty());
    CHECK(d.k_min() == -7);
    CHECK(d.k_max() == -2);
    // innermost annulus: one component containing t0, Case I
    int inner = 0;
    for (const auto& pc : d.pieces) {
        if (pc.k != d.k_min()) continue;
        ++inner;
        CHECK(pc.J.contains(s.t0));
        CHECK(pc.kind == AnnulusCase::I);
    }
    CHECK(inner == 1);
    for (const auto& pc : d.pieces) {
        if (pc.merged) {
            CHECK(pc.kind == AnnulusCase::I);
            CHECK(pc.J.contains(s.t0));
            continue;
        }
        const double lo = std::ldexp(1.0, pc.k - 1), hi = std::ldexp(1.0, pc.k + 1);
        for (double u : {0.01, 0.5, 0.99}) {
            const double t = pc.J.lo + u * pc.J.length();
            const double r = static_cast<double>(p.value(t));
            CHECK(r >= lo * (1 - 1e-9));
            CHECK(r <= hi * (1 + 1e-9));
        }
        CHECK(pc.delta == doctest::Approx(std::pow(pc.lambda, 0.5) * std::pow(std::ldexp(1.0, pc.k), 1.5)));
        CHECK(pc.theta_lo < pc.theta_hi);
    }
}

TEST_CASE("decomposition inside one annulus is a single Case I piece") {
    // rho within (2^-6, 2^-4) with |rho'| small near t0
    const auto p = constant_curvature_profile(0, 0.02, {-0.01, 0.01});
    const auto s = analyze(p);
    const auto d = decompose_annuli(p, s, 0.5);
    int covering = 0;
    for (const auto& pc : d.pieces) {
        if (pc.J.lo <= p.domain().lo && pc.J.hi >= p.domain().hi) {
            ++covering;
            CHECK(pc.kind == AnnulusCase::I);
        }
    }
    CHECK(covering >= 1);
}

TEST_CASE("steep long segment is Case III") {
    // far from t0 the flat profile has rho' -> 1
    const auto p = constant_curvature_profile(0, 0.001, {-0.002, 0.05});
    const auto s = analyze(p);
    const auto d = decompose_annuli(p, s, 0.5);
    bool found = false;
    for (const auto& pc : d.pieces) {
        if (pc.kind == AnnulusCase::III) found = true;
    }
    CHECK(found);
}

TEST_CASE("partition weights sum to one and glue convexly") {
    for (double x = -3; x <= 3; x += 0.0137) {
        double sum = 0;
        for (int k = -5; k <= 5; ++k) sum += RadialCorrectionField::weight(x - k);
        CHECK(sum == doctest::Approx(1.0).epsilon(1e-14));
    }
    // Two overlapping constant pieces a, b: f lies between them.
    AnnulusPiece pa, pb;
    pa.k = -5;
    pb.k = -4;
    pa.theta_lo = pb.theta_lo = -1;
    pa.theta_hi = pb.theta_hi = 1;
    AnnulusFunction a{pa, RadialPart::zero(), Pchip({-1, 1}, {0.3, 0.3}), 0, 0, 0, 0, 0};
    AnnulusFunction b{pb, RadialPart::zero(), Pchip({-1, 1}, {-0.2, -0.2}), 0, 0, 0, 0, 0};
    const RadialCorrectionField f(1e-3, 0, 0.5, {a, b});
    for (double r = std::ldexp(1.0, -5); r <= std::ldexp(1.0, -4); r *= 1.01) {
        for (double th : {-0.5, 0.0, 0.7, 2.5, -3.0}) {
            const double v = f(r, th);
            CHECK(v <= 0.3 + 1e-15);
            CHECK(v >= -0.2 - 1e-15);
        }
    }
    CHECK(f(std::ldexp(1.0, -5), 0.0) == doctest::Approx(0.3));
    CHECK(f(std::ldexp(1.0, -4), 0.0) == doctest::Approx(-0.2));
    // Analytic radial derivative against a centred difference.
    const double r = 0.045, h = 1e-7;
    CHECK(f.dr(r, 0.2) == doctest::Approx((f(r + h, 0.2) - f(r - h, 0.2)) / (2 * h)).epsilon(1e-5));
}

TEST_CASE("all-zero pieces glue to zero") {
    const auto p = constant_curvature_profile(0, 0.005, {-0.04, 0.04});
    const auto res = synthesize(p, consts());
    for (double r : {0.001, 0.003, 0.01, 0.03, 0.05}) {
        for (double th : {-2.0, 0.0, 1.0}) CHECK(std::abs((*res.f)(r, th)) < 1e-12);
    }
}

TEST_CASE("flat round trip: G = r and residuals below 1e-8") {
    const auto p = constant_curvature_profile(0, 0.01, {-0.04, 0.04});
    const auto res = synthesize(p, consts());
    CHECK(std::abs(res.K0) < 1e-12);
    CHECK(max_rel_G_error(res, 0) < 1e-12);
    // gamma is the Euclidean line: phi = atan(t / m)
    for (std::size_t i = 0; i < res.gamma.size(); i += 50) {
        CHECK(res.gamma.phi[i] == doctest::Approx(std::atan(res.gamma.t[i] / 0.01)).epsilon(1e-9));
    }
    const auto rep = verify_synthesis(res, p, consts());
    CHECK(rep.pass());
    CHECK(rep.find("geodesic_residual")->measured < 1e-8);
    CHECK(rep.find("unit_speed_residual")->measured < 1e-8);
    CHECK(rep.find("distance_residual")->measured < 1e-6);
    CHECK(res.construction.pass());
}

TEST_CASE("spherical round trip K = 0.5, m = 0.05") {
    const double K = 0.5, m = 0.05;
    const auto p = constant_curvature_profile(K, m, {-0.1, 0.1});
    const auto res = synthesize(p, consts());
    CHECK(res.K0 == doctest::Approx(K).epsilon(1e-6));
    CHECK(max_rel_G_error(res, K) < 1e-6);
    for (std::size_t i = 0; i < res.gamma.size(); i += 40) {
        CHECK(std::abs(res.gamma.phi[i] - constant_curvature_angle(K, m, res.gamma.t[i])) < 1e-5);
    }
    const auto rep = verify_synthesis(res, p, consts());
    CHECK(rep.pass());
    CHECK(rep.values.at("K_swept_max") == doctest::Approx(K).epsilon(0.1));
    CHECK(std::abs(rep.values.at("K_swept_min") - K) <= 0.05);
    CHECK(std::abs(rep.values.at("K_swept_max") - K) <= 0.05);
}

TEST_CASE("hyperbolic round trip K = -0.5") {
    const double K = -0.5, m = 0.02;
    const auto p = constant_curvature_profile(K, m, {-0.05, 0.05});
    const auto res = synthesize(p, consts());
    CHECK(max_rel_G_error(res, K) < 1e-6);
    const auto rep = verify_synthesis(res, p, consts());
    CHECK(rep.pass());
}

TEST_CASE("forced K0 = 0 on a spherical profile: f interpolates f0 and vanishes near the origin") {
    const double K = 1.0, m = 0.01;
    const auto p = constant_curvature_profile(K, m, {-0.04, 0.04});
    SynthesisOptions o;
    o.K0_override = 0.0;
    const auto res = synthesize(p, consts(), o);
    const auto* interp = res.construction.find("f_interpolation");
    REQUIRE(interp);
    CHECK(interp->measured <= 1e-8);
    // f0 = cot(rho) - 1/rho
    const Phi0Curve phi0(p, 0.0, 0.0);
    for (double t : {-0.03, -0.004, 0.0, 0.011, 0.035}) {
        const double r = static_cast<double>(p.value(t));
        const double want = 1 / std::tan(r) - 1 / r;
        CHECK(f0(p, t, 0.0) == doctest::Approx(want).epsilon(1e-6));
    }
    for (double r = 1e-5; r < m / 2; r *= 1.3) {
        for (double th = -3; th < 3; th += 0.5) CHECK((*res.f)(r, th) == 0.0);
    }
    // |f0| ~ rho / 3 here, so the measured constant of |f_k| <~ 2^((1+alpha)k) grows like 2^(-k/2).
    for (const auto& pc : res.f->pieces()) {
        const double two_k = std::ldexp(1.0, pc.piece.k);
        CHECK(pc.sup_norm * std::pow(two_k, 1.5) <= 1.5 * 2 * two_k / 3);
        CHECK(pc.sup_norm > 0);
    }
    const auto rep = verify_synthesis(res, p, consts());
    CHECK(rep.find("geodesic_residual")->measured <= 1e-5);
    CHECK(rep.find("unit_speed_residual")->measured <= 1e-6);
    CHECK(rep.find("distance_residual")->pass);
}

TEST_CASE("variable curvature profile round trip") {
    SuiteOptions so;
    const auto suite = generator_suite(11, 4, so);
    for (const auto& g : suite) {
        CAPTURE(g.name);
        const auto res = synthesize(g.profile, consts());
        CHECK(res.construction.find("f_interpolation")->measured <= 1e-8);
        CHECK(res.F.bilipschitz() <= 1.5);
        const auto rep = verify_synthesis(res, g.profile, consts());
        CHECK(rep.find("geodesic_residual")->measured <= 1e-5);
        CHECK(rep.find("unit_speed_residual")->measured <= 1e-6);
        CHECK(rep.find("distance_residual")->pass);
    }
}

TEST_CASE("a G bump is flagged by the Holder record") {
    const auto p = constant_curvature_profile(0.3, 0.01, {-0.04, 0.04});
    const auto res = synthesize(p, consts());
    std::mt19937_64 rng(3);
    const auto& g = res.metric;
    for (int trial = 0; trial < 3; ++trial) {
        auto G = g.G();
        const std::size_t j = rng() % G.size(), i = rng() % G[0].size();
        G[j][i] *= 1.01;
        SynthesisResult bad = res;
        bad.metric = MetricGrid(g.r_nodes(), g.theta_nodes(), G, g.dG_dr(), g.d2G_dr2(), g.H(), g.alpha());
        const auto rep = verify_synthesis(bad, p, consts());
        const auto* rec = rep.find("K_holder");
        CHECK_FALSE(rec->pass);
        REQUIRE(rec->witness.size() == 4);
        const bool at_node = (rec->witness[0] == g.r_nodes()[i] || rec->witness[2] == g.r_nodes()[i]);
        CHECK(at_node);
    }
}

TEST_CASE("angle map is monotone and inverts") {
    const AngleMap F({-1.0, 0.0, 1.0}, {-1.1, 0.0, 1.05});
    // exact at the nodes and across the back gap, close in between
    for (double x : {-1.0, 0.0, 1.0, 2.0, -2.5, 3.1}) {
        CHECK(std::abs(wrap_angle(F.inverse(F.forward(x)) - x)) < 1e-12);
    }
    double prev = F.forward(-1.0);
    for (double x = -0.99; x <= 1.0; x += 0.01) {
        CHECK(std::abs(wrap_angle(F.inverse(F.forward(x)) - x)) < 1e-3);
        const double y = F.forward(x);
        CHECK(y > prev);
        prev = y;
    }
    CHECK(F.bilipschitz() >= 1.1);
    CHECK_THROWS_AS(AngleMap({0.0, 1.0}, {0.5, 0.2}), HypothesisError);
}

TEST_CASE("K0 beyond H aborts") {
    const auto p = constant_curvature_profile(0.9, 0.01, {-0.04, 0.04});
    auto c = consts();
    c.H = 0.5;
    CHECK_THROWS_AS(synthesize(p, c), DomainError);
}
