#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "geodist/errors.hpp"
#include "geodist/generators.hpp"
#include "geodist/geodesy.hpp"
#include "geodist/special_functions.hpp"

using namespace geodist;
using std::numbers::pi;

namespace {
MetricGrid flat_grid(double R = 2.0) {
    return metric_from_field(constant_curvature_field(0.0), R, 1.0, 8, R / 2000);
}
MetricGrid sphere_grid(double R = 1.2) {
    return metric_from_field(constant_curvature_field(1.0), R, 1.0, 8, R / 2000);
}
}  // namespace

TEST_CASE("wrap_angle maps into [-pi, pi)") {
    CHECK(wrap_angle(pi) == doctest::Approx(-pi));
    CHECK(wrap_angle(3 * pi / 2) == doctest::Approx(-pi / 2));
    CHECK(wrap_angle(-pi) == doctest::Approx(-pi));
    CHECK(wrap_angle(0.25) == 0.25);
}

TEST_CASE("grid interpolation reproduces sin r and its derivative") {
    const auto g = sphere_grid();
    for (double r : {1e-4, 0.0123, 0.4567, 1.1}) {
        for (double th : {-3.0, 0.1, 2.9}) {
            const auto s = g.at(r, th);
            CHECK(s.G == doctest::Approx(std::sin(r)).epsilon(1e-10));
            CHECK(s.dG == doctest::Approx(std::cos(r)).epsilon(1e-9));
        }
    }
    CHECK_THROWS_AS(g.at(1.3, 0.0), DomainError);
    CHECK_NOTHROW(g.validate());
}

TEST_CASE("finite-difference grid derivatives") {
    std::vector<double> r, th{-pi, 0.0};
    for (int i = 1; i <= 400; ++i) r.push_back(i * 0.0025);
    std::vector<std::vector<double>> G(2);
    for (auto& row : G)
        for (double x : r) row.push_back(std::sinh(x));
    const auto g = MetricGrid::from_values(r, th, G, 1.0, 1.0);
    CHECK(g.dG_dr()[0][100] == doctest::Approx(std::cosh(r[100])).epsilon(1e-5));
    CHECK(g.curvature_at_node(1, 200) == doctest::Approx(-1.0).epsilon(1e-4));
}

TEST_CASE("flat geodesic is a straight line") {
    const auto g = flat_grid();
    const auto path = geodesic_integrate(g, {1.0, 0.0}, 0.0, 1, 1.0, 1e-3);
    for (std::size_t i = 0; i < path.size(); i += 50) {
        const double t = path.t[i];
        CHECK(std::abs(path.rho[i] - std::sqrt(1 + t * t)) <= 1e-7);
        CHECK(std::abs(path.phi[i] - std::atan(t)) <= 1e-7);
    }
    CHECK(path.unit_speed_residual <= 1e-7);
}

TEST_CASE("spherical geodesic obeys cos rho = cos m cos t") {
    const auto g = sphere_grid();
    const double m = 0.3;
    const auto path = geodesic_integrate_span(g, {m, 0.0}, 0.0, 1, -0.7, 0.7, 1e-3);
    for (std::size_t i = 0; i < path.size(); ++i) {
        CHECK(std::abs(std::cos(path.rho[i]) - std::cos(m) * std::cos(path.t[i])) <= 1e-6);
        CHECK(std::abs(path.phi[i] - constant_curvature_angle(1.0, m, path.t[i])) <= 1e-6);
    }
    CHECK(path.t.front() == doctest::Approx(-0.7));
}

TEST_CASE("zero length gives one node") {
    const auto g = flat_grid();
    const auto path = geodesic_integrate(g, {0.5, 1.0}, 0.0, 1, 0.0, 1e-3);
    CHECK(path.size() == 1);
    CHECK(path.unit_speed_residual == doctest::Approx(0.0).epsilon(1e-15));
}

TEST_CASE("escapes are reported") {
    const auto g = flat_grid(1.0);
    CHECK_THROWS_AS(geodesic_integrate(g, {0.9, 0.0}, 0.5, 1, 1.0, 1e-3), GeodesicEscapeError);
    CHECK_THROWS_AS(geodesic_integrate(g, {0.5, 0.0}, 0.9, 1, 1.0, 1e-3), GeodesicEscapeError);
    CHECK_THROWS_AS(geodesic_integrate(g, {0.5, 0.0}, 1.0, 1, 1.0, 1e-3), DomainError);
}

TEST_CASE("distance: Euclidean and spherical laws of cosines") {
    const auto flat = flat_grid();
    CHECK(std::abs(distance(flat, {1.0, 0.0}, {1.0, pi / 2}) - std::sqrt(2.0)) <= 1e-6);
    CHECK(distance(flat, {1.0, 0.3}, {1.0, 0.3}) == 0.0);
    CHECK(distance(flat, {0.5, 0.3}, {1.5, 0.3}) == doctest::Approx(1.0));
    CHECK(distance(flat, {0.5, 0.0}, {0.7, -pi}) == doctest::Approx(1.2));

    const auto sph = sphere_grid();
    const double expect = std::acos(std::cos(0.3) * std::cos(0.4) + std::sin(0.3) * std::sin(0.4) * std::cos(0.5));
    CHECK(std::abs(distance(sph, {0.3, 0.0}, {0.4, 0.5}) - expect) <= 1e-5);
    CHECK(std::abs(distance(sph, {0.4, 0.5}, {0.3, 0.0}) - expect) <= 1e-5);
}

TEST_CASE("triangle inequality on random triples") {
    const auto g = metric_from_field(tilted_field(0.3, 0.5, 0.7, 0.5), 1.0, 0.5, 128, 1e-3);
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> ur(0.1, 0.9), ut(-pi, pi);
    for (int k = 0; k < 100; ++k) {
        const PolarPoint p{ur(rng), ut(rng)}, q{ur(rng), ut(rng)}, s{ur(rng), ut(rng)};
        CHECK(distance(g, p, q) <= distance(g, p, s) + distance(g, s, q) + 1e-6);
    }
}

TEST_CASE("profiles from geodesics: metric condition, convexity sandwich, residual") {
    std::mt19937_64 rng(9);
    const auto suite = generator_suite(17, 8);
    for (const auto& gp : suite) {
        CAPTURE(gp.name);
        const auto& p = gp.profile;
        CHECK(p.metric_condition_violation() <= 1e-12);
        const double H = std::max(gp.field.H, 1e-9);
        const double R = p.max_rho();
        for (std::size_t i = 0; i < p.size(); ++i) {
            const double q = p.rho()[i] * p.rho_ddot()[i] / (1 - p.rho_dot()[i] * p.rho_dot()[i]);
            CHECK(q >= phi(H * R * R) - 1e-9);
            CHECK(q <= phi(-H * R * R) + 1e-9);
            CHECK(p.rho_ddot()[i] > 0);
        }
        if (!gp.path.t.empty()) {
            // independent finite-difference second derivative vs geodesic equation
            const auto dd = second_difference(gp.path.t, gp.path.rho);
            const auto d1 = first_difference(gp.path.t, gp.path.rho);
            double worst = 0;
            for (std::size_t i = 2; i + 2 < dd.size(); ++i) {
                worst = std::max(worst, std::abs(dd[i] - gp.path.rho_ddot[i]) * gp.m);
            }
            CHECK(worst <= 1e-5);
            CHECK(gp.path.unit_speed_residual <= 1e-6);
        }
    }
}
