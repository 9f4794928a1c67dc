#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "geodist/errors.hpp"
#include "geodist/whitney.hpp"

using namespace geodist;

TEST_CASE("divided differences are symmetric and exact on polynomials") {
    SampledFunction s;
    for (double x : {-1.0, -0.3, 0.2, 0.7, 1.5}) {
        s.x.push_back(x);
        s.y.push_back(2 * x * x * x - x + 4);
    }
    std::vector<std::size_t> idx{0, 1, 2, 3};
    const double ref = divided_difference(s, idx);
    CHECK(ref == doctest::Approx(2.0).epsilon(1e-13));
    std::mt19937_64 rng(3);
    for (int k = 0; k < 20; ++k) {
        std::shuffle(idx.begin(), idx.end(), rng);
        CHECK(divided_difference(s, idx) == doctest::Approx(ref).epsilon(1e-13));
    }
    std::vector<std::size_t> all{4, 2, 0, 3, 1};
    CHECK(std::abs(divided_difference(s, all)) < 1e-12);
    std::vector<std::size_t> dup{0, 1, 1};
    CHECK_THROWS_AS(divided_difference(s, dup), DomainError);
}

TEST_CASE("extension interpolates the data and satisfies the hypotheses' scale") {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 50; ++trial) {
        const WhitneyProblem p = random_whitney_problem(rng, 0.5);
        const WhitneyExtension F = whitney_extend(p.data, p.alpha, p.T1, p.T2, p.interval);
        for (std::size_t i = 0; i < p.data.size(); ++i) {
            CHECK(std::abs(F(p.data.x[i]) - p.data.y[i]) <= 1e-12 * std::max(1.0, std::abs(p.data.y[i])));
        }
        const auto m = F.measure(600);
        CHECK(m.sup_derivative <= 3 * p.T1);
        CHECK(m.holder_derivative <= 3 * p.T2);
    }
}

TEST_CASE("extension is covariant under rescaling of the variable") {
    std::mt19937_64 rng(5);
    const WhitneyProblem p = random_whitney_problem(rng, 0.5);
    const double lam = 3.7;
    SampledFunction g;
    for (std::size_t i = 0; i < p.data.size(); ++i) {
        g.x.push_back(p.data.x[i] * lam);
        g.y.push_back(p.data.y[i]);
    }
    const WhitneyExtension F = whitney_extend(p.data, 0.5, p.T1, p.T2, p.interval);
    const WhitneyExtension G = whitney_extend(g, 0.5, p.T1 / lam, p.T2 / std::pow(lam, 1.5), {0, lam});
    for (int i = 0; i <= 200; ++i) {
        const double x = i / 200.0;
        CHECK(std::abs(G(lam * x) - F(x)) <= 1e-10 * std::max(1.0, std::abs(F(x))));
        CHECK(std::abs(lam * G.derivative(lam * x) - F.derivative(x)) <= 1e-10 * std::max(1.0, std::abs(F.derivative(x))));
    }
}

TEST_CASE("x^2 on three points") {
    SampledFunction s{{0, 0.5, 1}, {0, 0.25, 1}};
    const WhitneyData d = whitney_data_bounds(s, 1.0);
    CHECK(d.T1 == doctest::Approx(1.5));
    CHECK(d.T2 == doctest::Approx(1.0));
    const WhitneyExtension F = whitney_extend(s, 1.0, 2.0, 2.0, {0, 1});
    CHECK(F(0.5) == doctest::Approx(0.25));
    const auto m = F.measure();
    CHECK(m.holder_derivative <= 4 * 2.0);
    CHECK(m.sup_derivative <= 4 * 2.0);
}

TEST_CASE("single point and linear data") {
    SampledFunction one{{0.3}, {2.0}};
    const WhitneyExtension F = whitney_extend(one, 0.5, 0, 0, {0, 1});
    CHECK(F(0.9) == doctest::Approx(2.0));
    SampledFunction lin{{0, 1}, {0, 1}};
    const WhitneyExtension G = whitney_extend(lin, 0.5, 1, 0, {-1, 2});
    CHECK(G(1.7) == doctest::Approx(1.7));
    CHECK(G.derivative(-0.5) == doctest::Approx(1.0));
}

TEST_CASE("violated hypotheses are reported with a witness") {
    SampledFunction s{{0, 0.01, 0.02}, {0, 0.01, 0.03}};
    try {
        (void)whitney_extend(s, 0.5, 10, 1, {0, 0.02});
        FAIL("expected HypothesisError");
    } catch (const HypothesisError& e) {
        REQUIRE(e.witness().size() == 3);
        CHECK(e.witness()[2] == doctest::Approx(0.02));
    }
    CHECK_THROWS_AS(whitney_extend(s, 0.5, 1.5, 100, {0, 0.02}), HypothesisError);  // pair condition
    CHECK_THROWS_AS(whitney_extend(s, 0.5, 3, 100, {0, 100}), HypothesisError);     // interval too long
}

TEST_CASE("bounded (k+2)-point quotients bound the Holder norm of the difference-quotient field") {
    // Dense sample of |x|^(1.5): first difference quotients, placed at segment
    // midpoints, have Holder-1/2 seminorm controlled by the 3-point bound.
    SampledFunction s;
    for (int i = 0; i <= 400; ++i) {
        const double x = -1 + 2.0 * i / 400 + 1e-3 * std::sin(i);
        s.x.push_back(x);
        s.y.push_back(std::pow(std::abs(x), 1.5));
    }
    const double L = divided_difference_bound(s, 1, 0.5);
    std::vector<double> mid, q;
    for (std::size_t i = 0; i + 1 < s.size(); ++i) {
        mid.push_back(0.5 * (s.x[i] + s.x[i + 1]));
        q.push_back((s.y[i + 1] - s.y[i]) / (s.x[i + 1] - s.x[i]));
    }
    const double h = holder_seminorm(std::span<const double>(mid), std::span<const double>(q), 0.5);
    CHECK(L < 10);
    CHECK(h <= 4 * L);
}

TEST_CASE("measured extension constant is stable across seeds") {
    const double a = measure_whitney_constant(1, 100, 0.5);
    const double b = measure_whitney_constant(2, 100, 0.5);
    MESSAGE("C_w: " << a << " vs " << b);
    CHECK(a > 0);
    CHECK(std::abs(b / a - 1) <= 0.1);
}
