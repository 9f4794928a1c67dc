#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "geodist/numerics.hpp"

using namespace geodist;

TEST_CASE("Gauss-Legendre integrates degree-9 polynomials exactly") {
    auto f = [](double x) { return std::pow(x, 9) - 3 * std::pow(x, 4) + 1; };
    // antiderivative x^10/10 - 3x^5/5 + x
    auto F = [](double x) { return std::pow(x, 10) / 10 - 0.6 * std::pow(x, 5) + x; };
    CHECK(integrate_gl(f, -0.5, 1.3) == doctest::Approx(F(1.3) - F(-0.5)).epsilon(1e-14));
}

TEST_CASE("graded quadrature handles a sqrt singularity at zero") {
    const double v = integrate_gl_graded([](double x) { return std::sqrt(x); }, 0.0, 2.0, 4);
    CHECK(v == doctest::Approx(2.0 / 3.0 * std::pow(2.0, 1.5)).epsilon(1e-12));
}

TEST_CASE("cubic Hermite reproduces cubics") {
    auto p = [](double x) { return 2 * x * x * x - x + 0.5; };
    auto dp = [](double x) { return 6 * x * x - 1; };
    for (double x : {0.3, 0.55, 0.9}) {
        CHECK(hermite3(0.2, 1.1, p(0.2), p(1.1), dp(0.2), dp(1.1), x) == doctest::Approx(p(x)).epsilon(1e-14));
        CHECK(hermite3_derivative(0.2, 1.1, p(0.2), p(1.1), dp(0.2), dp(1.1), x) ==
              doctest::Approx(dp(x)).epsilon(1e-13));
    }
}

TEST_CASE("smoothstep is a C2 transition") {
    CHECK(smoothstep(0) == 0);
    CHECK(smoothstep(1) == 1);
    CHECK(smoothstep(0.5) == doctest::Approx(0.5));
    CHECK(smoothstep_derivative(0) == 0);
    CHECK(smoothstep_derivative(1) == 0);
    CHECK(smoothstep_second(1e-12) == doctest::Approx(0).epsilon(1e-9));
    const double h = 1e-6;
    CHECK((smoothstep(0.3 + h) - smoothstep(0.3 - h)) / (2 * h) == doctest::Approx(smoothstep_derivative(0.3)));
    CHECK((smoothstep_derivative(0.7 + h) - smoothstep_derivative(0.7 - h)) / (2 * h) ==
          doctest::Approx(smoothstep_second(0.7)));
}

TEST_CASE("Pchip interpolates, preserves monotonicity and extends linearly") {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> u(0.1, 1.0);
    std::vector<double> x{0}, y{0};
    for (int i = 0; i < 20; ++i) {
        x.push_back(x.back() + u(rng));
        y.push_back(y.back() + u(rng) * u(rng));
    }
    Pchip p(x, y);
    for (std::size_t i = 0; i < x.size(); ++i) CHECK(p(x[i]) == doctest::Approx(y[i]).epsilon(1e-15));
    double prev = p(-1);
    for (double t = -1; t < x.back() + 1; t += 0.01) {
        CHECK(p(t) >= prev - 1e-14);
        CHECK(p.derivative(t) >= -1e-14);
        prev = p(t);
    }
    const double end = x.back();
    CHECK(p(end + 2) == doctest::Approx(p(end) + 2 * p.derivative(end)));
}

TEST_CASE("Holder seminorm of |x|^a is 1") {
    std::vector<double> x, y;
    for (int i = -50; i <= 50; ++i) {
        x.push_back(i / 50.0);
        y.push_back(std::pow(std::abs(i / 50.0), 0.5));
    }
    CHECK(holder_seminorm(x, y, 0.5) == doctest::Approx(1.0).epsilon(1e-12));
}
