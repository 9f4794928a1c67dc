#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <span>
#include <vector>

#include "geodist/numerics.hpp"

namespace geodist {

struct SampledFunction {
    std::vector<double> x;  // strictly increasing
    std::vector<double> y;

    void validate() const;  // throws DomainError
    std::size_t size() const { return x.size(); }
};

// f[X] by the two-term quotient recursion; symmetric in the order of X.
// Throws DomainError on repeated or out-of-range indices.
double divided_difference(const SampledFunction& s, std::span<const std::size_t> subset);
long double divided_difference(std::span<const long double> x, std::span<const long double> y);

// max over pairs |dy| / |dx|^alpha (exact on the sample, a lower bound for any extension).
double holder_seminorm(const SampledFunction& s, double alpha);

// sup |f[X]| diam(X)^(1 - alpha) over runs of k + 2 consecutive points: the
// sampled C^{k,alpha} size of the data.
double divided_difference_bound(const SampledFunction& s, int k, double alpha);

struct WhitneyOptions {
    double length_factor = 4.0;  // |interval| <= c (T1/T2)^(1/alpha)
    double tol = 1e-9;           // relative slack on the hypotheses
    std::size_t all_triples_limit = 400;
};

// C^{1,alpha} extension of finite data: cubic Hermite through the data with
// three-point (parabolic) slopes, one-sided secants at the ends, and linear
// continuation past the end points. The parabolic slope leans toward the
// secant of the shorter neighbouring gap, so each slope error is bounded by
// T2 times a power of the local gap.
class WhitneyExtension {
public:
    double operator()(double x) const;
    double derivative(double x) const;
    Interval interval() const { return I_; }
    double T1() const { return T1_; }
    double T2() const { return T2_; }
    double alpha() const { return alpha_; }

    struct Measured {
        double sup_derivative = 0;     // ||F'||_inf
        double holder_derivative = 0;  // ||F'||_alpha
        double constant = 0;           // max of the two ratios to T1 and T2
    };
    // Seminorms on a dense grid of the interval (plus the data points).
    Measured measure(std::size_t n_eval = 1500) const;

private:
    friend WhitneyExtension whitney_extend(const SampledFunction&, double, double, double, Interval,
                                           const WhitneyOptions&);
    std::vector<double> x_, y_, d_;
    Interval I_;
    double T1_ = 0, T2_ = 0, alpha_ = 1;
};

// Throws HypothesisError (witness: offending x values) if the pair condition
// |dy| <= T1 |dx|, the triple condition |slope_ij - slope_jk| <= T2 diam^alpha,
// or the interval-length condition fails.
WhitneyExtension whitney_extend(const SampledFunction& s, double alpha, double T1, double T2, Interval interval,
                                const WhitneyOptions& opts = {});

// Smallest T1, T2 for which the data satisfies the two hypotheses.
struct WhitneyData {
    double T1 = 0, T2 = 0;
};
WhitneyData whitney_data_bounds(const SampledFunction& s, double alpha, std::size_t all_triples_limit = 400);

// A random admissible problem on [0, 1]: a smooth function plus a
// |x - c|^(1 + alpha) kink, sampled at 5..40 random points, with T1, T2 the
// sharp data bounds (T1 raised when needed to satisfy the length condition).
struct WhitneyProblem {
    SampledFunction data;
    double alpha = 0.5, T1 = 0, T2 = 0;
    Interval interval{0, 1};
};
WhitneyProblem random_whitney_problem(std::mt19937_64& rng, double alpha);

// Largest measured extension constant over `count` random problems.
double measure_whitney_constant(std::uint64_t seed, std::size_t count, double alpha);

}  // namespace geodist
