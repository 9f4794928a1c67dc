#include "geodist/whitney.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "geodist/errors.hpp"

namespace geodist {

void SampledFunction::validate() const {
    if (x.size() != y.size()) throw DomainError("SampledFunction: sizes differ");
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (!std::isfinite(x[i]) || !std::isfinite(y[i])) throw DomainError("SampledFunction: non-finite value");
        if (i > 0 && !(x[i] > x[i - 1])) throw DomainError("SampledFunction: x must be strictly increasing");
    }
}

long double divided_difference(std::span<const long double> x, std::span<const long double> y) {
    const std::size_t n = x.size();
    if (n == 0 || y.size() != n) throw DomainError("divided_difference: empty or mismatched input");
    std::vector<long double> d(y.begin(), y.end());
    // After pass k, d[i] = f[x_i .. x_{i+k}].
    for (std::size_t k = 1; k < n; ++k) {
        for (std::size_t i = 0; i + k < n; ++i) {
            const long double den = x[i] - x[i + k];
            if (den == 0) throw DomainError("divided_difference: repeated point");
            d[i] = (d[i] - d[i + 1]) / den;
        }
    }
    return d[0];
}

double divided_difference(const SampledFunction& s, std::span<const std::size_t> subset) {
    std::vector<long double> x, y;
    for (std::size_t idx : subset) {
        if (idx >= s.x.size()) throw DomainError("divided_difference: index out of range");
        x.push_back(s.x[idx]);
        y.push_back(s.y[idx]);
    }
    for (std::size_t i = 0; i < subset.size(); ++i) {
        for (std::size_t j = i + 1; j < subset.size(); ++j) {
            if (subset[i] == subset[j]) throw DomainError("divided_difference: duplicate point");
        }
    }
    return static_cast<double>(divided_difference(std::span<const long double>(x), std::span<const long double>(y)));
}

double holder_seminorm(const SampledFunction& s, double alpha) {
    if (s.x.size() < 2) throw DomainError("holder_seminorm: need at least 2 points");
    return holder_seminorm(std::span<const double>(s.x), std::span<const double>(s.y), alpha);
}

double divided_difference_bound(const SampledFunction& s, int k, double alpha) {
    const std::size_t w = static_cast<std::size_t>(k) + 2;
    double best = 0;
    std::vector<std::size_t> idx(w);
    for (std::size_t i = 0; i + w <= s.x.size(); ++i) {
        for (std::size_t j = 0; j < w; ++j) idx[j] = i + j;
        const double diam = s.x[i + w - 1] - s.x[i];
        best = std::max(best, std::abs(divided_difference(s, idx)) * std::pow(diam, 1 - alpha));
    }
    return best;
}

WhitneyData whitney_data_bounds(const SampledFunction& s, double alpha, std::size_t all_triples_limit) {
    s.validate();
    const std::size_t n = s.x.size();
    WhitneyData d;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            d.T1 = std::max(d.T1, std::abs(s.y[j] - s.y[i]) / (s.x[j] - s.x[i]));
        }
    }
    auto slope = [&](std::size_t i, std::size_t j) { return (s.y[j] - s.y[i]) / (s.x[j] - s.x[i]); };
    const bool all = n <= all_triples_limit;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            const std::size_t kmax = all ? n : std::min(n, j + 2);
            if (!all && j != i + 1) break;
            for (std::size_t k = j + 1; k < kmax; ++k) {
                const double ratio = std::abs(slope(i, j) - slope(j, k)) / std::pow(s.x[k] - s.x[i], alpha);
                d.T2 = std::max(d.T2, ratio);
            }
        }
    }
    return d;
}

WhitneyExtension whitney_extend(const SampledFunction& s, double alpha, double T1, double T2, Interval interval,
                                const WhitneyOptions& opts) {
    s.validate();
    if (s.x.empty()) throw DomainError("whitney_extend: no data");
    if (!(alpha > 0 && alpha <= 1) || !(T1 >= 0) || !(T2 >= 0)) throw DomainError("whitney_extend: bad parameters");
    if (!(interval.hi > interval.lo) || s.x.front() < interval.lo || s.x.back() > interval.hi) {
        throw DomainError("whitney_extend: data must lie in the interval");
    }
    const std::size_t n = s.x.size();
    const double slack = 1 + opts.tol;
    auto slope = [&](std::size_t i, std::size_t j) { return (s.y[j] - s.y[i]) / (s.x[j] - s.x[i]); };
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            if (std::abs(slope(i, j)) > T1 * slack + 1e-300) {
                std::ostringstream msg;
                msg << "whitney_extend: pair condition fails at x = " << s.x[i] << ", " << s.x[j];
                throw HypothesisError(msg.str(), {s.x[i], s.x[j]});
            }
        }
    }
    const bool all = n <= opts.all_triples_limit;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            if (!all && j != i + 1) break;
            const std::size_t kmax = all ? n : std::min(n, j + 2);
            for (std::size_t k = j + 1; k < kmax; ++k) {
                const double lhs = std::abs(slope(i, j) - slope(j, k));
                if (lhs > T2 * std::pow(s.x[k] - s.x[i], alpha) * slack + 1e-300) {
                    std::ostringstream msg;
                    msg << "whitney_extend: triple condition fails at x = " << s.x[i] << ", " << s.x[j] << ", "
                        << s.x[k];
                    throw HypothesisError(msg.str(), {s.x[i], s.x[j], s.x[k]});
                }
            }
        }
    }
    if (T2 > 0 && interval.length() > opts.length_factor * std::pow(T1 / T2, 1 / alpha) * slack) {
        std::ostringstream msg;
        msg << "whitney_extend: interval length " << interval.length() << " exceeds " << opts.length_factor
            << " (T1/T2)^(1/alpha)";
        throw HypothesisError(msg.str(), {interval.lo, interval.hi});
    }
    WhitneyExtension F;
    F.x_ = s.x;
    F.y_ = s.y;
    F.d_.assign(n, 0.0);
    if (n >= 2) {
        F.d_[0] = slope(0, 1);
        F.d_[n - 1] = slope(n - 2, n - 1);
        for (std::size_t i = 1; i + 1 < n; ++i) {
            const double h0 = s.x[i] - s.x[i - 1], h1 = s.x[i + 1] - s.x[i];
            F.d_[i] = (h1 * slope(i - 1, i) + h0 * slope(i, i + 1)) / (h0 + h1);
        }
    }
    F.I_ = interval;
    F.T1_ = T1;
    F.T2_ = T2;
    F.alpha_ = alpha;
    return F;
}

double WhitneyExtension::operator()(double x) const {
    if (x_.size() == 1) return y_[0];
    if (x <= x_.front()) return y_.front() + d_.front() * (x - x_.front());
    if (x >= x_.back()) return y_.back() + d_.back() * (x - x_.back());
    const std::size_t i = locate(x_, x);
    return hermite3(x_[i], x_[i + 1], y_[i], y_[i + 1], d_[i], d_[i + 1], x);
}

double WhitneyExtension::derivative(double x) const {
    if (x_.size() == 1) return 0;
    if (x <= x_.front()) return d_.front();
    if (x >= x_.back()) return d_.back();
    const std::size_t i = locate(x_, x);
    return hermite3_derivative(x_[i], x_[i + 1], y_[i], y_[i + 1], d_[i], d_[i + 1], x);
}

WhitneyExtension::Measured WhitneyExtension::measure(std::size_t n_eval) const {
    std::vector<double> x;
    for (std::size_t i = 0; i < n_eval; ++i) {
        x.push_back(I_.lo + I_.length() * static_cast<double>(i) / static_cast<double>(n_eval - 1));
    }
    for (double v : x_) x.push_back(v);
    std::sort(x.begin(), x.end());
    x.erase(std::unique(x.begin(), x.end()), x.end());
    std::vector<double> d(x.size());
    Measured m;
    for (std::size_t i = 0; i < x.size(); ++i) {
        d[i] = derivative(x[i]);
        m.sup_derivative = std::max(m.sup_derivative, std::abs(d[i]));
    }
    m.holder_derivative = holder_seminorm(std::span<const double>(x), std::span<const double>(d), alpha_);
    const double r1 = T1_ > 0 ? m.sup_derivative / T1_ : (m.sup_derivative > 0 ? INFINITY : 0);
    const double r2 = T2_ > 0 ? m.holder_derivative / T2_ : (m.holder_derivative > 0 ? INFINITY : 0);
    m.constant = std::max(r1, r2);
    return m;
}

WhitneyProblem random_whitney_problem(std::mt19937_64& rng, double alpha) {
    std::uniform_real_distribution<double> u(0, 1);
    std::uniform_int_distribution<int> count(5, 40);
    WhitneyProblem p;
    p.alpha = alpha;
    const int n = count(rng);
    std::vector<double> x;
    while (x.size() < static_cast<std::size_t>(n)) {
        x.push_back(u(rng));
        std::sort(x.begin(), x.end());
        x.erase(std::unique(x.begin(), x.end()), x.end());
    }
    const double a1 = u(rng) * 2 - 1, a2 = u(rng) * 2 - 1, b = u(rng) * 2 - 1, c = u(rng);
    const double w1 = 1 + 6 * u(rng), w2 = 1 + 6 * u(rng), ph = 6.283185307179586 * u(rng);
    for (double xi : x) {
        p.data.x.push_back(xi);
        p.data.y.push_back(a1 * std::sin(w1 * xi + ph) / w1 + a2 * std::cos(w2 * xi) / (w2 * w2) +
                           b * std::pow(std::abs(xi - c), 1 + alpha));
    }
    const WhitneyData d = whitney_data_bounds(p.data, alpha);
    p.T1 = std::max(d.T1, 1e-12);
    p.T2 = std::max(d.T2, 1e-12);
    const WhitneyOptions o;
    // length condition: |I| <= c (T1/T2)^(1/alpha)
    p.T1 = std::max(p.T1, p.T2 * std::pow(p.interval.length() / o.length_factor, alpha));
    return p;
}

double measure_whitney_constant(std::uint64_t seed, std::size_t count, double alpha) {
    std::mt19937_64 rng(seed);
    double worst = 0;
    for (std::size_t i = 0; i < count; ++i) {
        const WhitneyProblem p = random_whitney_problem(rng, alpha);
        const WhitneyExtension F = whitney_extend(p.data, alpha, p.T1, p.T2, p.interval);
        worst = std::max(worst, F.measure().constant);
    }
    return worst;
}

}  // namespace geodist
