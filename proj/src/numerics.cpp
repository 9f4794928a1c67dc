#include "geodist/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "geodist/errors.hpp"

namespace geodist {

namespace {
constexpr std::array<double, 5> kGlNodes = {
    -0.906179845938663992797626878299, -0.538469310105683091036314420700, 0.0,
    0.538469310105683091036314420700, 0.906179845938663992797626878299};
constexpr std::array<double, 5> kGlWeights = {
    0.236926885056189087514264040720, 0.478628670499366468041291514836,
    0.568888888888888888888888888889, 0.478628670499366468041291514836,
    0.236926885056189087514264040720};
}  // namespace

// Fornberg's weights for derivatives 0..2 at z on the given stencil.
void fd_weights(double z, const double* x, int n, double c[][3]) {
    double c1 = 1, c4 = x[0] - z;
    for (int i = 0; i < n; ++i) c[i][0] = c[i][1] = c[i][2] = 0;
    c[0][0] = 1;
    for (int i = 1; i < n; ++i) {
        const int mn = std::min(i, 2);
        double c2 = 1;
        const double c5 = c4;
        c4 = x[i] - z;
        for (int j = 0; j < i; ++j) {
            const double c3 = x[i] - x[j];
            c2 *= c3;
            if (j == i - 1) {
                for (int k = mn; k >= 1; --k) c[i][k] = c1 * (k * c[i - 1][k - 1] - c5 * c[i - 1][k]) / c2;
                c[i][0] = -c1 * c5 * c[i - 1][0] / c2;
            }
            for (int k = mn; k >= 1; --k) c[j][k] = (c4 * c[j][k] - k * c[j][k - 1]) / c3;
            c[j][0] = c4 * c[j][0] / c3;
        }
        c1 = c2;
    }
}


void differentiate_nodes(std::span<const double> t, std::span<const double> y, std::vector<double>& d1,
                         std::vector<double>& d2, int width) {
    const std::size_t n = t.size();
    if (y.size() != n || n < 3) throw DomainError("differentiate_nodes: need >= 3 matching samples");
    const int w = static_cast<int>(std::min<std::size_t>(static_cast<std::size_t>(std::min(width, 9)), n));
    d1.assign(n, 0.0);
    d2.assign(n, 0.0);
    double c[9][3];
    for (std::size_t i = 0; i < n; ++i) {
        std::ptrdiff_t lo = static_cast<std::ptrdiff_t>(i) - w / 2;
        lo = std::clamp<std::ptrdiff_t>(lo, 0, static_cast<std::ptrdiff_t>(n) - w);
        fd_weights(t[i], &t[static_cast<std::size_t>(lo)], w, c);
        for (int k = 0; k < w; ++k) {
            d1[i] += c[k][1] * y[static_cast<std::size_t>(lo + k)];
            d2[i] += c[k][2] * y[static_cast<std::size_t>(lo + k)];
        }
    }
}

double integrate_gl(const std::function<double(double)>& f, double a, double b, int panels) {
    if (panels < 1) panels = 1;
    const double h = (b - a) / panels;
    double total = 0;
    for (int p = 0; p < panels; ++p) {
        const double c = a + (p + 0.5) * h;
        double s = 0;
        for (int k = 0; k < 5; ++k) s += kGlWeights[k] * f(c + 0.5 * h * kGlNodes[k]);
        total += 0.5 * h * s;
    }
    return total;
}

double integrate_gl_graded(const std::function<double(double)>& f, double a, double b,
                           int panels_per_octave, double a_floor) {
    if (b <= a) return 0;
    // Octaves [b/2^(j+1), b/2^j] down to max(a, a_floor) (or a tiny floor when a == 0).
    const double bottom = std::max(a, a_floor > 0 ? a_floor : b * 1e-12);
    double total = 0;
    double upper = b;
    while (upper > bottom) {
        const double lower = std::max(upper / 2, bottom);
        total += integrate_gl(f, lower, upper, panels_per_octave);
        upper = lower;
    }
    if (a < bottom) total += integrate_gl(f, a, bottom, 1);
    return total;
}

double hermite3(double x0, double x1, double y0, double y1, double d0, double d1, double x) {
    const double h = x1 - x0;
    const double s = (x - x0) / h;
    const double s2 = s * s, s3 = s2 * s;
    const double h00 = 2 * s3 - 3 * s2 + 1;
    const double h10 = s3 - 2 * s2 + s;
    const double h01 = -2 * s3 + 3 * s2;
    const double h11 = s3 - s2;
    return h00 * y0 + h10 * h * d0 + h01 * y1 + h11 * h * d1;
}

double hermite3_derivative(double x0, double x1, double y0, double y1, double d0, double d1, double x) {
    const double h = x1 - x0;
    const double s = (x - x0) / h;
    const double s2 = s * s;
    const double g00 = (6 * s2 - 6 * s) / h;
    const double g10 = 3 * s2 - 4 * s + 1;
    const double g01 = (-6 * s2 + 6 * s) / h;
    const double g11 = 3 * s2 - 2 * s;
    return g00 * y0 + g10 * d0 + g01 * y1 + g11 * d1;
}

double smoothstep(double u) {
    if (u <= 0) return 0;
    if (u >= 1) return 1;
    return u * u * u * (10 + u * (-15 + 6 * u));
}

double smoothstep_derivative(double u) {
    if (u <= 0 || u >= 1) return 0;
    const double v = u * (1 - u);
    return 30 * v * v;
}

double smoothstep_second(double u) {
    if (u <= 0 || u >= 1) return 0;
    return 60 * u * (1 - u) * (1 - 2 * u);
}

std::size_t locate(std::span<const double> x, double v) {
    if (x.size() < 2) return 0;
    if (v <= x.front()) return 0;
    if (v >= x.back()) return x.size() - 2;
    auto it = std::upper_bound(x.begin(), x.end(), v);
    return static_cast<std::size_t>(it - x.begin()) - 1;
}

Pchip::Pchip(std::vector<double> x, std::vector<double> y) : x_(std::move(x)), y_(std::move(y)) {
    const std::size_t n = x_.size();
    if (n == 0 || n != y_.size()) throw DomainError("Pchip: need matching, non-empty node arrays");
    for (std::size_t i = 1; i < n; ++i) {
        if (!(x_[i] > x_[i - 1])) throw DomainError("Pchip: nodes must be strictly increasing");
    }
    d_.assign(n, 0.0);
    if (n == 1) return;
    std::vector<double> h(n - 1), delta(n - 1);
    for (std::size_t i = 0; i + 1 < n; ++i) {
        h[i] = x_[i + 1] - x_[i];
        delta[i] = (y_[i + 1] - y_[i]) / h[i];
    }
    d_[0] = delta[0];
    d_[n - 1] = delta[n - 2];
    for (std::size_t i = 1; i + 1 < n; ++i) {
        if (delta[i - 1] * delta[i] <= 0) {
            d_[i] = 0;
        } else {
            const double w1 = 2 * h[i] + h[i - 1];
            const double w2 = h[i] + 2 * h[i - 1];
            d_[i] = (w1 + w2) / (w1 / delta[i - 1] + w2 / delta[i]);
        }
    }
}

std::size_t Pchip::segment(double x) const { return locate(x_, x); }

double Pchip::operator()(double x) const {
    if (x_.size() == 1) return y_[0];
    if (x <= x_.front()) return y_.front() + d_.front() * (x - x_.front());
    if (x >= x_.back()) return y_.back() + d_.back() * (x - x_.back());
    const std::size_t i = segment(x);
    return hermite3(x_[i], x_[i + 1], y_[i], y_[i + 1], d_[i], d_[i + 1], x);
}

double Pchip::derivative(double x) const {
    if (x_.size() == 1) return 0;
    if (x <= x_.front()) return d_.front();
    if (x >= x_.back()) return d_.back();
    const std::size_t i = segment(x);
    return hermite3_derivative(x_[i], x_[i + 1], y_[i], y_[i + 1], d_[i], d_[i + 1], x);
}

double holder_seminorm(std::span<const double> x, std::span<const double> y, double alpha) {
    if (x.size() != y.size()) throw DomainError("holder_seminorm: size mismatch");
    double best = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        for (std::size_t j = i + 1; j < x.size(); ++j) {
            const double dx = std::abs(x[i] - x[j]);
            if (dx == 0) continue;
            best = std::max(best, std::abs(y[i] - y[j]) / std::pow(dx, alpha));
        }
    }
    return best;
}

}  // namespace geodist
