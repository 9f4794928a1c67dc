#include "geodist/metric_grid.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "geodist/errors.hpp"
#include "geodist/numerics.hpp"
#include "geodist/radial_ode.hpp"
#include "geodist/special_functions.hpp"

namespace geodist {

double wrap_angle(double theta) {
    constexpr double two_pi = 2 * std::numbers::pi;
    double w = std::fmod(theta + std::numbers::pi, two_pi);
    if (w < 0) w += two_pi;
    w -= std::numbers::pi;
    if (w >= std::numbers::pi) w -= two_pi;
    return w;
}

MetricGrid::MetricGrid(std::vector<double> r_nodes, std::vector<double> theta_nodes,
                       std::vector<std::vector<double>> G, std::vector<std::vector<double>> dG_dr,
                       std::vector<std::vector<double>> d2G_dr2, double H, double alpha)
    : r_(std::move(r_nodes)), theta_(std::move(theta_nodes)), G_(std::move(G)), dG_(std::move(dG_dr)),
      d2G_(std::move(d2G_dr2)), H_(H), alpha_(alpha) {
    if (r_.size() < 2 || theta_.empty()) throw DomainError("MetricGrid: need >= 2 radial nodes and >= 1 ray");
    if (!(r_.front() > 0)) throw DomainError("MetricGrid: radial nodes must be positive");
    for (std::size_t i = 1; i < r_.size(); ++i) {
        if (!(r_[i] > r_[i - 1])) throw DomainError("MetricGrid: radial nodes must increase");
    }
    for (std::size_t j = 0; j < theta_.size(); ++j) {
        if (theta_[j] < -std::numbers::pi || theta_[j] >= std::numbers::pi) {
            throw DomainError("MetricGrid: theta nodes must lie in [-pi, pi)");
        }
        if (j > 0 && !(theta_[j] > theta_[j - 1])) throw DomainError("MetricGrid: theta nodes must increase");
    }
    auto check_shape = [&](const std::vector<std::vector<double>>& m, const char* what) {
        if (m.size() != theta_.size()) throw DomainError(std::string("MetricGrid: wrong row count for ") + what);
        for (const auto& row : m) {
            if (row.size() != r_.size()) throw DomainError(std::string("MetricGrid: wrong row length for ") + what);
            for (double v : row) {
                if (!std::isfinite(v)) throw DomainError(std::string("MetricGrid: non-finite ") + what);
            }
        }
    };
    check_shape(G_, "G");
    check_shape(dG_, "dG_dr");
    check_shape(d2G_, "d2G_dr2");
    for (const auto& row : G_) {
        for (double v : row) {
            if (!(v > 0)) throw DomainError("MetricGrid: G must be positive");
        }
    }
    const double n = static_cast<double>(theta_.size());
    const double d = 2 * std::numbers::pi / n;
    uniform_theta_ = true;
    for (std::size_t j = 0; j < theta_.size(); ++j) {
        if (std::abs(theta_[j] - (theta_[0] + d * static_cast<double>(j))) > 1e-12) uniform_theta_ = false;
    }
}

MetricGrid MetricGrid::from_values(std::vector<double> r_nodes, std::vector<double> theta_nodes,
                                   std::vector<std::vector<double>> G, double H, double alpha) {
    const std::size_t n = r_nodes.size();
    if (n < 3) throw DomainError("MetricGrid: need >= 3 radial nodes to difference");
    std::vector<std::vector<double>> dG(G.size(), std::vector<double>(n)),
        d2G(G.size(), std::vector<double>(n));
    // Three-point nonuniform differences (one-sided at the ends).
    auto weights = [&](std::size_t c, std::size_t a, std::size_t b, std::size_t e,
                       double& w0, double& w1, double& w2, double& v0, double& v1, double& v2) {
        const double x0 = r_nodes[a], x1 = r_nodes[b], x2 = r_nodes[e], x = r_nodes[c];
        w0 = ((x - x1) + (x - x2)) / ((x0 - x1) * (x0 - x2));
        w1 = ((x - x0) + (x - x2)) / ((x1 - x0) * (x1 - x2));
        w2 = ((x - x0) + (x - x1)) / ((x2 - x0) * (x2 - x1));
        v0 = 2 / ((x0 - x1) * (x0 - x2));
        v1 = 2 / ((x1 - x0) * (x1 - x2));
        v2 = 2 / ((x2 - x0) * (x2 - x1));
    };
    for (std::size_t j = 0; j < G.size(); ++j) {
        if (G[j].size() != n) throw DomainError("MetricGrid: wrong row length for G");
        for (std::size_t i = 0; i < n; ++i) {
            const std::size_t a = i == 0 ? 0 : (i == n - 1 ? n - 3 : i - 1);
            double w0, w1, w2, v0, v1, v2;
            weights(i, a, a + 1, a + 2, w0, w1, w2, v0, v1, v2);
            dG[j][i] = w0 * G[j][a] + w1 * G[j][a + 1] + w2 * G[j][a + 2];
            d2G[j][i] = v0 * G[j][a] + v1 * G[j][a + 1] + v2 * G[j][a + 2];
        }
    }
    return MetricGrid(std::move(r_nodes), std::move(theta_nodes), std::move(G), std::move(dG), std::move(d2G),
                      H, alpha);
}

MetricGrid MetricGrid::from_curvature(const std::function<double(double, double)>& K, double R, double H,
                                      double alpha, std::size_t n_theta, double step) {
    std::vector<double> theta(n_theta);
    for (std::size_t j = 0; j < n_theta; ++j) {
        theta[j] = -std::numbers::pi + 2 * std::numbers::pi * static_cast<double>(j) / static_cast<double>(n_theta);
    }
    std::vector<std::vector<double>> G, dG, d2G;
    std::vector<double> r;
    for (std::size_t j = 0; j < n_theta; ++j) {
        const double th = theta[j];
        RadialCurvature k{[&K, th](double x) { return K(x, th); }, R, H, 0.0, alpha};
        // The Holder bound is not known per ray here; skip the sampled check.
        k.L = 1e300;
        RadialSolution s = solve_jacobi(k, step);
        if (r.empty()) r = s.r;
        std::vector<double> dd(s.r.size());
        for (std::size_t i = 0; i < s.r.size(); ++i) dd[i] = -K(s.r[i], th) * s.G[i];
        G.push_back(std::move(s.G));
        dG.push_back(std::move(s.dG));
        d2G.push_back(std::move(dd));
    }
    return MetricGrid(std::move(r), std::move(theta), std::move(G), std::move(dG), std::move(d2G), H, alpha);
}

MetricGrid::Sample MetricGrid::ray_sample(std::size_t j, double r) const {
    const auto& G = G_[j];
    const auto& dG = dG_[j];
    const auto& d2G = d2G_[j];
    if (r <= r_.front()) {
        const double x1 = r_.front();
        return {hermite3(0.0, x1, 0.0, G.front(), 1.0, dG.front(), r),
                hermite3(0.0, x1, 1.0, dG.front(), 0.0, d2G.front(), r)};
    }
    const std::size_t i = locate(r_, r);
    const double x0 = r_[i], x1 = r_[i + 1];
    return {hermite3(x0, x1, G[i], G[i + 1], dG[i], dG[i + 1], r),
            hermite3(x0, x1, dG[i], dG[i + 1], d2G[i], d2G[i + 1], r)};
}

MetricGrid::Sample MetricGrid::at(double r, double theta) const {
    if (!(r >= 0) || r > R() * (1 + 1e-12)) {
        std::ostringstream msg;
        msg << "MetricGrid: r = " << r << " outside [0, " << R() << "]";
        throw DomainError(msg.str());
    }
    const std::size_t n = theta_.size();
    if (n == 1) return ray_sample(0, r);
    const double th = wrap_angle(theta);
    std::size_t j0, j1;
    double w;
    constexpr double two_pi = 2 * std::numbers::pi;
    if (uniform_theta_) {
        const double d = two_pi / static_cast<double>(n);
        double u = (th - theta_[0]) / d;
        u -= std::floor(u / static_cast<double>(n)) * static_cast<double>(n);
        const double fl = std::floor(u);
        j0 = static_cast<std::size_t>(fl) % n;
        w = u - fl;
    } else {
        if (th >= theta_.front() && th < theta_.back()) {
            j0 = locate(theta_, th);
            w = (th - theta_[j0]) / (theta_[j0 + 1] - theta_[j0]);
        } else {
            j0 = n - 1;
            const double span = theta_.front() + two_pi - theta_.back();
            double off = th - theta_.back();
            if (off < 0) off += two_pi;
            w = off / span;
        }
    }
    j1 = (j0 + 1) % n;
    const Sample a = ray_sample(j0, r);
    if (w == 0) return a;
    const Sample b = ray_sample(j1, r);
    return {(1 - w) * a.G + w * b.G, (1 - w) * a.dG + w * b.dG};
}

double MetricGrid::curvature_at_node(std::size_t i_theta, std::size_t i_r) const {
    return -d2G_[i_theta][i_r] / G_[i_theta][i_r];
}

void MetricGrid::validate(double tol) const {
    if (H_ * R() * R() > std::numbers::pi * std::numbers::pi / 4 * (1 + 1e-12)) {
        throw DomainError("MetricGrid: H R^2 exceeds pi^2/4 (strong convexity)");
    }
    for (std::size_t j = 0; j < theta_.size(); ++j) {
        for (std::size_t i = 0; i < r_.size(); ++i) {
            const double x = r_[i];
            const double lo = sin_k(H_, x), hi = sin_k(-H_, x);
            const double g = G_[j][i];
            if (g < lo * (1 - tol) || g > hi * (1 + tol)) {
                std::ostringstream msg;
                msg << "MetricGrid: G(" << x << ", " << theta_[j] << ") = " << g << " outside comparison bounds ["
                    << lo << ", " << hi << "]";
                throw DomainError(msg.str());
            }
        }
    }
}

}  // namespace geodist
