#pragma once

#include <cstddef>
#include <functional>
#include <vector>

namespace geodist {

// A point in polar normal coordinates about the origin.
struct PolarPoint {
    double r = 0;
    double theta = 0;
};

// Wrap an angle into [-pi, pi).
double wrap_angle(double theta);

// G(r, theta) of g = dr^2 + G^2 dtheta^2 on a polar grid, rows indexed by theta.
// Between radial nodes G is cubic Hermite (using dG_dr), dG_dr is cubic Hermite
// (using d2G_dr2); rays are blended linearly in theta with periodic wrap.
// Below the first node the origin data G = 0, G_r = 1, G_rr = 0 is used.
class MetricGrid {
public:
    MetricGrid() = default;
    MetricGrid(std::vector<double> r_nodes, std::vector<double> theta_nodes,
               std::vector<std::vector<double>> G, std::vector<std::vector<double>> dG_dr,
               std::vector<std::vector<double>> d2G_dr2, double H, double alpha);

    // Radial derivatives estimated by finite differences along each ray.
    static MetricGrid from_values(std::vector<double> r_nodes, std::vector<double> theta_nodes,
                                  std::vector<std::vector<double>> G, double H, double alpha);

    // Build from a curvature field by integrating the Jacobi equation on each ray.
    static MetricGrid from_curvature(const std::function<double(double, double)>& K, double R,
                                     double H, double alpha, std::size_t n_theta, double step);

    struct Sample {
        double G = 0, dG = 0;
        double h() const { return dG / G; }
    };
    // Throws DomainError if r > R or r < 0.
    Sample at(double r, double theta) const;
    double curvature_at_node(std::size_t i_theta, std::size_t i_r) const;

    double R() const { return r_.back(); }
    double H() const { return H_; }
    double alpha() const { return alpha_; }
    double r_floor() const { return 1e-3 * R(); }
    const std::vector<double>& r_nodes() const { return r_; }
    const std::vector<double>& theta_nodes() const { return theta_; }
    const std::vector<std::vector<double>>& G() const { return G_; }
    const std::vector<std::vector<double>>& dG_dr() const { return dG_; }
    const std::vector<std::vector<double>>& d2G_dr2() const { return d2G_; }

    // Node-wise comparison sandwich and strong convexity; throws DomainError.
    void validate(double tol = 1e-9) const;

private:
    Sample ray_sample(std::size_t j, double r) const;

    std::vector<double> r_, theta_;
    std::vector<std::vector<double>> G_, dG_, d2G_;
    double H_ = 0, alpha_ = 1;
    bool uniform_theta_ = false;
};

}  // namespace geodist
