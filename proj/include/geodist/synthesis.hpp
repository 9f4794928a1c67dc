#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "geodist/checker_constants.hpp"
#include "geodist/geodesy.hpp"
#include "geodist/metric_grid.hpp"
#include "geodist/numerics.hpp"
#include "geodist/profile.hpp"
#include "geodist/profile_analysis.hpp"
#include "geodist/report.hpp"
#include "geodist/whitney.hpp"

namespace geodist {

// ---------------------------------------------------------------------------
// Dyadic decomposition of the profile: A_k = {2^(k-1) < r < 2^(k+1)} and
// I_k = rho^{-1}(A_k), split at t0 into at most two components.

enum class AnnulusCase { I, II, III, IV };
const char* to_string(AnnulusCase c);

struct AnnulusPiece {
    int k = 0;
    Interval J;                  // one component of I_k
    AnnulusCase kind = AnnulusCase::I;
    double lambda = 0;           // geometric mean of min / max phi0' on J
    double delta = 0;            // net spacing lambda^alpha 2^(k (1 + alpha))
    double theta_lo = 0, theta_hi = 0;  // phi0(J)
    bool merged = false;         // components joined across t0 because rho(t0) > 2^(k-3)
    bool fallback = false;       // Case III with fewer than two net points, built as Case IV
};

struct AnnulusDecomposition {
    double alpha = 0.5;
    double t0 = 0, m = 0, K0 = 0;
    std::vector<AnnulusPiece> pieces;  // ordered by k, then by t
    int k_min() const;
    int k_max() const;
};

// Cases are tested in order: I (|rho'| <= 1/2 somewhere on J), II (J short
// compared with (2^k lambda^alpha)^(1/(1-alpha))), III (|J| >= delta), IV.
AnnulusDecomposition decompose_annuli(const DistanceProfile& p, const AnalysisSummary& s, double alpha);

// ---------------------------------------------------------------------------
// Per-annulus extension f_k(r, theta) = y(r) + D(theta) on the sector
// phi0(J); theta is the angle of gamma0, i.e. before the map F.

class RadialPart {
public:
    enum class Kind { Zero, Affine, Whitney };
    static RadialPart zero();
    static RadialPart affine(double a0, double a1);  // a0 + a1 r
    static RadialPart whitney(WhitneyExtension w);

    double value(double r) const;
    double derivative(double r) const;
    Kind kind() const { return kind_; }

private:
    Kind kind_ = Kind::Zero;
    double a0_ = 0, a1_ = 0;
    std::shared_ptr<const WhitneyExtension> w_;
};

struct AnnulusFunction {
    AnnulusPiece piece;
    RadialPart y;
    Pchip D;               // theta -> f0 - y(rho) along gamma0
    std::size_t net_size = 0;
    // measured sizes, normalised by 2^((1+alpha)k), 2^(alpha k), 2^(alpha k), 1
    double sup_norm = 0, sup_dr = 0, sup_dtheta = 0, holder_dr = 0;

    double value(double r, double theta) const { return y.value(r) + D(theta); }
};

AnnulusFunction extend_fk(const AnnulusPiece& piece, const DistanceProfile& p, const Phi0Curve& phi0,
                          double K0, double alpha);

// ---------------------------------------------------------------------------
// f = chi_m(r) sum_k w(log2 r - k) f_k with w(x) = S(1 - |x|), S the quintic
// smoothstep, so that sum_k w(x - k) = 1. chi_m vanishes for r <= m/2 and is
// 1 for r >= m. Between sectors of one annulus f_k is blended in theta from
// the edge values of its neighbours.

class RadialCorrectionField {
public:
    RadialCorrectionField() = default;
    RadialCorrectionField(double m, double K0, double alpha, std::vector<AnnulusFunction> pieces);

    // Everything that depends on theta alone, precomputed for one ray.
    class Ray {
    public:
        double value(double r) const;
        double dr(double r) const;

    private:
        friend class RadialCorrectionField;
        struct Slice {
            const RadialPart* A = nullptr;
            const RadialPart* B = nullptr;
            double wa = 0, wb = 0, c = 0;
            bool active = false;
        };
        const RadialCorrectionField* f_ = nullptr;
        std::vector<Slice> slices_;  // indexed by k - k_min
    };

    Ray ray(double theta) const;
    double operator()(double r, double theta) const { return ray(theta).value(r); }
    double dr(double r, double theta) const { return ray(theta).dr(r); }

    double m() const { return m_; }
    double K0() const { return K0_; }
    double alpha() const { return alpha_; }
    const std::vector<AnnulusFunction>& pieces() const { return pieces_; }

    static double weight(double x);
    static double weight_derivative(double x);
    double cutoff(double r) const;
    double cutoff_derivative(double r) const;

private:
    double m_ = 0, K0_ = 0, alpha_ = 0.5;
    int k_min_ = 0, k_max_ = -1;
    std::vector<AnnulusFunction> pieces_;
    std::vector<std::vector<std::size_t>> by_k_;  // piece indices per k, sorted by theta
};

// Throws DomainError if a nonempty I_k has no piece.
RadialCorrectionField glue_f(std::vector<AnnulusFunction> pieces, const AnnulusDecomposition& d);

// ---------------------------------------------------------------------------
// The r-preserving angle map F: phi0 -> phi, monotone interpolation through
// the profile nodes and linear across the unswept back gap.

class AngleMap {
public:
    AngleMap() = default;
    // phi0, phi strictly increasing inside [-pi, pi); throws HypothesisError with a witness otherwise.
    AngleMap(std::vector<double> phi0, std::vector<double> phi);

    double forward(double phi0) const;   // result wrapped to [-pi, pi)
    double inverse(double phi) const;
    // max(sup slope, 1 / inf slope) over the swept sector.
    double bilipschitz() const;
    const std::vector<double>& phi0_nodes() const { return fwd_.nodes(); }
    const std::vector<double>& phi_nodes() const { return inv_.nodes(); }
    bool empty() const { return fwd_.empty(); }

private:
    static double through(const Pchip& p, double lo_src, double hi_src, double lo_dst, double hi_dst, double x);
    Pchip fwd_, inv_;
};

struct SynthesisOptions {
    int r_nodes_per_octave = 64;
    std::size_t min_theta = 64;
    std::size_t max_theta = 4096;
    double R_factor = 1.25;              // grid radius / max rho
    double theta_tol = 1e-7;             // target error of linear-in-theta interpolation of h
    std::optional<double> K0_override;   // build with a prescribed K0 instead of kappa(t0)
};

struct SynthesisResult {
    MetricGrid metric;
    GeodesicPath gamma;   // at the profile nodes
    AngleMap F;           // empty when reconstructed from a stored grid
    double t0 = 0, m = 0, K0 = 0, max_rho = 0;
    std::shared_ptr<const RadialCorrectionField> f;
    AnnulusDecomposition decomposition;
    CheckerReport construction;  // f_interpolation, f_holder, F_bilipschitz
};

// Builds G on a polar grid (geometric in r, uniform in theta) from
// G(r, theta) = sin_{K0}(r) exp int_0^r f(u, F^{-1}(theta)) du, and the
// geodesic gamma = (rho, phi) with phi' = sqrt(1 - rho'^2) / G0.
SynthesisResult assemble_metric(const DistanceProfile& p, const AnalysisSummary& s,
                                std::shared_ptr<const RadialCorrectionField> f, const CheckerConstants& consts,
                                const SynthesisOptions& opts = {});

// analyze -> decompose_annuli -> extend_fk -> glue_f -> assemble_metric.
// Throws DomainError if |K0| > H.
SynthesisResult synthesize(const DistanceProfile& p, const CheckerConstants& consts,
                           const SynthesisOptions& opts = {});

// Geodesic for a stored grid: phi' = sqrt(1 - rho'^2) / G(rho, phi) from phi(t0) = phi_t0.
SynthesisResult reconstruct_synthesis(MetricGrid metric, const DistanceProfile& p, double phi_t0 = 0);

struct VerifyOptions {
    double tol_geo = 1e-5;
    double tol_unit = 1e-6;
    double tol_dist = 1e-4;             // relative to max rho
    std::size_t holder_pairs = 100000;  // random multiscale pairs for the Holder estimate
    std::size_t distance_pairs = 8;
    std::uint64_t seed = 0;
};

// Curvature -G_rr / G from second differences of the G table (so defects in
// G itself are seen), rows by theta. The origin supplies G(0) = 0 for the first
// node. The differences act on G - sin_{K_ref}(r), whose second derivative is
// known, which keeps rounding noise out where G matches the reference.
std::vector<std::vector<double>> grid_curvature(const MetricGrid& m, double K_ref = 0);

struct HolderEstimate {
    double value = 0;
    std::vector<double> witness;  // r1, theta1, r2, theta2
};
// Euclidean Holder seminorm of node values v[j][i] at (r_i, theta_j): all
// neighbouring pairs plus `random_pairs` multiscale pairs. A lower bound.
HolderEstimate sampled_holder(const std::vector<double>& r, const std::vector<double>& theta,
                              const std::vector<std::vector<double>>& v, double alpha, std::size_t random_pairs,
                              std::uint64_t seed);

// Records: G_origin, K_sup, K_holder, strong_convexity, geodesic_residual,
// unit_speed_residual, distance_residual.
CheckerReport verify_synthesis(const SynthesisResult& res, const DistanceProfile& p, const CheckerConstants& consts,
                               const VerifyOptions& opts = {});

}  // namespace geodist
