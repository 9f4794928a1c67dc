#include "geodist/synthesis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "geodist/errors.hpp"
#include "geodist/special_functions.hpp"

namespace geodist {

namespace {

constexpr double kTwoPi = 2 * std::numbers::pi;

double rho_at(const DistanceProfile& p, double t) { return static_cast<double>(p.value(t)); }

// t in [a, b] with rho(t) = level, rho monotone between a and b.
double crossing(const DistanceProfile& p, double a, double b, double level) {
    const bool up = rho_at(p, b) > rho_at(p, a);
    for (int it = 0; it < 200 && std::abs(b - a) > 1e-15 * std::max(1.0, std::abs(a)); ++it) {
        const double mid = 0.5 * (a + b);
        ((rho_at(p, mid) < level) == up ? a : b) = mid;
    }
    return 0.5 * (a + b);
}

// Nodes strictly inside J, with the end points added.
std::vector<double> sample_points(const DistanceProfile& p, Interval J) {
    std::vector<double> ts{J.lo};
    const double eps = 1e-12 * std::max(1.0, J.length());
    for (double t : p.t()) {
        if (t > J.lo + eps && t < J.hi - eps) ts.push_back(t);
    }
    ts.push_back(J.hi);
    return ts;
}

}  // namespace

const char* to_string(AnnulusCase c) {
    switch (c) {
        case AnnulusCase::I: return "I";
        case AnnulusCase::II: return "II";
        case AnnulusCase::III: return "III";
        case AnnulusCase::IV: return "IV";
    }
    return "?";
}

int AnnulusDecomposition::k_min() const {
    int k = std::numeric_limits<int>::max();
    for (const auto& pc : pieces) k = std::min(k, pc.k);
    return k;
}

int AnnulusDecomposition::k_max() const {
    int k = std::numeric_limits<int>::min();
    for (const auto& pc : pieces) k = std::max(k, pc.k);
    return k;
}

AnnulusDecomposition decompose_annuli(const DistanceProfile& p, const AnalysisSummary& s, double alpha) {
    if (p.size() < 2) throw DomainError("decompose_annuli: empty profile");
    AnnulusDecomposition d;
    d.alpha = alpha;
    d.t0 = s.t0;
    d.m = s.m;
    d.K0 = s.K0;
    const Phi0Curve phi0(p, s.t0, s.K0);
    const Interval dom = p.domain();
    const double m = s.m, t0 = s.t0;
    const double rho_lo_end = rho_at(p, dom.lo), rho_hi_end = rho_at(p, dom.hi);
    const double max_rho = std::max(rho_lo_end, rho_hi_end);

    const int k_first = static_cast<int>(std::floor(std::log2(m) - 1)) + 1;
    const int k_last = static_cast<int>(std::ceil(std::log2(max_rho) + 1)) - 1;

    auto finish = [&](AnnulusPiece pc) {
        const auto ts = sample_points(p, pc.J);
        double min_abs_rd = pc.J.contains(t0) ? 0.0 : std::numeric_limits<double>::infinity();
        double dmin = std::numeric_limits<double>::infinity(), dmax = 0;
        for (double t : ts) {
            min_abs_rd = std::min(min_abs_rd, std::abs(p.jet(t).rho_dot));
            const double v = phi0.derivative(t);
            dmin = std::min(dmin, v);
            dmax = std::max(dmax, v);
        }
        const double two_k = std::ldexp(1.0, pc.k);
        pc.lambda = std::sqrt(dmin * dmax);
        pc.delta = std::pow(pc.lambda, alpha) * std::pow(two_k, 1 + alpha);
        pc.theta_lo = phi0(pc.J.lo);
        pc.theta_hi = phi0(pc.J.hi);
        const double small = alpha < 1 ? std::pow(two_k * std::pow(pc.lambda, alpha), 1 / (1 - alpha)) : 0.0;
        if (pc.merged || min_abs_rd <= 0.5) {
            pc.kind = AnnulusCase::I;
        } else if (pc.J.length() <= small) {
            pc.kind = AnnulusCase::II;
        } else if (pc.J.length() >= pc.delta) {
            pc.kind = AnnulusCase::III;
        } else {
            pc.kind = AnnulusCase::IV;
        }
        d.pieces.push_back(pc);
    };

    for (int k = k_first; k <= k_last; ++k) {
        const double lo = std::ldexp(1.0, k - 1), hi = std::ldexp(1.0, k + 1);
        // Right side: rho increases from m on [t0, dom.hi]; the left side mirrors it.
        Interval right{0, -1}, left{0, -1};
        if (dom.hi > t0 && rho_hi_end > lo) {
            right.lo = m >= lo ? t0 : crossing(p, t0, dom.hi, lo);
            right.hi = rho_hi_end < hi ? dom.hi : crossing(p, t0, dom.hi, hi);
        }
        if (dom.lo < t0 && rho_lo_end > lo) {
            left.hi = m >= lo ? t0 : crossing(p, dom.lo, t0, lo);
            left.lo = rho_lo_end < hi ? dom.lo : crossing(p, dom.lo, t0, hi);
        }
        const bool has_left = left.hi > left.lo, has_right = right.hi > right.lo;
        if (m >= lo) {
            // t0 lies in I_k: one component.
            AnnulusPiece pc;
            pc.k = k;
            pc.J = {has_left ? left.lo : t0, has_right ? right.hi : t0};
            if (pc.J.length() > 0) finish(pc);
            continue;
        }
        if (has_left && has_right && m > std::ldexp(1.0, k - 3)) {
            AnnulusPiece pc;
            pc.k = k;
            pc.J = {left.lo, right.hi};
            pc.merged = true;
            finish(pc);
            continue;
        }
        for (const Interval& J : {left, right}) {
            if (J.hi > J.lo) {
                AnnulusPiece pc;
                pc.k = k;
                pc.J = J;
                finish(pc);
            }
        }
    }
    return d;
}

// ---------------------------------------------------------------------------

RadialPart RadialPart::zero() { return {}; }

RadialPart RadialPart::affine(double a0, double a1) {
    RadialPart r;
    r.kind_ = Kind::Affine;
    r.a0_ = a0;
    r.a1_ = a1;
    return r;
}

RadialPart RadialPart::whitney(WhitneyExtension w) {
    RadialPart r;
    r.kind_ = Kind::Whitney;
    r.w_ = std::make_shared<const WhitneyExtension>(std::move(w));
    return r;
}

double RadialPart::value(double r) const {
    switch (kind_) {
        case Kind::Zero: return 0;
        case Kind::Affine: return a0_ + a1_ * r;
        case Kind::Whitney: return (*w_)(r);
    }
    return 0;
}

double RadialPart::derivative(double r) const {
    switch (kind_) {
        case Kind::Zero: return 0;
        case Kind::Affine: return a1_;
        case Kind::Whitney: return w_->derivative(r);
    }
    return 0;
}

AnnulusFunction extend_fk(const AnnulusPiece& piece, const DistanceProfile& p, const Phi0Curve& phi0, double K0,
                          double alpha) {
    AnnulusFunction out;
    out.piece = piece;
    const int k = piece.k;
    const double a_lo = std::ldexp(1.0, k - 1), a_hi = std::ldexp(1.0, k + 1);
    const Interval J = piece.J;

    auto build_affine = [&] {
        const double r0 = rho_at(p, J.lo), r1 = rho_at(p, J.hi);
        const double y0 = f0(p, J.lo, K0), y1 = f0(p, J.hi, K0);
        const double slope = r1 != r0 ? (y1 - y0) / (r1 - r0) : 0.0;
        out.y = RadialPart::affine(y0 - slope * r0, slope);
        out.net_size = 2;
    };

    if (piece.kind == AnnulusCase::III) {
        // Greedy delta-net from the left end.
        std::vector<double> net;
        for (double s = J.lo; s <= J.hi; s += piece.delta) net.push_back(s);
        if (net.size() >= 2) {
            SampledFunction sf;
            std::vector<std::pair<double, double>> xy;
            for (double s : net) xy.emplace_back(rho_at(p, s), f0(p, s, K0));
            std::sort(xy.begin(), xy.end());
            for (const auto& [x, y] : xy) {
                sf.x.push_back(x);
                sf.y.push_back(y);
            }
            const WhitneyData b = whitney_data_bounds(sf, alpha);
            const double tiny = 1e-300;
            double T2 = std::max(b.T2, tiny);
            double T1 = std::max({b.T1, tiny, T2 * std::pow((a_hi - a_lo) / 4, alpha)});
            // Small relative slack so the hypotheses hold strictly.
            T1 *= 1 + 1e-9;
            T2 *= 1 + 1e-9;
            // End points of J sit on the annulus boundary up to rounding.
            const Interval A{std::min(a_lo, sf.x.front()), std::max(a_hi, sf.x.back())};
            out.y = RadialPart::whitney(whitney_extend(sf, alpha, T1, T2, A));
            out.net_size = net.size();
        } else {
            out.piece.fallback = true;
            build_affine();
        }
    } else if (piece.kind == AnnulusCase::IV) {
        build_affine();
    }

    std::vector<double> th, dv;
    for (double t : sample_points(p, J)) {
        const double theta = phi0(t);
        if (!th.empty() && !(theta > th.back() + 1e-15 * std::max(1.0, std::abs(theta)))) continue;
        th.push_back(theta);
        dv.push_back(f0(p, t, K0) - out.y.value(rho_at(p, t)));
    }
    out.D = Pchip(th, dv);
    out.piece.theta_lo = th.front();
    out.piece.theta_hi = th.back();

    // Measured sizes against the scale-invariant normalisations.
    const double two_k = std::ldexp(1.0, k);
    double sup = 0, sup_dr = 0, sup_dth = 0;
    for (int a = 0; a <= 32; ++a) {
        const double r = a_lo * std::pow(a_hi / a_lo, a / 32.0);
        sup_dr = std::max(sup_dr, std::abs(out.y.derivative(r)));
        for (double theta : th) sup = std::max(sup, std::abs(out.value(r, theta)));
    }
    for (double theta : th) sup_dth = std::max(sup_dth, std::abs(out.D.derivative(theta)) / a_lo);
    out.sup_norm = sup / std::pow(two_k, 1 + alpha);
    out.sup_dr = sup_dr / std::pow(two_k, alpha);
    out.sup_dtheta = sup_dth / std::pow(two_k, alpha);
    if (out.y.kind() == RadialPart::Kind::Whitney) {
        SampledFunction dy;
        for (int a = 0; a <= 400; ++a) {
            const double r = a_lo + (a_hi - a_lo) * a / 400.0;
            dy.x.push_back(r);
            dy.y.push_back(out.y.derivative(r));
        }
        out.holder_dr = holder_seminorm(dy, alpha);
    }
    return out;
}

// ---------------------------------------------------------------------------

RadialCorrectionField::RadialCorrectionField(double m, double K0, double alpha, std::vector<AnnulusFunction> pieces)
    : m_(m), K0_(K0), alpha_(alpha), pieces_(std::move(pieces)) {
    if (!(m > 0)) throw DomainError("RadialCorrectionField: m must be positive");
    if (pieces_.empty()) return;
    k_min_ = std::numeric_limits<int>::max();
    k_max_ = std::numeric_limits<int>::min();
    for (const auto& pc : pieces_) {
        k_min_ = std::min(k_min_, pc.piece.k);
        k_max_ = std::max(k_max_, pc.piece.k);
        if (pc.piece.theta_lo < -std::numbers::pi || pc.piece.theta_hi >= std::numbers::pi) {
            throw DomainError("RadialCorrectionField: sector outside (-pi, pi)");
        }
    }
    by_k_.assign(static_cast<std::size_t>(k_max_ - k_min_ + 1), {});
    for (std::size_t i = 0; i < pieces_.size(); ++i) by_k_[static_cast<std::size_t>(pieces_[i].piece.k - k_min_)].push_back(i);
    for (auto& v : by_k_) {
        std::sort(v.begin(), v.end(),
                  [&](std::size_t a, std::size_t b) { return pieces_[a].piece.theta_lo < pieces_[b].piece.theta_lo; });
        for (std::size_t i = 1; i < v.size(); ++i) {
            if (pieces_[v[i]].piece.theta_lo <= pieces_[v[i - 1]].piece.theta_hi) {
                throw DomainError("RadialCorrectionField: overlapping sectors in one annulus");
            }
        }
    }
}

double RadialCorrectionField::weight(double x) {
    const double a = std::abs(x);
    return a >= 1 ? 0.0 : smoothstep(1 - a);
}

double RadialCorrectionField::weight_derivative(double x) {
    const double a = std::abs(x);
    if (a >= 1) return 0.0;
    return (x > 0 ? -1.0 : 1.0) * smoothstep_derivative(1 - a);
}

double RadialCorrectionField::cutoff(double r) const { return smoothstep((r - m_ / 2) / (m_ / 2)); }

double RadialCorrectionField::cutoff_derivative(double r) const {
    return smoothstep_derivative((r - m_ / 2) / (m_ / 2)) / (m_ / 2);
}

RadialCorrectionField::Ray RadialCorrectionField::ray(double theta) const {
    Ray ray;
    ray.f_ = this;
    ray.slices_.resize(by_k_.size());
    const double th = wrap_angle(theta);
    for (std::size_t kk = 0; kk < by_k_.size(); ++kk) {
        const auto& ids = by_k_[kk];
        if (ids.empty()) continue;
        auto& sl = ray.slices_[kk];
        sl.active = true;
        // Inside a sector?
        std::size_t next = ids.size();
        for (std::size_t a = 0; a < ids.size(); ++a) {
            const auto& pc = pieces_[ids[a]];
            if (th >= pc.piece.theta_lo && th <= pc.piece.theta_hi) {
                sl.A = &pc.y;
                sl.wa = 1;
                sl.c = pc.D(th);
                next = ids.size() + 1;
                break;
            }
            if (th < pc.piece.theta_lo && next == ids.size()) next = a;
        }
        if (next == ids.size() + 1) continue;
        // Cyclic gap between the previous sector's upper edge and the next one's lower edge.
        const std::size_t nb = next == ids.size() ? 0 : next;
        const std::size_t pv = (nb == 0 ? ids.size() : nb) - 1;
        const auto& A = pieces_[ids[pv]];
        const auto& B = pieces_[ids[nb]];
        const double start = A.piece.theta_hi;
        double end = B.piece.theta_lo;
        if (end <= start) end += kTwoPi;
        double x = th;
        if (x < start) x += kTwoPi;
        const double S = smoothstep((x - start) / (end - start));
        sl.A = &A.y;
        sl.B = &B.y;
        sl.wa = 1 - S;
        sl.wb = S;
        sl.c = (1 - S) * A.D(A.piece.theta_hi) + S * B.D(B.piece.theta_lo);
    }
    return ray;
}

double RadialCorrectionField::Ray::value(double r) const {
    const double m = f_->m_;
    if (r <= m / 2 || slices_.empty()) return 0.0;
    const double x = std::log2(r);
    const int k0 = static_cast<int>(std::floor(x));
    double sum = 0;
    for (int k = k0; k <= k0 + 1; ++k) {
        if (k < f_->k_min_ || k > f_->k_max_) continue;
        const auto& sl = slices_[static_cast<std::size_t>(k - f_->k_min_)];
        if (!sl.active) continue;
        const double w = weight(x - k);
        if (w == 0) continue;
        double v = sl.c;
        if (sl.A) v += sl.wa * sl.A->value(r);
        if (sl.B) v += sl.wb * sl.B->value(r);
        sum += w * v;
    }
    return f_->cutoff(r) * sum;
}

double RadialCorrectionField::Ray::dr(double r) const {
    const double m = f_->m_;
    if (r <= m / 2 || slices_.empty()) return 0.0;
    const double x = std::log2(r);
    const int k0 = static_cast<int>(std::floor(x));
    double sum = 0, dsum = 0;
    for (int k = k0; k <= k0 + 1; ++k) {
        if (k < f_->k_min_ || k > f_->k_max_) continue;
        const auto& sl = slices_[static_cast<std::size_t>(k - f_->k_min_)];
        if (!sl.active) continue;
        double v = sl.c, dv = 0;
        if (sl.A) {
            v += sl.wa * sl.A->value(r);
            dv += sl.wa * sl.A->derivative(r);
        }
        if (sl.B) {
            v += sl.wb * sl.B->value(r);
            dv += sl.wb * sl.B->derivative(r);
        }
        const double w = weight(x - k);
        const double dw = weight_derivative(x - k) / (r * std::numbers::ln2);
        sum += w * v;
        dsum += dw * v + w * dv;
    }
    return f_->cutoff_derivative(r) * sum + f_->cutoff(r) * dsum;
}

RadialCorrectionField glue_f(std::vector<AnnulusFunction> pieces, const AnnulusDecomposition& d) {
    for (const auto& want : d.pieces) {
        const bool found = std::any_of(pieces.begin(), pieces.end(), [&](const AnnulusFunction& a) {
            return a.piece.k == want.k && a.piece.J.lo == want.J.lo && a.piece.J.hi == want.J.hi;
        });
        if (!found) {
            throw DomainError("glue_f: no extension for annulus k = " + std::to_string(want.k));
        }
    }
    return RadialCorrectionField(d.m, d.K0, d.alpha, std::move(pieces));
}

// ---------------------------------------------------------------------------

AngleMap::AngleMap(std::vector<double> phi0, std::vector<double> phi) {
    if (phi0.size() < 2 || phi0.size() != phi.size()) throw DomainError("AngleMap: need >= 2 matching nodes");
    for (std::size_t i = 1; i < phi0.size(); ++i) {
        if (!(phi0[i] > phi0[i - 1]) || !(phi[i] > phi[i - 1])) {
            throw HypothesisError("AngleMap: F is not monotone", {phi0[i - 1], phi0[i], phi[i - 1], phi[i]});
        }
    }
    for (const auto* v : {&phi0, &phi}) {
        if (v->front() < -std::numbers::pi || v->back() >= std::numbers::pi) {
            throw HypothesisError("AngleMap: angles outside [-pi, pi)", {v->front(), v->back()});
        }
    }
    fwd_ = Pchip(phi0, phi);
    inv_ = Pchip(std::move(phi), std::move(phi0));
}

double AngleMap::through(const Pchip& p, double lo_src, double hi_src, double lo_dst, double hi_dst, double x) {
    const double th = wrap_angle(x);
    if (th >= lo_src && th <= hi_src) return p(th);
    // Back gap: [hi_src, lo_src + 2 pi] -> [hi_dst, lo_dst + 2 pi], linearly.
    const double y = th < lo_src ? th + kTwoPi : th;
    const double u = (y - hi_src) / (lo_src + kTwoPi - hi_src);
    return wrap_angle(hi_dst + u * (lo_dst + kTwoPi - hi_dst));
}

double AngleMap::forward(double phi0) const {
    const auto& a = fwd_.nodes();
    const auto& b = fwd_.values();
    return through(fwd_, a.front(), a.back(), b.front(), b.back(), phi0);
}

double AngleMap::inverse(double phi) const {
    const auto& a = inv_.nodes();
    const auto& b = inv_.values();
    return through(inv_, a.front(), a.back(), b.front(), b.back(), phi);
}

double AngleMap::bilipschitz() const {
    const auto& x = fwd_.nodes();
    const auto& y = fwd_.values();
    double hi = 0, lo = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i + 1 < x.size(); ++i) {
        const double s = (y[i + 1] - y[i]) / (x[i + 1] - x[i]);
        hi = std::max(hi, s);
        lo = std::min(lo, s);
    }
    for (double d : fwd_.slopes()) {
        hi = std::max(hi, d);
        lo = std::min(lo, d);
    }
    return lo > 0 ? std::max(hi, 1 / lo) : std::numeric_limits<double>::infinity();
}

// ---------------------------------------------------------------------------

SynthesisResult assemble_metric(const DistanceProfile& p, const AnalysisSummary& s,
                                std::shared_ptr<const RadialCorrectionField> f, const CheckerConstants& consts,
                                const SynthesisOptions& opts) {
    if (!f) throw DomainError("assemble_metric: missing correction field");
    SynthesisResult res;
    res.t0 = s.t0;
    res.m = s.m;
    res.K0 = s.K0;
    res.max_rho = s.max_rho;
    res.f = f;
    const double K0 = s.K0, m = s.m, alpha = consts.alpha;
    const Phi0Curve phi0(p, s.t0, K0);
    const auto& t = p.t();
    const std::size_t n = t.size();

    // G0(t) = sin_K0(rho) exp int_0^rho f(u, phi0(t)) du; f vanishes below m/2.
    auto G0 = [&](double tt, double ph0) {
        const double r = rho_at(p, tt);
        const auto ray = f->ray(ph0);
        const double I = r > m / 2 ? integrate_gl_graded([&](double u) { return ray.value(u); }, m / 2, r, 4) : 0.0;
        return sin_k(K0, r) * std::exp(I);
    };
    auto phidot = [&](double tt) {
        const double rd = p.jet(tt).rho_dot;
        return std::sqrt(std::max(0.0, 1 - rd * rd)) / G0(tt, phi0(tt));
    };

    std::vector<double> ph0(n), ph(n, 0.0), g0(n);
    for (std::size_t i = 0; i < n; ++i) {
        ph0[i] = phi0(t[i]);
        g0[i] = G0(t[i], ph0[i]);
    }
    const std::size_t k = static_cast<std::size_t>(std::lower_bound(t.begin(), t.end(), s.t0) - t.begin());
    if (k < n) {
        ph[k] = integrate_gl(phidot, s.t0, t[k], 1);
        for (std::size_t i = k + 1; i < n; ++i) ph[i] = ph[i - 1] + integrate_gl(phidot, t[i - 1], t[i], 1);
    }
    if (k > 0) {
        ph[k - 1] = integrate_gl(phidot, s.t0, t[k - 1], 1);
        for (std::size_t i = k - 1; i-- > 0;) ph[i] = ph[i + 1] + integrate_gl(phidot, t[i + 1], t[i], 1);
    }
    res.F = AngleMap(ph0, ph);

    // Grid: geometric in r, uniform in theta.
    const double R = opts.R_factor * s.max_rho;
    const double r_min = std::min(m / 4, 1e-3 * R);
    const std::size_t n_r =
        static_cast<std::size_t>(std::ceil(opts.r_nodes_per_octave * std::log2(R / r_min))) + 1;
    std::vector<double> r(n_r);
    for (std::size_t i = 0; i < n_r; ++i) {
        r[i] = r_min * std::pow(R / r_min, static_cast<double>(i) / static_cast<double>(n_r - 1));
    }
    r.back() = R;
    double min_angle = std::numeric_limits<double>::infinity();
    for (const auto& pc : f->pieces()) min_angle = std::min(min_angle, pc.piece.lambda * pc.piece.delta);
    std::size_t n_theta = opts.min_theta;
    if (std::isfinite(min_angle) && min_angle > 0) {
        const double want = std::ceil(kTwoPi / min_angle);
        if (want > static_cast<double>(n_theta)) n_theta = static_cast<std::size_t>(std::min(want, 1e9));
    }
    // Rays are blended linearly in theta, so the angular spacing must also keep
    // the interpolation error of h = cot + f along gamma0 below theta_tol.
    double f_tt = 0;
    const double eta = 2e-3;
    for (std::size_t i = 0; i < n; i += std::max<std::size_t>(1, n / 400)) {
        const double r0 = rho_at(p, t[i]);
        const double c = (*f)(r0, ph0[i]);
        f_tt = std::max(f_tt, std::abs((*f)(r0, ph0[i] + eta) - 2 * c + (*f)(r0, ph0[i] - eta)) / (eta * eta));
    }
    if (f_tt > 0) {
        const double want = std::ceil(kTwoPi * std::sqrt(f_tt / (8 * opts.theta_tol)));
        if (want > static_cast<double>(n_theta)) n_theta = static_cast<std::size_t>(std::min(want, 1e9));
    }
    n_theta = std::clamp(n_theta, opts.min_theta, std::max(opts.min_theta, opts.max_theta));
    std::vector<double> theta(n_theta);
    for (std::size_t j = 0; j < n_theta; ++j) {
        theta[j] = -std::numbers::pi + kTwoPi * static_cast<double>(j) / static_cast<double>(n_theta);
    }

    std::vector<double> sinr(n_r), cotr(n_r);
    for (std::size_t i = 0; i < n_r; ++i) {
        sinr[i] = sin_k(K0, r[i]);
        cotr[i] = cot_k(K0, r[i]);
    }
    std::vector<std::vector<double>> G(n_theta, std::vector<double>(n_r)), dG = G, d2G = G, Q = G;
    double f_growth = 0, fr_growth = 0, K_abs = 0, support = 0;
    for (std::size_t j = 0; j < n_theta; ++j) {
        const auto ray = f->ray(res.F.inverse(theta[j]));
        double I = 0, fprev = ray.value(r[0]);
        for (std::size_t i = 0; i < n_r; ++i) {
            const double fi = i == 0 ? fprev : ray.value(r[i]);
            if (i > 0) {
                const double h = r[i] - r[i - 1];
                I += h / 6 * (fprev + 4 * ray.value(0.5 * (r[i] + r[i - 1])) + fi);
            }
            fprev = fi;
            const double fr = ray.dr(r[i]);
            const double g = sinr[i] * std::exp(I);
            const double q = fi * fi + 2 * fi * cotr[i] + fr;
            G[j][i] = g;
            dG[j][i] = (cotr[i] + fi) * g;
            d2G[j][i] = g * (q - K0);
            Q[j][i] = q;
            f_growth = std::max(f_growth, std::abs(fi) / std::pow(r[i], 1 + alpha));
            fr_growth = std::max(fr_growth, std::abs(fr) / std::pow(r[i], alpha));
            K_abs = std::max(K_abs, std::abs(q - K0));
            if (r[i] < m / 2) support = std::max(support, std::abs(fi));
        }
    }
    res.metric = MetricGrid(r, theta, std::move(G), std::move(dG), std::move(d2G), std::max(consts.H, K_abs), alpha);

    res.gamma.t = t;
    for (std::size_t i = 0; i < n; ++i) {
        const Jet j = p.jet(t[i]);
        res.gamma.rho.push_back(j.rho);
        res.gamma.rho_dot.push_back(j.rho_dot);
        res.gamma.rho_ddot.push_back(j.rho_ddot);
        res.gamma.phi.push_back(ph[i]);
        res.gamma.phi_dot.push_back(std::sqrt(std::max(0.0, 1 - j.rho_dot * j.rho_dot)) / g0[i]);
    }

    // Construction diagnostics.
    auto& rep = res.construction;
    rep.constants_version = consts.version;
    auto& interp = rep.add("f_interpolation");
    for (std::size_t i = 0; i < n; ++i) {
        const auto j = p.jet_long(t[i]);
        const double want = f0_from_jet(j[0], j[1], j[2], K0);
        interp.update(std::abs((*f)(static_cast<double>(j[0]), ph0[i]) - want), 1e-8, {t[i]});
    }
    rep.add("F_bilipschitz").update(res.F.bilipschitz(), 1.5, {});
    const HolderEstimate qh = sampled_holder(r, theta, Q, alpha, 20000, 1);
    rep.add("f_holder").update(qh.value, consts.c_fholder * consts.L(), qh.witness);
    rep.values["f_growth"] = f_growth;
    rep.values["f_dr_growth"] = fr_growth;
    rep.values["f_below_half_m"] = support;
    rep.values["n_r"] = static_cast<double>(n_r);
    rep.values["n_theta"] = static_cast<double>(n_theta);
    rep.values["R"] = R;
    rep.values["K0"] = K0;
    rep.values["m"] = m;
    rep.values["t0"] = s.t0;
    rep.values["pieces"] = static_cast<double>(f->pieces().size());
    for (const auto& pc : f->pieces()) {
        rep.values[std::string("case_") + to_string(pc.piece.kind)] += 1;
        rep.values["fk_sup_norm"] = std::max(rep.values["fk_sup_norm"], pc.sup_norm);
        rep.values["fk_sup_dr"] = std::max(rep.values["fk_sup_dr"], pc.sup_dr);
        rep.values["fk_sup_dtheta"] = std::max(rep.values["fk_sup_dtheta"], pc.sup_dtheta);
        rep.values["fk_holder_dr"] = std::max(rep.values["fk_holder_dr"], pc.holder_dr);
        if (pc.piece.fallback) rep.values["fallbacks"] += 1;
    }
    return res;
}

SynthesisResult synthesize(const DistanceProfile& p, const CheckerConstants& consts, const SynthesisOptions& opts) {
    AnalysisSummary s = analyze(p);
    if (opts.K0_override) {
        s.K0 = *opts.K0_override;
        for (std::size_t i = 0; i < s.t.size(); ++i) s.f0[i] = f0(p, s.t[i], s.K0);
    }
    if (std::abs(s.K0) > consts.H) {
        throw DomainError("synthesize: |K0| = " + std::to_string(std::abs(s.K0)) + " exceeds H");
    }
    AnnulusDecomposition d = decompose_annuli(p, s, consts.alpha);
    const Phi0Curve phi0(p, s.t0, s.K0);
    std::vector<AnnulusFunction> pieces;
    for (const auto& pc : d.pieces) pieces.push_back(extend_fk(pc, p, phi0, s.K0, consts.alpha));
    auto f = std::make_shared<const RadialCorrectionField>(glue_f(std::move(pieces), d));
    SynthesisResult res = assemble_metric(p, s, f, consts, opts);
    res.decomposition = std::move(d);
    return res;
}

}  // namespace geodist
