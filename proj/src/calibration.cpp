#include "geodist/calibration.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <random>
#include <sstream>

#include "geodist/checker.hpp"
#include "geodist/generators.hpp"
#include "geodist/profile_analysis.hpp"
#include "geodist/radial_ode.hpp"
#include "geodist/synthesis.hpp"
#include "geodist/whitney.hpp"

namespace geodist {

namespace {

// Worst ratio seen for one constant, with the profile that produced it.
struct Worst {
    double ratio = 0;
    std::string where;
    void see(double r, const std::string& w) {
        if (std::isfinite(r) && r > ratio) {
            ratio = r;
            where = w;
        }
    }
};

CheckerConstants unit_constants(double alpha, double C1) {
    CheckerConstants c = CheckerConstants::defaults();
    c.version = "unit";
    c.alpha = alpha;
    c.C1 = C1;
    c.c_a = c.c_b = c.c_c = c.c_d = 1;
    c.c_rhoddot = c.c_phiphi0 = 1;
    c.c_kappa = c.c_kappa_holder = c.c_phi0vary_C = 1;
    c.c_f0est1 = c.c_f0est2 = c.c_f0est3 = c.c_f0est4 = 1;
    c.C2 = c.c_fholder = 1;
    return c;
}

}  // namespace

CalibrationResult calibrate(const CalibrationOptions& opts) {
    const CheckerConstants unit = unit_constants(opts.alpha, opts.C1);
    std::map<std::string, Worst> worst;

    // Finiteness checker and profile-level constants.
    SuiteOptions so;
    so.alpha = opts.alpha;
    so.C1 = opts.C1;
    so.m_max = opts.C1 / 2;
    const auto suite = generator_suite(opts.seed, opts.checker_profiles, so);
    static const std::pair<const char*, const char*> checker_map[] = {
        {"kappa_bound", "c_kappa"},       {"kappa_holder", "c_kappa_holder"}, {"phi0_variation", "c_phi0vary_C"},
        {"f0_bound", "c_f0est1"},         {"f0_slope", "c_f0est2"},           {"f0_slope_holder", "c_f0est3"},
        {"f0_cross_scale", "c_f0est4"}};
    for (std::size_t i = 0; i < suite.size(); ++i) {
        const auto& g = suite[i];
        const std::string tag = "checker[" + std::to_string(i) + "] " + g.name;
        const auto configs = twelve_point_configurations(g.profile.domain(), opts.budget, opts.seed + i);
        const CheckerReport rep = finiteness_check(g.profile, unit, configs.configs);
        for (const auto& [rec, constant] : checker_map) {
            if (const auto* r = rep.find(rec)) worst[constant].see(r->margin, tag);
        }
        const AnalysisSummary s = analyze(g.profile);
        double rdd = 0;
        for (double v : g.profile.rho_ddot()) rdd = std::max(rdd, std::abs(v));
        worst["c_rhoddot"].see(rdd * s.m, tag);
        if (!g.path.t.empty() && g.field.H > 0) {
            const Phi0Curve phi0(g.profile, s.t0, s.K0);
            const double scale = std::pow(g.field.H * s.max_rho * s.max_rho, 1 + opts.alpha / 2);
            worst["c_phiphi0"].see(phi_phi0_log_ratio(g.path, phi0, g.profile.domain()) / scale, tag);
        }
    }

    // Riccati stability on random Holder field pairs.
    std::mt19937_64 rng(opts.seed);
    static const std::pair<const char*, const char*> riccati_map[] = {{"riccati_f_sup", "c_a"},
                                                                      {"riccati_df_sup", "c_b"},
                                                                      {"riccati_f_holder", "c_c"},
                                                                      {"riccati_df_holder", "c_d"}};
    for (std::size_t i = 0; i < opts.riccati_pairs; ++i) {
        const RadialCurvature k1 = random_holder_field(rng, 1.0, opts.alpha);
        const RadialCurvature k2 = random_holder_field(rng, 1.0, opts.alpha);
        const CheckerReport rep = riccati_stability_check(k1, k2, 0.01, unit);
        const std::string tag = "riccati[" + std::to_string(i) + "]";
        for (const auto& [rec, constant] : riccati_map) {
            if (const auto* r = rep.find(rec)) worst[constant].see(r->margin, tag);
        }
    }

    // Synthesis: C2 from the curvature sup and Holder records, c_fholder from f.
    SuiteOptions sso = so;
    const auto ssuite = generator_suite(opts.seed + 1000, opts.synthesis_profiles, sso);
    Worst sup, hold, origin;
    for (std::size_t i = 0; i < ssuite.size(); ++i) {
        const auto& g = ssuite[i];
        const std::string tag = "synthesis[" + std::to_string(i) + "] " + g.name;
        const SynthesisResult res = synthesize(g.profile, unit);
        const CheckerReport rep = verify_synthesis(res, g.profile, unit);
        sup.see(rep.find("K_sup")->margin, tag);
        hold.see(rep.find("K_holder")->margin, tag);
        origin.see(rep.find("G_origin")->margin, tag);
        worst["c_fholder"].see(res.construction.find("f_holder")->margin, tag);
    }
    // K_sup <= C2 H, K_holder <= (C2 H)^(1 + alpha/2), G_origin <= C2 H r0^2.
    const double e = 1 + opts.alpha / 2;
    Worst c2;
    c2.see(opts.safety * sup.ratio, sup.where);
    c2.see(std::pow(opts.safety * hold.ratio, 1 / e), hold.where);
    c2.see(opts.safety * origin.ratio, origin.where);

    CalibrationResult out;
    CheckerConstants c = CheckerConstants::defaults();
    c.alpha = opts.alpha;
    c.C1 = opts.C1;
    c.H = 1;
    auto set = [&](const char* name, double& field) {
        const Worst& w = worst[name];
        // A constant that never bites still has to be positive.
        field = opts.safety * std::max(w.ratio, 1e-3);
        out.provenance["worst_ratio"][name] = {{"ratio", w.ratio}, {"where", w.where}};
    };
    set("c_kappa", c.c_kappa);
    set("c_kappa_holder", c.c_kappa_holder);
    set("c_phi0vary_C", c.c_phi0vary_C);
    set("c_f0est1", c.c_f0est1);
    set("c_f0est2", c.c_f0est2);
    set("c_f0est3", c.c_f0est3);
    set("c_f0est4", c.c_f0est4);
    set("c_rhoddot", c.c_rhoddot);
    set("c_phiphi0", c.c_phiphi0);
    set("c_a", c.c_a);
    set("c_b", c.c_b);
    set("c_c", c.c_c);
    set("c_d", c.c_d);
    set("c_fholder", c.c_fholder);
    c.C2 = std::max(c2.ratio, 1e-3);
    out.provenance["worst_ratio"]["C2"] = {
        {"K_sup", sup.ratio}, {"K_holder", hold.ratio}, {"G_origin", origin.ratio}, {"where", c2.where}};
    c.C_w = measure_whitney_constant(opts.seed, opts.whitney_problems, opts.alpha);
    out.provenance["worst_ratio"]["C_w"] = {{"measured", c.C_w}, {"problems", opts.whitney_problems}};

    std::ostringstream v;
    v << "suite-v1/seed=" << opts.seed << "/safety=" << opts.safety;
    c.version = v.str();
    out.provenance["options"] = {{"seed", opts.seed},
                                 {"alpha", opts.alpha},
                                 {"C1", opts.C1},
                                 {"safety", opts.safety},
                                 {"checker_profiles", opts.checker_profiles},
                                 {"budget", opts.budget},
                                 {"riccati_pairs", opts.riccati_pairs},
                                 {"synthesis_profiles", opts.synthesis_profiles},
                                 {"whitney_problems", opts.whitney_problems}};
    c.validate();
    out.constants = c;
    return out;
}

nlohmann::json calibration_to_json(const CalibrationResult& r) {
    return {{"constants", r.constants.to_json()}, {"provenance", r.provenance}};
}

}  // namespace geodist
