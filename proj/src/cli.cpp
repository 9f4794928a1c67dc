#include "geodist/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "geodist/calibration.hpp"
#include "geodist/checker.hpp"
#include "geodist/errors.hpp"
#include "geodist/generators.hpp"
#include "geodist/io.hpp"
#include "geodist/profile_analysis.hpp"
#include "geodist/special_functions.hpp"
#include "geodist/synthesis.hpp"

namespace geodist {

namespace {

struct RunConfig {
    std::string input, grid, constants, out, plot, report;
    std::uint64_t seed = 0;
    double tol_geo = 1e-5, tol_dist = 1e-4;
    std::optional<double> h_bound, alpha;
    std::size_t budget = 256;
    std::string demo;
    std::vector<double> demo_args;
};

CheckerConstants load_constants(const RunConfig& cfg) {
    CheckerConstants c = cfg.constants.empty() ? CheckerConstants::defaults() : read_constants(cfg.constants);
    if (cfg.h_bound) c.H = *cfg.h_bound;
    if (cfg.alpha) c.alpha = *cfg.alpha;
    c.validate();
    return c;
}

void emit(const RunConfig& cfg, const std::string& path, const std::string& text, std::ostream& out) {
    if (path.empty() || path == "-")
        out << text;
    else
        write_text_file(path, text);
    (void)cfg;
}

std::string fmt(const char* f, double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, f, x);
    return buf;
}

void print_records(const CheckerReport& rep, std::ostream& out) {
    for (const auto& r : rep.records) {
        out << "  " << (r.pass ? "pass " : "FAIL ") << r.name << "  margin " << fmt("%.4g", r.margin) << "  ("
            << fmt("%.4g", r.measured) << " vs " << fmt("%.4g", r.bound) << ")\n";
    }
    out << "verdict: " << (rep.pass() ? "pass" : "fail") << '\n';
}

int cmd_analyze(const RunConfig& cfg, std::ostream& out) {
    const DistanceProfile p = read_profile_csv(cfg.input);
    const AnalysisSummary s = analyze(p);
    emit(cfg, cfg.out, dump_json(summary_to_json(s)), out);
    if (!cfg.plot.empty()) {
        std::ostringstream csv;
        write_analysis_plot_csv(csv, s);
        write_text_file(cfg.plot, csv.str());
    }
    return kExitOk;
}

CheckerReport run_check(const DistanceProfile& p, const CheckerConstants& c, const RunConfig& cfg) {
    const auto configs = twelve_point_configurations(p.domain(), cfg.budget, cfg.seed);
    CheckerReport rep = finiteness_check(p, c, configs.configs);
    rep.values["budget"] = static_cast<double>(cfg.budget);
    rep.values["seed"] = static_cast<double>(cfg.seed);
    rep.values["degraded_configurations"] = configs.degraded ? 1.0 : 0.0;
    return rep;
}

int cmd_check(const RunConfig& cfg, std::ostream& out) {
    const CheckerConstants c = load_constants(cfg);
    const DistanceProfile p = read_profile_csv(cfg.input);
    const CheckerReport rep = run_check(p, c, cfg);
    emit(cfg, cfg.out, dump_json(report_to_json(rep)), out);
    return rep.pass() ? kExitOk : kExitFail;
}

VerifyOptions verify_options(const RunConfig& cfg) {
    VerifyOptions v;
    v.tol_geo = cfg.tol_geo;
    v.tol_dist = cfg.tol_dist;
    v.seed = cfg.seed;
    return v;
}

int cmd_synthesize(const RunConfig& cfg, std::ostream& out) {
    const CheckerConstants c = load_constants(cfg);
    const DistanceProfile p = read_profile_csv(cfg.input);
    const SynthesisResult res = synthesize(p, c);
    CheckerReport rep = res.construction;
    rep.append(verify_synthesis(res, p, c, verify_options(cfg)));
    rep.constants_version = c.version;
    write_text_file(cfg.out, dump_json(grid_to_json(res.metric)));
    emit(cfg, cfg.report, dump_json(report_to_json(rep)), out);
    if (!cfg.plot.empty()) {
        std::ostringstream csv;
        write_grid_plot_csv(csv, res.metric, res.K0);
        write_text_file(cfg.plot, csv.str());
    }
    return rep.pass() ? kExitOk : kExitFail;
}

int cmd_verify(const RunConfig& cfg, std::ostream& out) {
    const CheckerConstants c = load_constants(cfg);
    const DistanceProfile p = read_profile_csv(cfg.input);
    MetricGrid g = grid_from_json(read_json_file(cfg.grid));
    const SynthesisResult res = reconstruct_synthesis(std::move(g), p);
    CheckerReport rep = verify_synthesis(res, p, c, verify_options(cfg));
    rep.constants_version = c.version;
    emit(cfg, cfg.out, dump_json(report_to_json(rep)), out);
    return rep.pass() ? kExitOk : kExitFail;
}

int cmd_demo_euclid(const RunConfig& cfg, double c, std::ostream& out) {
    if (!(c >= 0 && c < 1)) throw InputError("demo euclid-offset: need 0 <= c < 1");
    const CheckerConstants consts = load_constants(cfg);
    out << "rho(t) = sqrt(1 + t^2) - c: kappa(0) against phi^-1(1 - c) / (1 - c)^2\n";
    out << "         c          kappa(0)       closed form\n";
    std::vector<double> ladder = {0.0, 0.5, 0.9, 0.99, 0.999};
    if (std::find(ladder.begin(), ladder.end(), c) == ladder.end()) ladder.push_back(c);
    std::sort(ladder.begin(), ladder.end());
    const Interval I{-1, 1};
    for (double ci : ladder) {
        const double k = kappa(euclid_offset_profile(ci, I), 0.0);
        const double exact = phi_inverse(1 - ci) / ((1 - ci) * (1 - ci));
        out << fmt("%10.4g", ci) << fmt("  %16.8g", k) << fmt("  %16.8g", exact) << (ci == c ? "  <-" : "") << '\n';
    }
    out << "finiteness check (H = " << consts.H << ", budget " << cfg.budget << "):\n";
    const CheckerReport rep = run_check(euclid_offset_profile(c, I), consts, cfg);
    print_records(rep, out);
    if (!cfg.out.empty()) write_text_file(cfg.out, dump_json(report_to_json(rep)));
    return rep.pass() ? kExitOk : kExitFail;
}

double worst_margin(const CheckerReport& rep) {
    double w = 0;
    for (const auto& r : rep.records) w = std::max(w, r.margin);
    return w;
}

int cmd_demo_bump(const RunConfig& cfg, double eps, double beta, std::ostream& out) {
    if (!(eps > 0 && eps < 0.1) || !(beta > 0)) throw InputError("demo eps-bump: need 0 < eps < 0.1 and beta > 0");
    const CheckerConstants consts = load_constants(cfg);
    out << "rho(t) = sqrt(eps^2 + t^2) + eps^(3 + beta) on [-4 eps, 4 eps], beta = " << beta
        << ", alpha = " << consts.alpha << "\n";
    out << "       eps          kappa(0)    worst margin   eps^(beta-alpha)\n";
    std::vector<double> ladder = {1e-2, 1e-3};
    if (std::find(ladder.begin(), ladder.end(), eps) == ladder.end()) ladder.push_back(eps);
    std::sort(ladder.rbegin(), ladder.rend());
    CheckerReport chosen;
    for (double e : ladder) {
        const Interval I{-4 * e, 4 * e};
        const DistanceProfile p = eps_bump_profile(e, beta, I);
        const CheckerReport rep = run_check(p, consts, cfg);
        out << fmt("%10.4g", e) << fmt("  %16.8g", kappa(p, 0.0)) << fmt("  %14.6g", worst_margin(rep))
            << fmt("  %16.6g", std::pow(e, beta - consts.alpha)) << (e == eps ? "  <-" : "") << '\n';
        if (e == eps) chosen = rep;
    }
    out << "finiteness check at eps = " << eps << ":\n";
    print_records(chosen, out);
    if (!cfg.out.empty()) write_text_file(cfg.out, dump_json(report_to_json(chosen)));
    return chosen.pass() ? kExitOk : kExitFail;
}

int cmd_demo(const RunConfig& cfg, std::ostream& out) {
    const auto& a = cfg.demo_args;
    if (cfg.demo == "euclid-offset") {
        if (a.size() != 1) throw InputError("demo euclid-offset takes one argument c");
        return cmd_demo_euclid(cfg, a[0], out);
    }
    if (cfg.demo == "eps-bump") {
        if (a.size() != 2) throw InputError("demo eps-bump takes two arguments eps beta");
        return cmd_demo_bump(cfg, a[0], a[1], out);
    }
    throw InputError("unknown demo '" + cfg.demo + "' (euclid-offset | eps-bump)");
}

int cmd_calibrate(const RunConfig& cfg, std::ostream& out) {
    CalibrationOptions o;
    o.seed = cfg.seed;
    if (cfg.alpha) o.alpha = *cfg.alpha;
    o.budget = cfg.budget;
    emit(cfg, cfg.out, dump_json(calibration_to_json(calibrate(o))), out);
    return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Distance profiles from geodesics: analysis, finiteness check, metric synthesis"};
    app.require_subcommand(1);
    RunConfig cfg;

    auto common = [&](CLI::App* s) {
        s->add_option("--constants", cfg.constants, "constants or calibration JSON (default: built-in calibration)")
            ->check(CLI::ExistingFile);
        s->add_option("--seed", cfg.seed, "random seed");
        s->add_option("--h-bound", cfg.h_bound, "curvature bound H")->check(CLI::PositiveNumber);
        s->add_option("--alpha", cfg.alpha, "Holder exponent")->check(CLI::Range(1e-6, 1.0));
    };
    auto* analyze_cmd = app.add_subcommand("analyze", "kappa, phi0 and f0 along a profile");
    analyze_cmd->add_option("--input", cfg.input, "profile CSV (t,rho)")->required()->check(CLI::ExistingFile);
    analyze_cmd->add_option("--out", cfg.out, "summary JSON (default stdout)");
    analyze_cmd->add_option("--plot", cfg.plot, "plot CSV t,rho,kappa,f0");

    auto* check_cmd = app.add_subcommand("check", "12-point finiteness check; exit 1 on failure");
    check_cmd->add_option("--input", cfg.input, "profile CSV (t,rho)")->required()->check(CLI::ExistingFile);
    check_cmd->add_option("--out", cfg.out, "report JSON (default stdout)");
    check_cmd->add_option("--budget", cfg.budget, "number of configurations")->check(CLI::PositiveNumber);
    common(check_cmd);

    auto tolerances = [&](CLI::App* s) {
        s->add_option("--tol-geo", cfg.tol_geo, "geodesic residual tolerance")->check(CLI::PositiveNumber);
        s->add_option("--tol-dist", cfg.tol_dist, "distance residual tolerance / max rho")->check(CLI::PositiveNumber);
    };
    auto* synth_cmd = app.add_subcommand("synthesize", "build a metric realising the profile");
    synth_cmd->add_option("--input", cfg.input, "profile CSV (t,rho)")->required()->check(CLI::ExistingFile);
    synth_cmd->add_option("--out", cfg.out, "metric grid JSON")->required();
    synth_cmd->add_option("--report", cfg.report, "report JSON (default stdout)");
    synth_cmd->add_option("--plot", cfg.plot, "plot CSV r,theta,K");
    common(synth_cmd);
    tolerances(synth_cmd);

    auto* verify_cmd = app.add_subcommand("verify", "verify a stored grid against a profile");
    verify_cmd->add_option("--input", cfg.input, "profile CSV (t,rho)")->required()->check(CLI::ExistingFile);
    verify_cmd->add_option("--grid", cfg.grid, "metric grid JSON")->required()->check(CLI::ExistingFile);
    verify_cmd->add_option("--out", cfg.out, "report JSON (default stdout)");
    common(verify_cmd);
    tolerances(verify_cmd);

    auto* demo_cmd = app.add_subcommand("demo", "euclid-offset c | eps-bump eps beta");
    demo_cmd->add_option("name", cfg.demo, "euclid-offset | eps-bump")->required();
    demo_cmd->add_option("params", cfg.demo_args, "demo parameters")->required();
    demo_cmd->add_option("--out", cfg.out, "report JSON of the checker run");
    demo_cmd->add_option("--budget", cfg.budget, "number of configurations")->check(CLI::PositiveNumber);
    common(demo_cmd);

    auto* cal_cmd = app.add_subcommand("calibrate", "regenerate the constants file from the generator suite");
    cal_cmd->add_option("--out", cfg.out, "calibration JSON (default stdout)");
    cal_cmd->add_option("--seed", cfg.seed, "suite seed (the built-in constants use 1)");
    cal_cmd->add_option("--alpha", cfg.alpha, "Holder exponent")->check(CLI::Range(1e-6, 1.0));
    cal_cmd->add_option("--budget", cfg.budget, "configurations per profile")->check(CLI::PositiveNumber);

    std::vector<std::string> argv_store = {"geodist"};
    argv_store.insert(argv_store.end(), args.begin(), args.end());
    std::vector<const char*> argv;
    for (const auto& s : argv_store) argv.push_back(s.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        app.exit(e, out, err);
        return kExitInput;
    }

    try {
        if (*analyze_cmd) return cmd_analyze(cfg, out);
        if (*check_cmd) return cmd_check(cfg, out);
        if (*synth_cmd) return cmd_synthesize(cfg, out);
        if (*verify_cmd) return cmd_verify(cfg, out);
        if (*demo_cmd) return cmd_demo(cfg, out);
        if (*cal_cmd) return cmd_calibrate(cfg, out);
    } catch (const InputError& e) {
        err << "error: " << e.what() << '\n';
        return kExitInput;
    } catch (const std::exception& e) {
        // Inadmissible data (domain, hypothesis, blow-up): the profile is rejected.
        err << "rejected: " << e.what() << '\n';
        return kExitFail;
    }
    return kExitInput;
}

int run(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return run(args, std::cout, std::cerr);
}

}  // namespace geodist
