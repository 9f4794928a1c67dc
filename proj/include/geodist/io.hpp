#pragma once

#include <iosfwd>
#include <string>

#include <json.hpp>

#include "geodist/checker_constants.hpp"
#include "geodist/metric_grid.hpp"
#include "geodist/profile.hpp"
#include "geodist/profile_analysis.hpp"
#include "geodist/report.hpp"

namespace geodist {

// Doubles are written with 17 significant digits ("%.17g"); non-finite
// values become null. Object keys are sorted, so equal inputs give
// byte-identical text.
std::string format_double(double x);
std::string dump_json(const nlohmann::json& j, int indent = 2);

// Profile CSV: header "t,rho", one sample per line, strictly increasing t.
// Malformed rows throw InputError naming the 1-based line.
DistanceProfile parse_profile_csv(std::istream& in);
DistanceProfile read_profile_csv(const std::string& path);
void write_profile_csv(std::ostream& out, const DistanceProfile& p);

// {"R", "H", "alpha", "r_nodes", "theta_nodes", "G", "dG_dr", "d2G_dr2"}, rows at fixed theta.
// The derivative blocks are optional on input (finite differences are used when absent).
nlohmann::json grid_to_json(const MetricGrid& g);
MetricGrid grid_from_json(const nlohmann::json& j);  // throws InputError

nlohmann::json report_to_json(const CheckerReport& r);
nlohmann::json summary_to_json(const AnalysisSummary& s);

// Plot data for external tools.
void write_analysis_plot_csv(std::ostream& out, const AnalysisSummary& s);  // t,rho,kappa,f0
void write_grid_plot_csv(std::ostream& out, const MetricGrid& g, double K_ref = 0);  // r,theta,K

// Accepts a bare constants object or a calibration file {"constants": ...}.
CheckerConstants read_constants(const std::string& path);

nlohmann::json read_json_file(const std::string& path);  // throws InputError
void write_text_file(const std::string& path, const std::string& text);

}  // namespace geodist
