#include "geodist/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "geodist/errors.hpp"
#include "geodist/synthesis.hpp"

namespace geodist {

using nlohmann::json;

std::string format_double(double x) {
    if (!std::isfinite(x)) return "null";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

namespace {

void dump_rec(std::ostream& os, const json& j, int indent, int depth) {
    const std::string pad = indent > 0 ? std::string(static_cast<std::size_t>(indent * (depth + 1)), ' ') : "";
    const std::string end_pad = indent > 0 ? std::string(static_cast<std::size_t>(indent * depth), ' ') : "";
    const char* nl = indent > 0 ? "\n" : "";
    switch (j.type()) {
        case json::value_t::object: {
            if (j.empty()) {
                os << "{}";
                return;
            }
            os << '{' << nl;
            bool first = true;
            for (auto it = j.begin(); it != j.end(); ++it) {
                if (!first) os << ',' << nl;
                first = false;
                os << pad << json(it.key()).dump() << (indent > 0 ? ": " : ":");
                dump_rec(os, it.value(), indent, depth + 1);
            }
            os << nl << end_pad << '}';
            return;
        }
        case json::value_t::array: {
            if (j.empty()) {
                os << "[]";
                return;
            }
            // Arrays of scalars stay on one line.
            bool flat = true;
            for (const auto& v : j) flat = flat && !v.is_structured();
            if (flat) {
                os << '[';
                for (std::size_t i = 0; i < j.size(); ++i) {
                    if (i) os << (indent > 0 ? ", " : ",");
                    dump_rec(os, j[i], indent, depth + 1);
                }
                os << ']';
                return;
            }
            os << '[' << nl;
            for (std::size_t i = 0; i < j.size(); ++i) {
                if (i) os << ',' << nl;
                os << pad;
                dump_rec(os, j[i], indent, depth + 1);
            }
            os << nl << end_pad << ']';
            return;
        }
        case json::value_t::number_float:
            os << format_double(j.get<double>());
            return;
        default:
            os << j.dump();
    }
}

std::vector<double> doubles(const json& j, const char* key) {
    if (!j.contains(key) || !j[key].is_array()) throw InputError(std::string("grid JSON: missing array '") + key + "'");
    std::vector<double> v;
    for (const auto& x : j[key]) {
        if (!x.is_number()) throw InputError(std::string("grid JSON: non-numeric entry in '") + key + "'");
        v.push_back(x.get<double>());
    }
    return v;
}

std::vector<std::vector<double>> table(const json& j, const char* key, std::size_t rows, std::size_t cols) {
    if (!j.contains(key) || !j[key].is_array() || j[key].size() != rows)
        throw InputError(std::string("grid JSON: '") + key + "' must have one row per theta node");
    std::vector<std::vector<double>> out;
    for (const auto& row : j[key]) {
        if (!row.is_array() || row.size() != cols)
            throw InputError(std::string("grid JSON: '") + key + "' rows must have one entry per r node");
        std::vector<double> v;
        for (const auto& x : row) {
            if (!x.is_number()) throw InputError(std::string("grid JSON: non-numeric entry in '") + key + "'");
            v.push_back(x.get<double>());
        }
        out.push_back(std::move(v));
    }
    return out;
}

double number(const json& j, const char* key) {
    if (!j.contains(key) || !j[key].is_number()) throw InputError(std::string("grid JSON: missing number '") + key + "'");
    return j[key].get<double>();
}

std::string trim(const std::string& s) {
    const auto a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    return s.substr(a, s.find_last_not_of(" \t\r") - a + 1);
}

double parse_field(const std::string& s, std::size_t line) {
    const std::string f = trim(s);
    std::size_t used = 0;
    double v = 0;
    try {
        v = std::stod(f, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (f.empty() || used != f.size())
        throw InputError("profile CSV line " + std::to_string(line) + ": '" + f + "' is not a number");
    return v;
}

}  // namespace

std::string dump_json(const json& j, int indent) {
    std::ostringstream os;
    dump_rec(os, j, indent, 0);
    os << '\n';
    return os.str();
}

DistanceProfile parse_profile_csv(std::istream& in) {
    std::string line;
    std::size_t n = 0;
    bool header = false;
    std::vector<double> t, rho;
    while (std::getline(in, line)) {
        ++n;
        const std::string s = trim(line);
        if (s.empty() || s[0] == '#') continue;
        if (!header) {
            if (s != "t,rho") throw InputError("profile CSV line " + std::to_string(n) + ": expected header 't,rho'");
            header = true;
            continue;
        }
        const auto comma = s.find(',');
        if (comma == std::string::npos || s.find(',', comma + 1) != std::string::npos)
            throw InputError("profile CSV line " + std::to_string(n) + ": expected two fields");
        const double tv = parse_field(s.substr(0, comma), n), rv = parse_field(s.substr(comma + 1), n);
        if (!std::isfinite(tv) || !std::isfinite(rv))
            throw InputError("profile CSV line " + std::to_string(n) + ": non-finite value");
        if (!t.empty() && !(tv > t.back()))
            throw InputError("profile CSV line " + std::to_string(n) + ": t is not strictly increasing");
        if (!(rv > 0)) throw InputError("profile CSV line " + std::to_string(n) + ": rho must be positive");
        t.push_back(tv);
        rho.push_back(rv);
    }
    if (!header) throw InputError("profile CSV: empty input");
    if (t.size() < 7) throw InputError("profile CSV: need at least 7 samples");
    return DistanceProfile::from_samples(std::move(t), std::move(rho));
}

DistanceProfile read_profile_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open profile CSV '" + path + "'");
    return parse_profile_csv(in);
}

void write_profile_csv(std::ostream& out, const DistanceProfile& p) {
    out << "t,rho\n";
    for (std::size_t i = 0; i < p.size(); ++i) out << format_double(p.t()[i]) << ',' << format_double(p.rho()[i]) << '\n';
}

json grid_to_json(const MetricGrid& g) {
    return {{"R", g.R()},
            {"H", g.H()},
            {"alpha", g.alpha()},
            {"r_nodes", g.r_nodes()},
            {"theta_nodes", g.theta_nodes()},
            {"G", g.G()},
            {"dG_dr", g.dG_dr()},
            {"d2G_dr2", g.d2G_dr2()}};
}

MetricGrid grid_from_json(const json& j) {
    if (!j.is_object()) throw InputError("grid JSON: expected an object");
    auto r = doubles(j, "r_nodes");
    auto th = doubles(j, "theta_nodes");
    const double H = number(j, "H"), alpha = number(j, "alpha");
    if (r.size() < 2 || th.empty()) throw InputError("grid JSON: too few nodes");
    auto G = table(j, "G", th.size(), r.size());
    if (j.contains("R") && std::abs(number(j, "R") - r.back()) > 1e-12 * r.back())
        throw InputError("grid JSON: R does not match the last r node");
    try {
        if (j.contains("dG_dr") && j.contains("d2G_dr2")) {
            auto dG = table(j, "dG_dr", th.size(), r.size());
            auto d2G = table(j, "d2G_dr2", th.size(), r.size());
            return MetricGrid(std::move(r), std::move(th), std::move(G), std::move(dG), std::move(d2G), H, alpha);
        }
        return MetricGrid::from_values(std::move(r), std::move(th), std::move(G), H, alpha);
    } catch (const DomainError& e) {
        throw InputError(std::string("grid JSON: ") + e.what());
    }
}

json report_to_json(const CheckerReport& r) {
    json recs = json::array();
    for (const auto& c : r.records) {
        recs.push_back({{"name", c.name},
                        {"measured", c.measured},
                        {"bound", c.bound},
                        {"margin", c.margin},
                        {"witness", c.witness},
                        {"pass", c.pass},
                        {"evaluations", c.evaluations}});
    }
    json values = json::object();
    for (const auto& [k, v] : r.values) values[k] = v;
    return {{"verdict", r.pass() ? "pass" : "fail"},
            {"records", recs},
            {"constants_version", r.constants_version},
            {"values", values}};
}

json summary_to_json(const AnalysisSummary& s) {
    return {{"t0", s.t0},           {"m", s.m},           {"K0", s.K0},         {"max_rho", s.max_rho},
            {"phi0_min", s.phi0_min}, {"phi0_max", s.phi0_max}, {"t", s.t},     {"rho", s.rho},
            {"q", s.q},             {"kappa", s.kappa},   {"phi0", s.phi0},     {"f0", s.f0}};
}

void write_analysis_plot_csv(std::ostream& out, const AnalysisSummary& s) {
    out << "t,rho,kappa,f0\n";
    for (std::size_t i = 0; i < s.t.size(); ++i)
        out << format_double(s.t[i]) << ',' << format_double(s.rho[i]) << ',' << format_double(s.kappa[i]) << ','
            << format_double(s.f0[i]) << '\n';
}

void write_grid_plot_csv(std::ostream& out, const MetricGrid& g, double K_ref) {
    const auto K = grid_curvature(g, K_ref);
    out << "r,theta,K\n";
    for (std::size_t j = 0; j < g.theta_nodes().size(); ++j)
        for (std::size_t i = 0; i < g.r_nodes().size(); ++i)
            out << format_double(g.r_nodes()[i]) << ',' << format_double(g.theta_nodes()[j]) << ','
                << format_double(K[j][i]) << '\n';
}

json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open '" + path + "'");
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw InputError("'" + path + "' is not valid JSON: " + e.what());
    }
}

CheckerConstants read_constants(const std::string& path) {
    const json j = read_json_file(path);
    if (j.is_object() && j.contains("constants")) return CheckerConstants::from_json(j["constants"]);
    return CheckerConstants::from_json(j);
}

void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw InputError("cannot write '" + path + "'");
    out << text;
}

}  // namespace geodist
