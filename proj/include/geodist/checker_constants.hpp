#pragma once

#include <string>

#include <json.hpp>

namespace geodist {

// Every implied constant used by the checks. Defaults come from the
// generator-suite calibration (see `calibrate`); a JSON file can override.
struct CheckerConstants {
    std::string version;

    double H = 1.0;       // curvature scale; L = H^(1 + alpha/2)
    double alpha = 0.5;
    double C1 = 0.05;     // working radius: rho <= C1

    // Riccati stability conclusions (a)-(d)
    double c_a = 0, c_b = 0, c_c = 0, c_d = 0;

    // geodesic profiles
    double c_rhoddot = 0;   // ||rho''||_inf <= c / m
    double c_phiphi0 = 0;   // sup |log(phi'/phi0')| <= c (H R^2)^(1 + alpha/2)

    // finiteness checker
    double c_rhoest1_lo = 0, c_rhoest1_hi = 0;
    double c_kappa = 0;
    double c_kappa_holder = 0;
    double c_phi0vary_C = 0, c_phi0vary_Cprime = 2.0;
    double c_f0est1 = 0, c_f0est2 = 0, c_f0est3 = 0, c_f0est4 = 0;

    // synthesis
    double C2 = 0;          // output curvature scale
    double c_fholder = 0;   // ||f^2 + 2 f cot + d_r f||_alpha
    double C_w = 0;         // Whitney extension constant

    double L() const;

    static CheckerConstants defaults();
    nlohmann::json to_json() const;
    static CheckerConstants from_json(const nlohmann::json& j);  // throws InputError
    void validate() const;                                       // throws InputError
};

}  // namespace geodist
