#include "geodist/checker_constants.hpp"

#include <cmath>

#include "geodist/errors.hpp"

namespace geodist {

double CheckerConstants::L() const { return std::pow(H, 1 + alpha / 2); }

// Output of `geodist calibrate` (seed 1, safety factor 2); the full
// provenance is in data/calibration.json.
CheckerConstants CheckerConstants::defaults() {
    CheckerConstants c;
    c.version = "suite-v1/seed=1/safety=2";
    c.c_a = 0.6684462693770314;
    c.c_b = 2.38539905024314;
    c.c_c = 0.7462257031874023;
    c.c_d = 0.08480657452827306;
    c.c_rhoddot = 2.000131383628627;
    c.c_phiphi0 = 1.7582254370140802;
    c.c_rhoest1_lo = 0.5;
    c.c_rhoest1_hi = 2.0;
    c.c_kappa = 1.9615363188458381;
    c.c_kappa_holder = 1.1697263503148523;
    c.c_phi0vary_C = 2.0006308748124577;
    c.c_f0est1 = 0.29541170345995066;
    c.c_f0est2 = 3.369887854323682;
    c.c_f0est3 = 3.140957683578637;
    c.c_f0est4 = 3.086513780042922;
    c.C2 = 16.274547023428102;
    c.c_fholder = 32.68722585782288;
    c.C_w = 1.938462385875219;
    return c;
}

namespace {
#define GEODIST_CONSTANT_FIELDS(X)                                                                   \
    X(H) X(alpha) X(C1) X(c_a) X(c_b) X(c_c) X(c_d) X(c_rhoddot) X(c_phiphi0) X(c_rhoest1_lo)        \
    X(c_rhoest1_hi) X(c_kappa) X(c_kappa_holder) X(c_phi0vary_C) X(c_phi0vary_Cprime) X(c_f0est1)    \
    X(c_f0est2) X(c_f0est3) X(c_f0est4) X(C2) X(c_fholder) X(C_w)
}  // namespace

nlohmann::json CheckerConstants::to_json() const {
    nlohmann::json j;
    j["version"] = version;
#define X(name) j[#name] = name;
    GEODIST_CONSTANT_FIELDS(X)
#undef X
    return j;
}

CheckerConstants CheckerConstants::from_json(const nlohmann::json& j) {
    if (!j.is_object()) throw InputError("constants: expected a JSON object");
    CheckerConstants c = defaults();
    try {
        if (j.contains("version")) c.version = j.at("version").get<std::string>();
#define X(name) if (j.contains(#name)) c.name = j.at(#name).get<double>();
        GEODIST_CONSTANT_FIELDS(X)
#undef X
    } catch (const nlohmann::json::exception& e) {
        throw InputError(std::string("constants: ") + e.what());
    }
    c.validate();
    return c;
}

void CheckerConstants::validate() const {
#define X(name) if (!(name > 0) || !std::isfinite(name)) throw InputError("constants: " #name " must be positive");
    GEODIST_CONSTANT_FIELDS(X)
#undef X
    if (alpha > 1) throw InputError("constants: alpha must lie in (0, 1]");
}

}  // namespace geodist
