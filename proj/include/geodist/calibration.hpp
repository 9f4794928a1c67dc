#pragma once

#include <cstdint>
#include <string>

#include <json.hpp>

#include "geodist/checker_constants.hpp"

namespace geodist {

struct CalibrationOptions {
    std::uint64_t seed = 1;
    double alpha = 0.5;
    double C1 = 0.05;
    double safety = 2.0;                // multiplies every worst observed ratio
    std::size_t checker_profiles = 64;  // generator suite for the finiteness checker
    std::size_t budget = 256;           // 12-point configurations per profile
    std::size_t riccati_pairs = 200;    // random Holder field pairs
    std::size_t synthesis_profiles = 16;
    std::size_t whitney_problems = 100;
};

struct CalibrationResult {
    CheckerConstants constants;
    nlohmann::json provenance;  // worst raw ratios and where they were observed
};

// Runs the generator suite with every implied constant set to 1 and stores
// safety * (worst observed ratio). C_w is the measured Whitney constant
// (no safety factor); c_rhoest1_lo/hi and c_phi0vary_Cprime keep their
// defaults because they enter the bounds non-linearly.
CalibrationResult calibrate(const CalibrationOptions& opts = {});

// {"constants": ..., "provenance": ...}
nlohmann::json calibration_to_json(const CalibrationResult& r);

}  // namespace geodist
