#include "geodist/report.hpp"

#include <cmath>
#include <limits>

namespace geodist {

void CheckRecord::update(double measured_value, double bound_value, const std::vector<double>& where) {
    ++evaluations;
    double m;
    if (std::isnan(measured_value)) {
        m = std::numeric_limits<double>::infinity();
    } else if (bound_value > 0) {
        m = measured_value / bound_value;
    } else {
        m = measured_value <= 0 ? 0 : std::numeric_limits<double>::infinity();
    }
    if (evaluations == 1 || m > margin) {
        margin = m;
        measured = measured_value;
        bound = bound_value;
        witness = where;
    }
    pass = pass && m <= 1.0;
}

void CheckRecord::fail(const std::vector<double>& where) {
    ++evaluations;
    if (pass || margin < std::numeric_limits<double>::infinity()) {
        margin = std::numeric_limits<double>::infinity();
        measured = std::numeric_limits<double>::quiet_NaN();
        witness = where;
    }
    pass = false;
}

bool CheckerReport::pass() const {
    for (const auto& r : records) {
        if (!r.pass) return false;
    }
    return true;
}

CheckRecord& CheckerReport::add(const std::string& name) {
    records.push_back(CheckRecord{});
    records.back().name = name;
    return records.back();
}

const CheckRecord* CheckerReport::find(const std::string& name) const {
    for (const auto& r : records) {
        if (r.name == name) return &r;
    }
    return nullptr;
}

void CheckerReport::append(const CheckerReport& other) {
    records.insert(records.end(), other.records.begin(), other.records.end());
    for (const auto& [k, v] : other.values) values[k] = v;
}

}  // namespace geodist
