#pragma once

#include <map>
#include <string>
#include <vector>

namespace geodist {

// One checked inequality: measured <= bound, margin = measured / bound.
struct CheckRecord {
    std::string name;
    double measured = 0;
    double bound = 0;
    double margin = 0;
    std::vector<double> witness;
    bool pass = true;
    std::size_t evaluations = 0;

    // Keep the worst (largest-margin) instance seen so far.
    void update(double measured_value, double bound_value, const std::vector<double>& where);
    // Record an instance that cannot be evaluated (e.g. out of domain): fails.
    void fail(const std::vector<double>& where);
};

struct CheckerReport {
    std::vector<CheckRecord> records;
    std::string constants_version;
    std::map<std::string, double> values;  // extra diagnostics, serialized alongside

    bool pass() const;
    CheckRecord& add(const std::string& name);
    const CheckRecord* find(const std::string& name) const;
    void append(const CheckerReport& other);
};

}  // namespace geodist
