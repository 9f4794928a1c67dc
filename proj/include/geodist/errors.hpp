#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace geodist {

// Argument outside the domain of a function or model.
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

// Malformed user input (files, CLI arguments). Maps to exit code 2.
class InputError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// An iterative solver failed to reach its tolerance.
class ConvergenceError : public std::runtime_error {
public:
    ConvergenceError(const std::string& what, double lo, double hi)
        : std::runtime_error(what), lo_(lo), hi_(hi) {}
    double bracket_lo() const { return lo_; }
    double bracket_hi() const { return hi_; }

private:
    double lo_, hi_;
};

// An ODE solution left the admissible region (G <= 0, non-finite state).
class BlowUpError : public std::runtime_error {
public:
    BlowUpError(const std::string& what, std::size_t node, double r)
        : std::runtime_error(what), node_(node), r_(r) {}
    std::size_t node() const { return node_; }
    double radius() const { return r_; }

private:
    std::size_t node_;
    double r_;
};

// A geodesic left the chart or came too close to the origin.
class GeodesicEscapeError : public std::runtime_error {
public:
    enum class Kind { ExitedDomain, HitOrigin };
    GeodesicEscapeError(const std::string& what, Kind kind, double t)
        : std::runtime_error(what), kind_(kind), t_(t) {}
    Kind kind() const { return kind_; }
    double arc_length() const { return t_; }

private:
    Kind kind_;
    double t_;
};

// A precondition on data failed; `witness` carries the offending values.
class HypothesisError : public std::runtime_error {
public:
    HypothesisError(const std::string& what, std::vector<double> witness)
        : std::runtime_error(what), witness_(std::move(witness)) {}
    const std::vector<double>& witness() const { return witness_; }

private:
    std::vector<double> witness_;
};

}  // namespace geodist
