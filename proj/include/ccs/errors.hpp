#ifndef CCS_ERRORS_HPP
#define CCS_ERRORS_HPP

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace ccs {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct ParamIssue {
    enum class Kind { Nonpositive, Nonfinite };
    Kind kind;
    std::string field;
};

// Carries one issue per offending field so callers can report all of them.
class InvalidParameters : public Error {
public:
    explicit InvalidParameters(std::vector<ParamIssue> issues);
    const std::vector<ParamIssue>& issues() const noexcept { return issues_; }

private:
    std::vector<ParamIssue> issues_;
};

class NoConvergence : public Error {
public:
    NoConvergence(int iterations, double residual);
    int iterations;
    double residual;
};

class PositivityLoss : public Error {
public:
    PositivityLoss(std::size_t cell, double value);
    std::size_t cell;
    double value;
};

class InfeasibleDelta1 : public Error {
public:
    explicit InfeasibleDelta1(double delta1);
    double delta1;
};

// g_i(0) <= 0 in the epsilon search: the upstream (delta1, delta2) witness is inconsistent.
class NonpositiveAtZero : public Error {
public:
    explicit NonpositiveAtZero(int which);
    int which;  // 1, 2 or 3
};

class NonpositiveDensity : public Error {
public:
    NonpositiveDensity(std::size_t cell, double value);
    std::size_t cell;
    double value;
};

class DegenerateWindow : public Error {
public:
    using Error::Error;
};

class ConfigError : public Error {
public:
    ConfigError(std::string message, int line, std::string field);
    int line;           // 0 when not tied to a source line
    std::string field;  // empty when not tied to a field
};

}  // namespace ccs

#endif
