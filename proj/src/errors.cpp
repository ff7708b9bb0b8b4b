#include "ccs/errors.hpp"

#include <sstream>

namespace ccs {

namespace {

std::string fmt(const char* what, double v) {
    std::ostringstream os;
    os << what << v;
    return os.str();
}

}  // namespace

NoConvergence::NoConvergence(int iterations_, double residual_)
    : Error("linear solve did not converge after " + std::to_string(iterations_) +
            fmt(" iterations, residual ", residual_)),
      iterations(iterations_),
      residual(residual_) {}

PositivityLoss::PositivityLoss(std::size_t cell_, double value_)
    : Error(fmt("density went negative in cell " + std::to_string(cell_) + ": ",
                value_)),
      cell(cell_),
      value(value_) {}

InfeasibleDelta1::InfeasibleDelta1(double delta1_)
    : Error(fmt("delta1 violates 4 delta1 - a1 a2 (1+delta1)^2 > 0: ", delta1_)),
      delta1(delta1_) {}

NonpositiveAtZero::NonpositiveAtZero(int which_)
    : Error("g" + std::to_string(which_) +
            "(0) <= 0: inconsistent upstream witness"),
      which(which_) {}

NonpositiveDensity::NonpositiveDensity(std::size_t cell_, double value_)
    : Error(fmt("nonpositive density in cell " + std::to_string(cell_) + ": ",
                value_)),
      cell(cell_),
      value(value_) {}

ConfigError::ConfigError(std::string message, int line_, std::string field_)
    : Error(line_ > 0 ? "config line " + std::to_string(line_) + ": " + message
                      : "config: " + message),
      line(line_),
      field(std::move(field_)) {}

}  // namespace ccs
