#ifndef CCS_FIELD_HPP
#define CCS_FIELD_HPP

#include <cstdint>
#include <vector>

namespace ccs {

using Field = std::vector<double>;

// Discrete state of one run. Outside the integrator, w is always the exact
// elliptic solve for the current (u, v).
struct FieldState {
    Field u, v, w;
    double t = 0.0;
    std::uint64_t step = 0;
};

}  // namespace ccs

#endif
