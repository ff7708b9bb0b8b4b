#ifndef CCS_STEADY_STATE_HPP
#define CCS_STEADY_STATE_HPP

#include "ccs/params.hpp"

namespace ccs {

enum class Regime {
    Coexistence,        // a1 < 1 and a2 < 1
    Exclusion,          // a1 > 1 > a2 (or the mirrored a2 > 1 > a1)
    AlgebraicBoundary,  // a1 = 1 > a2 (or mirrored)
    OpenCase,           // a1 >= 1 and a2 >= 1: simulable, no convergence claim
};

struct SteadyState {
    Regime regime;
    // Target triple; NaN in OpenCase (no steady triple is asserted there).
    double u_star, v_star, w_star;
    // True for a2 >= 1 > a1, where the exclusion target is the u<->v mirror
    // (1, 0, alpha/gamma). Only one orientation is covered by the theory;
    // energy diagnostics stay disabled for mirrored runs.
    bool mirrored = false;

    bool has_target() const { return regime != Regime::OpenCase; }
};

// Pure; regime boundaries are exact comparisons on the stored values.
SteadyState classify_regime(const ModelParams& params);

const char* regime_name(Regime r);

}  // namespace ccs

#endif
