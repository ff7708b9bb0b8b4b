#include "ccs/steady_state.hpp"

#include <limits>

namespace ccs {

SteadyState classify_regime(const ModelParams& p) {
    constexpr double nan = std::numeric_limits<double>::quiet_NaN();
    SteadyState s{};

    if (p.a1 < 1.0 && p.a2 < 1.0) {
        s.regime = Regime::Coexistence;
        const double den = 1.0 - p.a1 * p.a2;
        s.u_star = (1.0 - p.a1) / den;
        s.v_star = (1.0 - p.a2) / den;
        s.w_star = (p.alpha * s.u_star + p.beta * s.v_star) / p.gamma;
        return s;
    }
    if (p.a1 >= 1.0 && p.a2 >= 1.0) {
        s.regime = Regime::OpenCase;
        s.u_star = s.v_star = s.w_star = nan;
        return s;
    }
    if (p.a1 >= 1.0) {  // a1 >= 1 > a2: species u dies out
        s.regime = p.a1 > 1.0 ? Regime::Exclusion : Regime::AlgebraicBoundary;
        s.u_star = 0.0;
        s.v_star = 1.0;
        s.w_star = p.beta / p.gamma;
        return s;
    }
    // a2 >= 1 > a1: mirror orientation; the paper states only the other one.
    s.regime = p.a2 > 1.0 ? Regime::Exclusion : Regime::AlgebraicBoundary;
    s.mirrored = true;
    s.u_star = 1.0;
    s.v_star = 0.0;
    s.w_star = p.alpha / p.gamma;
    return s;
}

const char* regime_name(Regime r) {
    switch (r) {
        case Regime::Coexistence: return "coexistence";
        case Regime::Exclusion: return "exclusion";
        case Regime::AlgebraicBoundary: return "algebraic_boundary";
        case Regime::OpenCase: return "open_case";
    }
    return "?";
}

}  // namespace ccs
