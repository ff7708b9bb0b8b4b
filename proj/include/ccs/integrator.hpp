#ifndef CCS_INTEGRATOR_HPP
#define CCS_INTEGRATOR_HPP

#include <functional>

#include "ccs/diagnostics.hpp"
#include "ccs/domain.hpp"
#include "ccs/field.hpp"
#include "ccs/params.hpp"

namespace ccs {

// IMEX scheme: implicit backward-Euler diffusion, explicit donor-cell
// chemotaxis and explicit kinetics; w re-solved every step.
struct SchemeConfig {
    double dt = 1e-2;     // upper bound on the step
    double t_end = 1.0;
    double safety = 0.5;  // CFL safety factor in (0, 1]
    bool adaptive = true; // cap dt by cfl_dt each step
    int snapshot_every = 10;  // diagnostics cadence in steps (>= 1)
    double elliptic_tol = 1e-10;
};

// safety * min(advective bound, reaction bound). Diffusion is implicit and
// imposes no restriction. +inf when w is constant and the fields are zero.
double cfl_dt(const FieldState& state, const ModelParams& params,
              const Domain& grid, double safety);

// One IMEX step of size min(cfg.dt, cfl_dt) (never limited by t_end; the run
// loop stops at the first t >= t_end so checkpoint prefixes resume bitwise).
// Requires state.w consistent with (u, v); returns the state with w refreshed.
FieldState step(const FieldState& state, const ModelParams& params,
                const Domain& grid, const SchemeConfig& cfg);

struct Probes {
    // Called on every sampled state (including the initial one).
    std::function<void(const FieldState&, const Domain&)> on_sample;
};

struct RunResult {
    TimeSeries series;
    FieldState final_state;
};

// Advance to t_end, sampling diagnostics every snapshot_every steps.
// Initial data must be nonnegative and not identically zero per species.
RunResult run(FieldState initial, const ModelParams& params, const Domain& grid,
              const SchemeConfig& cfg, const DiagnosticsSetup& diag,
              const Probes& probes = {});

}  // namespace ccs

#endif
