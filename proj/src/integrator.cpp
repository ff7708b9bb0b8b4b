#include "ccs/integrator.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "ccs/elliptic.hpp"
#include "ccs/errors.hpp"

namespace ccs {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double max_abs(const Field& f) {
    double m = 0.0;
    for (double x : f) m = std::max(m, std::abs(x));
    return m;
}

// Largest |w-gradient| over interior faces, per axis.
double max_face_gradient(const Field& w, const Domain& grid, int axis) {
    const int nx = grid.nx(), ny = grid.ny();
    double m = 0.0;
    if (axis == 0) {
        const double inv_h = 1.0 / grid.hx();
        for (int iy = 0; iy < ny; ++iy)
            for (int ix = 0; ix + 1 < nx; ++ix) {
                const std::size_t i = grid.index(ix, iy);
                m = std::max(m, std::abs(w[i + 1] - w[i]) * inv_h);
            }
    } else {
        const double inv_h = 1.0 / grid.hy();
        for (int iy = 0; iy + 1 < ny; ++iy)
            for (int ix = 0; ix < nx; ++ix) {
                const std::size_t i = grid.index(ix, iy);
                m = std::max(m, std::abs(w[i + nx] - w[i]) * inv_h);
            }
    }
    return m;
}

// Donor-cell flux update: rho -= dt * div(rho * chi grad w), no-flux faces at
// the boundary. Fluxes are evaluated on the pre-update field.
void advect_donor_cell(Field& out, const Field& rho, const Field& w, double chi,
                       double dt, const Domain& grid) {
    const int nx = grid.nx(), ny = grid.ny();
    out = rho;
    {
        const double inv_h = 1.0 / grid.hx();
        for (int iy = 0; iy < ny; ++iy)
            for (int ix = 0; ix + 1 < nx; ++ix) {
                const std::size_t i = grid.index(ix, iy);
                const double vel = chi * (w[i + 1] - w[i]) * inv_h;
                const double flux = vel > 0.0 ? vel * rho[i] : vel * rho[i + 1];
                out[i] -= dt * flux * inv_h;
                out[i + 1] += dt * flux * inv_h;
            }
    }
    if (grid.dim == 2) {
        const double inv_h = 1.0 / grid.hy();
        for (int iy = 0; iy + 1 < ny; ++iy)
            for (int ix = 0; ix < nx; ++ix) {
                const std::size_t i = grid.index(ix, iy);
                const double vel = chi * (w[i + nx] - w[i]) * inv_h;
                const double flux = vel > 0.0 ? vel * rho[i] : vel * rho[i + nx];
                out[i] -= dt * flux * inv_h;
                out[i + nx] += dt * flux * inv_h;
            }
    }
}

void clamp_or_throw(Field& f) {
    for (std::size_t i = 0; i < f.size(); ++i) {
        if (f[i] < 0.0) {
            if (f[i] < -1e-12) throw PositivityLoss(i, f[i]);
            f[i] = 0.0;
        }
    }
}

}  // namespace

double cfl_dt(const FieldState& state, const ModelParams& p, const Domain& grid,
              double safety) {
    const double chi_max = std::max(p.chi1, p.chi2);
    double advective_rate = chi_max * max_face_gradient(state.w, grid, 0) / grid.hx();
    if (grid.dim == 2)
        advective_rate += chi_max * max_face_gradient(state.w, grid, 1) / grid.hy();
    const double dt_adv = advective_rate > 0.0 ? 1.0 / advective_rate : kInf;

    const double umax = max_abs(state.u), vmax = max_abs(state.v);
    const double r1 = p.mu1 * (1.0 + 2.0 * umax + p.a1 * vmax);
    const double r2 = p.mu2 * (1.0 + 2.0 * vmax + p.a2 * umax);
    const double dt_react = 1.0 / std::max(r1, r2);

    return safety * std::min(dt_adv, dt_react);
}

FieldState step(const FieldState& state, const ModelParams& p, const Domain& grid,
                const SchemeConfig& cfg) {
    double dt = cfg.dt;
    if (cfg.adaptive) dt = std::min(dt, cfl_dt(state, p, grid, cfg.safety));

    FieldState next;
    next.t = state.t + dt;
    next.step = state.step + 1;

    // explicit chemotaxis
    advect_donor_cell(next.u, state.u, state.w, p.chi1, dt, grid);
    advect_donor_cell(next.v, state.v, state.w, p.chi2, dt, grid);

    // explicit kinetics, evaluated on the advected fields simultaneously
    for (std::size_t i = 0; i < next.u.size(); ++i) {
        const double u = next.u[i], v = next.v[i];
        next.u[i] = u + dt * p.mu1 * u * (1.0 - u - p.a1 * v);
        next.v[i] = v + dt * p.mu2 * v * (1.0 - p.a2 * u - v);
    }

    // implicit diffusion, warm-started from the explicit stage
    {
        Field rhs = next.u;
        solve_screened(next.u, rhs, 1.0, dt * p.d1, grid, cfg.elliptic_tol);
        rhs = next.v;
        solve_screened(next.v, rhs, 1.0, dt * p.d2, grid, cfg.elliptic_tol);
    }

    clamp_or_throw(next.u);
    clamp_or_throw(next.v);

    next.w = state.w;  // warm start
    solve_w_into(next.w, next.u, next.v, p, grid, cfg.elliptic_tol);
    return next;
}

RunResult run(FieldState initial, const ModelParams& p, const Domain& grid,
              const SchemeConfig& cfg, const DiagnosticsSetup& diag,
              const Probes& probes) {
    if (initial.u.size() != grid.cell_count() ||
        initial.v.size() != grid.cell_count())
        throw Error("run: field size does not match the grid");
    if (cfg.snapshot_every < 1) throw Error("run: snapshot_every must be >= 1");
    double mass_u = 0.0, mass_v = 0.0;
    for (double x : initial.u) {
        if (!(x >= 0.0)) throw Error("run: initial u must be nonnegative");
        mass_u += x;
    }
    for (double x : initial.v) {
        if (!(x >= 0.0)) throw Error("run: initial v must be nonnegative");
        mass_v += x;
    }
    if (mass_u == 0.0 || mass_v == 0.0)
        throw Error("run: initial data must not be identically zero per species");

    if (initial.w.size() != initial.u.size())
        initial.w = solve_w(initial.u, initial.v, p, grid, cfg.elliptic_tol);

    RunResult result;
    const auto sample = [&](const FieldState& s) {
        const SampleRow* prev =
            result.series.rows.empty() ? nullptr : &result.series.rows.back();
        result.series.rows.push_back(sample_state(s, p, grid, diag, prev));
        if (probes.on_sample) probes.on_sample(s, grid);
    };

    FieldState state = std::move(initial);
    if (state.step % static_cast<std::uint64_t>(cfg.snapshot_every) == 0)
        sample(state);

    while (state.t < cfg.t_end) {
        state = step(state, p, grid, cfg);
        if (state.step % static_cast<std::uint64_t>(cfg.snapshot_every) == 0)
            sample(state);
    }

    result.final_state = std::move(state);
    return result;
}

}  // namespace ccs
