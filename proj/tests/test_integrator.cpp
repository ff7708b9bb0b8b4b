#include <doctest.h>

#include <cmath>
#include <cstring>
#include <filesystem>
#include <numeric>

#include "ccs/checkpoint.hpp"
#include "ccs/elliptic.hpp"
#include "ccs/errors.hpp"
#include "ccs/integrator.hpp"
#include "ccs/ode_reference.hpp"
#include "ccs/steady_state.hpp"
#include "support.hpp"

using namespace ccs;
using ccs::testing::all_ones;

namespace {

FieldState constant_state(const Domain& grid, double u0, double v0,
                          const ModelParams& p) {
    FieldState s;
    s.u.assign(grid.cell_count(), u0);
    s.v.assign(grid.cell_count(), v0);
    s.w = solve_w(s.u, s.v, p, grid, 1e-12);
    return s;
}

double max_abs(const Field& f) {
    double m = 0.0;
    for (double x : f) m = std::max(m, std::abs(x));
    return m;
}

}  // namespace

TEST_CASE("step: the coexistence constants are a discrete fixed point") {
    ModelParams p = all_ones();
    p.a1 = p.a2 = 0.5;
    p.chi1 = p.chi2 = 0.3;
    const SteadyState s = classify_regime(p);
    const Domain grid = make_domain_1d(1.0, 32);
    FieldState state = constant_state(grid, s.u_star, s.v_star, p);
    SchemeConfig cfg;
    cfg.dt = 0.05;
    cfg.elliptic_tol = 1e-12;
    for (int k = 0; k < 10; ++k) state = step(state, p, grid, cfg);
    for (double x : state.u) CHECK(std::abs(x - s.u_star) <= 1e-13);
    for (double x : state.v) CHECK(std::abs(x - s.v_star) <= 1e-13);
}

TEST_CASE("step: pure diffusion conserves discrete mass") {
    // mu and chi zeroed below the params invariant on purpose: step() is
    // exercised directly on the diffusion path alone
    ModelParams p = all_ones();
    p.mu1 = p.mu2 = 0.0;
    p.chi1 = p.chi2 = 0.0;
    const Domain grid = make_domain_1d(1.0, 64);
    FieldState state;
    state.u.assign(grid.cell_count(), 0.0);
    state.v.assign(grid.cell_count(), 1e-30);
    for (int i = 28; i < 36; ++i) state.u[i] = 1.0;  // indicator-like bump
    state.w = solve_w(state.u, state.v, p, grid, 1e-12);

    const double mass0 =
        std::accumulate(state.u.begin(), state.u.end(), 0.0) * grid.hx();
    SchemeConfig cfg;
    cfg.dt = 0.01;
    cfg.adaptive = false;
    cfg.elliptic_tol = 1e-12;
    state = step(state, p, grid, cfg);
    const double mass1 =
        std::accumulate(state.u.begin(), state.u.end(), 0.0) * grid.hx();
    CHECK(std::abs(mass1 - mass0) <= 1e-9 * mass0);
}

TEST_CASE("step: homogeneous kinetics match the ODE to O(dt^2) locally") {
    ModelParams p = all_ones();
    p.a1 = 0.5;
    p.a2 = 0.7;
    p.chi1 = p.chi2 = 1e-12;  // chemotaxis off, spatially constant anyway
    const Domain grid = make_domain_1d(1.0, 16);
    const auto local_error = [&](double dt) {
        FieldState s0 = constant_state(grid, 0.4, 0.3, p);
        SchemeConfig cfg;
        cfg.dt = dt;
        cfg.adaptive = false;
        cfg.elliptic_tol = 1e-13;
        const FieldState s1 = step(s0, p, grid, cfg);
        const auto traj = rk4_integrate({0.4, 0.3, 0.0}, p, dt, dt);
        return std::abs(s1.u[0] - traj.back().u) + std::abs(s1.v[0] - traj.back().v);
    };
    const double e1 = local_error(0.01);
    const double e2 = local_error(0.005);
    CHECK(e1 / e2 > 3.0);  // first-order split: local error ~ dt^2
    CHECK(e1 / e2 < 5.0);
}

TEST_CASE("cfl_dt") {
    ModelParams p = all_ones();
    const Domain grid = make_domain_1d(1.0, 32);

    SUBCASE("constant w leaves only the reaction bound") {
        FieldState s = constant_state(grid, 0.5, 0.5, p);
        const double dt = cfl_dt(s, p, grid, 1.0);
        const double r1 = p.mu1 * (1 + 2 * 0.5 + p.a1 * 0.5);
        const double r2 = p.mu2 * (1 + 2 * 0.5 + p.a2 * 0.5);
        CHECK(dt == doctest::Approx(1.0 / std::max(r1, r2)).epsilon(1e-12));
    }
    SUBCASE("doubling chi halves the advective bound when it is active") {
        FieldState s;
        s.u.assign(grid.cell_count(), 0.1);
        s.v.assign(grid.cell_count(), 0.1);
        for (int i = 12; i < 20; ++i) s.u[i] = 2.0;
        ModelParams q = p;
        q.chi1 = q.chi2 = 200.0;  // make advection the binding constraint
        s.w = solve_w(s.u, s.v, q, grid, 1e-12);
        const double dt1 = cfl_dt(s, q, grid, 0.5);
        q.chi1 = q.chi2 = 400.0;
        const double dt2 = cfl_dt(s, q, grid, 0.5);
        CHECK(dt1 == doctest::Approx(2.0 * dt2).epsilon(1e-12));
    }
}

TEST_CASE("step: positivity loss aborts with the offending cell") {
    ModelParams p = all_ones();
    const Domain grid = make_domain_1d(1.0, 16);
    FieldState s = constant_state(grid, 3.0, 0.5, p);
    SchemeConfig cfg;
    cfg.dt = 1.0;  // kinetics update 3 + 3(1-3-0.5) -> negative
    cfg.adaptive = false;
    CHECK_THROWS_AS(step(s, p, grid, cfg), PositivityLoss);
    cfg.adaptive = true;  // the CFL bound prevents it
    CHECK_NOTHROW(step(s, p, grid, cfg));
}

TEST_CASE("run: long case-1 run keeps positivity under the accepted dt sequence") {
    ModelParams p = all_ones();
    p.a1 = p.a2 = 0.5;
    p.chi1 = p.chi2 = 0.5;
    const Domain grid = make_domain_1d(1.0, 64);
    SplitMix64 rng(31);
    FieldState init;
    init.u.resize(grid.cell_count());
    init.v.resize(grid.cell_count());
    for (auto& x : init.u) x = 0.6 + 0.3 * rng.next_double();
    for (auto& x : init.v) x = 0.6 + 0.3 * rng.next_double();

    SchemeConfig cfg;
    cfg.dt = 0.02;  // well under the reaction bound, so exactly 1e5 steps
    cfg.t_end = 2000.0;
    cfg.snapshot_every = 1000;
    DiagnosticsSetup diag;
    diag.steady = classify_regime(p);

    std::uint64_t steps = 0;
    Probes probes;
    probes.on_sample = [&](const FieldState& s, const Domain&) {
        steps = s.step;
        for (double x : s.u) CHECK(x >= 0.0);
        for (double x : s.v) CHECK(x >= 0.0);
    };
    const RunResult rr = run(std::move(init), p, grid, cfg, diag, probes);
    CHECK(rr.final_state.step >= 99999);
    CHECK(steps >= 99000);
    // uniform boundedness after the transient in this homogeneous-limit regime
    CHECK(max_abs(rr.final_state.u) <= 1.0 + 1e-2);
    CHECK(max_abs(rr.final_state.v) <= 1.0 + 1e-2);
}

TEST_CASE("run: reflection symmetry of the data is preserved to round-off") {
    ModelParams p = all_ones();
    p.a1 = p.a2 = 0.5;
    p.chi1 = p.chi2 = 1.0;
    const Domain grid = make_domain_1d(1.0, 64);
    const int n = static_cast<int>(grid.cell_count());
    FieldState init;
    init.u.resize(n);
    init.v.resize(n);
    for (int i = 0; i < n; ++i) {
        const double x = (i + 0.5) * grid.hx();
        init.u[i] = 0.5 + 0.4 * std::cos(2 * M_PI * (x - 0.5));  // even about 1/2
        init.v[i] = 0.5 + 0.2 * std::cos(4 * M_PI * (x - 0.5));
    }
    SchemeConfig cfg;
    cfg.dt = 0.01;
    cfg.t_end = 1.0;
    DiagnosticsSetup diag;
    diag.steady = classify_regime(p);
    const RunResult rr = run(std::move(init), p, grid, cfg, diag);
    for (int i = 0; i < n / 2; ++i) {
        CHECK(std::abs(rr.final_state.u[i] - rr.final_state.u[n - 1 - i]) <= 1e-13);
        CHECK(std::abs(rr.final_state.v[i] - rr.final_state.v[n - 1 - i]) <= 1e-13);
    }
}

TEST_CASE("run: spatially constant data stays spatially constant") {
    ModelParams p = all_ones();
    p.a1 = 0.3;
    p.a2 = 0.6;
    p.chi1 = 2.0;
    p.chi2 = 3.0;
    const Domain grid = make_domain_2d(1.0, 1.0, 8, 8);
    FieldState init;
    init.u.assign(grid.cell_count(), 0.7);
    init.v.assign(grid.cell_count(), 0.4);
    SchemeConfig cfg;
    cfg.dt = 0.02;
    cfg.t_end = 2.0;
    DiagnosticsSetup diag;
    diag.steady = classify_regime(p);
    const RunResult rr = run(std::move(init), p, grid, cfg, diag);
    const auto spread = [](const Field& f) {
        const auto [lo, hi] = std::minmax_element(f.begin(), f.end());
        return *hi - *lo;
    };
    CHECK(spread(rr.final_state.u) <= 1e-12);
    CHECK(spread(rr.final_state.v) <= 1e-12);
}

TEST_CASE("run: t_end = 0 returns the initial diagnostics only") {
    ModelParams p = all_ones();
    const Domain grid = make_domain_1d(1.0, 16);
    FieldState init = constant_state(grid, 0.5, 0.5, p);
    SchemeConfig cfg;
    cfg.t_end = 0.0;
    DiagnosticsSetup diag;
    diag.steady = classify_regime(p);
    const RunResult rr = run(std::move(init), p, grid, cfg, diag);
    CHECK(rr.series.rows.size() == 1);
    CHECK(rr.final_state.step == 0);
}

TEST_CASE("run rejects inadmissible initial data") {
    ModelParams p = all_ones();
    const Domain grid = make_domain_1d(1.0, 16);
    FieldState init;
    init.u.assign(grid.cell_count(), 0.0);  // identically zero species
    init.v.assign(grid.cell_count(), 1.0);
    SchemeConfig cfg;
    DiagnosticsSetup diag;
    diag.steady = classify_regime(p);
    CHECK_THROWS_AS(run(std::move(init), p, grid, cfg, diag), Error);
}

TEST_CASE("checkpoint: write/read round-trip is bitwise") {
    const Domain grid = make_domain_2d(1.0, 2.0, 8, 6);
    SplitMix64 rng(33);
    FieldState s;
    s.u.resize(grid.cell_count());
    s.v.resize(grid.cell_count());
    s.w.resize(grid.cell_count());
    for (auto& x : s.u) x = rng.next_double();
    for (auto& x : s.v) x = rng.next_double();
    for (auto& x : s.w) x = rng.next_double();
    s.t = 1.2345678901234567;
    s.step = 4242;

    const auto path = std::filesystem::temp_directory_path() / "ccs_ckpt_test.bin";
    write_checkpoint(path, s, grid);
    const Checkpoint cp = read_checkpoint(path);
    CHECK(cp.domain.dim == 2);
    CHECK(cp.domain.cells == grid.cells);
    CHECK(cp.state.step == s.step);
    CHECK(std::memcmp(&cp.state.t, &s.t, sizeof(double)) == 0);
    CHECK(std::memcmp(cp.state.u.data(), s.u.data(), s.u.size() * 8) == 0);
    CHECK(std::memcmp(cp.state.w.data(), s.w.data(), s.w.size() * 8) == 0);
    std::filesystem::remove(path);
}

TEST_CASE("run: resume from a checkpoint continues bitwise") {
    ModelParams p = all_ones();
    p.a1 = p.a2 = 0.5;
    p.chi1 = p.chi2 = 0.4;
    const Domain grid = make_domain_1d(1.0, 48);
    SplitMix64 rng(34);
    FieldState init;
    init.u.resize(grid.cell_count());
    init.v.resize(grid.cell_count());
    for (auto& x : init.u) x = 0.5 + 0.2 * rng.next_double();
    for (auto& x : init.v) x = 0.5 + 0.2 * rng.next_double();

    SchemeConfig cfg;
    cfg.dt = 0.02;
    cfg.snapshot_every = 5;
    DiagnosticsSetup diag;
    diag.steady = classify_regime(p);

    cfg.t_end = 3.0;
    const RunResult full = run(init, p, grid, cfg, diag);

    cfg.t_end = 1.3;  // not on the sampling cadence on purpose
    const RunResult part1 = run(init, p, grid, cfg, diag);
    cfg.t_end = 3.0;
    const RunResult part2 = run(part1.final_state, p, grid, cfg, diag);

    REQUIRE(full.final_state.u.size() == part2.final_state.u.size());
    CHECK(std::memcmp(full.final_state.u.data(), part2.final_state.u.data(),
                      full.final_state.u.size() * 8) == 0);
    CHECK(std::memcmp(full.final_state.v.data(), part2.final_state.v.data(),
                      full.final_state.v.size() * 8) == 0);
    CHECK(std::memcmp(full.final_state.w.data(), part2.final_state.w.data(),
                      full.final_state.w.size() * 8) == 0);
    CHECK(full.final_state.step == part2.final_state.step);

    // the sampled rows concatenate into the uninterrupted series
    std::vector<SampleRow> merged = part1.series.rows;
    for (const auto& r : part2.series.rows)
        if (merged.empty() || r.step > merged.back().step) merged.push_back(r);
    REQUIRE(merged.size() == full.series.rows.size());
    for (std::size_t i = 0; i < merged.size(); ++i) {
        CHECK(merged[i].step == full.series.rows[i].step);
        CHECK(std::memcmp(&merged[i].t, &full.series.rows[i].t, sizeof(double)) == 0);
        CHECK(std::memcmp(&merged[i].l2_u, &full.series.rows[i].l2_u,
                          sizeof(double)) == 0);
    }
}
