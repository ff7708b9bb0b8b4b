#include <doctest.h>

#include <cmath>
#include <vector>

#include "ccs/domain.hpp"
#include "ccs/elliptic.hpp"
#include "ccs/errors.hpp"
#include "support.hpp"

using namespace ccs;
using ccs::testing::all_ones;

namespace {

double max_abs_diff(const Field& a, const Field& b) {
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i)
        m = std::max(m, std::abs(a[i] - b[i]));
    return m;
}

// max-norm error of the 1-D manufactured solution w = cos(pi x) with
// source (d3 pi^2 + gamma) cos(pi x); Neumann-compatible on [0, 1]
double mms_error_1d(int n, const ModelParams& p) {
    const Domain grid = make_domain_1d(1.0, n);
    Field u(grid.cell_count()), zero(grid.cell_count(), 0.0);
    for (int i = 0; i < n; ++i) {
        const double x = (i + 0.5) * grid.hx();
        u[i] = (p.d3 * M_PI * M_PI + p.gamma) * std::cos(M_PI * x) / p.alpha;
    }
    const Field w = solve_w(u, zero, p, grid, 1e-12);
    double err = 0.0;
    for (int i = 0; i < n; ++i) {
        const double x = (i + 0.5) * grid.hx();
        err = std::max(err, std::abs(w[i] - std::cos(M_PI * x)));
    }
    return err;
}

}  // namespace

TEST_CASE("solve_w: zero source gives the zero field") {
    const Domain grid = make_domain_1d(1.0, 32);
    const Field zero(grid.cell_count(), 0.0);
    const Field w = solve_w(zero, zero, all_ones(), grid);
    for (double x : w) CHECK(x == 0.0);
}

TEST_CASE("solve_w: constants are exact (kernel of the Laplacian)") {
    ModelParams p = all_ones();
    p.alpha = 2.0;
    p.beta = 3.0;
    p.gamma = 4.0;
    SUBCASE("1-D") {
        const Domain grid = make_domain_1d(2.0, 17);
        const Field u(grid.cell_count(), 0.7), v(grid.cell_count(), 0.2);
        const Field w = solve_w(u, v, p, grid, 1e-12);
        const double expected = (2.0 * 0.7 + 3.0 * 0.2) / 4.0;
        for (double x : w) CHECK(x == doctest::Approx(expected).epsilon(1e-12));
    }
    SUBCASE("2-D") {
        const Domain grid = make_domain_2d(1.0, 1.5, 8, 12);
        const Field u(grid.cell_count(), 0.7), v(grid.cell_count(), 0.2);
        const Field w = solve_w(u, v, p, grid, 1e-12);
        const double expected = (2.0 * 0.7 + 3.0 * 0.2) / 4.0;
        for (double x : w) CHECK(x == doctest::Approx(expected).epsilon(1e-12));
    }
}

TEST_CASE("solve_w: 1-D manufactured solution converges at second order") {
    ModelParams p = all_ones();
    p.d3 = 0.7;
    p.gamma = 1.3;
    double prev = mms_error_1d(32, p);
    for (int n : {64, 128, 256}) {
        const double err = mms_error_1d(n, p);
        const double ratio = prev / err;
        CHECK(ratio > 3.4);
        CHECK(ratio < 4.6);
        prev = err;
    }
}

TEST_CASE("solve_w: 2-D manufactured solution cos(pi x) cos(pi y)") {
    ModelParams p = all_ones();
    const auto err2d = [&](int n) {
        const Domain grid = make_domain_2d(1.0, 1.0, n, n);
        Field u(grid.cell_count()), zero(grid.cell_count(), 0.0);
        for (int iy = 0; iy < n; ++iy)
            for (int ix = 0; ix < n; ++ix) {
                const double x = (ix + 0.5) * grid.hx();
                const double y = (iy + 0.5) * grid.hy();
                u[grid.index(ix, iy)] = (p.d3 * 2.0 * M_PI * M_PI + p.gamma) *
                                        std::cos(M_PI * x) * std::cos(M_PI * y);
            }
        const Field w = solve_w(u, zero, p, grid, 1e-12);
        double err = 0.0;
        for (int iy = 0; iy < n; ++iy)
            for (int ix = 0; ix < n; ++ix) {
                const double x = (ix + 0.5) * grid.hx();
                const double y = (iy + 0.5) * grid.hy();
                err = std::max(err, std::abs(w[grid.index(ix, iy)] -
                                             std::cos(M_PI * x) * std::cos(M_PI * y)));
            }
        return err;
    };
    const double ratio = err2d(16) / err2d(32);
    CHECK(ratio > 3.4);
    CHECK(ratio < 4.6);
}

TEST_CASE("solve_w: symmetric under u<->v with alpha<->beta") {
    const Domain grid = make_domain_1d(1.0, 48);
    SplitMix64 rng(21);
    Field u(grid.cell_count()), v(grid.cell_count());
    for (auto& x : u) x = rng.next_double();
    for (auto& x : v) x = rng.next_double();
    ModelParams p = all_ones();
    p.alpha = 1.7;
    p.beta = 0.4;
    ModelParams q = p;
    std::swap(q.alpha, q.beta);
    const Field w1 = solve_w(u, v, p, grid, 1e-11);
    const Field w2 = solve_w(v, u, q, grid, 1e-11);
    CHECK(max_abs_diff(w1, w2) == 0.0);  // identical arithmetic, identical result
}

TEST_CASE("solve_w: discrete maximum principle for nonnegative sources") {
    const Domain grid = make_domain_2d(1.0, 1.0, 16, 16);
    ModelParams p = all_ones();
    p.gamma = 2.5;
    SplitMix64 rng(22);
    for (int rep = 0; rep < 20; ++rep) {
        Field u(grid.cell_count()), v(grid.cell_count());
        for (auto& x : u) x = rng.next_double();
        for (auto& x : v) x = rng.next_double();
        const Field w = solve_w(u, v, p, grid, 1e-11);
        double src_max = 0.0;
        for (std::size_t i = 0; i < u.size(); ++i)
            src_max = std::max(src_max, p.alpha * u[i] + p.beta * v[i]);
        for (double x : w) {
            CHECK(x >= -1e-12);
            CHECK(x <= src_max / p.gamma + 1e-12);
        }
    }
}

TEST_CASE("discrete_compatibility tracks the solver tolerance") {
    const Domain grid = make_domain_1d(1.0, 64);
    ModelParams p = all_ones();
    p.alpha = 1.2;
    p.beta = 0.8;
    p.gamma = 1.5;
    SplitMix64 rng(23);
    SUBCASE("constant fields give a round-off defect") {
        const Field u(grid.cell_count(), 0.4), v(grid.cell_count(), 0.6);
        const Field w = solve_w(u, v, p, grid, 1e-12);
        CHECK(discrete_compatibility(w, u, v, p, grid) < 1e-12);
    }
    SUBCASE("random nonnegative fields at tol 1e-10 stay under 1e-9") {
        for (int rep = 0; rep < 20; ++rep) {
            Field u(grid.cell_count()), v(grid.cell_count());
            for (auto& x : u) x = rng.next_double();
            for (auto& x : v) x = rng.next_double();
            const Field w = solve_w(u, v, p, grid, 1e-10);
            CHECK(discrete_compatibility(w, u, v, p, grid) <= 1e-9);
        }
    }
    SUBCASE("a deliberately unconverged solve is the negative control") {
        Field u(grid.cell_count()), v(grid.cell_count());
        for (auto& x : u) x = rng.next_double();
        for (auto& x : v) x = rng.next_double();
        Field w(grid.cell_count(), 0.0);
        try {
            solve_w_into(w, u, v, p, grid, 1e-10, 1);
            FAIL("expected NoConvergence");
        } catch (const NoConvergence& e) {
            CHECK(e.iterations == 1);
            CHECK(e.residual > 0.0);
        }
        // w holds the 1-iteration iterate; its defect is far above tolerance
        CHECK(discrete_compatibility(w, u, v, p, grid) > 1e-6);
    }
}
