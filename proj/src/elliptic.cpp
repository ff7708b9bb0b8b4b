#include "ccs/elliptic.hpp"

#include <cmath>
#include <numeric>

#include "ccs/errors.hpp"

namespace ccs {

namespace {

double dot(const Field& a, const Field& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

double norm2(const Field& a) { return std::sqrt(dot(a, a)); }

}  // namespace

void apply_screened(const Field& x, Field& y, double sigma, double kappa,
                    const Domain& grid) {
    const int nx = grid.nx(), ny = grid.ny();
    const double cx = kappa / (grid.hx() * grid.hx());
    const double cy = grid.dim == 2 ? kappa / (grid.hy() * grid.hy()) : 0.0;
    y.resize(x.size());
    for (int iy = 0; iy < ny; ++iy) {
        for (int ix = 0; ix < nx; ++ix) {
            const std::size_t i = grid.index(ix, iy);
            const double c = x[i];
            // mirror ghosts: a missing neighbor contributes no flux
            double lap = 0.0;
            if (ix > 0) lap += cx * (x[i - 1] - c);
            if (ix + 1 < nx) lap += cx * (x[i + 1] - c);
            if (grid.dim == 2) {
                if (iy > 0) lap += cy * (x[i - nx] - c);
                if (iy + 1 < ny) lap += cy * (x[i + nx] - c);
            }
            y[i] = sigma * c - lap;
        }
    }
}

SolveStats solve_screened(Field& x, const Field& rhs, double sigma, double kappa,
                          const Domain& grid, double tol, int max_iter) {
    const std::size_t n = rhs.size();
    if (x.size() != n) x.assign(n, 0.0);
    if (max_iter <= 0) max_iter = 10 * static_cast<int>(grid.cell_count());

    const double rhs_norm = norm2(rhs);
    const double target = tol * (rhs_norm > 0.0 ? rhs_norm : 1.0);

    Field r(n), z(n), p(n), Ap(n);
    apply_screened(x, Ap, sigma, kappa, grid);
    for (std::size_t i = 0; i < n; ++i) r[i] = rhs[i] - Ap[i];

    // Jacobi preconditioner; the diagonal varies only between interior and
    // boundary cells but it is cheapest to build it per cell once.
    Field diag(n);
    {
        const int nx = grid.nx(), ny = grid.ny();
        const double cx = kappa / (grid.hx() * grid.hx());
        const double cy = grid.dim == 2 ? kappa / (grid.hy() * grid.hy()) : 0.0;
        for (int iy = 0; iy < ny; ++iy)
            for (int ix = 0; ix < nx; ++ix) {
                double d = sigma;
                if (ix > 0) d += cx;
                if (ix + 1 < nx) d += cx;
                if (grid.dim == 2) {
                    if (iy > 0) d += cy;
                    if (iy + 1 < ny) d += cy;
                }
                diag[grid.index(ix, iy)] = d;
            }
    }

    double res = norm2(r);
    if (res <= target) return {0, res / (rhs_norm > 0.0 ? rhs_norm : 1.0)};

    for (std::size_t i = 0; i < n; ++i) z[i] = r[i] / diag[i];
    p = z;
    double rz = dot(r, z);

    int it = 0;
    while (it < max_iter) {
        ++it;
        apply_screened(p, Ap, sigma, kappa, grid);
        const double alpha = rz / dot(p, Ap);
        for (std::size_t i = 0; i < n; ++i) x[i] += alpha * p[i];
        for (std::size_t i = 0; i < n; ++i) r[i] -= alpha * Ap[i];
        res = norm2(r);
        if (res <= target) break;
        for (std::size_t i = 0; i < n; ++i) z[i] = r[i] / diag[i];
        const double rz_next = dot(r, z);
        const double beta = rz_next / rz;
        rz = rz_next;
        for (std::size_t i = 0; i < n; ++i) p[i] = z[i] + beta * p[i];
    }
    const double rel = res / (rhs_norm > 0.0 ? rhs_norm : 1.0);
    if (res > target) throw NoConvergence(it, rel);
    return {it, rel};
}

Field solve_w(const Field& u, const Field& v, const ModelParams& params,
              const Domain& grid, double tol) {
    Field w(u.size(), 0.0);
    solve_w_into(w, u, v, params, grid, tol);
    return w;
}

SolveStats solve_w_into(Field& w, const Field& u, const Field& v,
                        const ModelParams& params, const Domain& grid,
                        double tol, int max_iter) {
    Field rhs(u.size());
    for (std::size_t i = 0; i < u.size(); ++i)
        rhs[i] = params.alpha * u[i] + params.beta * v[i];
    return solve_screened(w, rhs, params.gamma, params.d3, grid, tol, max_iter);
}

double discrete_compatibility(const Field& w, const Field& u, const Field& v,
                              const ModelParams& params, const Domain& grid) {
    const double n = static_cast<double>(w.size());
    const double mw = std::accumulate(w.begin(), w.end(), 0.0) / n;
    const double mu = std::accumulate(u.begin(), u.end(), 0.0) / n;
    const double mv = std::accumulate(v.begin(), v.end(), 0.0) / n;
    return std::abs(params.gamma * mw - params.alpha * mu - params.beta * mv);
}

}  // namespace ccs
