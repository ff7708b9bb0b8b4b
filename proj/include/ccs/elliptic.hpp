#ifndef CCS_ELLIPTIC_HPP
#define CCS_ELLIPTIC_HPP

#include "ccs/domain.hpp"
#include "ccs/field.hpp"
#include "ccs/params.hpp"

namespace ccs {

// y = (sigma I - kappa Lap_h) x with the conservative cell-centered stencil
// and mirror-ghost Neumann boundaries. sigma > 0, kappa >= 0 give an SPD
// M-matrix, so the same kernel backs both the w-equation and the implicit
// diffusion solves.
void apply_screened(const Field& x, Field& y, double sigma, double kappa,
                    const Domain& grid);

struct SolveStats {
    int iterations = 0;
    double residual = 0.0;  // relative to ||rhs||, absolute when rhs == 0
};

// Jacobi-preconditioned CG, matrix-free. x is the initial guess on entry and
// the solution on exit. max_iter <= 0 selects the default 10 * cell count.
// Throws NoConvergence when the budget is exhausted.
SolveStats solve_screened(Field& x, const Field& rhs, double sigma, double kappa,
                          const Domain& grid, double tol, int max_iter = 0);

// Chemical concentration: gamma w - d3 Lap w = alpha u + beta v.
Field solve_w(const Field& u, const Field& v, const ModelParams& params,
              const Domain& grid, double tol = 1e-10);

// Warm-start variant used by the integrator (w is guess in, solution out).
SolveStats solve_w_into(Field& w, const Field& u, const Field& v,
                        const ModelParams& params, const Domain& grid,
                        double tol, int max_iter = 0);

// |gamma mean(w) - alpha mean(u) - beta mean(v)|. The conservative stencil
// sums to zero over the grid, so this equals the mean residual of the solve.
double discrete_compatibility(const Field& w, const Field& u, const Field& v,
                              const ModelParams& params, const Domain& grid);

}  // namespace ccs

#endif
