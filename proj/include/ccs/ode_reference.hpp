#ifndef CCS_ODE_REFERENCE_HPP
#define CCS_ODE_REFERENCE_HPP

#include <iosfwd>
#include <vector>

#include "ccs/params.hpp"

namespace ccs {

// Spatially homogeneous reduction: the competition kinetics with w slaved
// algebraically to (u, v). Serves as an independent oracle for the PDE solver,
// integrated with classical RK4 (a different method family on purpose).
struct OdeState {
    double u = 0.0;
    double v = 0.0;
    double t = 0.0;
};

struct OdeTrajectory {
    std::vector<OdeState> points;

    const OdeState& back() const { return points.back(); }
};

// u' = mu1 u (1 - u - a1 v), v' = mu2 v (1 - a2 u - v); fixed-step RK4.
// Round-off negatives above -1e-14 are clamped to 0.
OdeTrajectory rk4_integrate(OdeState initial, const ModelParams& params,
                            double dt, double t_end);

inline double ode_w(const OdeState& s, const ModelParams& p) {
    return (p.alpha * s.u + p.beta * s.v) / p.gamma;
}

// CSV columns: t,u,v,w
void write_trajectory_csv(std::ostream& os, const OdeTrajectory& traj,
                          const ModelParams& params);

}  // namespace ccs

#endif
