#include "ccs/ode_reference.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>

namespace ccs {

namespace {

struct Deriv {
    double du, dv;
};

Deriv kinetics(double u, double v, const ModelParams& p) {
    return {p.mu1 * u * (1.0 - u - p.a1 * v), p.mu2 * v * (1.0 - p.a2 * u - v)};
}

double clamp_roundoff(double x) {
    return (x < 0.0 && x > -1e-14) ? 0.0 : x;
}

}  // namespace

OdeTrajectory rk4_integrate(OdeState initial, const ModelParams& p, double dt,
                            double t_end) {
    OdeTrajectory traj;
    OdeState s = initial;
    traj.points.push_back(s);
    const long steps = std::lround((t_end - initial.t) / dt);
    for (long k = 0; k < steps; ++k) {
        const Deriv k1 = kinetics(s.u, s.v, p);
        const Deriv k2 = kinetics(s.u + 0.5 * dt * k1.du, s.v + 0.5 * dt * k1.dv, p);
        const Deriv k3 = kinetics(s.u + 0.5 * dt * k2.du, s.v + 0.5 * dt * k2.dv, p);
        const Deriv k4 = kinetics(s.u + dt * k3.du, s.v + dt * k3.dv, p);
        s.u += dt / 6.0 * (k1.du + 2.0 * k2.du + 2.0 * k3.du + k4.du);
        s.v += dt / 6.0 * (k1.dv + 2.0 * k2.dv + 2.0 * k3.dv + k4.dv);
        s.u = clamp_roundoff(s.u);
        s.v = clamp_roundoff(s.v);
        s.t = initial.t + (k + 1) * dt;
        traj.points.push_back(s);
    }
    return traj;
}

void write_trajectory_csv(std::ostream& os, const OdeTrajectory& traj,
                          const ModelParams& p) {
    os << "t,u,v,w\n";
    char buf[160];
    for (const auto& s : traj.points) {
        std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%.17g\n", s.t, s.u, s.v,
                      ode_w(s, p));
        os << buf;
    }
}

}  // namespace ccs
