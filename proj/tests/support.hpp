#ifndef CCS_TESTS_SUPPORT_HPP
#define CCS_TESTS_SUPPORT_HPP

#include <algorithm>
#include <cmath>

#include "ccs/params.hpp"
#include "ccs/rng.hpp"

namespace ccs::testing {

inline ModelParams all_ones() { return {1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1}; }

// log-uniform in [lo, hi]
inline double log_uniform(SplitMix64& rng, double lo, double hi) {
    return std::exp(rng.uniform(std::log(lo), std::log(hi)));
}

inline ModelParams random_params(SplitMix64& rng, double lo = 0.05,
                                 double hi = 20.0) {
    ModelParams p{};
    p.d1 = log_uniform(rng, lo, hi);
    p.d2 = log_uniform(rng, lo, hi);
    p.d3 = log_uniform(rng, lo, hi);
    p.chi1 = log_uniform(rng, lo, hi);
    p.chi2 = log_uniform(rng, lo, hi);
    p.mu1 = log_uniform(rng, lo, hi);
    p.mu2 = log_uniform(rng, lo, hi);
    p.a1 = log_uniform(rng, lo, hi);
    p.a2 = log_uniform(rng, lo, hi);
    p.alpha = log_uniform(rng, lo, hi);
    p.beta = log_uniform(rng, lo, hi);
    p.gamma = log_uniform(rng, lo, hi);
    return p;
}

// Smallest eigenvalue of the symmetric matrix behind the quadratic form
// a x^2 + b xy + c xz + d y^2 + e yz + f z^2 (trigonometric closed form).
inline double min_eigenvalue_sym3(double a, double b, double c, double d,
                                  double e, double f) {
    const double m01 = 0.5 * b, m02 = 0.5 * c, m12 = 0.5 * e;
    const double p1 = m01 * m01 + m02 * m02 + m12 * m12;
    if (p1 == 0.0) return std::min({a, d, f});
    const double q = (a + d + f) / 3.0;
    const double p2 =
        (a - q) * (a - q) + (d - q) * (d - q) + (f - q) * (f - q) + 2.0 * p1;
    const double p = std::sqrt(p2 / 6.0);
    // B = (M - q I)/p
    const double b00 = (a - q) / p, b11 = (d - q) / p, b22 = (f - q) / p;
    const double b01 = m01 / p, b02 = m02 / p, b12 = m12 / p;
    const double detB = b00 * (b11 * b22 - b12 * b12) -
                        b01 * (b01 * b22 - b12 * b02) +
                        b02 * (b01 * b12 - b11 * b02);
    const double r = std::clamp(0.5 * detB, -1.0, 1.0);
    const double phi = std::acos(r) / 3.0;
    // eigenvalues q + 2p cos(phi + 2k pi/3); k = 1 gives the smallest
    return q + 2.0 * p * std::cos(phi + 2.0 * M_PI / 3.0);
}

}  // namespace ccs::testing

#endif
