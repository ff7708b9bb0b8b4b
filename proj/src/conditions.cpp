#include "ccs/conditions.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "ccs/errors.hpp"

namespace ccs {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// num / (den)_+ with the convention that a vanishing positive part removes
// the constraint entirely.
double ratio_over_positive_part(double num, double den) {
    return den > 0.0 ? num / den : kInf;
}

double cross_term(double a1, double a2, double alpha, double beta, double delta1) {
    return alpha * alpha * a1 * delta1 + beta * beta * a2 -
           alpha * beta * a1 * a2 * (1.0 + delta1);
}

// 4 delta1 - a1 a2 (1 + delta1)^2
double delta1_margin(double a1a2, double delta1) {
    const double s = 1.0 + delta1;
    return 4.0 * delta1 - a1a2 * s * s;
}

double golden_minimize(double lo, double hi, const auto& score) {
    constexpr double invphi = 0.6180339887498949;
    double a = lo, b = hi;
    double x1 = b - invphi * (b - a);
    double x2 = a + invphi * (b - a);
    double f1 = score(x1), f2 = score(x2);
    for (int it = 0; it < 80; ++it) {
        if (f1 < f2) {
            b = x2; x2 = x1; f2 = f1;
            x1 = b - invphi * (b - a);
            f1 = score(x1);
        } else {
            a = x1; x1 = x2; f1 = f2;
            x2 = a + invphi * (b - a);
            f2 = score(x2);
        }
    }
    return 0.5 * (a + b);
}

std::vector<double> log_grid(const Interval& iv, int n) {
    std::vector<double> pts;
    pts.reserve(n);
    const double la = std::log(iv.lo), lb = std::log(iv.hi);
    for (int k = 0; k < n; ++k) {
        // strictly inside the open interval
        pts.push_back(std::exp(la + (lb - la) * (k + 0.5) / n));
    }
    return pts;
}

}  // namespace

BoundednessResult check_boundedness(const ModelParams& p, int n) {
    BoundednessResult r{};
    const double factor = n > 2 ? static_cast<double>(n) * p.d3 / (n - 2) : kInf;
    r.threshold1 = factor * std::min(1.0 / p.alpha, p.a1 / p.beta);
    r.threshold2 = factor * std::min(1.0 / p.beta, p.a2 / p.alpha);
    const double ratio1 = p.chi1 / p.mu1;
    const double ratio2 = p.chi2 / p.mu2;
    r.margin1 = r.threshold1 - ratio1;
    r.margin2 = r.threshold2 - ratio2;
    r.species1_ok = ratio1 < r.threshold1;
    r.species2_ok = ratio2 < r.threshold2;
    r.ok = r.species1_ok && r.species2_ok;
    return r;
}

LpInterval lp_interval(const ModelParams& p, int n, int species) {
    LpInterval iv{};
    iv.lower = 0.5 * n;
    if (species == 1) {
        iv.upper = std::min(
            ratio_over_positive_part(p.alpha * p.chi1, p.alpha * p.chi1 - p.d3 * p.mu1),
            ratio_over_positive_part(p.beta * p.chi1,
                                     p.beta * p.chi1 - p.a1 * p.d3 * p.mu1));
    } else if (species == 2) {
        iv.upper = std::min(
            ratio_over_positive_part(p.beta * p.chi2, p.beta * p.chi2 - p.d3 * p.mu2),
            ratio_over_positive_part(p.alpha * p.chi2,
                                     p.alpha * p.chi2 - p.a2 * p.d3 * p.mu2));
    } else {
        throw Error("lp_interval: species must be 1 or 2");
    }
    return iv;
}

bool quadratic_form_nonneg(const QuadraticFormCoeffs& q) {
    if (!(q.a > 0.0)) return false;
    const double m2 = q.d - q.b * q.b / (4.0 * q.a);
    if (!(m2 > 0.0)) return false;
    const double det2 = 4.0 * q.a * q.d - q.b * q.b;  // > 0 here
    const double num = 2.0 * q.a * q.e - q.b * q.c;
    const double m3 = q.f - q.c * q.c / (4.0 * q.a) - num * num / (4.0 * q.a * det2);
    return m3 > 0.0;
}

Interval case1_feasible_delta1(double a1, double a2) {
    const double q = a1 * a2;
    if (!(q > 0.0) || q >= 1.0) return {0.0, 0.0};
    // roots of q d^2 - (4 - 2q) d + q = 0; they multiply to 1, so the small
    // root is computed as the reciprocal of the large one (no cancellation)
    const double hi = ((2.0 - q) + 2.0 * std::sqrt(1.0 - q)) / q;
    return {1.0 / hi, hi};
}

Case1Check case1_check(const ModelParams& p, double delta1) {
    const double margin = delta1_margin(p.a1 * p.a2, delta1);
    if (!(margin > 0.0)) throw InfeasibleDelta1(delta1);
    const double s = 1.0 + delta1;
    const double bracket = cross_term(p.a1, p.a2, p.alpha, p.beta, delta1);
    const double common = 1.0 - p.a1 * p.a2;
    Case1Check c{};
    c.mu1_threshold = p.chi1 * p.chi1 * s * (1.0 - p.a1) * bracket /
                      (4.0 * p.a1 * p.d1 * p.d3 * p.gamma * common * margin);
    c.mu2_threshold = p.chi2 * p.chi2 * s * (1.0 - p.a2) * bracket /
                      (4.0 * p.a2 * p.d2 * p.d3 * p.gamma * common * margin);
    c.ok = p.mu1 > c.mu1_threshold && p.mu2 > c.mu2_threshold;
    return c;
}

std::optional<double> case1_search(const ModelParams& p) {
    const Interval iv = case1_feasible_delta1(p.a1, p.a2);
    if (iv.empty()) return std::nullopt;

    const auto score = [&](double d) {
        const Case1Check c = case1_check(p, d);
        return std::max(c.mu1_threshold / p.mu1, c.mu2_threshold / p.mu2);
    };

    const auto grid = log_grid(iv, 512);
    std::size_t best = 0;
    double best_score = kInf;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const double sc = score(grid[i]);
        if (sc < best_score) {
            best_score = sc;
            best = i;
        }
    }
    const double lo = best > 0 ? grid[best - 1] : grid[best];
    const double hi = best + 1 < grid.size() ? grid[best + 1] : grid[best];
    const double refined = lo < hi ? golden_minimize(lo, hi, score) : grid[best];

    if (case1_check(p, refined).ok) return refined;
    for (double d : grid)
        if (case1_check(p, d).ok) return d;
    return std::nullopt;
}

Case2Check case2_check(const ModelParams& p, double delta1, double a1p) {
    const double margin = delta1_margin(a1p * p.a2, delta1);
    if (!(margin > 0.0)) throw InfeasibleDelta1(delta1);
    const double bracket = cross_term(a1p, p.a2, p.alpha, p.beta, delta1);
    Case2Check c{};
    c.mu2_threshold = p.chi2 * p.chi2 * delta1 * bracket /
                      (4.0 * p.a2 * p.d2 * p.d3 * p.gamma * margin);
    c.ok = p.mu2 > c.mu2_threshold;
    c.a1p_above_1 = a1p > 1.0;
    return c;
}

std::optional<Case2Witness> case2_search(const ModelParams& p,
                                         bool require_a1p_above_1) {
    if (p.a1 < 1.0) return std::nullopt;
    if (require_a1p_above_1 && !(p.a1 > 1.0)) return std::nullopt;

    constexpr int kA1pPoints = 64;
    constexpr int kDeltaPoints = 128;

    std::vector<double> a1ps;
    if (p.a1 == 1.0) {
        a1ps.push_back(1.0);
    } else if (require_a1p_above_1) {
        for (int j = 1; j <= kA1pPoints; ++j)
            a1ps.push_back(1.0 + (p.a1 - 1.0) * j / kA1pPoints);
    } else {
        for (int j = 0; j < kA1pPoints; ++j)
            a1ps.push_back(1.0 + (p.a1 - 1.0) * j / (kA1pPoints - 1));
    }

    for (double a1p : a1ps) {
        const Interval iv = case1_feasible_delta1(a1p, p.a2);
        if (iv.empty()) continue;
        for (double d : log_grid(iv, kDeltaPoints)) {
            if (case2_check(p, d, a1p).ok) return Case2Witness{d, a1p};
        }
    }
    return std::nullopt;
}

std::optional<Interval> delta2_interval(const ModelParams& p,
                                        const SteadyState& steady, double delta1,
                                        int which_case, double a1p) {
    const double s = 1.0 + delta1;
    Interval iv{};
    if (which_case == 1) {
        const double margin = delta1_margin(p.a1 * p.a2, delta1);
        iv.lo = std::max(steady.u_star * p.chi1 * p.chi1 / (4.0 * p.d1),
                         p.a1 * p.mu1 * steady.v_star * p.chi2 * p.chi2 /
                             (4.0 * p.d2 * p.a2 * p.mu2));
        const double num = p.d3 * p.a1 * p.mu1 * p.gamma * margin;
        if (!(num > 0.0)) return std::nullopt;
        const double den = s * cross_term(p.a1, p.a2, p.alpha, p.beta, delta1);
        iv.hi = den > 0.0 ? num / den : kInf;
    } else if (which_case == 2) {
        const double margin = delta1_margin(a1p * p.a2, delta1);
        iv.lo = a1p * p.mu1 * p.chi2 * p.chi2 * delta1 / (4.0 * p.d2 * p.a2 * p.mu2);
        const double num = p.d3 * a1p * p.mu1 * p.gamma * margin;
        if (!(num > 0.0)) return std::nullopt;
        const double den = cross_term(a1p, p.a2, p.alpha, p.beta, delta1);
        iv.hi = den > 0.0 ? num / den : kInf;
    } else {
        throw Error("delta2_interval: case must be 1 or 2");
    }
    if (iv.empty()) return std::nullopt;
    return iv;
}

double pick_delta2(const Interval& iv) {
    if (iv.lo > 0.0)
        return std::isfinite(iv.hi) ? std::sqrt(iv.lo * iv.hi) : 2.0 * iv.lo;
    return std::isfinite(iv.hi) ? 0.5 * iv.hi : 1.0;
}

namespace {

// Shared evaluation of (g1, g2, g3): the quadratic-form criterion margins for
// the energy-derivative coefficient matrix
//   a x^2 + b xy + c xz + d y^2 + e yz + f z^2,
// with x, y, z the distances of u, v, w to the target triple.
std::array<double, 3> criterion_margins(double a, double b, double c, double d,
                                        double e, double f) {
    const double g1 = a;
    if (!(a > 0.0)) return {g1, -kInf, -kInf};
    const double g2 = d - b * b / (4.0 * a);
    const double det2 = 4.0 * a * d - b * b;
    if (!(det2 > 0.0)) return {g1, g2, -kInf};
    const double num = 2.0 * a * e - b * c;
    const double g3 = f - c * c / (4.0 * a) - num * num / (4.0 * a * det2);
    return {g1, g2, g3};
}

std::optional<double> epsilon_grid_search(const ModelParams& p,
                                          const auto& g_of_eps) {
    const auto g0 = g_of_eps(0.0);
    for (int i = 0; i < 3; ++i)
        if (!(g0[i] > 0.0)) throw NonpositiveAtZero(i + 1);
    for (int k = 512; k >= 1; --k) {
        const double eps = k * p.mu1 / 1024.0;
        const auto g = g_of_eps(eps);
        if (g[0] > 0.0 && g[1] > 0.0 && g[2] > 0.0) return eps;
    }
    return std::nullopt;
}

}  // namespace

std::array<double, 3> case1_g(const ModelParams& p, double delta1, double delta2,
                              double eps) {
    const double s = 1.0 + delta1;
    return criterion_margins(p.mu1 - eps,                       // a
                             s * p.a1 * p.mu1,                  // b
                             -p.alpha * s * delta2 / p.d3,      // c
                             p.a1 * p.mu1 * delta1 / p.a2 - eps,// d
                             -p.beta * s * delta2 / p.d3,       // e
                             p.gamma * s * delta2 / p.d3 - eps);// f
}

std::array<double, 3> case2_g(const ModelParams& p, double delta1, double a1p,
                              double delta2, double eps) {
    const double s = 1.0 + delta1;
    return criterion_margins(p.mu1 - eps,
                             s * a1p * p.mu1,
                             -p.alpha * delta2 / p.d3,
                             a1p * p.mu1 * delta1 / p.a2 - eps,
                             -p.beta * delta2 / p.d3,
                             p.gamma * delta2 / p.d3 - eps);
}

std::optional<double> epsilon1_search(const ModelParams& p,
                                      const SteadyState& steady, double delta1,
                                      double delta2) {
    (void)steady;  // the g's depend on the parameters only
    return epsilon_grid_search(
        p, [&](double eps) { return case1_g(p, delta1, delta2, eps); });
}

std::optional<double> epsilon2_search(const ModelParams& p, double delta1,
                                      double a1p, double delta2) {
    return epsilon_grid_search(
        p, [&](double eps) { return case2_g(p, delta1, a1p, delta2, eps); });
}

LegacyConditions legacy_conditions(const ModelParams& p) {
    LegacyConditions lc{};

    if (p.d3 == 1.0 && p.alpha == 1.0 && p.beta == 1.0) {
        lc.pre1 = 2.0 * (p.chi1 + p.chi2) + p.a2 * p.mu1 < p.mu2 &&
                  2.0 * (p.chi1 + p.chi2) + p.a1 * p.mu2 < p.mu1;
    }

    const double r1 = p.chi1 / p.mu1, r2 = p.chi2 / p.mu2;
    const bool pre2 = r1 < p.d3 / (2.0 * p.alpha) && r1 < p.a1 * p.d3 / p.beta &&
                      r2 < p.d3 / (2.0 * p.beta) && r2 < p.a2 * p.d3 / p.alpha;
    const bool pre3 = p.a1 * p.a2 * p.d3 * p.d3 <
                      (p.d3 - 2.0 * p.alpha * r1) * (p.d3 - 2.0 * p.beta * r2);
    lc.pre23 = pre2 && pre3;

    if (p.d3 == 1.0 && p.beta == 1.0) {
        bool ok = r1 <= p.a1 && r2 < 0.5;
        if (ok) {
            // mu2 - 2 chi2 > 0 here, so the max is well defined
            const double m =
                std::max({r2, p.a2 * (p.mu2 - p.chi2) / (p.mu2 - 2.0 * p.chi2),
                          (p.alpha - p.a2) * p.chi2 / (p.mu2 - 2.0 * p.chi2)});
            ok = p.alpha * r1 + m < 1.0;
        }
        lc.stw = ok;
    }
    return lc;
}

ConditionReport evaluate_conditions(const ModelParams& params, int n,
                                    int requested_case) {
    ConditionReport r{};
    r.params = params;
    r.n = n;
    r.steady = classify_regime(params);
    r.boundedness = check_boundedness(params, n);
    r.i1 = lp_interval(params, n, 1);
    r.i2 = lp_interval(params, n, 2);
    r.legacy = legacy_conditions(params);
    r.requested_case = requested_case;

    int active = requested_case;
    if (active == 0) {
        switch (r.steady.regime) {
            case Regime::Coexistence: active = 1; break;
            case Regime::Exclusion:
            case Regime::AlgebraicBoundary:
                active = r.steady.mirrored ? 0 : 2;
                break;
            case Regime::OpenCase: active = 0; break;
        }
    }
    r.active_case = active;

    bool witnesses_ok = true;
    if (active == 1) {
        r.delta1 = case1_search(params);
        if (r.delta1) {
            r.case1 = case1_check(params, *r.delta1);
            r.delta2 = delta2_interval(params, r.steady, *r.delta1, 1);
            if (r.delta2) {
                r.delta2_upper_infinite = !std::isfinite(r.delta2->hi);
                r.delta2_pick = pick_delta2(*r.delta2);
                r.epsilon1 =
                    epsilon1_search(params, r.steady, *r.delta1, *r.delta2_pick);
            }
        }
        witnesses_ok = r.delta1 && r.delta2 && r.epsilon1;
    } else if (active == 2) {
        const bool strict = r.steady.regime == Regime::Exclusion &&
                            !r.steady.mirrored && params.a1 > 1.0;
        const auto witness = case2_search(params, strict);
        if (witness) {
            r.delta1 = witness->delta1;
            r.a1p = witness->a1p;
            r.case2 = case2_check(params, witness->delta1, witness->a1p);
            r.delta2 = delta2_interval(params, r.steady, witness->delta1, 2,
                                       witness->a1p);
            if (r.delta2) {
                r.delta2_upper_infinite = !std::isfinite(r.delta2->hi);
                r.delta2_pick = pick_delta2(*r.delta2);
                r.epsilon1 = epsilon2_search(params, witness->delta1,
                                             witness->a1p, *r.delta2_pick);
            }
        }
        witnesses_ok = r.delta1 && r.delta2 && r.epsilon1;
    }

    r.ok = r.boundedness.ok && witnesses_ok;
    return r;
}

}  // namespace ccs
