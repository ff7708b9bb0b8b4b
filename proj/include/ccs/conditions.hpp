#ifndef CCS_CONDITIONS_HPP
#define CCS_CONDITIONS_HPP

#include <array>
#include <optional>

#include "ccs/params.hpp"
#include "ccs/steady_state.hpp"

namespace ccs {

// Open interval (lo, hi); hi may be +inf.
struct Interval {
    double lo = 0.0;
    double hi = 0.0;
    bool empty() const { return !(lo < hi); }
    bool contains(double x) const { return lo < x && x < hi; }
};

// ---------------------------------------------------------------------------
// Global existence / boundedness condition:
//   chi1/mu1 < (n d3/(n-2)) min{1/alpha, a1/beta}   and
//   chi2/mu2 < (n d3/(n-2)) min{1/beta, a2/alpha}.
// For n <= 2 the factor n/(n-2) is taken as +inf and the condition holds.
// ---------------------------------------------------------------------------
struct BoundednessResult {
    bool ok;
    double threshold1, threshold2;  // right-hand sides (+inf for n <= 2)
    double margin1, margin2;        // threshold - chi_i/mu_i
    bool species1_ok, species2_ok;
};

BoundednessResult check_boundedness(const ModelParams& params, int n);

// L^p integrability intervals I_1 (species 1), I_2 (species 2):
//   I_1 = (n/2, min{ alpha chi1/(alpha chi1 - d3 mu1)_+,
//                    beta  chi1/(beta  chi1 - a1 d3 mu1)_+ }),
// with the convention ratio = +inf when the positive part vanishes.
struct LpInterval {
    double lower;
    double upper;  // may be +inf
    bool empty() const { return !(lower < upper); }
};

LpInterval lp_interval(const ModelParams& params, int n, int species);

// ---------------------------------------------------------------------------
// Sufficient criterion for a x^2 + b xy + c xz + d y^2 + e yz + f z^2 >= 0:
//   a > 0,  d - b^2/(4a) > 0,  f - c^2/(4a) - (2ae-bc)^2/(4a(4ad-b^2)) > 0.
// Sufficiency only; no claim of necessity.
// ---------------------------------------------------------------------------
struct QuadraticFormCoeffs {
    double a, b, c, d, e, f;
};

bool quadratic_form_nonneg(const QuadraticFormCoeffs& q);

// ---------------------------------------------------------------------------
// Case 1 (a1, a2 in (0,1)): delta1 feasibility and the mu thresholds.
// ---------------------------------------------------------------------------

// Root interval of a1 a2 d^2 - (4 - 2 a1 a2) d + a1 a2 < 0, i.e. the set
// where 4 delta1 - a1 a2 (1+delta1)^2 > 0. Empty exactly when a1 a2 >= 1.
// Accepts any positive a1, a2 so boundary inputs can be probed.
Interval case1_feasible_delta1(double a1, double a2);

struct Case1Check {
    bool ok;
    double mu1_threshold, mu2_threshold;
};

// Literal evaluation of the two strict lower bounds on mu1, mu2 for a given
// delta1. Throws InfeasibleDelta1 when 4 delta1 - a1 a2 (1+delta1)^2 <= 0.
Case1Check case1_check(const ModelParams& params, double delta1);

// Deterministic witness search: log-spaced grid (>= 512 points) over the
// feasible delta1 interval, golden-section refinement of the best candidate
// under score = max(threshold1/mu1, threshold2/mu2).
std::optional<double> case1_search(const ModelParams& params);

// ---------------------------------------------------------------------------
// Case 2 (a1 >= 1 > a2): (delta1, a1') feasibility and the mu2 threshold.
// ---------------------------------------------------------------------------
struct Case2Check {
    bool ok;
    double mu2_threshold;
    bool a1p_above_1;  // the strict-exclusion variant additionally needs a1' > 1
};

Case2Check case2_check(const ModelParams& params, double delta1, double a1p);

struct Case2Witness {
    double delta1;
    double a1p;
};

// 2-D scan: a1' over >= 64 points in [1, a1] ((1, a1] when the flag is set),
// delta1 over the a1'-dependent feasible interval. First passing pair wins.
std::optional<Case2Witness> case2_search(const ModelParams& params,
                                         bool require_a1p_above_1);

// ---------------------------------------------------------------------------
// delta2 interval from the energy estimates (case = 1 or 2). The upper bound
// is +inf when its denominator is nonpositive; nullopt when lower >= upper.
// ---------------------------------------------------------------------------
std::optional<Interval> delta2_interval(const ModelParams& params,
                                        const SteadyState& steady,
                                        double delta1, int which_case,
                                        double a1p = 1.0);

// Deterministic delta2 pick inside a nonempty interval (geometric mean;
// 2*lo when the upper end is +inf).
double pick_delta2(const Interval& iv);

// g_1, g_2, g_3 for the epsilon searches: the quadratic-form criterion applied
// to the energy-derivative coefficients. Case 1 uses (a1, (1+delta1) delta2
// w-coupling), case 2 uses (a1', delta2 w-coupling).
std::array<double, 3> case1_g(const ModelParams& params, double delta1,
                              double delta2, double eps);
std::array<double, 3> case2_g(const ModelParams& params, double delta1,
                              double a1p, double delta2, double eps);

// Largest eps on the grid {k mu1/1024 : k = 1..512} with g_1, g_2, g_3 > 0.
// Throws NonpositiveAtZero(i) when g_i(0) <= 0.
std::optional<double> epsilon1_search(const ModelParams& params,
                                      const SteadyState& steady, double delta1,
                                      double delta2);
std::optional<double> epsilon2_search(const ModelParams& params, double delta1,
                                      double a1p, double delta2);

// ---------------------------------------------------------------------------
// Conditions from the earlier literature, for the implication comparisons.
// pre1 and stw are only meaningful under the normalizations they were stated
// with (d3 = alpha = beta = 1, resp. d3 = beta = 1); nullopt otherwise.
// ---------------------------------------------------------------------------
struct LegacyConditions {
    std::optional<bool> pre1;
    bool pre23;
    std::optional<bool> stw;
};

LegacyConditions legacy_conditions(const ModelParams& params);

// ---------------------------------------------------------------------------
// Aggregate report produced by the `check` subcommand and sweeps.
// ---------------------------------------------------------------------------
struct ConditionReport {
    ModelParams params;
    int n = 2;
    SteadyState steady;

    BoundednessResult boundedness;
    LpInterval i1, i2;

    int requested_case = 0;  // 0 = auto by regime
    int active_case = 0;     // 0 = none applicable

    std::optional<double> delta1;
    std::optional<double> a1p;
    std::optional<Case1Check> case1;
    std::optional<Case2Check> case2;
    std::optional<Interval> delta2;
    std::optional<double> delta2_pick;
    bool delta2_upper_infinite = false;
    std::optional<double> epsilon1;

    LegacyConditions legacy;

    bool ok = false;  // the requested condition set holds
};

// requested_case: 0 = auto (by regime), 1, or 2.
ConditionReport evaluate_conditions(const ModelParams& params, int n,
                                    int requested_case = 0);

}  // namespace ccs

#endif
