#ifndef CCS_DIAGNOSTICS_HPP
#define CCS_DIAGNOSTICS_HPP

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "ccs/domain.hpp"
#include "ccs/field.hpp"
#include "ccs/params.hpp"
#include "ccs/steady_state.hpp"

namespace ccs {

// One sampled diagnostics row. `dissipation` is the discrete rate
// (E_k - E_{k-1}) / (t_k - t_{k-1}); 0 on the first row.
struct SampleRow {
    std::uint64_t step = 0;
    double t = 0.0;
    double l2_u = 0.0, l2_v = 0.0, l2_w = 0.0;
    double linf_u = 0.0, linf_v = 0.0, linf_w = 0.0;
    double energy = 0.0;
    double dissipation = 0.0;
    double min_u = 0.0, min_v = 0.0;
};

struct TimeSeries {
    std::vector<SampleRow> rows;

    std::vector<double> times() const;
    // Sum of the three columns, the distances the theorems bound.
    std::vector<double> linf_total() const;
    std::vector<double> l2_total() const;
    std::vector<double> energies() const;
};

inline constexpr const char* kTimeSeriesHeader =
    "t,l2_u,l2_v,l2_w,linf_u,linf_v,linf_w,energy,dissipation,min_u,min_v";

void write_timeseries_csv(std::ostream& os, const TimeSeries& series);
TimeSeries read_timeseries_csv(std::istream& is);  // throws ConfigError

// Witnesses the run diagnostics need; energy stays NaN without them
// (or in OpenCase / mirrored-exclusion runs).
struct DiagnosticsSetup {
    SteadyState steady;
    std::optional<double> delta1;
    std::optional<double> a1p;  // case-2 energy weight a1'
};

SampleRow sample_state(const FieldState& state, const ModelParams& params,
                       const Domain& grid, const DiagnosticsSetup& setup,
                       const SampleRow* previous);

// E_1 = int(u - u* - u* log(u/u*)) + (a1 mu1 delta1)/(a2 mu2) int(v - v* - v* log(v/v*))
// Coexistence only; throws NonpositiveDensity on any u or v <= 0.
double energy_E1(const FieldState& state, const ModelParams& params,
                 const Domain& grid, const SteadyState& steady, double delta1);

// E_2 = int u + (a1' mu1 delta1)/(a2 mu2) int(v - 1 - log v)
double energy_E2(const FieldState& state, const ModelParams& params,
                 const Domain& grid, double delta1, double a1p);

// Per-interval check of dE/dt <= -eps Q(t2) + slack with
// Q = l2_u^2 + l2_v^2 + l2_w^2 and slack = 5% of the terms + 1e-10.
struct DissipationReport {
    int checked = 0;
    int passed = 0;
    double fraction = 0.0;
    std::vector<bool> per_interval;
};

DissipationReport dissipation_check(const TimeSeries& series, double epsilon,
                                    double transient_fraction = 0.1);

// Fraction of post-transient intervals with E non-increasing (up to round-off).
double energy_nonincreasing_fraction(const TimeSeries& series,
                                     double transient_fraction = 0.1);

// ---------------------------------------------------------------------------
// Convergence-rate fits.
// ---------------------------------------------------------------------------
enum class RateModel { Exponential, Algebraic };

struct RateFit {
    RateModel model;
    double ell;        // decay exponent
    double amplitude;  // C
    double goodness;   // R^2 clipped to [0, 1]
    double window_t0, window_t1;
    int samples;
};

// Half-open index range [first, last) into the sample arrays.
struct FitWindow {
    std::size_t first = 0;
    std::size_t last = 0;
};

// Last 50% of the samples with d > floor. Throws DegenerateWindow when fewer
// than 8 samples survive.
FitWindow default_window(const std::vector<double>& d, double floor_value);

RateFit fit_exponential(const std::vector<double>& t, const std::vector<double>& d,
                        const FitWindow& window);
RateFit fit_algebraic(const std::vector<double>& t, const std::vector<double>& d,
                      const FitWindow& window);

struct L2LinfReport {
    double ell_l2 = 0.0;
    double ell_linf = 0.0;
    double floor_rate = 0.0;  // ell_l2 / (n+1)
    bool ok = false;
};

// Checks the guaranteed floor ell_inf >= ell_l2/(n+1) - tol from the
// L2 -> Linf upgrade (the observed Linf rate may exceed it).
L2LinfReport l2_to_linf_consistency(const TimeSeries& series, int n,
                                    double tol = 0.05,
                                    double floor_value = 1e-9);

}  // namespace ccs

#endif
