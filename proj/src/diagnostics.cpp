#include "ccs/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>

#include "ccs/errors.hpp"

namespace ccs {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::string fmt_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

double linf_dist(const Field& f, double target) {
    double m = 0.0;
    for (double x : f) m = std::max(m, std::abs(x - target));
    return m;
}

double l2_dist(const Field& f, double target, double cell_volume) {
    double s = 0.0;
    for (double x : f) {
        const double d = x - target;
        s += d * d;
    }
    return std::sqrt(s * cell_volume);
}

// x - x* - x* log(x/x*), the Taylor-form integrand; >= 0 for x > 0.
// Positive denormals are floored before the log; true zeros are an error.
double entropy_term(double x, double x_star, std::size_t cell) {
    if (!(x > 0.0)) throw NonpositiveDensity(cell, x);
    const double xf = std::max(x, 1e-300);
    return x - x_star - x_star * std::log(xf / x_star);
}

}  // namespace

std::vector<double> TimeSeries::times() const {
    std::vector<double> t;
    t.reserve(rows.size());
    for (const auto& r : rows) t.push_back(r.t);
    return t;
}

std::vector<double> TimeSeries::linf_total() const {
    std::vector<double> d;
    d.reserve(rows.size());
    for (const auto& r : rows) d.push_back(r.linf_u + r.linf_v + r.linf_w);
    return d;
}

std::vector<double> TimeSeries::l2_total() const {
    std::vector<double> d;
    d.reserve(rows.size());
    for (const auto& r : rows) d.push_back(r.l2_u + r.l2_v + r.l2_w);
    return d;
}

std::vector<double> TimeSeries::energies() const {
    std::vector<double> e;
    e.reserve(rows.size());
    for (const auto& r : rows) e.push_back(r.energy);
    return e;
}

void write_timeseries_csv(std::ostream& os, const TimeSeries& series) {
    os << kTimeSeriesHeader << '\n';
    for (const auto& r : series.rows) {
        os << fmt_double(r.t) << ',' << fmt_double(r.l2_u) << ','
           << fmt_double(r.l2_v) << ',' << fmt_double(r.l2_w) << ','
           << fmt_double(r.linf_u) << ',' << fmt_double(r.linf_v) << ','
           << fmt_double(r.linf_w) << ',' << fmt_double(r.energy) << ','
           << fmt_double(r.dissipation) << ',' << fmt_double(r.min_u) << ','
           << fmt_double(r.min_v) << '\n';
    }
}

TimeSeries read_timeseries_csv(std::istream& is) {
    TimeSeries ts;
    std::string line;
    int lineno = 0;
    if (!std::getline(is, line)) throw ConfigError("empty time series", 0, "");
    ++lineno;
    if (line != kTimeSeriesHeader)
        throw ConfigError("unexpected time series header: " + line, lineno, "t");
    while (std::getline(is, line)) {
        ++lineno;
        if (line.empty()) continue;
        std::istringstream ls(line);
        std::string cell;
        double vals[11];
        for (int k = 0; k < 11; ++k) {
            if (!std::getline(ls, cell, ','))
                throw ConfigError("expected 11 columns", lineno, "");
            try {
                vals[k] = std::stod(cell);
            } catch (const std::exception&) {
                throw ConfigError("bad number '" + cell + "'", lineno, "");
            }
        }
        SampleRow r{};
        r.t = vals[0];
        r.l2_u = vals[1]; r.l2_v = vals[2]; r.l2_w = vals[3];
        r.linf_u = vals[4]; r.linf_v = vals[5]; r.linf_w = vals[6];
        r.energy = vals[7];
        r.dissipation = vals[8];
        r.min_u = vals[9]; r.min_v = vals[10];
        if (!ts.rows.empty() && !(r.t > ts.rows.back().t))
            throw ConfigError("time column must be strictly increasing", lineno, "t");
        ts.rows.push_back(r);
    }
    return ts;
}

double energy_E1(const FieldState& state, const ModelParams& p,
                 const Domain& grid, const SteadyState& steady, double delta1) {
    const double weight = p.a1 * p.mu1 * delta1 / (p.a2 * p.mu2);
    double su = 0.0, sv = 0.0;
    for (std::size_t i = 0; i < state.u.size(); ++i)
        su += entropy_term(state.u[i], steady.u_star, i);
    for (std::size_t i = 0; i < state.v.size(); ++i)
        sv += entropy_term(state.v[i], steady.v_star, i);
    return (su + weight * sv) * grid.cell_volume();
}

double energy_E2(const FieldState& state, const ModelParams& p,
                 const Domain& grid, double delta1, double a1p) {
    const double weight = a1p * p.mu1 * delta1 / (p.a2 * p.mu2);
    double su = 0.0, sv = 0.0;
    for (std::size_t i = 0; i < state.u.size(); ++i) su += state.u[i];
    for (std::size_t i = 0; i < state.v.size(); ++i)
        sv += entropy_term(state.v[i], 1.0, i);
    return (su + weight * sv) * grid.cell_volume();
}

SampleRow sample_state(const FieldState& state, const ModelParams& p,
                       const Domain& grid, const DiagnosticsSetup& setup,
                       const SampleRow* previous) {
    SampleRow r{};
    r.step = state.step;
    r.t = state.t;
    r.min_u = *std::min_element(state.u.begin(), state.u.end());
    r.min_v = *std::min_element(state.v.begin(), state.v.end());

    const SteadyState& s = setup.steady;
    if (s.has_target()) {
        const double cv = grid.cell_volume();
        r.l2_u = l2_dist(state.u, s.u_star, cv);
        r.l2_v = l2_dist(state.v, s.v_star, cv);
        r.l2_w = l2_dist(state.w, s.w_star, cv);
        r.linf_u = linf_dist(state.u, s.u_star);
        r.linf_v = linf_dist(state.v, s.v_star);
        r.linf_w = linf_dist(state.w, s.w_star);
    } else {
        r.l2_u = r.l2_v = r.l2_w = kNaN;
        r.linf_u = r.linf_v = r.linf_w = kNaN;
    }

    r.energy = kNaN;
    if (setup.delta1 && s.has_target() && !s.mirrored) {
        try {
            if (s.regime == Regime::Coexistence) {
                r.energy = energy_E1(state, p, grid, s, *setup.delta1);
            } else if (setup.a1p) {
                r.energy = energy_E2(state, p, grid, *setup.delta1, *setup.a1p);
            }
        } catch (const NonpositiveDensity&) {
            // undefined functional (a zero cell); leave NaN rather than abort
        }
    }

    r.dissipation = 0.0;
    if (previous && std::isfinite(r.energy) && std::isfinite(previous->energy) &&
        r.t > previous->t)
        r.dissipation = (r.energy - previous->energy) / (r.t - previous->t);
    return r;
}

DissipationReport dissipation_check(const TimeSeries& series, double epsilon,
                                    double transient_fraction) {
    DissipationReport rep{};
    const auto& rows = series.rows;
    if (rows.size() < 2) return rep;
    const std::size_t n_int = rows.size() - 1;
    const std::size_t skip =
        static_cast<std::size_t>(transient_fraction * static_cast<double>(n_int));
    rep.per_interval.assign(n_int, false);
    for (std::size_t k = 1; k < rows.size(); ++k) {
        const auto& r1 = rows[k - 1];
        const auto& r2 = rows[k];
        const double dEdt = (r2.energy - r1.energy) / (r2.t - r1.t);
        const double q = r2.l2_u * r2.l2_u + r2.l2_v * r2.l2_v + r2.l2_w * r2.l2_w;
        const double rhs = -epsilon * q;
        const double slack = 0.05 * (std::abs(dEdt) + epsilon * q) + 1e-10;
        const bool ok = dEdt <= rhs + slack;
        rep.per_interval[k - 1] = ok;
        if (k - 1 >= skip) {
            ++rep.checked;
            if (ok) ++rep.passed;
        }
    }
    rep.fraction = rep.checked > 0
                       ? static_cast<double>(rep.passed) / rep.checked
                       : 0.0;
    return rep;
}

double energy_nonincreasing_fraction(const TimeSeries& series,
                                     double transient_fraction) {
    const auto& rows = series.rows;
    if (rows.size() < 2) return 0.0;
    const std::size_t n_int = rows.size() - 1;
    const std::size_t skip =
        static_cast<std::size_t>(transient_fraction * static_cast<double>(n_int));
    int checked = 0, passed = 0;
    for (std::size_t k = skip + 1; k < rows.size(); ++k) {
        ++checked;
        if (rows[k].energy <= rows[k - 1].energy + 1e-12) ++passed;
    }
    return checked > 0 ? static_cast<double>(passed) / checked : 0.0;
}

FitWindow default_window(const std::vector<double>& d, double floor_value) {
    std::size_t last = 0;
    for (std::size_t i = 0; i < d.size(); ++i)
        if (d[i] > floor_value) last = i + 1;
    // last 50% of the samples above the floor
    std::size_t count = 0;
    for (std::size_t i = 0; i < last; ++i)
        if (d[i] > floor_value) ++count;
    if (count < 8) throw DegenerateWindow("fewer than 8 samples above the floor");
    FitWindow w{};
    w.last = last;
    w.first = last - (count - count / 2);  // keep the trailing half
    return w;
}

namespace {

RateFit fit_loglinear(const std::vector<double>& t, const std::vector<double>& d,
                      const FitWindow& w, RateModel model) {
    if (w.last > t.size() || w.first >= w.last)
        throw DegenerateWindow("empty window");
    const std::size_t n = w.last - w.first;
    if (n < 8) throw DegenerateWindow("fewer than 8 samples in window");

    std::vector<double> xs, ys;
    xs.reserve(n);
    ys.reserve(n);
    for (std::size_t i = w.first; i < w.last; ++i) {
        if (!(d[i] > 0.0))
            throw DegenerateWindow("nonpositive distance inside window");
        xs.push_back(model == RateModel::Exponential ? t[i] : std::log(t[i] + 1.0));
        ys.push_back(std::log(d[i]));
    }
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        mx += xs[i];
        my += ys[i];
    }
    mx /= n;
    my /= n;
    double sxx = 0.0, sxy = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double dx = xs[i] - mx, dy = ys[i] - my;
        sxx += dx * dx;
        sxy += dx * dy;
        syy += dy * dy;
    }
    if (!(sxx > 0.0)) throw DegenerateWindow("zero variance in regressor");

    const double slope = sxy / sxx;
    const double intercept = my - slope * mx;
    double r2 = 1.0;
    if (syy > 0.0) {
        double ss_res = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const double e = ys[i] - (intercept + slope * xs[i]);
            ss_res += e * e;
        }
        r2 = 1.0 - ss_res / syy;
    }
    RateFit fit{};
    fit.model = model;
    fit.ell = -slope;
    fit.amplitude = std::exp(intercept);
    fit.goodness = std::clamp(r2, 0.0, 1.0);
    fit.window_t0 = t[w.first];
    fit.window_t1 = t[w.last - 1];
    fit.samples = static_cast<int>(n);
    return fit;
}

}  // namespace

RateFit fit_exponential(const std::vector<double>& t, const std::vector<double>& d,
                        const FitWindow& window) {
    return fit_loglinear(t, d, window, RateModel::Exponential);
}

RateFit fit_algebraic(const std::vector<double>& t, const std::vector<double>& d,
                      const FitWindow& window) {
    return fit_loglinear(t, d, window, RateModel::Algebraic);
}

L2LinfReport l2_to_linf_consistency(const TimeSeries& series, int n, double tol,
                                    double floor_value) {
    const auto t = series.times();
    const auto d2 = series.l2_total();
    const auto di = series.linf_total();
    const FitWindow w = default_window(d2, floor_value);
    const RateFit f2 = fit_exponential(t, d2, w);
    const RateFit fi = fit_exponential(t, di, w);
    L2LinfReport rep{};
    rep.ell_l2 = f2.ell;
    rep.ell_linf = fi.ell;
    rep.floor_rate = f2.ell / (n + 1);
    rep.ok = fi.ell >= rep.floor_rate - tol;
    return rep;
}

}  // namespace ccs
