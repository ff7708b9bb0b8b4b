#include <atomic>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "ccs/checkpoint.hpp"
#include "ccs/conditions.hpp"
#include "ccs/config.hpp"
#include "ccs/diagnostics.hpp"
#include "ccs/errors.hpp"
#include "ccs/integrator.hpp"
#include "ccs/report.hpp"

namespace fs = std::filesystem;
using namespace ccs;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitError = 1;     // usage / config / runtime error
constexpr int kExitNegative = 2;  // condition or fit came out negative

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

RunConfig load_config(const std::string& config_path,
                      const std::vector<std::string>& sets,
                      const std::string& out_dir) {
    RunConfig cfg;
    if (!config_path.empty()) cfg = parse_config_file(config_path);
    for (const auto& s : sets) apply_override(cfg, s);
    if (!out_dir.empty()) cfg.output.dir = out_dir;
    validate_config(cfg);
    return cfg;
}

void write_file(const fs::path& path, const std::string& content) {
    std::ofstream os(path, std::ios::binary | std::ios::trunc);
    if (!os) throw Error("cannot write " + path.string());
    os << content;
}

// Witness search for the run diagnostics; absent pieces leave energy = NaN.
DiagnosticsSetup make_diag_setup(const ConditionReport& report) {
    DiagnosticsSetup diag;
    diag.steady = report.steady;
    diag.delta1 = report.delta1;
    if (report.active_case == 2) diag.a1p = report.a1p;
    return diag;
}

int cmd_check(const RunConfig& cfg) {
    const ConditionReport report =
        evaluate_conditions(cfg.params, cfg.check.n, cfg.check.requested_case);

    fs::create_directories(cfg.output.dir);
    std::ostringstream text;
    write_report_text(text, report);
    write_file(cfg.output.dir / "report.txt", text.str());
    write_file(cfg.output.dir / "report.csv",
               report_csv_header() + "\n" + report_csv_row(report) + "\n");

    std::cout << text.str();
    return report.ok ? kExitOk : kExitNegative;
}

int cmd_simulate(const RunConfig& cfg, const std::string& resume_path) {
    fs::create_directories(cfg.output.dir);

    const ConditionReport report =
        evaluate_conditions(cfg.params, cfg.check.n, cfg.check.requested_case);
    const DiagnosticsSetup diag = make_diag_setup(report);

    FieldState initial;
    if (resume_path.empty()) {
        initial = make_initial_state(cfg.initial, cfg.params, cfg.domain,
                                     cfg.scheme.elliptic_tol);
    } else {
        Checkpoint cp = read_checkpoint(resume_path);
        if (cp.domain.dim != cfg.domain.dim || cp.domain.cells != cfg.domain.cells ||
            cp.domain.lengths != cfg.domain.lengths)
            throw Error("checkpoint grid does not match the configured domain");
        initial = std::move(cp.state);
    }

    Probes probes;
    std::size_t sample_index = 0;
    if (cfg.output.field_snapshot_every > 0) {
        probes.on_sample = [&](const FieldState& s, const Domain& grid) {
            if (sample_index++ % cfg.output.field_snapshot_every == 0) {
                char name[64];
                std::snprintf(name, sizeof name, "snapshot_%010llu.bin",
                              static_cast<unsigned long long>(s.step));
                write_checkpoint(cfg.output.dir / name, s, grid);
            }
        };
    }

    const RunResult result =
        run(std::move(initial), cfg.params, cfg.domain, cfg.scheme, diag, probes);

    {
        std::ofstream os(cfg.output.dir / "timeseries.csv",
                         std::ios::binary | std::ios::trunc);
        write_timeseries_csv(os, result.series);
    }
    write_checkpoint(cfg.output.dir / "checkpoint.bin", result.final_state,
                     cfg.domain);
    write_file(cfg.output.dir / "config.ini", render_config(cfg));

    const auto& f = result.final_state;
    std::cout << "simulated to t = " << fmt(f.t) << " in " << f.step
              << " steps, " << result.series.rows.size() << " samples\n";
    if (!result.series.rows.empty() && report.steady.has_target()) {
        const auto& last = result.series.rows.back();
        std::cout << "last sample: t = " << fmt(last.t)
                  << "  linf distance = " << fmt(last.linf_u + last.linf_v + last.linf_w)
                  << "\n";
    }
    return kExitOk;
}

struct SweepAxis {
    std::string key;
    std::vector<double> values;
};

SweepAxis parse_sweep_axis(const std::string& s) {
    const std::size_t eq = s.find('=');
    if (eq == std::string::npos)
        throw ConfigError("sweep axis must be section.key=start:stop:count or "
                          "a comma list: " + s, 0, s);
    SweepAxis axis;
    axis.key = s.substr(0, eq);
    const std::string spec = s.substr(eq + 1);
    if (spec.find(':') != std::string::npos) {
        double start = 0, stop = 0;
        int count = 0;
        if (std::sscanf(spec.c_str(), "%lf:%lf:%d", &start, &stop, &count) != 3 ||
            count < 1)
            throw ConfigError("bad sweep range: " + spec, 0, axis.key);
        for (int i = 0; i < count; ++i)
            axis.values.push_back(count == 1 ? start
                                             : start + (stop - start) * i / (count - 1));
    } else {
        std::istringstream is(spec);
        std::string tok;
        while (std::getline(is, tok, ','))
            axis.values.push_back(std::stod(tok));
        if (axis.values.empty())
            throw ConfigError("empty sweep axis: " + s, 0, axis.key);
    }
    return axis;
}

int cmd_sweep(const RunConfig& base, const std::vector<std::string>& axis_specs,
              int jobs, bool with_sim) {
    std::vector<SweepAxis> axes;
    for (const auto& s : axis_specs) axes.push_back(parse_sweep_axis(s));
    if (axes.empty()) throw ConfigError("sweep needs at least one --sweep axis", 0, "");

    std::size_t total = 1;
    for (const auto& a : axes) total *= a.values.size();

    // deterministic grid order: last axis fastest
    const auto point_values = [&](std::size_t idx) {
        std::vector<double> vals(axes.size());
        for (std::size_t k = axes.size(); k-- > 0;) {
            vals[k] = axes[k].values[idx % axes[k].values.size()];
            idx /= axes[k].values.size();
        }
        return vals;
    };

    std::vector<std::string> rows(total);
    std::atomic<std::size_t> next{0};

    const auto worker = [&] {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= total) return;
            RunConfig cfg = base;
            std::ostringstream row;
            std::string error;
            try {
                const auto vals = point_values(i);
                for (std::size_t k = 0; k < axes.size(); ++k)
                    apply_override(cfg, axes[k].key + "=" + fmt(vals[k]));
                validate_config(cfg);
                const ConditionReport rep = evaluate_conditions(
                    cfg.params, cfg.check.n, cfg.check.requested_case);
                row << report_csv_row(rep);
                if (with_sim) {
                    const DiagnosticsSetup diag = make_diag_setup(rep);
                    FieldState init = make_initial_state(
                        cfg.initial, cfg.params, cfg.domain, cfg.scheme.elliptic_tol);
                    const RunResult rr = run(std::move(init), cfg.params, cfg.domain,
                                             cfg.scheme, diag);
                    const auto& last = rr.series.rows.back();
                    row << ',' << fmt(rr.final_state.t) << ','
                        << fmt(last.linf_u + last.linf_v + last.linf_w);
                }
            } catch (const std::exception& e) {
                // record the failure in-row; the sweep itself continues
                error = e.what();
                for (char& c : error)
                    if (c == ',' || c == '\n') c = ';';
                ConditionReport blank{};
                blank.params = cfg.params;
                blank.n = cfg.check.n;
                blank.steady = classify_regime(cfg.params);
                row.str("");
                row << report_csv_row(blank, error);
                if (with_sim) row << ",,";
            }
            rows[i] = row.str();
        }
    };

    if (jobs <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (int j = 0; j < jobs; ++j) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }

    fs::create_directories(base.output.dir);
    std::ofstream os(base.output.dir / "sweep.csv", std::ios::binary | std::ios::trunc);
    os << report_csv_header();
    if (with_sim) os << ",final_t,final_linf";
    os << '\n';
    for (const auto& r : rows) os << r << '\n';
    std::cout << "swept " << total << " points -> "
              << (base.output.dir / "sweep.csv").string() << "\n";
    return kExitOk;
}

std::vector<double> extract_column(const TimeSeries& ts, const std::string& name) {
    if (name == "linf") return ts.linf_total();
    if (name == "l2") return ts.l2_total();
    std::vector<double> out;
    out.reserve(ts.rows.size());
    for (const auto& r : ts.rows) {
        double v = 0;
        if (name == "l2_u") v = r.l2_u;
        else if (name == "l2_v") v = r.l2_v;
        else if (name == "l2_w") v = r.l2_w;
        else if (name == "linf_u") v = r.linf_u;
        else if (name == "linf_v") v = r.linf_v;
        else if (name == "linf_w") v = r.linf_w;
        else if (name == "energy") v = r.energy;
        else throw ConfigError("unknown column '" + name + "'", 0, name);
        out.push_back(v);
    }
    return out;
}

void print_fit(const RateFit& fit) {
    std::cout << (fit.model == RateModel::Exponential ? "exponential" : "algebraic")
              << ": ell = " << fmt(fit.ell) << "  C = " << fmt(fit.amplitude)
              << "  goodness = " << fmt(fit.goodness) << "  window = ["
              << fmt(fit.window_t0) << ", " << fmt(fit.window_t1) << "] ("
              << fit.samples << " samples)\n";
}

int cmd_rate(const std::string& input, const std::string& model,
             const std::string& column, const std::string& window_spec,
             double floor_value) {
    std::ifstream is(input);
    if (!is) throw ConfigError("cannot open '" + input + "'", 0, "");
    const TimeSeries ts = read_timeseries_csv(is);
    const auto t = ts.times();
    const auto d = extract_column(ts, column);

    FitWindow w;
    if (!window_spec.empty()) {
        double t0 = 0, t1 = 0;
        if (std::sscanf(window_spec.c_str(), "%lf:%lf", &t0, &t1) != 2)
            throw ConfigError("window must be t0:t1, got " + window_spec, 0, "window");
        w.first = w.last = 0;
        for (std::size_t i = 0; i < t.size(); ++i) {
            if (t[i] < t0) w.first = i + 1;
            if (t[i] <= t1) w.last = i + 1;
        }
    } else {
        w = default_window(d, floor_value);
    }

    if (model == "exp") {
        print_fit(fit_exponential(t, d, w));
    } else if (model == "alg") {
        print_fit(fit_algebraic(t, d, w));
    } else if (model == "both") {
        const RateFit fe = fit_exponential(t, d, w);
        const RateFit fa = fit_algebraic(t, d, w);
        print_fit(fe);
        print_fit(fa);
        std::cout << "better goodness: "
                  << (fa.goodness > fe.goodness ? "algebraic" : "exponential")
                  << "\n";
    } else {
        throw ConfigError("model must be exp, alg or both", 0, "model");
    }
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"two-species chemotaxis-competition solver and analysis toolkit"};
    app.require_subcommand(1);

    std::string config_path, out_dir, resume_path;
    std::vector<std::string> sets;

    auto add_config_opts = [&](CLI::App* sub) {
        sub->add_option("--config", config_path, "config file (INI sections)");
        sub->add_option("--set", sets, "override, e.g. --set params.chi1=0.2");
        sub->add_option("--out", out_dir, "output directory");
    };

    auto* check = app.add_subcommand("check", "evaluate the parameter conditions");
    add_config_opts(check);

    auto* simulate = app.add_subcommand("simulate", "run the PDE solver");
    add_config_opts(simulate);
    simulate->add_option("--resume", resume_path, "checkpoint to continue from");

    auto* sweep = app.add_subcommand("sweep", "grid of condition checks");
    add_config_opts(sweep);
    std::vector<std::string> sweep_axes;
    int jobs = 1;
    bool with_sim = false;
    sweep->add_option("--sweep", sweep_axes,
                      "axis, e.g. params.chi2=0.1:2.0:32 or params.a1=0.5,1,2")
        ->required();
    sweep->add_option("--jobs", jobs, "worker threads");
    sweep->add_flag("--with-sim", with_sim, "also run a short simulation per point");

    auto* rate = app.add_subcommand("rate", "fit a decay model to a time series");
    std::string input, model = "exp", column = "linf", window_spec;
    double floor_value = 1e-9;
    rate->add_option("--input", input, "timeseries.csv")->required();
    rate->add_option("--model", model, "exp | alg | both");
    rate->add_option("--column", column, "distance column (default linf = sum)");
    rate->add_option("--window", window_spec, "fit window t0:t1");
    rate->add_option("--floor", floor_value,
                     "distance floor for the default window (default 1e-9)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? kExitOk : kExitError;
    }

    try {
        if (check->parsed()) return cmd_check(load_config(config_path, sets, out_dir));
        if (simulate->parsed())
            return cmd_simulate(load_config(config_path, sets, out_dir), resume_path);
        if (sweep->parsed())
            return cmd_sweep(load_config(config_path, sets, out_dir), sweep_axes,
                             jobs, with_sim);
        if (rate->parsed())
            return cmd_rate(input, model, column, window_spec, floor_value);
    } catch (const DegenerateWindow& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitNegative;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitError;
    }
    return kExitError;
}
