#include "ccs/config.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "ccs/elliptic.hpp"
#include "ccs/errors.hpp"
#include "ccs/rng.hpp"

namespace ccs {

namespace {

std::string trim(const std::string& s) {
    std::size_t b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    std::size_t e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

double parse_double(const std::string& v, int line, const std::string& field) {
    try {
        std::size_t pos = 0;
        const double x = std::stod(v, &pos);
        if (pos != v.size()) throw std::invalid_argument(v);
        return x;
    } catch (const std::exception&) {
        throw ConfigError("expected a number for '" + field + "', got '" + v + "'",
                          line, field);
    }
}

int parse_int(const std::string& v, int line, const std::string& field) {
    try {
        std::size_t pos = 0;
        const int x = std::stoi(v, &pos);
        if (pos != v.size()) throw std::invalid_argument(v);
        return x;
    } catch (const std::exception&) {
        throw ConfigError("expected an integer for '" + field + "', got '" + v + "'",
                          line, field);
    }
}

std::uint64_t parse_u64(const std::string& v, int line, const std::string& field) {
    try {
        std::size_t pos = 0;
        const unsigned long long x = std::stoull(v, &pos);
        if (pos != v.size()) throw std::invalid_argument(v);
        return x;
    } catch (const std::exception&) {
        throw ConfigError("expected an unsigned integer for '" + field + "'", line,
                          field);
    }
}

bool parse_bool(const std::string& v, int line, const std::string& field) {
    if (v == "true" || v == "1" || v == "yes") return true;
    if (v == "false" || v == "0" || v == "no") return false;
    throw ConfigError("expected a boolean for '" + field + "', got '" + v + "'",
                      line, field);
}

// Splits "a b" or "a" into up to two tokens.
std::array<std::string, 2> split_pair(const std::string& v) {
    std::istringstream is(v);
    std::array<std::string, 2> out{};
    is >> out[0] >> out[1];
    return out;
}

bool is_param_name(const std::string& key) {
    return std::find(kParamNames.begin(), kParamNames.end(), key) !=
           kParamNames.end();
}

void set_key(RunConfig& cfg, const std::string& section, const std::string& key,
             const std::string& value, int line) {
    const std::string field = section + "." + key;
    if (section == "params") {
        if (!is_param_name(key))
            throw ConfigError("unknown parameter '" + key + "'", line, field);
        set_param_by_name(cfg.params, key, parse_double(value, line, field));
    } else if (section == "domain") {
        if (key == "dim") {
            cfg.domain.dim = parse_int(value, line, field);
        } else if (key == "lengths") {
            const auto pr = split_pair(value);
            cfg.domain.lengths[0] = parse_double(pr[0], line, field);
            cfg.domain.lengths[1] =
                pr[1].empty() ? cfg.domain.lengths[0] : parse_double(pr[1], line, field);
        } else if (key == "cells") {
            const auto pr = split_pair(value);
            cfg.domain.cells[0] = parse_int(pr[0], line, field);
            cfg.domain.cells[1] =
                pr[1].empty() ? cfg.domain.cells[0] : parse_int(pr[1], line, field);
        } else {
            throw ConfigError("unknown domain key '" + key + "'", line, field);
        }
    } else if (section == "scheme") {
        if (key == "dt") cfg.scheme.dt = parse_double(value, line, field);
        else if (key == "t_end") cfg.scheme.t_end = parse_double(value, line, field);
        else if (key == "safety") cfg.scheme.safety = parse_double(value, line, field);
        else if (key == "adaptive") cfg.scheme.adaptive = parse_bool(value, line, field);
        else if (key == "snapshot_every")
            cfg.scheme.snapshot_every = parse_int(value, line, field);
        else if (key == "elliptic_tol")
            cfg.scheme.elliptic_tol = parse_double(value, line, field);
        else throw ConfigError("unknown scheme key '" + key + "'", line, field);
    } else if (section == "initial") {
        if (key == "kind") {
            if (value == "constant") cfg.initial.kind = InitialSpec::Kind::Constant;
            else if (value == "perturbed") cfg.initial.kind = InitialSpec::Kind::Perturbed;
            else if (value == "bump") cfg.initial.kind = InitialSpec::Kind::Bump;
            else
                throw ConfigError("initial kind must be constant|perturbed|bump", line,
                                  field);
        } else if (key == "u0") cfg.initial.u0 = parse_double(value, line, field);
        else if (key == "v0") cfg.initial.v0 = parse_double(value, line, field);
        else if (key == "amplitude")
            cfg.initial.amplitude = parse_double(value, line, field);
        else if (key == "seed") cfg.initial.seed = parse_u64(value, line, field);
        else throw ConfigError("unknown initial key '" + key + "'", line, field);
    } else if (section == "output") {
        if (key == "dir") cfg.output.dir = value;
        else if (key == "field_snapshot_every")
            cfg.output.field_snapshot_every = parse_int(value, line, field);
        else throw ConfigError("unknown output key '" + key + "'", line, field);
    } else if (section == "check") {
        if (key == "n") cfg.check.n = parse_int(value, line, field);
        else if (key == "case") {
            if (value == "auto") cfg.check.requested_case = 0;
            else cfg.check.requested_case = parse_int(value, line, field);
        } else throw ConfigError("unknown check key '" + key + "'", line, field);
    } else {
        throw ConfigError("unknown section '" + section + "'", line, field);
    }
}

}  // namespace

RunConfig parse_config_text(const std::string& text) {
    RunConfig cfg;
    std::istringstream is(text);
    std::string raw;
    std::string section;
    int line = 0;
    while (std::getline(is, raw)) {
        ++line;
        std::string s = raw;
        const std::size_t hash = s.find('#');
        if (hash != std::string::npos) s.erase(hash);
        s = trim(s);
        if (s.empty()) continue;
        if (s.front() == '[') {
            if (s.back() != ']')
                throw ConfigError("unterminated section header", line, "");
            section = trim(s.substr(1, s.size() - 2));
            continue;
        }
        const std::size_t eq = s.find('=');
        if (eq == std::string::npos)
            throw ConfigError("expected 'key = value'", line, "");
        const std::string key = trim(s.substr(0, eq));
        const std::string value = trim(s.substr(eq + 1));
        if (section.empty())
            throw ConfigError("key '" + key + "' outside any section", line, key);
        set_key(cfg, section, key, value, line);
    }
    return cfg;
}

RunConfig parse_config_file(const std::filesystem::path& path) {
    std::ifstream is(path);
    if (!is) throw ConfigError("cannot open '" + path.string() + "'", 0, "");
    std::ostringstream buf;
    buf << is.rdbuf();
    return parse_config_text(buf.str());
}

void apply_override(RunConfig& cfg, const std::string& assignment) {
    const std::size_t eq = assignment.find('=');
    if (eq == std::string::npos)
        throw ConfigError("override must look like section.key=value: " + assignment,
                          0, assignment);
    const std::string path = trim(assignment.substr(0, eq));
    const std::string value = trim(assignment.substr(eq + 1));
    const std::size_t dot = path.find('.');
    if (dot == std::string::npos)
        throw ConfigError("override key must be section.key: " + path, 0, path);
    set_key(cfg, path.substr(0, dot), path.substr(dot + 1), value, 0);
}

void validate_config(const RunConfig& cfg) {
    validate_params(cfg.params);
    validate_domain(cfg.domain);
    if (!(cfg.scheme.dt > 0.0)) throw ConfigError("scheme.dt must be positive", 0, "scheme.dt");
    if (!(cfg.scheme.t_end >= 0.0))
        throw ConfigError("scheme.t_end must be nonnegative", 0, "scheme.t_end");
    if (!(cfg.scheme.safety > 0.0 && cfg.scheme.safety <= 1.0))
        throw ConfigError("scheme.safety must be in (0, 1]", 0, "scheme.safety");
    if (cfg.scheme.snapshot_every < 1)
        throw ConfigError("scheme.snapshot_every must be >= 1", 0,
                          "scheme.snapshot_every");
    if (!(cfg.scheme.elliptic_tol > 0.0))
        throw ConfigError("scheme.elliptic_tol must be positive", 0,
                          "scheme.elliptic_tol");
    if (cfg.initial.u0 < 0.0 || cfg.initial.v0 < 0.0)
        throw ConfigError("initial data must be nonnegative", 0, "initial.u0");
    if (cfg.initial.amplitude < 0.0)
        throw ConfigError("initial.amplitude must be nonnegative", 0,
                          "initial.amplitude");
    const bool u_zero = cfg.initial.u0 == 0.0 && cfg.initial.amplitude == 0.0;
    const bool v_zero = cfg.initial.v0 == 0.0 && cfg.initial.amplitude == 0.0;
    if (u_zero || v_zero)
        throw ConfigError("initial data must not be identically zero per species", 0,
                          u_zero ? "initial.u0" : "initial.v0");
    if (cfg.output.field_snapshot_every < 0)
        throw ConfigError("output.field_snapshot_every must be >= 0", 0,
                          "output.field_snapshot_every");
}

FieldState make_initial_state(const InitialSpec& initial, const ModelParams& params,
                              const Domain& grid, double elliptic_tol) {
    const std::size_t n = grid.cell_count();
    FieldState s;
    s.u.assign(n, initial.u0);
    s.v.assign(n, initial.v0);

    if (initial.kind == InitialSpec::Kind::Perturbed) {
        SplitMix64 rng(initial.seed);
        for (std::size_t i = 0; i < n; ++i)
            s.u[i] = std::max(0.0, initial.u0 +
                                       initial.amplitude * (2.0 * rng.next_double() - 1.0));
        for (std::size_t i = 0; i < n; ++i)
            s.v[i] = std::max(0.0, initial.v0 +
                                       initial.amplitude * (2.0 * rng.next_double() - 1.0));
    } else if (initial.kind == InitialSpec::Kind::Bump) {
        // raised-cosine bump centered in the box, peak = amplitude
        for (int iy = 0; iy < grid.ny(); ++iy) {
            for (int ix = 0; ix < grid.nx(); ++ix) {
                const double x = (ix + 0.5) * grid.hx() / grid.lengths[0];
                double b = 0.5 * (1.0 + std::cos(2.0 * M_PI * (x - 0.5)));
                if (grid.dim == 2) {
                    const double y = (iy + 0.5) * grid.hy() / grid.lengths[1];
                    b *= 0.5 * (1.0 + std::cos(2.0 * M_PI * (y - 0.5)));
                }
                const std::size_t i = grid.index(ix, iy);
                s.u[i] = std::max(0.0, initial.u0 + initial.amplitude * b);
                s.v[i] = std::max(0.0, initial.v0 + initial.amplitude * b);
            }
        }
    }

    s.w = solve_w(s.u, s.v, params, grid, elliptic_tol);
    s.t = 0.0;
    s.step = 0;
    return s;
}

std::string render_config(const RunConfig& cfg) {
    char buf[64];
    const auto num = [&buf](double v) {
        std::snprintf(buf, sizeof buf, "%.17g", v);
        return std::string(buf);
    };
    std::ostringstream os;
    os << "[params]\n";
    for (auto name : kParamNames)
        os << name << " = " << num(param_by_name(cfg.params, name)) << '\n';
    os << "\n[domain]\n";
    os << "dim = " << cfg.domain.dim << '\n';
    os << "lengths = " << num(cfg.domain.lengths[0]);
    if (cfg.domain.dim == 2) os << ' ' << num(cfg.domain.lengths[1]);
    os << '\n';
    os << "cells = " << cfg.domain.cells[0];
    if (cfg.domain.dim == 2) os << ' ' << cfg.domain.cells[1];
    os << '\n';
    os << "\n[scheme]\n";
    os << "dt = " << num(cfg.scheme.dt) << '\n';
    os << "t_end = " << num(cfg.scheme.t_end) << '\n';
    os << "safety = " << num(cfg.scheme.safety) << '\n';
    os << "adaptive = " << (cfg.scheme.adaptive ? "true" : "false") << '\n';
    os << "snapshot_every = " << cfg.scheme.snapshot_every << '\n';
    os << "elliptic_tol = " << num(cfg.scheme.elliptic_tol) << '\n';
    os << "\n[initial]\n";
    os << "kind = "
       << (cfg.initial.kind == InitialSpec::Kind::Constant
               ? "constant"
               : cfg.initial.kind == InitialSpec::Kind::Perturbed ? "perturbed"
                                                                  : "bump")
       << '\n';
    os << "u0 = " << num(cfg.initial.u0) << '\n';
    os << "v0 = " << num(cfg.initial.v0) << '\n';
    os << "amplitude = " << num(cfg.initial.amplitude) << '\n';
    os << "seed = " << cfg.initial.seed << '\n';
    os << "\n[output]\n";
    os << "dir = " << cfg.output.dir.string() << '\n';
    os << "field_snapshot_every = " << cfg.output.field_snapshot_every << '\n';
    os << "\n[check]\n";
    os << "n = " << cfg.check.n << '\n';
    os << "case = " << cfg.check.requested_case << '\n';
    return os.str();
}

}  // namespace ccs
