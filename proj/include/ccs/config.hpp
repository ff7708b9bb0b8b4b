#ifndef CCS_CONFIG_HPP
#define CCS_CONFIG_HPP

#include <filesystem>
#include <string>

#include "ccs/domain.hpp"
#include "ccs/field.hpp"
#include "ccs/integrator.hpp"
#include "ccs/params.hpp"

namespace ccs {

// Initial data: nonnegative, not identically zero per species.
struct InitialSpec {
    enum class Kind { Constant, Perturbed, Bump };
    Kind kind = Kind::Constant;
    double u0 = 1.0;
    double v0 = 1.0;
    double amplitude = 0.0;     // perturbed: uniform in [-amp, amp], clipped at 0;
                                // bump: peak height of a raised-cosine bump
    std::uint64_t seed = 1;
};

struct OutputSpec {
    std::filesystem::path dir = "out";
    int field_snapshot_every = 0;  // in samples; 0 = time series only
};

struct CheckSpec {
    int n = 2;
    int requested_case = 0;  // 0 = auto by regime
};

struct RunConfig {
    ModelParams params{1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1};
    Domain domain;
    SchemeConfig scheme;
    InitialSpec initial;
    OutputSpec output;
    CheckSpec check;
};

// INI-style sections ([params], [domain], [scheme], [initial], [output],
// [check]) with key = value lines and # comments. Throws ConfigError with
// the offending line/field.
RunConfig parse_config_file(const std::filesystem::path& path);
RunConfig parse_config_text(const std::string& text);

// "section.key=value" override, same validation as the file parser.
void apply_override(RunConfig& cfg, const std::string& assignment);

// Full validation pass (params positive, domain sane, initial admissible).
void validate_config(const RunConfig& cfg);

// Deterministic initial fields from the spec (u drawn first, then v).
FieldState make_initial_state(const InitialSpec& initial, const ModelParams& params,
                              const Domain& grid, double elliptic_tol);

std::string render_config(const RunConfig& cfg);  // round-trippable dump

}  // namespace ccs

#endif
