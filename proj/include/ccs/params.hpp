#ifndef CCS_PARAMS_HPP
#define CCS_PARAMS_HPP

#include <array>
#include <string_view>

namespace ccs {

// The twelve positive coefficients of the parabolic-parabolic-elliptic system
//   u_t = d1 Lap u - chi1 div(u grad w) + mu1 u (1 - u - a1 v)
//   v_t = d2 Lap v - chi2 div(v grad w) + mu2 v (1 - a2 u - v)
//   0   = d3 Lap w + alpha u + beta v - gamma w
struct ModelParams {
    double d1, d2, d3;
    double chi1, chi2;
    double mu1, mu2;
    double a1, a2;
    double alpha, beta, gamma;
};

inline constexpr std::array<std::string_view, 12> kParamNames = {
    "d1", "d2", "d3", "chi1", "chi2", "mu1", "mu2",
    "a1", "a2", "alpha", "beta", "gamma"};

// Returns the validated params or throws InvalidParameters listing every
// nonpositive / nonfinite field.
ModelParams validate_params(const ModelParams& raw);

double param_by_name(const ModelParams& p, std::string_view name);
void set_param_by_name(ModelParams& p, std::string_view name, double value);

}  // namespace ccs

#endif
