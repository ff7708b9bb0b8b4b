#include "ccs/params.hpp"

#include <cmath>
#include <sstream>

#include "ccs/errors.hpp"

namespace ccs {

namespace {

const double* field_ptr(const ModelParams& p, std::string_view name) {
    if (name == "d1") return &p.d1;
    if (name == "d2") return &p.d2;
    if (name == "d3") return &p.d3;
    if (name == "chi1") return &p.chi1;
    if (name == "chi2") return &p.chi2;
    if (name == "mu1") return &p.mu1;
    if (name == "mu2") return &p.mu2;
    if (name == "a1") return &p.a1;
    if (name == "a2") return &p.a2;
    if (name == "alpha") return &p.alpha;
    if (name == "beta") return &p.beta;
    if (name == "gamma") return &p.gamma;
    return nullptr;
}

}  // namespace

InvalidParameters::InvalidParameters(std::vector<ParamIssue> issues)
    : Error([&issues] {
          std::ostringstream os;
          os << "invalid parameters:";
          for (const auto& it : issues) {
              os << ' ' << it.field
                 << (it.kind == ParamIssue::Kind::Nonfinite ? " (nonfinite)"
                                                            : " (nonpositive)");
          }
          return os.str();
      }()),
      issues_(std::move(issues)) {}

ModelParams validate_params(const ModelParams& raw) {
    std::vector<ParamIssue> issues;
    for (auto name : kParamNames) {
        const double v = *field_ptr(raw, name);
        if (!std::isfinite(v)) {
            issues.push_back({ParamIssue::Kind::Nonfinite, std::string(name)});
        } else if (v <= 0.0) {
            issues.push_back({ParamIssue::Kind::Nonpositive, std::string(name)});
        }
    }
    if (!issues.empty()) throw InvalidParameters(std::move(issues));
    return raw;
}

double param_by_name(const ModelParams& p, std::string_view name) {
    const double* f = field_ptr(p, name);
    if (!f) throw Error("unknown parameter: " + std::string(name));
    return *f;
}

void set_param_by_name(ModelParams& p, std::string_view name, double value) {
    const double* f = field_ptr(p, name);
    if (!f) throw Error("unknown parameter: " + std::string(name));
    *const_cast<double*>(f) = value;
}

}  // namespace ccs
