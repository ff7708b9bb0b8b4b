#include "ccs/report.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>
#include <sstream>

namespace ccs {

namespace {

std::string num(double v) {
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string opt(const std::optional<double>& v) { return v ? num(*v) : ""; }

std::string tri(const std::optional<bool>& v) {
    return v ? (*v ? "1" : "0") : "";
}

}  // namespace

void write_report_text(std::ostream& os, const ConditionReport& r) {
    os << "# condition report\n";
    for (auto name : kParamNames)
        os << "params." << name << " = " << num(param_by_name(r.params, name))
           << '\n';
    os << "n = " << r.n << '\n';
    os << "regime = " << regime_name(r.steady.regime)
       << (r.steady.mirrored ? " (mirrored)" : "") << '\n';
    if (r.steady.has_target()) {
        os << "steady.u = " << num(r.steady.u_star) << '\n';
        os << "steady.v = " << num(r.steady.v_star) << '\n';
        os << "steady.w = " << num(r.steady.w_star) << '\n';
    }
    os << "boundedness.ok = " << (r.boundedness.ok ? "true" : "false") << '\n';
    os << "boundedness.margin1 = " << num(r.boundedness.margin1) << '\n';
    os << "boundedness.margin2 = " << num(r.boundedness.margin2) << '\n';
    os << "lp.i1 = (" << num(r.i1.lower) << ", " << num(r.i1.upper) << ") "
       << (r.i1.empty() ? "empty" : "nonempty") << '\n';
    os << "lp.i2 = (" << num(r.i2.lower) << ", " << num(r.i2.upper) << ") "
       << (r.i2.empty() ? "empty" : "nonempty") << '\n';
    os << "case = " << r.active_case << '\n';
    if (r.active_case == 1) {
        if (r.delta1) {
            os << "case1.delta1 = " << num(*r.delta1) << '\n';
            os << "case1.mu1_threshold = " << num(r.case1->mu1_threshold) << '\n';
            os << "case1.mu2_threshold = " << num(r.case1->mu2_threshold) << '\n';
        } else {
            os << "case1.delta1 = infeasible\n";
        }
    } else if (r.active_case == 2) {
        if (r.delta1) {
            os << "case2.delta1 = " << num(*r.delta1) << '\n';
            os << "case2.a1p = " << num(*r.a1p) << '\n';
            os << "case2.mu2_threshold = " << num(r.case2->mu2_threshold) << '\n';
            os << "case2.a1p_above_1 = " << (r.case2->a1p_above_1 ? "true" : "false")
               << '\n';
        } else {
            os << "case2.delta1 = infeasible\n";
        }
    }
    if (r.delta2) {
        os << "delta2.lo = " << num(r.delta2->lo) << '\n';
        os << "delta2.hi = " << num(r.delta2->hi)
           << (r.delta2_upper_infinite ? " (denominator nonpositive)" : "") << '\n';
        os << "delta2.pick = " << opt(r.delta2_pick) << '\n';
    } else if (r.active_case != 0 && r.delta1) {
        os << "delta2 = empty\n";
    }
    if (r.epsilon1) os << "epsilon1 = " << num(*r.epsilon1) << '\n';
    os << "legacy.pre1 = " << (r.legacy.pre1 ? (*r.legacy.pre1 ? "true" : "false")
                                             : "n/a (needs d3 = alpha = beta = 1)")
       << '\n';
    os << "legacy.pre23 = " << (r.legacy.pre23 ? "true" : "false") << '\n';
    os << "legacy.stw = "
       << (r.legacy.stw ? (*r.legacy.stw ? "true" : "false")
                        : "n/a (needs d3 = beta = 1)")
       << '\n';
    os << "result = " << (r.ok ? "pass" : "fail") << '\n';
}

std::string report_csv_header() {
    std::ostringstream os;
    for (auto name : kParamNames) os << name << ',';
    os << "n,regime,mirrored,bounded_ok,bounded_margin1,bounded_margin2,"
          "i1_lo,i1_hi,i1_empty,i2_lo,i2_hi,i2_empty,"
          "case,delta1,a1p,mu1_threshold,mu2_threshold,"
          "delta2_lo,delta2_hi,delta2,epsilon1,pre1,pre23,stw,ok,error";
    return os.str();
}

std::string report_csv_row(const ConditionReport& r, const std::string& error) {
    std::ostringstream os;
    for (auto name : kParamNames) os << num(param_by_name(r.params, name)) << ',';
    os << r.n << ',' << regime_name(r.steady.regime) << ','
       << (r.steady.mirrored ? 1 : 0) << ',' << (r.boundedness.ok ? 1 : 0) << ','
       << num(r.boundedness.margin1) << ',' << num(r.boundedness.margin2) << ','
       << num(r.i1.lower) << ',' << num(r.i1.upper) << ',' << (r.i1.empty() ? 1 : 0)
       << ',' << num(r.i2.lower) << ',' << num(r.i2.upper) << ','
       << (r.i2.empty() ? 1 : 0) << ',' << r.active_case << ',' << opt(r.delta1)
       << ',' << opt(r.a1p) << ','
       << (r.case1 ? num(r.case1->mu1_threshold) : "") << ','
       << (r.case1 ? num(r.case1->mu2_threshold)
                   : (r.case2 ? num(r.case2->mu2_threshold) : ""))
       << ',' << (r.delta2 ? num(r.delta2->lo) : "") << ','
       << (r.delta2 ? num(r.delta2->hi) : "") << ',' << opt(r.delta2_pick) << ','
       << opt(r.epsilon1) << ',' << tri(r.legacy.pre1) << ','
       << (r.legacy.pre23 ? 1 : 0) << ',' << tri(r.legacy.stw) << ','
       << (r.ok ? 1 : 0) << ',' << error;
    return os.str();
}

}  // namespace ccs
