#ifndef CCS_REPORT_HPP
#define CCS_REPORT_HPP

#include <iosfwd>
#include <string>

#include "ccs/conditions.hpp"

namespace ccs {

// Human-readable key = value rendering of a ConditionReport.
void write_report_text(std::ostream& os, const ConditionReport& report);

// Flat CSV for sweep aggregation. Optional fields render as empty cells,
// booleans as 0/1, infinities as inf.
std::string report_csv_header();
std::string report_csv_row(const ConditionReport& report,
                           const std::string& error = "");

}  // namespace ccs

#endif
