#pragma once
// Report serialization: JSON (17 significant digits, round-trippable), the
// fixed-column CSV, and the gnuplot script emitter for sweep output.
#include <string>

#include "frobangle/equidist.hpp"

namespace frobangle {

inline constexpr const char* kReportCsvHeader =
    "x,h,alpha,beta,mu,raw_sum,rel_error,n_split,n_inert,char_sum,pnt_deviation";

// shortest digit string that round-trips a double (17 significant digits)
std::string format_g17(double v);

std::string report_to_json(const VerificationReport& report);
VerificationReport report_from_json(const std::string& text);  // throws on malformed input

std::string report_csv_row(const VerificationReport& report);
std::string report_to_csv(const VerificationReport& report);  // header + one row

// Script plotting |rel_error| and the envelope exp(-c (log x)^{1/3}/(log log x)^{1/3})
// against x from a sweep CSV. csv_text is validated for the expected columns;
// csv_path is what the script references.
std::string plot_script_for_sweep(const std::string& csv_path, const std::string& csv_text,
                                  double c);

}  // namespace frobangle
