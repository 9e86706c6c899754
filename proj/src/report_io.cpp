#include "frobangle/report_io.hpp"

#include <cstdio>
#include <sstream>
#include <stdexcept>
#include <vector>

#include "json.hpp"

namespace frobangle {

std::string format_g17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string report_to_json(const VerificationReport& r) {
  std::ostringstream out;
  out << "{\n"
      << "  \"x\": " << r.x << ",\n"
      << "  \"h\": " << r.h << ",\n"
      << "  \"alpha\": " << format_g17(r.alpha) << ",\n"
      << "  \"beta\": " << format_g17(r.beta) << ",\n"
      << "  \"raw_sum\": " << format_g17(r.raw_sum) << ",\n"
      << "  \"mu\": " << format_g17(r.mu) << ",\n"
      << "  \"expected\": " << format_g17(r.expected) << ",\n"
      << "  \"rel_error\": " << format_g17(r.rel_error) << ",\n"
      << "  \"n_split\": " << r.n_split << ",\n"
      << "  \"n_inert\": " << r.n_inert << ",\n"
      << "  \"char_sum\": " << format_g17(r.char_sum) << ",\n"
      << "  \"grossen_sums\": [" << format_g17(r.grossen_sums[0]) << ", "
      << format_g17(r.grossen_sums[1]) << ", " << format_g17(r.grossen_sums[2]) << "],\n"
      << "  \"pnt_deviation\": " << format_g17(r.pnt_deviation) << ",\n"
      << "  \"error_envelope\": " << format_g17(r.error_envelope) << ",\n"
      << "  \"params_ok\": " << (r.params_ok ? "true" : "false") << "\n"
      << "}\n";
  return out.str();
}

VerificationReport report_from_json(const std::string& text) {
  nlohmann::json j = nlohmann::json::parse(text);
  VerificationReport r;
  r.x = j.at("x").get<std::uint64_t>();
  r.h = j.at("h").get<std::uint64_t>();
  r.alpha = j.at("alpha").get<double>();
  r.beta = j.at("beta").get<double>();
  r.raw_sum = j.at("raw_sum").get<double>();
  r.mu = j.at("mu").get<double>();
  r.expected = j.at("expected").get<double>();
  r.rel_error = j.at("rel_error").get<double>();
  r.n_split = j.at("n_split").get<std::uint64_t>();
  r.n_inert = j.at("n_inert").get<std::uint64_t>();
  r.char_sum = j.at("char_sum").get<double>();
  auto gs = j.at("grossen_sums");
  if (!gs.is_array() || gs.size() != 3)
    throw std::runtime_error("report_from_json: grossen_sums must have 3 entries");
  for (int i = 0; i < 3; ++i) r.grossen_sums[i] = gs[i].get<double>();
  r.pnt_deviation = j.at("pnt_deviation").get<double>();
  r.error_envelope = j.at("error_envelope").get<double>();
  r.params_ok = j.at("params_ok").get<bool>();
  return r;
}

std::string report_csv_row(const VerificationReport& r) {
  std::ostringstream out;
  out << r.x << ',' << r.h << ',' << format_g17(r.alpha) << ',' << format_g17(r.beta) << ','
      << format_g17(r.mu) << ',' << format_g17(r.raw_sum) << ',' << format_g17(r.rel_error)
      << ',' << r.n_split << ',' << r.n_inert << ',' << format_g17(r.char_sum) << ','
      << format_g17(r.pnt_deviation);
  return out.str();
}

std::string report_to_csv(const VerificationReport& r) {
  return std::string(kReportCsvHeader) + "\n" + report_csv_row(r) + "\n";
}

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> out;
  std::string cell;
  for (char ch : line) {
    if (ch == ',') {
      out.push_back(cell);
      cell.clear();
    } else if (ch != '\r') {
      cell += ch;
    }
  }
  out.push_back(cell);
  return out;
}

}  // namespace

std::string plot_script_for_sweep(const std::string& csv_path, const std::string& csv_text,
                                  double c) {
  std::istringstream in(csv_text);
  std::string header;
  if (!std::getline(in, header))
    throw std::runtime_error("plot_script_for_sweep: empty CSV input");
  auto cols = split_csv_line(header);
  bool have_x = false, have_rel = false;
  for (const auto& col : cols) {
    if (col == "x") have_x = true;
    if (col == "rel_error") have_rel = true;
  }
  if (!have_x || !have_rel)
    throw std::runtime_error("plot_script_for_sweep: CSV must have 'x' and 'rel_error' columns");
  int data_rows = 0;
  for (std::string line; std::getline(in, line);)
    if (!line.empty()) ++data_rows;
  std::ostringstream out;
  out << "# relative error vs the decay envelope, from " << csv_path << "\n";
  if (data_rows == 0) out << "# warning: no data rows in the CSV; plot will be empty\n";
  out << "set datafile separator ','\n"
      << "set datafile columnheaders\n"
      << "set logscale x\n"
      << "set logscale y\n"
      << "set xlabel 'x'\n"
      << "set ylabel '|rel_error|'\n"
      << "C = " << format_g17(c) << "\n"
      << "envelope(x) = exp(-C * (log(x))**(1.0/3) / (log(log(x)))**(1.0/3))\n"
      << "plot '" << csv_path << "' using (column('x')):(abs(column('rel_error')))"
      << " with linespoints title '|rel_error|', \\\n"
      << "     envelope(x) with lines title 'envelope'\n";
  return out.str();
}

}  // namespace frobangle
