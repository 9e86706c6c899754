#include "frobangle/cli.hpp"

#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "frobangle/report_io.hpp"
#include "frobangle/selberg.hpp"

namespace frobangle {

namespace {

std::string trim(const std::string& s) {
  size_t b = s.find_first_not_of(" \t");
  if (b == std::string::npos) return "";
  size_t e = s.find_last_not_of(" \t");
  return s.substr(b, e - b + 1);
}

double parse_double(const std::string& text, const std::string& what) {
  try {
    size_t pos = 0;
    double v = std::stod(text, &pos);
    if (pos != text.size()) throw std::invalid_argument("");
    return v;
  } catch (...) {
    throw ConstraintError(what + ": '" + text + "' is not a number");
  }
}

std::uint64_t parse_u64(const std::string& text, const std::string& what) {
  try {
    size_t pos = 0;
    unsigned long long v = std::stoull(text, &pos);
    if (pos != text.size()) throw std::invalid_argument("");
    return v;
  } catch (...) {
    throw ConstraintError(what + ": '" + text + "' is not a non-negative integer");
  }
}

long long parse_ll(const std::string& text, const std::string& what) {
  try {
    size_t pos = 0;
    long long v = std::stoll(text, &pos);
    if (pos != text.size()) throw std::invalid_argument("");
    return v;
  } catch (...) {
    throw ConstraintError(what + ": '" + text + "' is not an integer");
  }
}

int auto_degree(std::uint64_t x) {
  double cap = std::sqrt(static_cast<double>(x)) / std::log(static_cast<double>(x));
  int m = static_cast<int>(std::min(128.0, cap));
  return m < 1 ? 1 : m;
}

}  // namespace

AngleInterval parse_interval(const std::string& text) {
  size_t comma = text.find(',');
  if (comma == std::string::npos)
    throw ConstraintError("interval: expected 'alpha,beta', got '" + text + "'");
  double a = parse_double(trim(text.substr(0, comma)), "interval alpha");
  double b = parse_double(trim(text.substr(comma + 1)), "interval beta");
  if (!(a < b)) throw ConstraintError("interval: require alpha < beta");
  if (!(a >= 0.0) || !(b <= std::numbers::pi))
    throw ConstraintError("interval: require 0 <= alpha and beta <= pi");
  return AngleInterval(a, b);
}

CMCurve parse_curve(const std::string& text) {
  try {
    if (!text.empty() && text[0] == 'd' && text.find(',') == std::string::npos) {
      int d = static_cast<int>(parse_u64(text.substr(1), "curve: field index"));
      return catalog_curve(d);
    }
    size_t c1 = text.find(',');
    size_t c2 = c1 == std::string::npos ? std::string::npos : text.find(',', c1 + 1);
    if (c2 == std::string::npos)
      throw ConstraintError("curve: expected catalog id 'd<N>' or 'a,b,d', got '" + text + "'");
    long long a = parse_ll(trim(text.substr(0, c1)), "curve: a");
    long long b = parse_ll(trim(text.substr(c1 + 1, c2 - c1 - 1)), "curve: b");
    int d = static_cast<int>(parse_u64(trim(text.substr(c2 + 1)), "curve: field index"));
    return make_curve(a, b, d);
  } catch (const ConstraintError&) {
    throw;
  } catch (const std::exception& e) {
    throw ConstraintError(std::string("curve: ") + e.what());
  }
}

SweepConfig parse_sweep_config(const std::string& text) {
  SweepConfig config;
  struct Draft {
    std::optional<std::uint64_t> x, h;
    std::optional<std::string> interval;
    double delta, theta;
    int M;
    int line;
  };
  double g_delta = 0.15, g_theta = 0.05;
  int g_M = 0;  // 0 = auto from x
  std::optional<Draft> open;
  std::vector<Draft> drafts;
  auto close = [&] {
    if (open) {
      drafts.push_back(*open);
      open.reset();
    }
  };
  std::istringstream in(text);
  std::string raw;
  int lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    std::string line = raw;
    size_t hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    std::string where = "sweep config line " + std::to_string(lineno);
    if (line.front() == '[') {
      if (line != "[window]") throw ConstraintError(where + ": unknown section " + line);
      close();
      open = Draft{{}, {}, {}, g_delta, g_theta, g_M, lineno};
      continue;
    }
    size_t eq = line.find('=');
    if (eq == std::string::npos) throw ConstraintError(where + ": expected 'key = value'");
    std::string key = trim(line.substr(0, eq));
    std::string value = trim(line.substr(eq + 1));
    if (!open) {
      if (key == "curve") config.curve_id = value;
      else if (key == "delta") g_delta = parse_double(value, where + ": delta");
      else if (key == "theta") g_theta = parse_double(value, where + ": theta");
      else if (key == "M") g_M = static_cast<int>(parse_u64(value, where + ": M"));
      else if (key == "c") config.envelope_c = parse_double(value, where + ": c");
      else if (key == "seed") config.seed = parse_u64(value, where + ": seed");
      else throw ConstraintError(where + ": unknown global key '" + key + "'");
    } else {
      if (key == "x") open->x = parse_u64(value, where + ": x");
      else if (key == "h") open->h = parse_u64(value, where + ": h");
      else if (key == "interval") open->interval = value;
      else if (key == "delta") open->delta = parse_double(value, where + ": delta");
      else if (key == "theta") open->theta = parse_double(value, where + ": theta");
      else if (key == "M") open->M = static_cast<int>(parse_u64(value, where + ": M"));
      else throw ConstraintError(where + ": unknown window key '" + key + "'");
    }
  }
  close();
  for (const auto& d : drafts) {
    std::string where = "sweep config window at line " + std::to_string(d.line);
    if (!d.x) throw ConstraintError(where + ": missing x");
    if (!d.h) throw ConstraintError(where + ": missing h");
    if (!d.interval) throw ConstraintError(where + ": missing interval");
    WindowConfig wc{*d.x, *d.h, d.delta, d.theta, d.M > 0 ? d.M : auto_degree(*d.x)};
    config.entries.push_back({wc, parse_interval(*d.interval)});
  }
  return config;
}

namespace {

void write_out(const std::string& dest, const std::string& payload, std::ostream& out) {
  if (dest == "-") {
    out << payload;
    return;
  }
  std::ofstream file(dest, std::ios::binary);
  if (!file) throw std::runtime_error("cannot open output file '" + dest + "'");
  file << payload;
}

std::string trace_csv(const std::vector<FrobeniusRecord>& records) {
  std::ostringstream out;
  out << "p,splitting,a_p,theta_p,u,v\n";
  for (const auto& r : records) {
    out << r.p << ',' << to_string(r.splitting) << ',' << r.a_p << ','
        << format_g17(r.theta_p) << ',';
    if (r.has_generator) out << r.u << ',' << r.v;
    else out << ',';
    out << '\n';
  }
  return out.str();
}

int run_impl(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Frobenius angles of CM elliptic curves and their small-scale equidistribution"};
  app.set_help_flag("--help", "print help and exit");
  app.require_subcommand(1);

  struct Common {
    int threads = 0;
    std::uint64_t seed = 0;
    std::string out_dest = "-";
  };
  Common common;
  auto add_common = [&](CLI::App* sub) {
    sub->set_help_flag("--help", "print help and exit");
    sub->add_option("--threads", common.threads, "worker threads (0 = hardware)")
        ->envname("FROBANGLE_THREADS");
    sub->add_option("--seed", common.seed, "run seed for point sampling");
    sub->add_option("--out", common.out_dest, "output destination: path, '-', or a format keyword");
  };

  // primes
  std::uint64_t p_lo = 0, p_hi = 0;
  std::string p_format;
  auto* sub_primes = app.add_subcommand("primes", "list primes in (lo, hi]");
  sub_primes->add_option("--lo", p_lo)->required();
  sub_primes->add_option("--hi", p_hi)->required();
  sub_primes->add_option("--format", p_format)->check(CLI::IsMember({"csv", "count"}));
  add_common(sub_primes);

  // trace
  std::string t_curve;
  std::uint64_t t_pmin = 0, t_pmax = 0;
  auto* sub_trace = app.add_subcommand("trace", "Frobenius records for primes in (pmin, pmax]");
  sub_trace->add_option("--curve", t_curve)->required();
  sub_trace->add_option("--pmin", t_pmin)->required();
  sub_trace->add_option("--pmax", t_pmax)->required();
  add_common(sub_trace);

  // selberg
  std::string s_interval, s_sign = "maj", s_emit = "coeffs";
  int s_M = 0;
  auto* sub_selberg = app.add_subcommand("selberg", "majorant/minorant cosine polynomial");
  sub_selberg->add_option("--interval", s_interval)->required();
  sub_selberg->add_option("--M", s_M)->required();
  sub_selberg->add_option("--sign", s_sign)->check(CLI::IsMember({"maj", "min"}));
  sub_selberg->add_option("--emit", s_emit);
  add_common(sub_selberg);

  // verify
  std::string v_curve, v_interval;
  std::uint64_t v_x = 0, v_h = 0;
  double v_delta = 0.15, v_theta = 0.05, v_c = 1.0;
  int v_M = 0;
  bool v_json = false, v_csv = false, v_unsafe = false;
  std::string v_format;
  auto* sub_verify = app.add_subcommand("verify", "full equidistribution report for one window");
  sub_verify->add_option("--curve", v_curve)->required();
  sub_verify->add_option("--x", v_x)->required();
  sub_verify->add_option("--h", v_h)->required();
  sub_verify->add_option("--interval", v_interval)->required();
  sub_verify->add_option("--delta", v_delta);
  sub_verify->add_option("--theta", v_theta);
  sub_verify->add_option("--M", v_M);
  sub_verify->add_option("--c", v_c);
  sub_verify->add_flag("--json", v_json);
  sub_verify->add_flag("--csv", v_csv);
  sub_verify->add_option("--format", v_format)->check(CLI::IsMember({"json", "csv"}));
  sub_verify->add_flag("--unsafe-params", v_unsafe);
  add_common(sub_verify);

  // sweep
  std::string w_config, w_plot;
  double w_c = -1.0;  // <0 = take from config file
  auto* sub_sweep = app.add_subcommand("sweep", "verify each window of a config file");
  sub_sweep->add_option("--config", w_config)->required()->check(CLI::ExistingFile);
  sub_sweep->add_option("--plot", w_plot, "also write a gnuplot script here");
  sub_sweep->add_option("--c", w_c, "envelope constant for the plot script");
  add_common(sub_sweep);

  // charsum
  std::string c_field;
  std::uint64_t c_x = 0, c_h = 0;
  auto* sub_charsum = app.add_subcommand("charsum", "sum of chi_K(p) log p over (x, x+h]");
  sub_charsum->add_option("--field", c_field)->required();
  sub_charsum->add_option("--x", c_x)->required();
  sub_charsum->add_option("--h", c_h)->required();
  add_common(sub_charsum);

  // mu
  std::string m_interval;
  auto* sub_mu = app.add_subcommand("mu", "measure of an angle interval");
  sub_mu->add_option("--interval", m_interval)->required();
  add_common(sub_mu);

  std::vector<const char*> argv;
  argv.push_back("frobangle");
  for (const auto& s : args) argv.push_back(s.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n";
    return 2;
  }

  try {
    if (sub_primes->parsed()) {
      SieveLimits limits;
      if (p_lo < 2) throw ConstraintError("--lo: require lo >= 2");
      if (p_hi <= p_lo) throw ConstraintError("--hi: require hi > lo");
      if (p_hi > limits.max_hi)
        throw ConstraintError("--hi: exceeds the sieve ceiling " + std::to_string(limits.max_hi));
      std::string fmt = "csv";
      std::string dest = common.out_dest;
      if (dest == "csv" || dest == "count") {
        fmt = dest;
        dest = "-";
      }
      if (!p_format.empty()) fmt = p_format;
      if (fmt == "count") {
        write_out(dest, std::to_string(count_primes(p_lo, p_hi)) + "\n", out);
      } else {
        std::ostringstream payload;
        for_each_prime(p_lo, p_hi, [&](std::uint64_t p) { payload << p << '\n'; });
        write_out(dest, payload.str(), out);
      }
    } else if (sub_trace->parsed()) {
      if (t_pmax <= t_pmin) throw ConstraintError("--pmax: require pmax > pmin");
      CMCurve curve = parse_curve(t_curve);
      ResolveOptions ropts;
      ropts.seed = common.seed;
      auto records = resolve_range(curve, t_pmin, t_pmax, ropts, common.threads);
      std::string dest = common.out_dest == "csv" ? "-" : common.out_dest;
      write_out(dest, trace_csv(records), out);
    } else if (sub_selberg->parsed()) {
      if (s_M < 1 || s_M > 1000000) throw ConstraintError("--M: require 1 <= M <= 10^6");
      auto poly = build_selberg(parse_interval(s_interval), s_M,
                                s_sign == "maj" ? PolySign::Majorant : PolySign::Minorant);
      std::ostringstream payload;
      if (s_emit == "coeffs") {
        payload << "index,value\n";
        for (int m = 0; m <= poly.M; ++m) payload << m << ',' << format_g17(poly.coeffs[m]) << '\n';
      } else if (s_emit.rfind("grid:", 0) == 0) {
        std::uint64_t k = parse_u64(s_emit.substr(5), "--emit grid size");
        if (k < 2 || k > 10000000) throw ConstraintError("--emit: grid size must be in [2, 10^7]");
        payload << "theta,value\n";
        for (std::uint64_t i = 0; i < k; ++i) {
          double theta = std::min(std::numbers::pi * static_cast<double>(i) /
                                      static_cast<double>(k - 1),
                                  std::numbers::pi);
          payload << format_g17(theta) << ',' << format_g17(evaluate(poly, theta)) << '\n';
        }
      } else {
        throw ConstraintError("--emit: expected coeffs or grid:<k>, got '" + s_emit + "'");
      }
      std::string dest = common.out_dest == "coeffs" ? "-" : common.out_dest;
      write_out(dest, payload.str(), out);
    } else if (sub_verify->parsed()) {
      std::string dest = common.out_dest;
      if (dest == "json" || dest == "csv") {
        v_format = dest;
        dest = "-";
      }
      if (v_format == "json") v_json = true;
      if (v_format == "csv") v_csv = true;
      if (v_json && v_csv) throw ConstraintError("--json/--csv: choose one output format");
      CMCurve curve = parse_curve(v_curve);
      AngleInterval interval = parse_interval(v_interval);
      WindowConfig config{v_x, v_h, v_delta, v_theta, v_M > 0 ? v_M : auto_degree(v_x)};
      WindowOptions options;
      options.seed = common.seed;
      options.threads = common.threads;
      options.envelope_c = v_c;
      options.unsafe_params = v_unsafe;
      VerificationReport report = verify(curve, config, interval, options);
      std::string payload = v_csv ? report_to_csv(report) : report_to_json(report);
      write_out(dest, payload, out);
      if (!report.params_ok) err << "warning: computed with violated constraints\n";
    } else if (sub_sweep->parsed()) {
      std::ifstream file(w_config);
      std::stringstream buffer;
      buffer << file.rdbuf();
      SweepConfig config = parse_sweep_config(buffer.str());
      if (sub_sweep->count("--seed") == 0) common.seed = config.seed;
      if (w_c > 0) config.envelope_c = w_c;
      CMCurve curve = parse_curve(config.curve_id);
      WindowOptions options;
      options.seed = common.seed;
      options.threads = common.threads;
      options.envelope_c = config.envelope_c;
      std::string csv = sweep_csv(curve, config.entries, options);
      write_out(common.out_dest, csv, out);
      if (!w_plot.empty()) {
        if (common.out_dest == "-")
          throw ConstraintError("--plot: requires --out <file> so the script can reference it");
        write_out(w_plot, plot_script_for_sweep(common.out_dest, csv, config.envelope_c), out);
      }
    } else if (sub_charsum->parsed()) {
      if (c_field.empty() || c_field[0] != 'd')
        throw ConstraintError("--field: expected d<N>, got '" + c_field + "'");
      const ImagQuadField& field = field_for_d(
          static_cast<int>(parse_u64(c_field.substr(1), "--field: index")));
      if (c_x < 2) throw ConstraintError("--x: require x >= 2");
      if (c_h < 1) throw ConstraintError("--h: require h >= 1");
      double value = character_sum(field, c_x, c_h, common.threads);
      write_out(common.out_dest, format_g17(value) + "\n", out);
    } else if (sub_mu->parsed()) {
      write_out(common.out_dest, format_g17(mu_measure(parse_interval(m_interval))) + "\n", out);
    }
  } catch (const ConstraintError& e) {
    err << "constraint violation: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}

}  // namespace

CliResult run_cli_capture(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  int code = run_impl(args, out, err);
  return {code, out.str(), err.str()};
}

int run_cli(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return run_impl(args, std::cout, std::cerr);
}

}  // namespace frobangle
