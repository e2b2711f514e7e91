#include <algorithm>
#include <cmath>
#include <fstream>
#include <iostream>
#include <limits>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "cubesec/asymptotics.hpp"
#include "cubesec/cli.hpp"
#include "cubesec/error.hpp"
#include "cubesec/sections.hpp"
#include "cubesec/verification.hpp"

namespace cubesec::cli {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr int kMaxScanDimension = 1'000'000;

struct Options {
  std::optional<std::string> config;
  std::optional<double> tol;
  bool json = false;

  int n = 0;
  double b = 0.0;
  std::string dir = "diagonal";

  std::optional<int> n_min;
  std::optional<int> n_max;
  std::string format = "csv";
  std::optional<std::string> out_path;

  double lo = 0.1;
  double hi = 0.3;
  double bracket_tol = 1e-5;

  std::vector<std::string> only;
};

Settings settings_for(const Options& o) {
  Settings s = load_settings(o.config);
  if (o.tol) s.quadrature.rel_tol = *o.tol;
  if (o.n_min) s.n_min = *o.n_min;
  if (o.n_max) s.n_max = *o.n_max;
  s.quadrature.validate();
  return s;
}

OutputRecord record_for(const std::string& command) {
  OutputRecord r;
  r.command = command;
  r.timestamp = utc_timestamp();
  return r;
}

void emit(const OutputRecord& record, bool json, std::ostream& out) {
  out << (json ? to_json(record) : to_text(record));
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw IoError("cannot open " + path + " for writing");
  f << content;
  f.close();
  if (!f) throw IoError("failed writing " + path);
}

int cmd_section(const Options& o, std::ostream& out) {
  const Settings s = settings_for(o);
  const kernel::ConcentrationParam b(o.b);
  std::optional<sections::Direction> dir;
  if (o.dir == "diagonal") {
    if (o.n < 2) throw DimensionError("section: --dir diagonal needs n >= 2");
    dir = sections::Direction::diagonal(o.n);
  } else if (o.dir == "two_coord") {
    if (o.n < 2) throw DimensionError("section: --dir two_coord needs n >= 2");
    dir = sections::Direction::two_coord(o.n);
  } else {
    if (o.n < 1) throw DimensionError("section: --dir axis needs n >= 1");
    dir = sections::Direction::axis(o.n);
  }
  const sections::IntegralResult r =
      sections::direction_section({o.n, b, *dir, s.quadrature});

  OutputRecord rec = record_for("section");
  rec.parameters = {{"n", std::to_string(o.n)},
                    {"b", format_number(o.b)},
                    {"dir", o.dir},
                    {"rel_tol", format_number(s.quadrature.rel_tol)}};
  rec.results.push_back({"A", r.value, r.error_estimate});
  emit(rec, o.json, out);
  return kExitOk;
}

int cmd_limit(const Options& o, std::ostream& out) {
  if (!(o.b > 0.0)) throw DomainError("limit: --b must be > 0");
  const asymptotics::LimitBreakdown lb = asymptotics::limit_value(o.b);
  const auto [limit, limit_err] = limit_with_error(o.b);

  // Remaining terms are at most t_{K+1} / (1 - 4g) with t_k <= (4g)^k / 2.
  const double q = 1.0 - lb.one_minus_4g;
  const double lead = 2.0 * std::sqrt(o.b / std::numbers::pi);
  const double tail =
      2.0 * lead * 0.5 * std::pow(q, lb.series_terms_used + 1.0) / lb.one_minus_4g;
  const double series_err = tail + 4.0 * kEps * (lb.series_terms_used + 1.0) * lb.series_partial;

  OutputRecord rec = record_for("limit");
  rec.parameters = {{"b", format_number(o.b)},
                    {"series_terms", std::to_string(lb.series_terms_used)},
                    {"series_converged", lb.series_converged ? "true" : "false"}};
  rec.results = {
      {"g", lb.g_value, 8.0 * kEps * lb.g_value},
      {"one_minus_4g", lb.one_minus_4g, limit_err / limit * 2.0 * lb.one_minus_4g},
      {"limit", limit, limit_err},
      {"series_partial", lb.series_partial, series_err},
      {"series_gap", std::abs(lb.series_partial - limit), series_err + limit_err},
  };
  emit(rec, o.json, out);
  return kExitOk;
}

int cmd_scan(const Options& o, std::ostream& out) {
  const Settings s = settings_for(o);
  if (s.n_min < 2 || s.n_max < s.n_min || s.n_max > kMaxScanDimension) {
    throw DimensionError("scan: need 2 <= n-min <= n-max <= 1000000");
  }
  if (o.format != "csv" && o.format != "json") {
    throw DomainError("scan: --format must be csv or json");
  }
  const kernel::ConcentrationParam b(o.b);
  const sections::ScanTable table = sections::scan(s.n_min, s.n_max, b, s.quadrature);
  const auto [limit, limit_err] = limit_with_error(o.b);

  std::string content;
  if (o.format == "csv") {
    content = scan_csv(table, o.b, limit, limit_err);
  } else {
    OutputRecord rec = record_for("scan");
    rec.parameters = {{"b", format_number(o.b)},
                      {"n_min", std::to_string(s.n_min)},
                      {"n_max", std::to_string(s.n_max)},
                      {"rel_tol", format_number(s.quadrature.rel_tol)}};
    for (const sections::ScanRow& row : table.rows) {
      rec.results.push_back({"n=" + std::to_string(row.n), row.value, row.error_estimate});
    }
    rec.results.push_back({"n=inf", limit, limit_err});
    content = to_json(rec);
  }

  if (o.out_path) {
    write_file(*o.out_path, content);
  } else {
    out << content;
  }
  return kExitOk;
}

int cmd_lambda0(const Options& o, std::ostream& out) {
  if (!(o.lo > 0.0) || !(o.hi > o.lo)) throw DomainError("lambda0: need 0 < --lo < --hi");
  if (!(o.bracket_tol > 0.0)) throw DomainError("lambda0: --tol must be > 0");
  const verification::Crossing c = verification::lambda0_crossing(o.lo, o.hi, o.bracket_tol);
  const double half_width = 0.5 * o.bracket_tol;
  // Each gap is a closed form minus a quadrature at default tolerance.
  const double gap_err = 2e-12;

  OutputRecord rec = record_for("lambda0");
  rec.parameters = {{"lo", format_number(o.lo)},
                    {"hi", format_number(o.hi)},
                    {"tol", format_number(o.bracket_tol)},
                    {"status", "exploratory"}};
  rec.results = {
      {"root", c.root, half_width},
      {"gap_lo", c.gap_lo, gap_err},
      {"gap_hi", c.gap_hi, gap_err},
      {"distance_to_0.1962627", std::abs(c.root - verification::kLambda0Reference), half_width},
  };
  emit(rec, o.json, out);
  return kExitOk;
}

int cmd_verify(const Options& o, std::ostream& out) {
  for (const std::string& id : o.only) {
    const auto ids = verification::criterion_ids();
    if (std::find(ids.begin(), ids.end(), id) == ids.end()) {
      throw DomainError("verify: unknown criterion '" + id + "'");
    }
  }
  const verification::Report report = verification::run(o.only);

  if (o.json) {
    nlohmann::ordered_json j;
    j["command"] = "verify";
    j["criteria"] = nlohmann::ordered_json::array();
    for (const auto& item : report.items) {
      j["criteria"].push_back({{"number", item.number},
                               {"id", item.id},
                               {"title", item.title},
                               {"status", item.passed ? "PASS" : "FAIL"},
                               {"exploratory", item.exploratory},
                               {"detail", item.detail},
                               {"seconds", item.seconds}});
    }
    j["passed"] = report.passed();
    j["timestamp"] = utc_timestamp();
    out << j.dump(2) << "\n";
  } else {
    int failed = 0;
    for (const auto& item : report.items) {
      out << (item.passed ? "PASS" : "FAIL") << "  " << item.number << ". " << item.id
          << (item.exploratory ? " (exploratory)" : "") << ": " << item.title << "\n      "
          << item.detail << "\n";
      if (!item.passed && !item.exploratory) ++failed;
    }
    out << report.items.size() << " criteria run, " << failed << " required failed\n";
  }
  return report.passed() ? kExitOk : kExitVerificationFailed;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Central diagonal sections of the cube under truncated Gaussian measures",
               "cubesec"};
  app.require_subcommand(1);
  app.fallthrough();
  app.add_option("--config", o.config, "key = value file with tolerances and scan range");

  auto* section = app.add_subcommand("section", "Section measure for one (n, b, direction)");
  section->add_option("--n", o.n, "Dimension")->required();
  section->add_option("--b", o.b, "Gaussian weight b >= 0")->required();
  section->add_option("--dir", o.dir, "Direction")
      ->check(CLI::IsMember({"diagonal", "axis", "two_coord"}));
  section->add_option("--tol", o.tol, "Relative quadrature tolerance");
  section->add_flag("--json", o.json, "JSON output");

  auto* limit = app.add_subcommand("limit", "Closed-form n -> infinity limit and its series");
  limit->add_option("--b", o.b, "Gaussian weight b > 0")->required();
  limit->add_flag("--json", o.json, "JSON output");

  auto* scan = app.add_subcommand("scan", "Diagonal sections for a range of n");
  scan->add_option("--b", o.b, "Gaussian weight b >= 0")->required();
  scan->add_option("--n-min", o.n_min, "First dimension (default 2)");
  scan->add_option("--n-max", o.n_max, "Last dimension (default 50)");
  scan->add_option("--format", o.format, "csv or json")
      ->check(CLI::IsMember({"csv", "json"}));
  scan->add_option("--out", o.out_path, "Output file (default stdout)");
  scan->add_option("--tol", o.tol, "Relative quadrature tolerance");

  auto* lambda0 = app.add_subcommand(
      "lambda0", "Exploratory: b where the diagonal limit meets the two-coordinate section");
  lambda0->add_option("--lo", o.lo, "Lower end of the bracket");
  lambda0->add_option("--hi", o.hi, "Upper end of the bracket");
  lambda0->add_option("--tol", o.bracket_tol, "Bracket width to stop at");
  lambda0->add_flag("--json", o.json, "JSON output");

  auto* verify = app.add_subcommand("verify", "Run the acceptance checks");
  verify->add_option("--only", o.only, "Run only these criteria");
  verify->add_flag("--json", o.json, "JSON report");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*section) return cmd_section(o, out);
    if (*limit) return cmd_limit(o, out);
    if (*scan) return cmd_scan(o, out);
    if (*lambda0) return cmd_lambda0(o, out);
    return cmd_verify(o, out);
  } catch (const BracketError& e) {
    err << "error: " << e.what() << "\n";
    return kExitBracketing;
  } catch (const IoError& e) {
    err << "error: " << e.what() << "\n";
    return kExitIo;
  } catch (const quadrature::NonConvergenceError& e) {
    err << "error: " << e.what() << "\nbest estimate " << format_number(e.partial().value)
        << " +- " << format_number(e.partial().error_estimate) << "\n";
    return kExitNonConvergence;
  } catch (const quadrature::DivergenceError& e) {
    err << "error: " << e.what() << "\nbest estimate " << format_number(e.partial().value)
        << " +- " << format_number(e.partial().error_estimate) << "\n";
    return kExitNonConvergence;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitNonConvergence;
  }
}

}  // namespace cubesec::cli
