#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <limits>
#include <numbers>
#include <sstream>

#include <json.hpp>

#include "cubesec/asymptotics.hpp"
#include "cubesec/cli.hpp"

namespace cubesec::cli {

std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm utc{};
  gmtime_r(&now, &utc);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &utc);
  return buf;
}

std::string format_number(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string to_text(const OutputRecord& record) {
  std::ostringstream os;
  for (const ResultEntry& r : record.results) {
    os << r.label << " = " << format_number(r.value) << " +- " << format_number(r.error_estimate)
       << '\n';
  }
  return os.str();
}

std::string to_json(const OutputRecord& record, bool include_timestamp) {
  nlohmann::ordered_json j;
  j["command"] = record.command;
  j["parameters"] = nlohmann::ordered_json::object();
  for (const auto& [key, value] : record.parameters) j["parameters"][key] = value;
  j["results"] = nlohmann::ordered_json::array();
  for (const ResultEntry& r : record.results) {
    j["results"].push_back(
        {{"label", r.label}, {"value", r.value}, {"error_estimate", r.error_estimate}});
  }
  if (include_timestamp) j["timestamp"] = record.timestamp;
  return j.dump(2) + "\n";
}

std::string scan_csv(const sections::ScanTable& table, double b, double limit, double limit_error) {
  std::string out = "n,b,A,err\n";
  for (const sections::ScanRow& row : table.rows) {
    out += std::to_string(row.n) + "," + format_number(row.b) + "," + format_number(row.value) +
           "," + format_number(row.error_estimate) + "\n";
  }
  out += "inf," + format_number(b) + "," + format_number(limit) + "," +
         format_number(limit_error) + "\n";
  return out;
}

std::pair<double, double> limit_with_error(double b) {
  constexpr double eps = std::numeric_limits<double>::epsilon();
  if (b == 0.0) {
    const double lebesgue = std::sqrt(6.0 / std::numbers::pi);
    return {lebesgue, 2.0 * eps * lebesgue};
  }
  const double limit = asymptotics::limit_value(b).limit;
  // A handful of correctly rounded operations, plus the relative error of
  // 1 - 4g when it is formed by subtraction.
  const double one_minus_4g = asymptotics::one_minus_4g(b);
  const double cancellation = b < asymptotics::kSeriesSwitch ? 0.0 : 4.0 * eps / one_minus_4g;
  return {limit, (16.0 * eps + cancellation) * limit};
}

}  // namespace cubesec::cli
