#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include "cubesec/cli.hpp"
#include "cubesec/error.hpp"

namespace cubesec::cli {

namespace {

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return "";
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

double parse_double(const std::string& text, const std::string& where) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != text.size()) {
    throw DomainError(where + ": cannot parse '" + text + "' as a number");
  }
  return v;
}

int parse_int(const std::string& text, const std::string& where) {
  std::size_t used = 0;
  int v = 0;
  try {
    v = std::stoi(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != text.size()) {
    throw DomainError(where + ": cannot parse '" + text + "' as an integer");
  }
  return v;
}

}  // namespace

Settings load_settings(const std::optional<std::string>& config_path) {
  Settings s;
  if (const char* env = std::getenv("CUBESEC_TOL"); env != nullptr && *env != '\0') {
    s.quadrature.rel_tol = parse_double(trim(env), "CUBESEC_TOL");
  }
  if (!config_path) {
    s.quadrature.validate();
    return s;
  }

  std::ifstream in(*config_path);
  if (!in) throw IoError("cannot read config file " + *config_path);
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    const std::string where = *config_path + ":" + std::to_string(line_no);
    if (eq == std::string::npos) throw DomainError(where + ": expected key = value");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key == "rel_tol") {
      s.quadrature.rel_tol = parse_double(value, where);
    } else if (key == "abs_tol") {
      s.quadrature.abs_tol = parse_double(value, where);
    } else if (key == "max_subdivisions") {
      s.quadrature.max_subdivisions = parse_int(value, where);
    } else if (key == "n_min") {
      s.n_min = parse_int(value, where);
    } else if (key == "n_max") {
      s.n_max = parse_int(value, where);
    } else {
      throw DomainError(where + ": unknown key '" + key + "'");
    }
  }
  s.quadrature.validate();
  return s;
}

}  // namespace cubesec::cli
