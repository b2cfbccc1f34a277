#include "weissbench/report.hpp"

#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "weissbench/error.hpp"

namespace weissbench::report {

std::string format_double(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

double parse_double(std::string_view token) {
  std::string s(token);
  while (!s.empty() && (s.back() == '\r' || s.back() == ' ')) s.pop_back();
  if (s.empty()) throw Error(ErrorCode::InvalidArgument, "empty numeric field");
  char* end = nullptr;
  errno = 0;
  double v = std::strtod(s.c_str(), &end);
  if (end != s.c_str() + s.size() || errno == ERANGE)
    throw Error(ErrorCode::InvalidArgument, "not a number: '" + s + "'");
  return v;
}

CsvTable::CsvTable(std::vector<std::string> header) : header_(std::move(header)) {}

void CsvTable::add_row(std::initializer_list<double> row) {
  add_row(std::vector<double>(row));
}

void CsvTable::add_row(const std::vector<double>& row) {
  if (row.size() != header_.size())
    throw Error(ErrorCode::InvalidArgument, "row width does not match CSV header");
  rows_.push_back(row);
}

std::string CsvTable::str() const {
  std::string out;
  for (std::size_t i = 0; i < header_.size(); ++i) {
    if (i) out += ',';
    out += header_[i];
  }
  out += '\n';
  for (const auto& row : rows_) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out += ',';
      out += format_double(row[i]);
    }
    out += '\n';
  }
  return out;
}

void CsvTable::write(const std::string& path) const { write_text(path, str()); }

void Summary::append(const std::vector<Check>& checks) {
  checks_.insert(checks_.end(), checks.begin(), checks.end());
}

bool Summary::all_pass() const noexcept {
  for (const auto& c : checks_)
    if (!c.pass) return false;
  return true;
}

std::vector<std::string> Summary::failed() const {
  std::vector<std::string> names;
  for (const auto& c : checks_)
    if (!c.pass) names.push_back(c.name);
  return names;
}

namespace {

// nlohmann serializes non-finite doubles as null; keep them legible instead.
nlohmann::json number_or_string(double x) {
  if (std::isfinite(x)) return x;
  return format_double(x);
}

}  // namespace

std::string Summary::json() const {
  nlohmann::ordered_json doc;
  doc["params"] = {{"q", number_or_string(q_)},
                   {"beta", number_or_string(beta_)},
                   {"gamma", number_or_string(gamma_)}};
  doc["checks"] = nlohmann::ordered_json::array();
  for (const auto& c : checks_) {
    doc["checks"].push_back({{"name", c.name},
                             {"pass", c.pass},
                             {"worst_slack", number_or_string(c.worst_slack)},
                             {"details", c.details}});
  }
  return doc.dump(2) + "\n";
}

void Summary::write(const std::string& path) const { write_text(path, json()); }

void write_text(const std::string& path, std::string_view text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::IoError, "cannot open '" + path + "' for writing");
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  if (!out) throw Error(ErrorCode::IoError, "write failed for '" + path + "'");
}

std::string read_text(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::IoError, "cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace weissbench::report
