#pragma once

// CSV tables and the JSON summary document shared by every suite.

#include <initializer_list>
#include <string>
#include <string_view>
#include <vector>

namespace weissbench::report {

/// 17 significant digits, so parsing the text recovers the exact double.
std::string format_double(double x);

/// strtod over the whole token; throws Error(InvalidArgument) on junk.
double parse_double(std::string_view token);

/// Comma-separated, header row, LF line endings.
class CsvTable {
 public:
  explicit CsvTable(std::vector<std::string> header);

  void add_row(std::initializer_list<double> row);
  void add_row(const std::vector<double>& row);

  const std::vector<std::string>& header() const noexcept { return header_; }
  std::size_t rows() const noexcept { return rows_.size(); }

  std::string str() const;
  /// Throws Error(IoError) if the file cannot be written.
  void write(const std::string& path) const;

 private:
  std::vector<std::string> header_;
  std::vector<std::vector<double>> rows_;
};

struct Check {
  std::string name;
  bool pass = false;
  double worst_slack = 0.0;
  std::string details;
};

/// {params:{q,beta,gamma}, checks:[{name, pass, worst_slack, details}]}
class Summary {
 public:
  Summary(double q, double beta, double gamma) : q_(q), beta_(beta), gamma_(gamma) {}

  void add(Check check) { checks_.push_back(std::move(check)); }
  void append(const std::vector<Check>& checks);

  const std::vector<Check>& checks() const noexcept { return checks_; }
  bool all_pass() const noexcept;
  std::vector<std::string> failed() const;

  std::string json() const;
  void write(const std::string& path) const;

 private:
  double q_, beta_, gamma_;
  std::vector<Check> checks_;
};

void write_text(const std::string& path, std::string_view text);
std::string read_text(const std::string& path);

}  // namespace weissbench::report
