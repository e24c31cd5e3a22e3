#pragma once
#include <map>
#include <ostream>
#include <string>
#include <vector>

namespace frontprop {

// One numerically instantiated inequality: lhs <= rhs with slack
// rhs - lhs. `rows` carries the per-time detail when a check spans a
// trajectory; `stats` carries fitted/measured constants.
struct ReportRow {
  double time = 0.0;
  double lhs = 0.0;
  double rhs = 0.0;
  bool pass = true;
  double slack() const { return rhs - lhs; }
};

struct EstimateReport {
  std::string name;
  bool pass = true;
  std::vector<ReportRow> rows;
  std::map<std::string, double> stats;

  void add_row(double time, double lhs, double rhs, bool row_pass) {
    rows.push_back({time, lhs, rhs, row_pass});
    pass = pass && row_pass;
  }
  void add_row(double time, double lhs, double rhs) {
    add_row(time, lhs, rhs, lhs <= rhs);
  }
  // Row with the smallest slack.
  const ReportRow* worst() const;
};

void write_csv_header(std::ostream& os);
void append_csv(std::ostream& os, const std::string& scenario,
                const EstimateReport& report);

std::string format_double(double x);  // shortest round-trip text

}  // namespace frontprop
