#include "frontprop/report.hpp"

#include <cstdio>

namespace frontprop {

const ReportRow* EstimateReport::worst() const {
  const ReportRow* w = nullptr;
  for (const auto& r : rows)
    if (!w || r.slack() < w->slack()) w = &r;
  return w;
}

std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

void write_csv_header(std::ostream& os) {
  os << "scenario,check,time,lhs,rhs,slack,pass\n";
}

void append_csv(std::ostream& os, const std::string& scenario,
                const EstimateReport& report) {
  for (const auto& r : report.rows) {
    os << scenario << "," << report.name << "," << format_double(r.time) << ","
       << format_double(r.lhs) << "," << format_double(r.rhs) << ","
       << format_double(r.slack()) << "," << (r.pass ? 1 : 0) << "\n";
  }
  for (const auto& [key, value] : report.stats) {
    os << scenario << "," << report.name << ":" << key << ",,"
       << format_double(value) << ",,,\n";
  }
}

}  // namespace frontprop
