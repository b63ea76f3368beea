#include "takagi/csv.hpp"

#include <array>
#include <charconv>
#include <stdexcept>

namespace takagi {

std::string format_double(double value) {
  std::array<char, 64> buffer;
  const std::to_chars_result result =
      std::to_chars(buffer.data(), buffer.data() + buffer.size(), value);
  if (result.ec != std::errc{}) {
    throw std::runtime_error("double formatting failed");
  }
  return std::string(buffer.data(), result.ptr);
}

std::string csv_digitsum_header() {
  return "p,m,l,k,lhs_lo,lhs_hi,rhs_lo,rhs_hi,relation,predicted_equality,"
         "agrees";
}

namespace {

const char* bool_name(bool b) { return b ? "true" : "false"; }

}  // namespace

std::string csv_row(const InequalityReport& report) {
  std::string row;
  row.reserve(160);
  row += format_double(report.p);
  row += ',';
  row += std::to_string(report.m);
  row += ',';
  row += std::to_string(report.l);
  row += ',';
  row += std::to_string(report.k);
  row += ',';
  row += report.lhs.lo_string(kCsvDigits);
  row += ',';
  row += report.lhs.hi_string(kCsvDigits);
  row += ',';
  row += report.rhs.lo_string(kCsvDigits);
  row += ',';
  row += report.rhs.hi_string(kCsvDigits);
  row += ',';
  row += relation_name(report.relation);
  row += ',';
  row += bool_name(report.predicted_equality);
  row += ',';
  row += bool_name(report.agrees);
  return row;
}

std::string csv_convexity_header() {
  return "alpha,level,m,l,x,y,gap_lo,gap_hi,bound_lo,bound_hi,relation,"
         "predicted_equality,agrees";
}

std::string csv_row(const ConvexityReport& report) {
  std::string row;
  row.reserve(200);
  row += format_double(report.alpha);
  row += ',';
  row += std::to_string(report.level);
  row += ',';
  row += std::to_string(report.m);
  row += ',';
  row += std::to_string(report.l);
  row += ',';
  row += report.x.to_string();
  row += ',';
  row += report.y.to_string();
  row += ',';
  row += report.gap.lo_string(kCsvDigits);
  row += ',';
  row += report.gap.hi_string(kCsvDigits);
  row += ',';
  row += report.bound.lo_string(kCsvDigits);
  row += ',';
  row += report.bound.hi_string(kCsvDigits);
  row += ',';
  row += relation_name(report.relation);
  row += ',';
  row += bool_name(report.predicted_equality);
  row += ',';
  row += bool_name(report.agrees);
  return row;
}

std::string csv_plot_header() { return "alpha,x_num,x_level,f_lo,f_hi"; }

std::string csv_plot_row(double alpha, const DyadicRational& x,
                         const RealInterval& value) {
  std::string row;
  row.reserve(120);
  row += format_double(alpha);
  row += ',';
  row += std::to_string(x.numerator());
  row += ',';
  row += std::to_string(x.level());
  row += ',';
  row += value.lo_string(kCsvDigits);
  row += ',';
  row += value.hi_string(kCsvDigits);
  return row;
}

}  // namespace takagi
