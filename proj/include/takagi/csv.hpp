#pragma once

#include <cstddef>
#include <map>
#include <mutex>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "takagi/harness.hpp"

namespace takagi {

/// Significant digits for interval endpoints in CSV output.  Endpoints are
/// printed with directed rounding (lower bounds down, upper bounds up), so a
/// printed pair still encloses the mathematical value.
inline constexpr int kCsvDigits = 40;

/// Shortest decimal form that round-trips to the same double.
std::string format_double(double value);

std::string csv_digitsum_header();
std::string csv_row(const InequalityReport& report);

std::string csv_convexity_header();
std::string csv_row(const ConvexityReport& report);

std::string csv_plot_header();
std::string csv_plot_row(double alpha, const DyadicRational& x,
                         const RealInterval& value);

/// Report sink that writes CSV rows in canonical chunk order no matter which
/// thread finishes first: early batches stream straight through, out-of-order
/// ones wait in a buffer keyed by chunk index.  The header line is written on
/// begin().
template <class Report>
class OrderedCsvWriter : public ReportSink<Report> {
 public:
  OrderedCsvWriter(std::ostream& out, std::string header)
      : out_(out), header_(std::move(header)) {}

  void begin(std::size_t chunk_count) override {
    const std::lock_guard<std::mutex> lock(mutex_);
    expected_ = chunk_count;
    next_ = 0;
    pending_.clear();
    out_ << header_ << '\n';
  }

  void consume(std::size_t chunk_index, std::vector<Report>&& rows) override {
    const std::lock_guard<std::mutex> lock(mutex_);
    pending_.emplace(chunk_index, std::move(rows));
    while (!pending_.empty() && pending_.begin()->first == next_) {
      for (const Report& row : pending_.begin()->second) {
        out_ << csv_row(row) << '\n';
      }
      pending_.erase(pending_.begin());
      ++next_;
    }
  }

  /// True once every announced chunk has been written out.
  bool complete() {
    const std::lock_guard<std::mutex> lock(mutex_);
    return next_ == expected_ && pending_.empty();
  }

 private:
  std::ostream& out_;
  std::string header_;
  std::mutex mutex_;
  std::size_t expected_ = 0;
  std::size_t next_ = 0;
  std::map<std::size_t, std::vector<Report>> pending_;
};

using CsvInequalityWriter = OrderedCsvWriter<InequalityReport>;
using CsvConvexityWriter = OrderedCsvWriter<ConvexityReport>;

}  // namespace takagi
