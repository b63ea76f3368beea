#include <omp.h>

#include <algorithm>
#include <bit>
#include <charconv>
#include <cstdint>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"
#include "takagi/csv.hpp"
#include "takagi/harness.hpp"

namespace {

using namespace takagi;

constexpr int kStdoutListCap = 20;  // example rows echoed per failure class

PrecisionPolicy make_policy(int bits) {
  PrecisionPolicy policy;
  policy.initial_bits = bits;
  policy.max_bits = std::max(1024, bits);
  return policy;
}

bool parse_uint(const std::string& text, std::uint64_t* out) {
  if (text.empty()) {
    return false;
  }
  const char* begin = text.data();
  const char* end = begin + text.size();
  const std::from_chars_result result = std::from_chars(begin, end, *out);
  return result.ec == std::errc{} && result.ptr == end;
}

struct ParsedPoint {
  DyadicRational value;
  bool dyadic_literal = false;  // literal form picks the explicit route
};

// Accepts "k" (integer 0 or 1), "a/2^n", "a/b" with b a power of two, or a
// decimal in [0, 1], which is snapped to the nearest multiple of
// 2^-snap_level with a stderr note when that moves the value.
ParsedPoint parse_point(const std::string& text, int snap_level) {
  const std::size_t slash = text.find('/');
  if (slash != std::string::npos) {
    std::uint64_t numerator = 0;
    if (!parse_uint(text.substr(0, slash), &numerator)) {
      throw std::domain_error("cannot parse numerator in '" + text + "'");
    }
    const std::string denom = text.substr(slash + 1);
    int level = 0;
    if (denom.rfind("2^", 0) == 0) {
      std::uint64_t exponent = 0;
      if (!parse_uint(denom.substr(2), &exponent) || exponent > 62) {
        throw std::domain_error("denominator exponent must lie in [0, 62]");
      }
      level = static_cast<int>(exponent);
    } else {
      std::uint64_t base = 0;
      if (!parse_uint(denom, &base) || base == 0 ||
          !std::has_single_bit(base)) {
        throw std::domain_error("denominator must be a power of two");
      }
      level = std::countr_zero(base);
    }
    return {DyadicRational(numerator, level), true};
  }
  std::uint64_t integer = 0;
  if (parse_uint(text, &integer)) {
    return {DyadicRational(integer, 0), true};  // validates 0 <= x <= 1
  }
  double decimal = 0.0;
  try {
    std::size_t used = 0;
    decimal = std::stod(text, &used);
    if (used != text.size()) {
      throw std::invalid_argument(text);
    }
  } catch (const std::exception&) {
    throw std::domain_error("cannot parse point '" + text + "'");
  }
  if (!(decimal >= 0.0 && decimal <= 1.0)) {
    throw std::domain_error("points must lie in [0, 1]");
  }
  const double scaled = std::ldexp(decimal, snap_level);
  const std::uint64_t numerator =
      static_cast<std::uint64_t>(std::llround(scaled));
  const DyadicRational snapped(numerator, snap_level);
  if (static_cast<double>(numerator) != scaled) {
    std::cerr << "note: snapped " << text << " to " << snapped.to_string()
              << " (nearest dyadic at level " << snap_level << ")\n";
  }
  return {snapped, false};
}

// Sink that keeps the rows satisfying a predicate, restored to canonical
// chunk order; used by the equality scan so only the interesting rows are
// ever held in memory.
template <class Report>
class OrderedCollector : public ReportSink<Report> {
 public:
  explicit OrderedCollector(std::function<bool(const Report&)> keep)
      : keep_(std::move(keep)) {}

  void begin(std::size_t chunk_count) override {
    const std::lock_guard<std::mutex> lock(mutex_);
    expected_ = chunk_count;
    next_ = 0;
    pending_.clear();
    kept_.clear();
  }

  void consume(std::size_t chunk_index, std::vector<Report>&& rows) override {
    std::vector<Report> survivors;
    for (Report& row : rows) {
      if (keep_(row)) {
        survivors.push_back(std::move(row));
      }
    }
    const std::lock_guard<std::mutex> lock(mutex_);
    pending_.emplace(chunk_index, std::move(survivors));
    while (!pending_.empty() && pending_.begin()->first == next_) {
      for (Report& row : pending_.begin()->second) {
        kept_.push_back(std::move(row));
      }
      pending_.erase(pending_.begin());
      ++next_;
    }
  }

  const std::vector<Report>& rows() const { return kept_; }

 private:
  std::function<bool(const Report&)> keep_;
  std::mutex mutex_;
  std::size_t expected_ = 0;
  std::size_t next_ = 0;
  std::map<std::size_t, std::vector<Report>> pending_;
  std::vector<Report> kept_;
};

void warn_exploration_p(const std::vector<double>& grid) {
  for (double p : grid) {
    if (!in_theorem_p(p)) {
      std::cerr << "note: p = " << format_double(p)
                << " lies outside [0, 1]; exploration only, bound failures "
                   "count as observations\n";
    }
  }
}

void warn_exploration_alpha(const std::vector<double>& grid) {
  for (double a : grid) {
    if (!in_theorem_alpha(a)) {
      std::cerr << "note: alpha = " << format_double(a)
                << " lies outside [1, 2]; exploration only, bound failures "
                   "count as observations\n";
    }
  }
}

void print_digit_example(const InequalityReport& r) {
  std::cout << "    p=" << format_double(r.p) << " m=" << r.m << " l=" << r.l
            << " relation=" << relation_name(r.relation) << " lhs=["
            << r.lhs.lo_string(20) << ", " << r.lhs.hi_string(20) << "] rhs=["
            << r.rhs.lo_string(20) << ", " << r.rhs.hi_string(20) << "]\n";
}

void print_convexity_example(const ConvexityReport& r) {
  std::cout << "    alpha=" << format_double(r.alpha) << " x="
            << r.x.to_string() << " y=" << r.y.to_string()
            << " relation=" << relation_name(r.relation) << " gap=["
            << r.gap.lo_string(20) << ", " << r.gap.hi_string(20)
            << "] bound=[" << r.bound.lo_string(20) << ", "
            << r.bound.hi_string(20) << "]\n";
}

template <class Report>
void print_examples(const char* label, std::uint64_t count,
                    const std::vector<Report>& examples,
                    void (*print_one)(const Report&)) {
  if (count == 0) {
    return;
  }
  std::cout << "  " << label << " (" << count << " total):\n";
  std::size_t shown = 0;
  for (const Report& r : examples) {
    if (shown == kStdoutListCap) {
      break;
    }
    print_one(r);
    ++shown;
  }
  if (count > shown) {
    std::cout << "    ... " << (count - shown) << " more\n";
  }
}

int exit_code_for(std::uint64_t violations, std::uint64_t disagreements,
                  std::uint64_t unresolved) {
  if (violations > 0 || disagreements > 0) {
    return 1;
  }
  if (unresolved > 0) {
    return 2;
  }
  return 0;
}

// ---- subcommand drivers ----

struct EvalArgs {
  double alpha = 1.0;
  std::string x_text;
  double tol = 1e-30;
  int snap_level = 32;
  std::string emit;
};

int run_eval(const EvalArgs& args, const PrecisionPolicy& policy) {
  const AlphaParameter alpha(args.alpha);
  const ParsedPoint point = parse_point(args.x_text, args.snap_level);
  RealInterval value;
  const char* route = nullptr;
  if (point.dyadic_literal) {
    value = f_digit_formula(point.value, alpha, policy);
    route = "explicit";
  } else {
    value = f_series(point.value.to_double(), alpha, SeriesTolerance(args.tol),
                     policy);
    route = "series";
  }
  std::cout << "x = " << point.value.to_string() << "\n"
            << "alpha = " << format_double(args.alpha) << "\n"
            << "route = " << route << "\n"
            << "f = [" << value.lo_string(kCsvDigits) << ", "
            << value.hi_string(kCsvDigits) << "]\n";
  if (!args.emit.empty()) {
    std::ofstream out(args.emit);
    if (!out) {
      std::cerr << "error: cannot open " << args.emit << "\n";
      return 70;
    }
    out << csv_plot_header() << '\n'
        << csv_plot_row(args.alpha, point.value, value) << '\n';
    if (!out.good()) {
      std::cerr << "error: write to " << args.emit << " failed\n";
      return 70;
    }
  }
  return 0;
}

struct DigitVerifyArgs {
  std::vector<double> p_grid;
  std::uint64_t m_max = 0;
  std::string mode = "exhaustive";
  std::uint64_t samples = 0;
  std::uint64_t seed = 0;
  std::string emit;
};

int run_verify_digitsum(const DigitVerifyArgs& args,
                        const PrecisionPolicy& policy, int threads) {
  SweepConfig config;
  config.p_grid = args.p_grid;
  config.m_max = args.m_max;
  config.policy = policy;
  config.threads = threads;
  if (args.mode == "random") {
    if (args.samples == 0) {
      std::cerr << "error: --mode random needs --samples >= 1\n";
      return 64;
    }
    config.mode = SweepMode::random;
    config.sample_count = args.samples;
    config.seed = args.seed;
  }
  warn_exploration_p(args.p_grid);

  std::ofstream emit_stream;
  std::optional<CsvInequalityWriter> writer;
  if (!args.emit.empty()) {
    emit_stream.open(args.emit);
    if (!emit_stream) {
      std::cerr << "error: cannot open " << args.emit << "\n";
      return 70;
    }
    writer.emplace(emit_stream, csv_digitsum_header());
  }

  const SweepResult result =
      sweep_digitsum(config, writer ? &*writer : nullptr);

  std::cout << "digit-sum sweep: " << result.total << " instances, "
            << (config.mode == SweepMode::random ? "random" : "exhaustive")
            << " mode, m <= " << args.m_max << "\n"
            << "  strict " << result.strict << "  equal " << result.equal
            << "  greater " << result.greater << "  inconclusive "
            << result.inconclusive << "\n";
  print_examples("certified violations", result.violation_count,
                 result.violations, &print_digit_example);
  print_examples("classifier disagreements", result.disagreement_count,
                 result.classifier_disagreements, &print_digit_example);
  print_examples("unresolved instances", result.unresolved_count,
                 result.unresolved, &print_digit_example);
  print_examples("exploration observations", result.observation_count,
                 result.observations, &print_digit_example);

  if (writer && (!writer->complete() || !emit_stream.good())) {
    std::cerr << "error: CSV output incomplete\n";
    return 70;
  }
  const int code = exit_code_for(result.violation_count,
                                 result.disagreement_count,
                                 result.unresolved_count);
  std::cout << (code == 0 ? "verified: the bound holds on every in-theorem "
                            "instance\n"
                          : "FAILED\n");
  return code;
}

struct ConvexityVerifyArgs {
  std::vector<double> alpha_grid;
  int level_max = 0;
  std::string emit;
};

int run_verify_convexity(const ConvexityVerifyArgs& args,
                         const PrecisionPolicy& policy, int threads) {
  ConvexitySweepConfig config;
  config.alpha_grid = args.alpha_grid;
  config.level_max = args.level_max;
  config.policy = policy;
  config.threads = threads;
  warn_exploration_alpha(args.alpha_grid);

  std::ofstream emit_stream;
  std::optional<CsvConvexityWriter> writer;
  if (!args.emit.empty()) {
    emit_stream.open(args.emit);
    if (!emit_stream) {
      std::cerr << "error: cannot open " << args.emit << "\n";
      return 70;
    }
    writer.emplace(emit_stream, csv_convexity_header());
  }

  const ConvexitySweepResult result =
      sweep_convexity(config, writer ? &*writer : nullptr);

  std::cout << "convexity sweep: " << result.total
            << " pairs at level <= " << args.level_max << "\n"
            << "  strict " << result.strict << "  equal " << result.equal
            << "  greater " << result.greater << "  inconclusive "
            << result.inconclusive << "\n"
            << "  rescaling identity: " << result.identity_checks
            << " checks, " << result.identity_failures
            << " failures, max enclosure width "
            << format_double(result.max_identity_width) << "\n";
  print_examples("certified violations", result.violation_count,
                 result.violations, &print_convexity_example);
  print_examples("classifier disagreements", result.disagreement_count,
                 result.classifier_disagreements, &print_convexity_example);
  print_examples("unresolved instances", result.unresolved_count,
                 result.unresolved, &print_convexity_example);
  print_examples("exploration observations", result.observation_count,
                 result.observations, &print_convexity_example);

  if (writer && (!writer->complete() || !emit_stream.good())) {
    std::cerr << "error: CSV output incomplete\n";
    return 70;
  }
  int code = exit_code_for(result.violation_count, result.disagreement_count,
                           result.unresolved_count);
  if (result.identity_failures > 0 && code == 0) {
    code = 1;  // the two computation routes contradict each other
  }
  std::cout << (code == 0 ? "verified: the bound holds on every in-theorem "
                            "pair\n"
                          : "FAILED\n");
  return code;
}

struct ScanArgs {
  std::optional<double> p;
  std::optional<double> alpha;
  std::optional<std::uint64_t> m_max;
  std::optional<int> level_max;
  std::string emit;
};

int scan_digit_equality(double p, std::uint64_t m_max,
                        const PrecisionPolicy& policy, int threads,
                        const std::string& emit) {
  if (!in_theorem_p(p)) {
    std::cerr << "error: the equality characterization needs 0 <= p <= 1\n";
    return 64;
  }
  SweepConfig config;
  config.p_grid = {p};
  config.m_max = m_max;
  config.policy = policy;
  config.threads = threads;
  OrderedCollector<InequalityReport> collector([](const InequalityReport& r) {
    return r.relation == Relation::equal_certified;
  });
  const SweepResult result = sweep_digitsum(config, &collector);

  std::cout << "equality instances at p = " << format_double(p)
            << ", m <= " << m_max << ": " << collector.rows().size() << " of "
            << result.total << "\n";
  std::size_t shown = 0;
  for (const InequalityReport& r : collector.rows()) {
    if (shown == 200) {
      std::cout << "  ... " << (collector.rows().size() - shown)
                << " more (use --emit for the full set)\n";
      break;
    }
    std::cout << "  m=" << r.m << " l=" << r.l << " k=" << r.k
              << (r.predicted_equality ? "" : "  [NOT PREDICTED]") << "\n";
    ++shown;
  }
  if (!emit.empty()) {
    std::ofstream out(emit);
    if (!out) {
      std::cerr << "error: cannot open " << emit << "\n";
      return 70;
    }
    out << csv_digitsum_header() << '\n';
    for (const InequalityReport& r : collector.rows()) {
      out << csv_row(r) << '\n';
    }
    if (!out.good()) {
      std::cerr << "error: write to " << emit << " failed\n";
      return 70;
    }
  }
  if (result.disagreement_count > 0) {
    std::cout << "MISMATCH: " << result.disagreement_count
              << " instances contradict the predicted equality set\n";
    return 1;
  }
  if (result.unresolved_count > 0) {
    std::cout << "INCONCLUSIVE: " << result.unresolved_count
              << " instances undecided at max precision\n";
    return 2;
  }
  std::cout << "classifier and predicted equality set agree everywhere\n";
  return 0;
}

int scan_convexity_equality(double alpha, int level_max,
                            const PrecisionPolicy& policy, int threads,
                            const std::string& emit) {
  if (!in_theorem_alpha(alpha)) {
    std::cerr << "error: the equality characterization needs 1 <= alpha <= 2\n";
    return 64;
  }
  ConvexitySweepConfig config;
  config.alpha_grid = {alpha};
  config.level_max = level_max;
  config.policy = policy;
  config.threads = threads;
  OrderedCollector<ConvexityReport> collector([](const ConvexityReport& r) {
    return r.relation == Relation::equal_certified;
  });
  const ConvexitySweepResult result = sweep_convexity(config, &collector);

  std::cout << "equality pairs at alpha = " << format_double(alpha)
            << ", level <= " << level_max << ": " << collector.rows().size()
            << " of " << result.total << "\n";
  std::size_t shown = 0;
  for (const ConvexityReport& r : collector.rows()) {
    if (shown == 200) {
      std::cout << "  ... " << (collector.rows().size() - shown)
                << " more (use --emit for the full set)\n";
      break;
    }
    std::cout << "  x=" << r.x.to_string() << " y=" << r.y.to_string()
              << (r.predicted_equality ? "" : "  [NOT PREDICTED]") << "\n";
    ++shown;
  }
  if (!emit.empty()) {
    std::ofstream out(emit);
    if (!out) {
      std::cerr << "error: cannot open " << emit << "\n";
      return 70;
    }
    out << csv_convexity_header() << '\n';
    for (const ConvexityReport& r : collector.rows()) {
      out << csv_row(r) << '\n';
    }
    if (!out.good()) {
      std::cerr << "error: write to " << emit << " failed\n";
      return 70;
    }
  }
  if (result.disagreement_count > 0 || result.identity_failures > 0) {
    std::cout << "MISMATCH: " << result.disagreement_count
              << " pairs contradict the predicted set, "
              << result.identity_failures << " identity failures\n";
    return 1;
  }
  if (result.unresolved_count > 0) {
    std::cout << "INCONCLUSIVE: " << result.unresolved_count
              << " pairs undecided at max precision\n";
    return 2;
  }
  std::cout << "classifier and predicted equality set agree everywhere\n";
  return 0;
}

int run_scan(const ScanArgs& args, const PrecisionPolicy& policy,
             int threads) {
  if (args.p.has_value() == args.alpha.has_value()) {
    std::cerr << "error: give exactly one of --p or --alpha\n";
    return 64;
  }
  if (args.p) {
    if (!args.m_max) {
      std::cerr << "error: --p needs --m-max\n";
      return 64;
    }
    return scan_digit_equality(*args.p, *args.m_max, policy, threads,
                               args.emit);
  }
  if (!args.level_max) {
    std::cerr << "error: --alpha needs --level-max\n";
    return 64;
  }
  return scan_convexity_equality(*args.alpha, *args.level_max, policy,
                                 threads, args.emit);
}

struct PlotArgs {
  std::vector<double> alpha_grid;
  int level = 0;
  std::string out_path;
};

int run_plot(const PlotArgs& args, const PrecisionPolicy& policy,
             int threads) {
  std::ofstream out(args.out_path);
  if (!out) {
    std::cerr << "error: cannot open " << args.out_path << "\n";
    return 70;
  }
  out << csv_plot_header() << '\n';
  const std::uint64_t count = (std::uint64_t{1} << args.level) + 1;
  const int team = threads > 0 ? threads : omp_get_max_threads();
  for (double a : args.alpha_grid) {
    const AlphaParameter alpha(a);
    std::vector<std::string> rows(count);
#pragma omp parallel for num_threads(team) schedule(dynamic, 64)
    for (long long i = 0; i < static_cast<long long>(count); ++i) {
      const DyadicRational x(static_cast<std::uint64_t>(i), args.level);
      rows[static_cast<std::size_t>(i)] =
          csv_plot_row(a, x, f_dyadic(x, alpha, policy.initial_bits));
    }
    for (const std::string& row : rows) {
      out << row << '\n';
    }
  }
  if (!out.good()) {
    std::cerr << "error: write to " << args.out_path << " failed\n";
    return 70;
  }
  std::cout << "wrote " << (args.alpha_grid.size() * count) << " rows to "
            << args.out_path << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Takagi-family function evaluation and digit-sum inequality "
               "verification"};
  app.require_subcommand(1);

  int bits = 128;
  app.add_option("--bits", bits,
                 "working precision for interval endpoints, in bits")
      ->envname("TAKAGI_BITS")
      ->check(CLI::Range(64, 8192));
  int threads = 0;
  app.add_option("--threads", threads, "worker threads (0 = all cores)")
      ->check(CLI::Range(0, 4096));

  EvalArgs eval_args;
  CLI::App* eval_cmd =
      app.add_subcommand("eval", "evaluate f_alpha at one point");
  eval_cmd->fallthrough();
  eval_cmd->add_option("--alpha", eval_args.alpha, "exponent, alpha > 0")
      ->required();
  eval_cmd->add_option("--x", eval_args.x_text,
                       "point: dyadic literal like 3/8 or 3/2^3, or a decimal")
      ->required();
  eval_cmd->add_option("--tol", eval_args.tol,
                       "series tail tolerance for decimal inputs");
  eval_cmd->add_option("--snap-level", eval_args.snap_level,
                       "dyadic level decimals snap to")
      ->check(CLI::Range(1, 62));
  eval_cmd->add_option("--emit", eval_args.emit, "write the value as a CSV row");

  DigitVerifyArgs digit_args;
  CLI::App* digit_cmd = app.add_subcommand(
      "verify-digitsum", "sweep the weighted digit-sum inequality");
  digit_cmd->fallthrough();
  digit_cmd->add_option("--p-grid", digit_args.p_grid,
                        "comma-separated exponents")
      ->required()
      ->delimiter(',');
  digit_cmd->add_option("--m-max", digit_args.m_max, "largest midpoint m")
      ->required();
  digit_cmd->add_option("--mode", digit_args.mode, "exhaustive or random")
      ->check(CLI::IsMember({"exhaustive", "random"}));
  digit_cmd->add_option("--samples", digit_args.samples,
                        "instances per grid point in random mode");
  digit_cmd->add_option("--seed", digit_args.seed, "random mode seed");
  digit_cmd->add_option("--emit", digit_args.emit, "write all rows as CSV");

  ConvexityVerifyArgs convexity_args;
  CLI::App* convexity_cmd = app.add_subcommand(
      "verify-convexity", "sweep the midpoint convexity bound");
  convexity_cmd->fallthrough();
  convexity_cmd->add_option("--alpha-grid", convexity_args.alpha_grid,
                            "comma-separated exponents")
      ->required()
      ->delimiter(',');
  convexity_cmd->add_option("--level-max", convexity_args.level_max,
                            "dyadic grid level")
      ->required()
      ->check(CLI::Range(0, 16));
  convexity_cmd->add_option("--emit", convexity_args.emit,
                            "write all rows as CSV");

  ScanArgs scan_args;
  CLI::App* scan_cmd = app.add_subcommand(
      "scan-equality", "list certified equality instances");
  scan_cmd->fallthrough();
  scan_cmd->add_option("--p", scan_args.p, "digit-sum exponent in [0, 1]");
  scan_cmd->add_option("--alpha", scan_args.alpha,
                       "convexity exponent in [1, 2]");
  scan_cmd->add_option("--m-max", scan_args.m_max, "largest midpoint m");
  scan_cmd->add_option("--level-max", scan_args.level_max,
                       "dyadic grid level")
      ->check(CLI::Range(0, 16));
  scan_cmd->add_option("--emit", scan_args.emit,
                       "write the equality rows as CSV");

  PlotArgs plot_args;
  CLI::App* plot_cmd = app.add_subcommand(
      "plot-data", "tabulate f_alpha on a dyadic grid as CSV");
  plot_cmd->fallthrough();
  plot_cmd->add_option("--alpha-grid", plot_args.alpha_grid,
                       "comma-separated exponents")
      ->required()
      ->delimiter(',');
  plot_cmd->add_option("--level", plot_args.level, "grid level")
      ->required()
      ->check(CLI::Range(0, 20));
  plot_cmd->add_option("--out", plot_args.out_path, "output CSV path")
      ->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 64;
  }

  try {
    const PrecisionPolicy policy = make_policy(bits);
    if (eval_cmd->parsed()) {
      return run_eval(eval_args, policy);
    }
    if (digit_cmd->parsed()) {
      return run_verify_digitsum(digit_args, policy, threads);
    }
    if (convexity_cmd->parsed()) {
      return run_verify_convexity(convexity_args, policy, threads);
    }
    if (scan_cmd->parsed()) {
      return run_scan(scan_args, policy, threads);
    }
    if (plot_cmd->parsed()) {
      return run_plot(plot_args, policy, threads);
    }
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 64;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 64;
  } catch (const std::out_of_range& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 64;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 70;
  }
  return 64;
}
