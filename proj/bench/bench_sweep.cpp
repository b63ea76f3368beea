// Timing comparison between the serial reference implementations and their
// production counterparts: fast vs naive cumulative digit sums, and the
// OpenMP sweep kernels at several thread counts.  Each parallel timing is
// checked against the serial result before it is reported, so a speedup
// here is a speedup on identical answers.

#include <omp.h>

#include <algorithm>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <vector>

#include "takagi/convexity.hpp"
#include "takagi/digitsum.hpp"
#include "takagi/dyadic.hpp"
#include "takagi/function.hpp"
#include "takagi/harness.hpp"
#include "takagi/interval.hpp"

using namespace takagi;

namespace {

PrecisionPolicy bench_policy() {
  PrecisionPolicy policy;
  policy.initial_bits = 128;
  policy.max_bits = 1024;
  return policy;
}

void bench_cumulative() {
  std::printf("cumulative digit sums, naive accumulation vs halving\n");
  std::printf("%12s %12s %12s %10s\n", "n", "naive (s)", "fast (s)",
              "speedup");
  for (int e : {10, 12, 14, 16}) {
    const std::uint64_t n = std::uint64_t{1} << e;
    double t0 = omp_get_wtime();
    const LambdaPolynomial slow = cumulative_digit_sum_naive(n);
    const double naive_s = omp_get_wtime() - t0;

    // The fast route is too quick to time in one shot; average over a batch
    // of distinct arguments near n so the call is not optimized away.
    const int reps = 1000;
    LambdaPolynomial sink;
    t0 = omp_get_wtime();
    for (int r = 0; r < reps; ++r) {
      sink = cumulative_digit_sum(n - static_cast<std::uint64_t>(r));
    }
    const double fast_s = (omp_get_wtime() - t0) / reps;

    if (slow != cumulative_digit_sum(n)) {
      std::printf("MISMATCH at n = %llu\n",
                  static_cast<unsigned long long>(n));
      std::exit(1);
    }
    std::printf("%12llu %12.6f %12.9f %10.0fx\n",
                static_cast<unsigned long long>(n), naive_s, fast_s,
                naive_s / fast_s);
  }
  std::printf("\n");
}

bool same_counters(const SweepResult& a, const SweepResult& b) {
  return a.total == b.total && a.strict == b.strict && a.equal == b.equal &&
         a.greater == b.greater && a.inconclusive == b.inconclusive &&
         a.violation_count == b.violation_count &&
         a.disagreement_count == b.disagreement_count &&
         a.unresolved_count == b.unresolved_count;
}

bool same_counters(const ConvexitySweepResult& a,
                   const ConvexitySweepResult& b) {
  return a.total == b.total && a.strict == b.strict && a.equal == b.equal &&
         a.greater == b.greater && a.inconclusive == b.inconclusive &&
         a.violation_count == b.violation_count &&
         a.identity_checks == b.identity_checks &&
         a.identity_failures == b.identity_failures;
}

void bench_digit_sweep() {
  SweepConfig config;
  config.p_grid = {0.0, 0.5, 1.0};
  config.m_max = 1024;
  config.policy = bench_policy();

  std::printf(
      "digit-sum sweep, m <= %llu, p in {0, 0.5, 1} "
      "(serial reference vs OpenMP kernel)\n",
      static_cast<unsigned long long>(config.m_max));
  double t0 = omp_get_wtime();
  const SweepResult reference = sweep_digitsum_serial(config);
  const double serial_s = omp_get_wtime() - t0;
  std::printf("%12s %12.3f s  (%llu instances)\n", "serial", serial_s,
              static_cast<unsigned long long>(reference.total));

  for (int threads : {1, 2, 4}) {
    config.threads = threads;
    t0 = omp_get_wtime();
    const SweepResult parallel = sweep_digitsum(config);
    const double parallel_s = omp_get_wtime() - t0;
    if (!same_counters(reference, parallel)) {
      std::printf("MISMATCH against the serial reference at %d threads\n",
                  threads);
      std::exit(1);
    }
    std::printf("%9d thr %12.3f s  %6.2fx\n", threads, parallel_s,
                serial_s / parallel_s);
  }
  std::printf(
      "(the reference fills every row's side enclosures and shares no\n"
      " per-chunk tables, so the 1-thread gap measures that, not threading)\n");
  std::printf("\n");
}

void bench_convexity_sweep() {
  ConvexitySweepConfig config;
  config.alpha_grid = {1.0, 1.5, 2.0};
  config.level_max = 6;
  config.policy = bench_policy();

  std::printf(
      "convexity sweep, level <= %d, alpha in {1, 1.5, 2} "
      "(serial reference vs OpenMP kernel)\n",
      config.level_max);
  double t0 = omp_get_wtime();
  const ConvexitySweepResult reference = sweep_convexity_serial(config);
  const double serial_s = omp_get_wtime() - t0;
  std::printf("%12s %12.3f s  (%llu pairs)\n", "serial", serial_s,
              static_cast<unsigned long long>(reference.total));

  for (int threads : {1, 2, 4}) {
    config.threads = threads;
    t0 = omp_get_wtime();
    const ConvexitySweepResult parallel = sweep_convexity(config);
    const double parallel_s = omp_get_wtime() - t0;
    if (!same_counters(reference, parallel)) {
      std::printf("MISMATCH against the serial reference at %d threads\n",
                  threads);
      std::exit(1);
    }
    std::printf("%9d thr %12.3f s  %6.2fx\n", threads, parallel_s,
                serial_s / parallel_s);
  }
  std::printf("\n");
}

void bench_evaluators() {
  const PrecisionPolicy policy = bench_policy();
  const AlphaParameter alpha(1.3);
  const int level = 12;
  const std::uint64_t n = std::uint64_t{1} << level;

  std::printf("function evaluators, level-%d grid, alpha = 1.3\n", level);
  struct Entry {
    const char* name;
    RealInterval (*eval)(const DyadicRational&, const AlphaParameter&,
                         const PrecisionPolicy&);
  };
  const Entry entries[] = {
      {"finite sum", &f_dyadic},
      {"digit formula", &f_digit_formula},
      {"midpoint recursion", &f_midpoint_recursive},
  };
  for (const Entry& entry : entries) {
    double width = 0.0;
    const double t0 = omp_get_wtime();
    for (std::uint64_t i = 0; i <= n; ++i) {
      const RealInterval v = entry.eval(DyadicRational(i, level), alpha,
                                        policy);
      width = std::max(width, v.width_upper());
    }
    const double elapsed = omp_get_wtime() - t0;
    std::printf("%20s %10.3f s  %9.3f us/eval  max width %.3g\n", entry.name,
                elapsed, 1e6 * elapsed / static_cast<double>(n + 1), width);
  }
}

}  // namespace

int main() {
  bench_cumulative();
  bench_digit_sweep();
  bench_convexity_sweep();
  bench_evaluators();
  return 0;
}
