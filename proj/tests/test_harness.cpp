#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cstdint>
#include <mutex>
#include <set>
#include <stdexcept>
#include <tuple>
#include <utility>
#include <vector>

#include "takagi/harness.hpp"

using namespace takagi;

namespace {

PrecisionPolicy test_policy() {
  PrecisionPolicy policy;
  policy.initial_bits = 128;
  policy.max_bits = 1024;
  return policy;
}

SweepConfig digit_config(std::vector<double> p_grid, std::uint64_t m_max,
                         int threads = 0) {
  SweepConfig config;
  config.p_grid = std::move(p_grid);
  config.m_max = m_max;
  config.policy = test_policy();
  config.threads = threads;
  return config;
}

ConvexitySweepConfig convexity_config(std::vector<double> alpha_grid,
                                      int level_max, int threads = 0) {
  ConvexitySweepConfig config;
  config.alpha_grid = std::move(alpha_grid);
  config.level_max = level_max;
  config.policy = test_policy();
  config.threads = threads;
  return config;
}

// Collects every row, tracking which chunk indices arrived and whether any
// index repeated; used to pin down the sink contract.
template <class Report>
class RecordingSink : public ReportSink<Report> {
 public:
  void begin(std::size_t chunk_count) override {
    const std::lock_guard<std::mutex> lock(mutex_);
    begin_calls += 1;
    expected = chunk_count;
  }

  void consume(std::size_t chunk_index, std::vector<Report>&& rows) override {
    const std::lock_guard<std::mutex> lock(mutex_);
    duplicate |= !seen.insert(chunk_index).second;
    total_rows += rows.size();
    for (Report& r : rows) {
      collected.push_back(std::move(r));
    }
  }

  int begin_calls = 0;
  std::size_t expected = 0;
  std::set<std::size_t> seen;
  bool duplicate = false;
  std::size_t total_rows = 0;
  std::vector<Report> collected;

 private:
  std::mutex mutex_;
};

}  // namespace

TEST_CASE("theorem range predicates") {
  CHECK(in_theorem_p(0.0));
  CHECK(in_theorem_p(1.0));
  CHECK_FALSE(in_theorem_p(-0.1));
  CHECK_FALSE(in_theorem_p(1.1));
  CHECK(in_theorem_alpha(1.0));
  CHECK(in_theorem_alpha(2.0));
  CHECK_FALSE(in_theorem_alpha(0.99));
  CHECK_FALSE(in_theorem_alpha(2.01));
}

TEST_CASE("config validation") {
  CHECK_THROWS_AS(sweep_digitsum(digit_config({}, 10)),
                  std::invalid_argument);
  CHECK_THROWS_AS(sweep_digitsum(digit_config({-1.0}, 10)),
                  std::domain_error);
  CHECK_THROWS_AS(sweep_digitsum(digit_config({0.5}, 10, -1)),
                  std::invalid_argument);
  SweepConfig random_without_samples = digit_config({0.5}, 10);
  random_without_samples.mode = SweepMode::random;
  CHECK_THROWS_AS(sweep_digitsum(random_without_samples),
                  std::invalid_argument);

  CHECK_THROWS_AS(sweep_convexity(convexity_config({}, 3)),
                  std::invalid_argument);
  CHECK_THROWS_AS(sweep_convexity(convexity_config({0.0}, 3)),
                  std::domain_error);
  CHECK_THROWS_AS(sweep_convexity(convexity_config({1.5}, 17)),
                  std::domain_error);
}

TEST_CASE("digit sweep counts at pinned sizes") {
  // p = 1: the bound is an identity, so every instance certifies equal.
  const SweepResult ones = sweep_digitsum(digit_config({1.0}, 64));
  CHECK(ones.total == 2145);
  CHECK(ones.equal == 2145);
  CHECK(ones.strict == 0);
  CHECK(ones.violation_count == 0);
  CHECK(ones.disagreement_count == 0);
  CHECK(ones.unresolved_count == 0);

  const SweepResult frac = sweep_digitsum(digit_config({0.5, 0.3}, 48));
  CHECK(frac.total == 2450);
  CHECK(frac.equal == 194);
  CHECK(frac.strict == 2256);
  CHECK(frac.violation_count == 0);
  CHECK(frac.disagreement_count == 0);
  CHECK(frac.unresolved_count == 0);

  // The degenerate sweep holds the single trivial instance.
  const SweepResult tiny = sweep_digitsum(digit_config({0.5}, 0));
  CHECK(tiny.total == 1);
  CHECK(tiny.equal == 1);
}

TEST_CASE("parallel and serial digit sweeps are interchangeable") {
  for (int threads : {1, 4}) {
    const SweepConfig config = digit_config({0.0, 0.4, 1.0}, 40, threads);
    const SweepResult parallel = sweep_digitsum(config);
    const SweepResult serial = sweep_digitsum_serial(config);
    REQUIRE(identical(parallel, serial));
  }
}

TEST_CASE("digit sweep rows agree between paths and thread counts") {
  const SweepConfig base = digit_config({0.3, 1.0}, 32);

  RecordingSink<InequalityReport> fast_rows;
  SweepConfig fast_config = base;
  fast_config.threads = 4;
  sweep_digitsum(fast_config, &fast_rows);

  RecordingSink<InequalityReport> reference_rows;
  sweep_digitsum_serial(base, &reference_rows);

  REQUIRE(fast_rows.total_rows == reference_rows.total_rows);
  REQUIRE(fast_rows.begin_calls == 1);
  REQUIRE_FALSE(fast_rows.duplicate);
  REQUIRE(fast_rows.seen.size() == fast_rows.expected);
  REQUIRE(fast_rows.expected == sweep_digitsum_chunk_count(base));

  // The serial path consumes chunks in order, so its row stream is canonical;
  // sort the parallel stream by key and compare report for report.
  auto key = [](const InequalityReport& r) {
    return std::tuple(r.p, r.m, r.l);
  };
  std::vector<InequalityReport> fast = std::move(fast_rows.collected);
  std::sort(fast.begin(), fast.end(),
            [&](const InequalityReport& a, const InequalityReport& b) {
              return key(a) < key(b);
            });
  std::vector<InequalityReport> reference =
      std::move(reference_rows.collected);
  std::sort(reference.begin(), reference.end(),
            [&](const InequalityReport& a, const InequalityReport& b) {
              return key(a) < key(b);
            });
  for (std::size_t i = 0; i < fast.size(); ++i) {
    REQUIRE(identical(fast[i], reference[i]));
  }
}

TEST_CASE("chunk ranges partition the sweep") {
  const SweepConfig config = digit_config({0.2, 0.8}, 48);
  const std::size_t count = sweep_digitsum_chunk_count(config);
  REQUIRE(count >= 2);

  const SweepResult whole = sweep_digitsum(config);
  SweepResult merged = sweep_digitsum_chunks(config, 0, count / 2);
  merged.merge(sweep_digitsum_chunks(config, count / 2, count));
  CHECK(identical(whole, merged));
}

TEST_CASE("random sweeps reproduce under a fixed seed") {
  SweepConfig config = digit_config({0.5}, 1 << 20);
  config.mode = SweepMode::random;
  config.sample_count = 3000;
  config.seed = 1234;

  const SweepResult first = sweep_digitsum(config);
  CHECK(first.total == 3000);
  CHECK(first.violation_count == 0);
  CHECK(first.unresolved_count == 0);

  config.threads = 4;
  const SweepResult again = sweep_digitsum(config);
  CHECK(identical(first, again));

  const SweepResult serial = sweep_digitsum_serial(config);
  CHECK(identical(first, serial));
}

TEST_CASE("exploration mode observes without accusing") {
  // p = -0.9 sits outside the theorem; (3, 3) exceeds the formal bound
  // there, which must surface as an observation, never a violation.
  const SweepResult res = sweep_digitsum(digit_config({-0.9}, 3));
  CHECK(res.total == 10);
  CHECK(res.greater >= 1);
  CHECK(res.violation_count == 0);
  CHECK(res.disagreement_count == 0);
  CHECK(res.unresolved_count == 0);
  CHECK(res.observation_count == res.greater);
  REQUIRE(res.observations.size() >= 1);
  CHECK(res.observations[0].m == 3);
  CHECK(res.observations[0].l == 3);
}

TEST_CASE("convexity sweep counts at pinned sizes") {
  // alpha = 2: every pair is an equality, and the rescaling identity is
  // exact on both sides.
  const ConvexitySweepResult two = sweep_convexity(convexity_config({2.0}, 6));
  CHECK(two.total == 2080);
  CHECK(two.equal == 2080);
  CHECK(two.identity_checks == 2080);
  CHECK(two.identity_failures == 0);
  CHECK(two.max_identity_width == 0.0);

  // alpha = 1.5: equalities are exactly the adjacent pairs of each grid.
  const ConvexitySweepResult mid =
      sweep_convexity(convexity_config({1.5}, 6));
  CHECK(mid.total == 2080);
  CHECK(mid.equal == 127);
  CHECK(mid.strict == 1953);
  CHECK(mid.violation_count == 0);
  CHECK(mid.disagreement_count == 0);
  CHECK(mid.unresolved_count == 0);
  CHECK(mid.identity_failures == 0);

  const ConvexitySweepResult one = sweep_convexity(convexity_config({1.0}, 4));
  CHECK(one.total == 136);
  CHECK(one.equal == 65);
  CHECK(one.disagreement_count == 0);
  CHECK(one.unresolved_count == 0);
}

TEST_CASE("parallel and serial convexity sweeps are interchangeable") {
  const ConvexitySweepConfig config = convexity_config({1.3, 2.0}, 4, 4);
  const ConvexitySweepResult parallel = sweep_convexity(config);
  const ConvexitySweepResult serial = sweep_convexity_serial(config);
  REQUIRE(identical(parallel, serial));

  RecordingSink<ConvexityReport> rows;
  sweep_convexity(config, &rows);
  CHECK(rows.total_rows == parallel.total);
  CHECK(rows.expected == sweep_convexity_chunk_count(config));
  CHECK(rows.seen.size() == rows.expected);
}

TEST_CASE("convexity chunk ranges partition the sweep") {
  const ConvexitySweepConfig config = convexity_config({1.2, 1.7}, 4);
  const std::size_t count = sweep_convexity_chunk_count(config);
  REQUIRE(count >= 2);

  const ConvexitySweepResult whole = sweep_convexity(config);
  ConvexitySweepResult merged = sweep_convexity_chunks(config, 0, count / 3);
  merged.merge(sweep_convexity_chunks(config, count / 3, count));
  CHECK(identical(whole, merged));
}

TEST_CASE("equality cross-validation") {
  const SweepResult res = cross_validate_equality(0.5, 256, test_policy());
  CHECK(res.disagreement_count == 0);
  CHECK(res.unresolved_count == 0);
  CHECK_THROWS_AS(cross_validate_equality(1.5, 16, test_policy()),
                  std::domain_error);
}

TEST_CASE("merge caps example lists while counting everything") {
  SweepResult a;
  SweepResult b;
  InequalityReport r;
  r.relation = Relation::greater;
  for (int i = 0; i < 80; ++i) {
    r.m = static_cast<std::uint64_t>(i);
    a.violations.push_back(r);
    b.violations.push_back(r);
  }
  a.violation_count = 120;
  b.violation_count = 95;
  a.merge(b);
  CHECK(a.violation_count == 215);
  CHECK(a.violations.size() == kExampleCap);

  ConvexitySweepResult c;
  ConvexitySweepResult d;
  c.max_identity_width = 1e-30;
  d.max_identity_width = 4e-29;
  d.identity_checks = 7;
  c.merge(d);
  CHECK(c.max_identity_width == 4e-29);
  CHECK(c.identity_checks == 7);
}
