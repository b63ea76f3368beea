#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "takagi/convexity.hpp"
#include "takagi/digitsum.hpp"

namespace takagi {

/// Parameter ranges the theorems actually cover.  Instances outside them are
/// still evaluated (the machinery is well defined for any finite exponent)
/// but their outcomes are observations, never certified violations.
inline bool in_theorem_p(double p) { return p >= 0.0 && p <= 1.0; }
inline bool in_theorem_alpha(double alpha) { return alpha >= 1.0 && alpha <= 2.0; }

enum class SweepMode { exhaustive, random };

/// Campaign over digit-sum instances (m, l, p): every l <= m <= m_max for each
/// grid point in exhaustive mode, or sample_count seeded draws per grid point
/// in random mode (l drawn log-uniformly so block boundaries l ~ 2^k stay
/// represented).  threads = 0 means the OpenMP default.
struct SweepConfig {
  std::vector<double> p_grid;
  std::uint64_t m_max = 0;
  SweepMode mode = SweepMode::exhaustive;
  std::uint64_t sample_count = 0;
  std::uint64_t seed = 0;
  PrecisionPolicy policy;
  int threads = 0;
};

/// Campaign over midpoint-convexity instances: all pairs x < y on the dyadic
/// grid of step 2^-level_max for each alpha in the grid.
struct ConvexitySweepConfig {
  std::vector<double> alpha_grid;
  int level_max = 0;
  PrecisionPolicy policy;
  int threads = 0;
};

/// Example lists inside sweep results stop growing at this many entries; the
/// counters keep the full totals.
inline constexpr std::size_t kExampleCap = 100;

/// Aggregated outcome of a digit-sum sweep.  The relation counters cover every
/// instance; the failure counters and example lists split by theorem scope:
/// violation   = bound certifiedly exceeded at 0 <= p <= 1,
/// disagreement = certified relation contradicts the predicted equality set,
/// unresolved  = in-theorem instance left inconclusive by escalation,
/// observation = bound exceeded at an exploration p outside [0,1].
struct SweepResult {
  std::uint64_t total = 0;
  std::uint64_t strict = 0;
  std::uint64_t equal = 0;
  std::uint64_t greater = 0;
  std::uint64_t inconclusive = 0;
  std::uint64_t violation_count = 0;
  std::uint64_t disagreement_count = 0;
  std::uint64_t unresolved_count = 0;
  std::uint64_t observation_count = 0;
  std::vector<InequalityReport> violations;
  std::vector<InequalityReport> classifier_disagreements;
  std::vector<InequalityReport> unresolved;
  std::vector<InequalityReport> observations;

  void merge(const SweepResult& other);
};

/// Aggregated outcome of a convexity sweep, with the same failure taxonomy
/// plus the per-instance rescaling-identity cross-check: both sides of the
/// identity must overlap, and the widest enclosure seen is recorded.
struct ConvexitySweepResult {
  std::uint64_t total = 0;
  std::uint64_t strict = 0;
  std::uint64_t equal = 0;
  std::uint64_t greater = 0;
  std::uint64_t inconclusive = 0;
  std::uint64_t violation_count = 0;
  std::uint64_t disagreement_count = 0;
  std::uint64_t unresolved_count = 0;
  std::uint64_t observation_count = 0;
  std::uint64_t identity_checks = 0;
  std::uint64_t identity_failures = 0;
  double max_identity_width = 0.0;
  std::vector<ConvexityReport> violations;
  std::vector<ConvexityReport> classifier_disagreements;
  std::vector<ConvexityReport> unresolved;
  std::vector<ConvexityReport> observations;

  void merge(const ConvexitySweepResult& other);
};

/// Receives finished report batches during a sweep.  Chunks arrive in
/// scheduler order from multiple threads; chunk_index gives their canonical
/// position, so an implementation that wants ordered output must buffer.
template <class Report>
class ReportSink {
 public:
  virtual ~ReportSink() = default;
  virtual void begin(std::size_t chunk_count) = 0;
  virtual void consume(std::size_t chunk_index, std::vector<Report>&& rows) = 0;
};

using InequalitySink = ReportSink<InequalityReport>;
using ConvexitySink = ReportSink<ConvexityReport>;

/// Number of work chunks a config partitions into; chunk indices below this
/// bound are valid arguments to the *_chunks entry points.
std::size_t sweep_digitsum_chunk_count(const SweepConfig& config);
std::size_t sweep_convexity_chunk_count(const ConvexitySweepConfig& config);

/// OpenMP sweep over the full campaign.  Deterministic for a fixed config:
/// partial results and report batches merge in canonical chunk order, so the
/// outcome (intervals included) is identical for any thread count.
SweepResult sweep_digitsum(const SweepConfig& config,
                           InequalitySink* sink = nullptr);
ConvexitySweepResult sweep_convexity(const ConvexitySweepConfig& config,
                                     ConvexitySink* sink = nullptr);

/// Same campaign restricted to chunks [chunk_begin, chunk_end); running the
/// pieces of any partition and merging in order reproduces the full sweep.
SweepResult sweep_digitsum_chunks(const SweepConfig& config,
                                  std::size_t chunk_begin,
                                  std::size_t chunk_end,
                                  InequalitySink* sink = nullptr);
ConvexitySweepResult sweep_convexity_chunks(const ConvexitySweepConfig& config,
                                            std::size_t chunk_begin,
                                            std::size_t chunk_end,
                                            ConvexitySink* sink = nullptr);

/// Single-threaded reference sweeps: one instance at a time through the plain
/// checking path, no shared tables, no double-precision prefilter.  Produce
/// results identical to the OpenMP kernels; kept as the comparison baseline.
SweepResult sweep_digitsum_serial(const SweepConfig& config,
                                  InequalitySink* sink = nullptr);
ConvexitySweepResult sweep_convexity_serial(const ConvexitySweepConfig& config,
                                            ConvexitySink* sink = nullptr);

/// Exhaustive agreement run between the certified classifier and the
/// predicted equality set at one p: a sweep whose disagreement and unresolved
/// counts must both be zero for the characterization to stand on this range.
SweepResult cross_validate_equality(double p, std::uint64_t m_max,
                                    const PrecisionPolicy& policy,
                                    int threads = 0);

/// Field-by-field equality including interval endpoints, for determinism and
/// serial-vs-parallel comparisons.
bool identical(const InequalityReport& a, const InequalityReport& b);
bool identical(const ConvexityReport& a, const ConvexityReport& b);
bool identical(const SweepResult& a, const SweepResult& b);
bool identical(const ConvexitySweepResult& a, const ConvexitySweepResult& b);

}  // namespace takagi
