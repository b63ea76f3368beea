#include "takagi/harness.hpp"

#include <omp.h>

#include <algorithm>
#include <atomic>
#include <bit>
#include <cmath>
#include <exception>
#include <limits>
#include <random>
#include <stdexcept>
#include <utility>

namespace takagi {
namespace {

constexpr std::uint64_t kMPerChunk = 32;        // m-values per digit-sum chunk
constexpr std::uint64_t kSamplesPerChunk = 1024;  // draws per random-mode chunk
constexpr std::uint64_t kTableMMax = std::uint64_t{1} << 16;  // shared-table cutoff
constexpr int kLevelMaxLimit = 16;              // grid-table memory guard

// splitmix64 finalizer; chains of it give well-spread per-chunk seeds from
// (base seed, grid index, chunk index) without any cross-chunk RNG state.
std::uint64_t scramble(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

std::uint64_t chunk_seed(std::uint64_t seed, std::uint64_t grid_index,
                         std::uint64_t chunk_index) {
  const std::uint64_t golden = 0x9e3779b97f4a7c15ull;
  std::uint64_t s = scramble(seed + golden);
  s = scramble(s ^ (grid_index + golden));
  return scramble(s ^ (chunk_index + golden));
}

// Unbiased draw from [0, n), n >= 1.  Hand-rolled rejection sampling because
// the standard distribution objects are not pinned across library
// implementations, and sweep reproducibility is part of the contract.
std::uint64_t bounded(std::mt19937_64& rng, std::uint64_t n) {
  const std::uint64_t reject_below =
      (std::numeric_limits<std::uint64_t>::max() - n + 1) % n;  // 2^64 mod n
  std::uint64_t r = rng();
  while (r < reject_below) {
    r = rng();
  }
  return r % n;
}

// m uniform on [0, m_max]; l log-uniform: pick a block (2^{e-1}, 2^e] first,
// then a value inside it, so the near-equality region l ~ 2^k keeps showing
// up even when m_max is huge.
std::pair<std::uint64_t, std::uint64_t> draw_instance(std::mt19937_64& rng,
                                                      std::uint64_t m_max) {
  const std::uint64_t m = bounded(rng, m_max + 1);
  if (m == 0) {
    return {0, 0};
  }
  const int top = std::bit_width(m) - 1;
  const int e = static_cast<int>(bounded(rng, static_cast<std::uint64_t>(top) + 1));
  if (e == 0) {
    return {m, 1};
  }
  const std::uint64_t lo = (std::uint64_t{1} << (e - 1)) + 1;
  const std::uint64_t hi = std::min(std::uint64_t{1} << e, m);
  return {m, lo + bounded(rng, hi - lo + 1)};
}

template <class Report>
void push_capped(std::vector<Report>& list, const Report& report) {
  if (list.size() < kExampleCap) {
    list.push_back(report);
  }
}

template <class Report>
void append_capped(std::vector<Report>& dst, const std::vector<Report>& src) {
  for (const Report& r : src) {
    if (dst.size() >= kExampleCap) {
      break;
    }
    dst.push_back(r);
  }
}

// One digit-sum instance, with optional shared state: a classification cache
// for the current p and a precomputed second difference.  Produces the same
// report as check_digit_inequality on 0 <= p <= 1; outside that range the
// prediction is vacuous and agreement just means the relation got certified.
// The side enclosures cost far more than the classification (they cannot use
// the cache's power tables at escalated precision), so they are filled only
// when the caller keeps the row -- for a CSV sink, or for the capped example
// lists, which hold anomalies only.
InequalityReport evaluate_digit_instance(std::uint64_t m, std::uint64_t l,
                                         double p,
                                         const PrecisionPolicy& policy,
                                         const InequalityEvalCache* cache,
                                         const LambdaPolynomial* delta_hint,
                                         bool with_sides) {
  InequalityReport report;
  report.m = m;
  report.l = l;
  report.p = p;
  report.k = l == 0 ? 0 : block_exponent(l);
  LambdaPolynomial local;
  const LambdaPolynomial* delta = delta_hint;
  if (delta == nullptr) {
    local = second_difference(m, l);
    delta = &local;
  }
  report.relation = classify_second_difference(*delta, l, p, policy, cache);
  if (in_theorem_p(p)) {
    report.predicted_equality = predict_equality(m, l, p);
    report.agrees = report.relation != Relation::inconclusive &&
                    (report.relation == Relation::equal_certified) ==
                        report.predicted_equality;
  } else {
    report.predicted_equality = false;
    report.agrees = report.relation != Relation::inconclusive;
  }
  const bool anomalous = report.relation == Relation::greater ||
                         report.relation == Relation::inconclusive ||
                         !report.agrees;
  if (with_sides || anomalous) {
    std::pair<RealInterval, RealInterval> sides =
        inequality_sides(*delta, l, p, policy.initial_bits);
    report.lhs = std::move(sides.first);
    report.rhs = std::move(sides.second);
  }
  return report;
}

void tally(SweepResult& out, const InequalityReport& report) {
  out.total += 1;
  switch (report.relation) {
    case Relation::strict:
      out.strict += 1;
      break;
    case Relation::equal_certified:
      out.equal += 1;
      break;
    case Relation::greater:
      out.greater += 1;
      break;
    case Relation::inconclusive:
      out.inconclusive += 1;
      break;
  }
  const bool in_theorem = in_theorem_p(report.p);
  if (report.relation == Relation::greater) {
    if (in_theorem) {
      out.violation_count += 1;
      push_capped(out.violations, report);
    } else {
      out.observation_count += 1;
      push_capped(out.observations, report);
    }
  }
  if (in_theorem && report.relation == Relation::inconclusive) {
    out.unresolved_count += 1;
    push_capped(out.unresolved, report);
  }
  if (in_theorem && report.relation != Relation::inconclusive &&
      !report.agrees) {
    out.disagreement_count += 1;
    push_capped(out.classifier_disagreements, report);
  }
}

void tally(ConvexitySweepResult& out, const ConvexityReport& report) {
  out.total += 1;
  switch (report.relation) {
    case Relation::strict:
      out.strict += 1;
      break;
    case Relation::equal_certified:
      out.equal += 1;
      break;
    case Relation::greater:
      out.greater += 1;
      break;
    case Relation::inconclusive:
      out.inconclusive += 1;
      break;
  }
  const bool in_theorem = in_theorem_alpha(report.alpha);
  if (report.relation == Relation::greater) {
    if (in_theorem) {
      out.violation_count += 1;
      push_capped(out.violations, report);
    } else {
      out.observation_count += 1;
      push_capped(out.observations, report);
    }
  }
  if (in_theorem && report.relation == Relation::inconclusive) {
    out.unresolved_count += 1;
    push_capped(out.unresolved, report);
  }
  if (in_theorem && report.relation != Relation::inconclusive &&
      !report.agrees) {
    out.disagreement_count += 1;
    push_capped(out.classifier_disagreements, report);
  }
}

void validate_digit_config(const SweepConfig& config) {
  validate(config.policy);
  if (config.p_grid.empty()) {
    throw std::invalid_argument("sweep needs at least one p grid point");
  }
  for (double p : config.p_grid) {
    if (!(std::isfinite(p) && p > -1.0)) {
      throw std::domain_error("sweep grid points must be finite and > -1");
    }
  }
  if (config.m_max >= (std::uint64_t{1} << 61)) {
    throw std::domain_error("m_max must stay below 2^61");
  }
  if (config.mode == SweepMode::random && config.sample_count == 0) {
    throw std::invalid_argument("random sweeps need a positive sample count");
  }
  if (config.threads < 0) {
    throw std::invalid_argument("thread count cannot be negative");
  }
}

void validate_convexity_config(const ConvexitySweepConfig& config) {
  validate(config.policy);
  if (config.alpha_grid.empty()) {
    throw std::invalid_argument("sweep needs at least one alpha grid point");
  }
  for (double a : config.alpha_grid) {
    AlphaParameter check(a);  // finite and positive, or it throws
    (void)check;
  }
  if (config.level_max < 0 || config.level_max > kLevelMaxLimit) {
    throw std::domain_error("level_max must lie in [0, 16]");
  }
  if (config.threads < 0) {
    throw std::invalid_argument("thread count cannot be negative");
  }
}

std::size_t digit_chunks_per_grid_point(const SweepConfig& config) {
  if (config.mode == SweepMode::exhaustive) {
    return static_cast<std::size_t>(config.m_max / kMPerChunk) + 1;
  }
  return static_cast<std::size_t>(
      (config.sample_count + kSamplesPerChunk - 1) / kSamplesPerChunk);
}

// Read-only state shared by every digit-sum chunk.  The fast path carries a
// per-p classification cache and (for small ranges) a table of cumulative
// sums; the reference path carries neither and walks the one-instance
// checking routine instead.
struct DigitShared {
  const SweepConfig* config = nullptr;
  const std::vector<InequalityEvalCache>* caches = nullptr;
  const std::vector<LambdaPolynomial>* sums = nullptr;  // index n -> C(n)
  bool reference_path = false;
};

SweepResult run_digit_chunk(const DigitShared& shared, std::size_t chunk,
                            std::vector<InequalityReport>* rows) {
  const SweepConfig& config = *shared.config;
  const std::size_t per_p = digit_chunks_per_grid_point(config);
  const std::size_t p_index = chunk / per_p;
  const std::size_t local = chunk % per_p;
  const double p = config.p_grid[p_index];
  const InequalityEvalCache* cache =
      shared.caches == nullptr ? nullptr : &(*shared.caches)[p_index];
  const bool with_sides = rows != nullptr;
  SweepResult partial;

  auto emit = [&](InequalityReport&& report) {
    tally(partial, report);
    if (rows != nullptr) {
      rows->push_back(std::move(report));
    }
  };

  if (config.mode == SweepMode::exhaustive) {
    const std::uint64_t m_begin = local * kMPerChunk;
    const std::uint64_t m_end = std::min(config.m_max, m_begin + kMPerChunk - 1);
    for (std::uint64_t m = m_begin; m <= m_end; ++m) {
      for (std::uint64_t l = 0; l <= m; ++l) {
        if (shared.reference_path && in_theorem_p(p)) {
          emit(check_digit_inequality(m, l, p, config.policy));
        } else if (shared.sums != nullptr) {
          const LambdaPolynomial delta =
              ((*shared.sums)[m + l] + (*shared.sums)[m - l]) -
              (*shared.sums)[m].scaled(2);
          emit(evaluate_digit_instance(m, l, p, config.policy, cache, &delta,
                                       with_sides));
        } else {
          emit(evaluate_digit_instance(m, l, p, config.policy, cache, nullptr,
                                       with_sides));
        }
      }
    }
  } else {
    const std::uint64_t s_begin = local * kSamplesPerChunk;
    const std::uint64_t s_end =
        std::min(config.sample_count, s_begin + kSamplesPerChunk);
    std::mt19937_64 rng(chunk_seed(config.seed, p_index, local));
    for (std::uint64_t s = s_begin; s < s_end; ++s) {
      const std::pair<std::uint64_t, std::uint64_t> inst =
          draw_instance(rng, config.m_max);
      if (shared.reference_path && in_theorem_p(p)) {
        emit(check_digit_inequality(inst.first, inst.second, p, config.policy));
      } else {
        emit(evaluate_digit_instance(inst.first, inst.second, p, config.policy,
                                     cache, nullptr, with_sides));
      }
    }
  }
  return partial;
}

// Grid of f values at one alpha, indexed by numerator at level_max + 1, so a
// pair (a, b) of level-level_max points finds its endpoints at even indices
// and its midpoint at a + b.  Values are bit-identical to what f_dyadic
// produces for any other representation of the same point, so chunks backed
// by this table match the reference path exactly.
std::vector<RealInterval> build_f_table(const AlphaParameter& alpha, int level,
                                        int bits) {
  const std::uint64_t size = (std::uint64_t{2} << level) + 1;
  std::vector<RealInterval> table;
  table.reserve(size);
  for (std::uint64_t i = 0; i < size; ++i) {
    table.push_back(f_dyadic(DyadicRational(i, level + 1), alpha, bits));
  }
  return table;
}

struct ConvexityShared {
  const ConvexitySweepConfig* config = nullptr;
  // Per alpha-index tables; empty vectors for indices outside the running
  // chunk range and on the reference path.
  std::vector<std::vector<RealInterval>> tables;
  bool reference_path = false;
};

struct PairOutcome {
  ConvexityReport report;
  LambdaPolynomial delta;
};

Relation relation_from(Ordering order) {
  switch (order) {
    case Ordering::less:
      return Relation::strict;
    case Ordering::greater:
      return Relation::greater;
    case Ordering::equal_certified:
      return Relation::equal_certified;
    case Ordering::inconclusive:
      break;
  }
  return Relation::inconclusive;
}

PairOutcome evaluate_pair(std::uint64_t a, std::uint64_t b,
                          const ConvexitySweepConfig& config,
                          const AlphaParameter& alpha,
                          const std::vector<RealInterval>* table) {
  const int level = config.level_max;
  const int bits = config.policy.initial_bits;
  PairOutcome out;
  ConvexityReport& report = out.report;
  report.x = DyadicRational(a, level);
  report.y = DyadicRational(b, level);
  report.alpha = alpha.value();
  const MidpointFrame frame = midpoint_frame(report.x, report.y);
  report.m = frame.m;
  report.l = frame.l;
  report.level = frame.level;
  RealInterval gap =
      table != nullptr
          ? (*table)[a + b] - ((*table)[2 * a] + (*table)[2 * b]).halve()
          : convexity_gap(report.x, report.y, alpha, bits);
  const DyadicRational diff = abs_difference(report.x, report.y);
  RealInterval bound = pow_dyadic_base(diff, alpha.value(), bits);
  out.delta = second_difference(frame.m, frame.l);
  const double p = alpha.value() - 1.0;
  const std::optional<bool> exact =
      convexity_exact_equality(out.delta, frame.l, p);
  if (exact && *exact) {
    report.relation = Relation::equal_certified;
  } else {
    const Ordering order = separate(
        gap, bound,
        [&](int refined) {
          return convexity_gap(report.x, report.y, alpha, refined);
        },
        [&](int refined) {
          return pow_dyadic_base(diff, alpha.value(), refined);
        },
        config.policy);
    report.relation = relation_from(order);
  }
  report.gap = std::move(gap);
  report.bound = std::move(bound);
  if (in_theorem_alpha(alpha.value())) {
    report.predicted_equality =
        predict_convexity_equality(report.x, report.y, alpha);
    report.agrees = report.relation != Relation::inconclusive &&
                    (report.relation == Relation::equal_certified) ==
                        report.predicted_equality;
  } else {
    report.predicted_equality = false;
    report.agrees = report.relation != Relation::inconclusive;
  }
  return out;
}

std::size_t convexity_chunks_per_alpha(const ConvexitySweepConfig& config) {
  // One chunk per midpoint sum s = a + b, s = 1 .. 2^{level_max + 1} - 1.
  return static_cast<std::size_t>((std::uint64_t{2} << config.level_max) - 1);
}

ConvexitySweepResult run_convexity_chunk(const ConvexityShared& shared,
                                         std::size_t chunk,
                                         std::vector<ConvexityReport>* rows) {
  const ConvexitySweepConfig& config = *shared.config;
  const std::size_t per_alpha = convexity_chunks_per_alpha(config);
  const std::size_t alpha_index = chunk / per_alpha;
  const std::uint64_t s = static_cast<std::uint64_t>(chunk % per_alpha) + 1;
  const AlphaParameter alpha(config.alpha_grid[alpha_index]);
  const std::vector<RealInterval>* table =
      shared.tables.empty() || shared.tables[alpha_index].empty()
          ? nullptr
          : &shared.tables[alpha_index];
  const std::uint64_t n = std::uint64_t{1} << config.level_max;
  const int bits = config.policy.initial_bits;
  // The rescaling identity compares against the digit side at p = alpha - 1;
  // meaningful only when that difference is exact in double (always true on
  // [1, 2], and for any alpha >= 1/2).
  const double p = alpha.value() - 1.0;
  const bool shift_exact = p + 1.0 == alpha.value();

  ConvexitySweepResult partial;
  const std::uint64_t a_begin = s > n ? s - n : 0;
  const std::uint64_t a_end = (s - 1) / 2;  // a < b = s - a
  for (std::uint64_t a = a_begin; a <= a_end; ++a) {
    const std::uint64_t b = s - a;
    PairOutcome outcome;
    if (shared.reference_path && in_theorem_alpha(alpha.value())) {
      outcome.report =
          check_convexity(DyadicRational(a, config.level_max),
                          DyadicRational(b, config.level_max), alpha,
                          config.policy);
      outcome.delta = second_difference(outcome.report.m, outcome.report.l);
    } else {
      outcome = evaluate_pair(a, b, config, alpha, table);
    }
    const ConvexityReport& report = outcome.report;
    tally(partial, report);
    if (shift_exact) {
      partial.identity_checks += 1;
      const RealInterval function_side =
          report.gap * pow2_scaled(alpha.value(), report.level - 1, bits);
      const RealInterval digit_side = outcome.delta.eval_interval(p, bits);
      if (!function_side.overlaps(digit_side)) {
        partial.identity_failures += 1;
      }
      partial.max_identity_width =
          std::max(partial.max_identity_width,
                   std::max(function_side.width_upper(),
                            digit_side.width_upper()));
    }
    if (rows != nullptr) {
      rows->push_back(std::move(outcome.report));
    }
  }
  return partial;
}

// Runs chunks [begin, end) under OpenMP, storing partials by index and
// merging them in canonical order afterwards, so scheduling never shows in
// the outcome.  The first exception aborts remaining work and is rethrown.
template <class Shared, class Result, class Report>
Result run_chunks(const Shared& shared, std::size_t begin, std::size_t end,
                  int threads,
                  Result (*runner)(const Shared&, std::size_t,
                                   std::vector<Report>*),
                  ReportSink<Report>* sink) {
  const std::size_t count = end - begin;
  if (sink != nullptr) {
    sink->begin(count);
  }
  std::vector<Result> partials(count);
  const int team = threads > 0 ? threads : omp_get_max_threads();
  std::atomic<bool> failed{false};
  std::exception_ptr error;
#pragma omp parallel for num_threads(team) schedule(dynamic)
  for (long long i = 0; i < static_cast<long long>(count); ++i) {
    if (failed.load(std::memory_order_relaxed)) {
      continue;
    }
    try {
      const std::size_t index = static_cast<std::size_t>(i);
      std::vector<Report> rows;
      partials[index] =
          runner(shared, begin + index, sink == nullptr ? nullptr : &rows);
      if (sink != nullptr) {
        sink->consume(index, std::move(rows));
      }
    } catch (...) {
      if (!failed.exchange(true)) {
        error = std::current_exception();
      }
    }
  }
  if (failed.load()) {
    std::rethrow_exception(error);
  }
  Result out;
  for (const Result& partial : partials) {
    out.merge(partial);
  }
  return out;
}

std::vector<InequalityEvalCache> build_digit_caches(const SweepConfig& config) {
  const std::size_t max_degree =
      static_cast<std::size_t>(std::bit_width(2 * config.m_max + 2)) + 1;
  const std::uint64_t l_max = std::min(config.m_max, kTableMMax);
  std::vector<InequalityEvalCache> caches;
  caches.reserve(config.p_grid.size());
  for (double p : config.p_grid) {
    caches.push_back(
        InequalityEvalCache::build(p, max_degree, l_max, config.policy));
  }
  return caches;
}

std::vector<LambdaPolynomial> build_sum_table(std::uint64_t m_max) {
  // C(n) for n = 0 .. 2 m_max, by C(n + 1) = C(n) + s(n).
  std::vector<LambdaPolynomial> sums;
  sums.reserve(static_cast<std::size_t>(2 * m_max) + 1);
  sums.emplace_back();
  for (std::uint64_t n = 0; n < 2 * m_max; ++n) {
    sums.push_back(sums.back() + digit_sum_poly(n));
  }
  return sums;
}

}  // namespace

void SweepResult::merge(const SweepResult& other) {
  total += other.total;
  strict += other.strict;
  equal += other.equal;
  greater += other.greater;
  inconclusive += other.inconclusive;
  violation_count += other.violation_count;
  disagreement_count += other.disagreement_count;
  unresolved_count += other.unresolved_count;
  observation_count += other.observation_count;
  append_capped(violations, other.violations);
  append_capped(classifier_disagreements, other.classifier_disagreements);
  append_capped(unresolved, other.unresolved);
  append_capped(observations, other.observations);
}

void ConvexitySweepResult::merge(const ConvexitySweepResult& other) {
  total += other.total;
  strict += other.strict;
  equal += other.equal;
  greater += other.greater;
  inconclusive += other.inconclusive;
  violation_count += other.violation_count;
  disagreement_count += other.disagreement_count;
  unresolved_count += other.unresolved_count;
  observation_count += other.observation_count;
  identity_checks += other.identity_checks;
  identity_failures += other.identity_failures;
  max_identity_width = std::max(max_identity_width, other.max_identity_width);
  append_capped(violations, other.violations);
  append_capped(classifier_disagreements, other.classifier_disagreements);
  append_capped(unresolved, other.unresolved);
  append_capped(observations, other.observations);
}

std::size_t sweep_digitsum_chunk_count(const SweepConfig& config) {
  validate_digit_config(config);
  return config.p_grid.size() * digit_chunks_per_grid_point(config);
}

std::size_t sweep_convexity_chunk_count(const ConvexitySweepConfig& config) {
  validate_convexity_config(config);
  return config.alpha_grid.size() * convexity_chunks_per_alpha(config);
}

SweepResult sweep_digitsum_chunks(const SweepConfig& config,
                                  std::size_t chunk_begin,
                                  std::size_t chunk_end,
                                  InequalitySink* sink) {
  const std::size_t count = sweep_digitsum_chunk_count(config);
  if (chunk_begin > chunk_end || chunk_end > count) {
    throw std::out_of_range("chunk range outside the sweep");
  }
  DigitShared shared;
  shared.config = &config;
  const std::vector<InequalityEvalCache> caches = build_digit_caches(config);
  shared.caches = &caches;
  std::vector<LambdaPolynomial> sums;
  if (config.mode == SweepMode::exhaustive && config.m_max <= kTableMMax) {
    sums = build_sum_table(config.m_max);
    shared.sums = &sums;
  }
  return run_chunks(shared, chunk_begin, chunk_end, config.threads,
                    &run_digit_chunk, sink);
}

SweepResult sweep_digitsum(const SweepConfig& config, InequalitySink* sink) {
  return sweep_digitsum_chunks(config, 0, sweep_digitsum_chunk_count(config),
                               sink);
}

SweepResult sweep_digitsum_serial(const SweepConfig& config,
                                  InequalitySink* sink) {
  const std::size_t count = sweep_digitsum_chunk_count(config);
  DigitShared shared;
  shared.config = &config;
  shared.reference_path = true;
  if (sink != nullptr) {
    sink->begin(count);
  }
  SweepResult out;
  for (std::size_t chunk = 0; chunk < count; ++chunk) {
    std::vector<InequalityReport> rows;
    SweepResult partial =
        run_digit_chunk(shared, chunk, sink == nullptr ? nullptr : &rows);
    if (sink != nullptr) {
      sink->consume(chunk, std::move(rows));
    }
    out.merge(partial);
  }
  return out;
}

ConvexitySweepResult sweep_convexity_chunks(const ConvexitySweepConfig& config,
                                            std::size_t chunk_begin,
                                            std::size_t chunk_end,
                                            ConvexitySink* sink) {
  const std::size_t count = sweep_convexity_chunk_count(config);
  if (chunk_begin > chunk_end || chunk_end > count) {
    throw std::out_of_range("chunk range outside the sweep");
  }
  ConvexityShared shared;
  shared.config = &config;
  shared.tables.resize(config.alpha_grid.size());
  if (chunk_begin < chunk_end) {
    const std::size_t per_alpha = convexity_chunks_per_alpha(config);
    const std::size_t first_alpha = chunk_begin / per_alpha;
    const std::size_t last_alpha = (chunk_end - 1) / per_alpha;
    for (std::size_t i = first_alpha; i <= last_alpha; ++i) {
      shared.tables[i] =
          build_f_table(AlphaParameter(config.alpha_grid[i]), config.level_max,
                        config.policy.initial_bits);
    }
  }
  return run_chunks(shared, chunk_begin, chunk_end, config.threads,
                    &run_convexity_chunk, sink);
}

ConvexitySweepResult sweep_convexity(const ConvexitySweepConfig& config,
                                     ConvexitySink* sink) {
  return sweep_convexity_chunks(config, 0,
                                sweep_convexity_chunk_count(config), sink);
}

ConvexitySweepResult sweep_convexity_serial(const ConvexitySweepConfig& config,
                                            ConvexitySink* sink) {
  const std::size_t count = sweep_convexity_chunk_count(config);
  ConvexityShared shared;
  shared.config = &config;
  shared.reference_path = true;
  if (sink != nullptr) {
    sink->begin(count);
  }
  ConvexitySweepResult out;
  for (std::size_t chunk = 0; chunk < count; ++chunk) {
    std::vector<ConvexityReport> rows;
    ConvexitySweepResult partial =
        run_convexity_chunk(shared, chunk, sink == nullptr ? nullptr : &rows);
    if (sink != nullptr) {
      sink->consume(chunk, std::move(rows));
    }
    out.merge(partial);
  }
  return out;
}

SweepResult cross_validate_equality(double p, std::uint64_t m_max,
                                    const PrecisionPolicy& policy,
                                    int threads) {
  if (!in_theorem_p(p)) {
    throw std::domain_error("equality cross-validation is defined on [0, 1]");
  }
  SweepConfig config;
  config.p_grid = {p};
  config.m_max = m_max;
  config.policy = policy;
  config.threads = threads;
  return sweep_digitsum(config);
}

bool identical(const InequalityReport& a, const InequalityReport& b) {
  return a.m == b.m && a.l == b.l && a.p == b.p && a.k == b.k &&
         a.lhs.same_endpoints(b.lhs) && a.rhs.same_endpoints(b.rhs) &&
         a.relation == b.relation &&
         a.predicted_equality == b.predicted_equality && a.agrees == b.agrees;
}

bool identical(const ConvexityReport& a, const ConvexityReport& b) {
  return a.x.numerator() == b.x.numerator() && a.x.level() == b.x.level() &&
         a.y.numerator() == b.y.numerator() && a.y.level() == b.y.level() &&
         a.alpha == b.alpha && a.m == b.m && a.l == b.l && a.level == b.level &&
         a.gap.same_endpoints(b.gap) && a.bound.same_endpoints(b.bound) &&
         a.relation == b.relation &&
         a.predicted_equality == b.predicted_equality && a.agrees == b.agrees;
}

namespace {

template <class Report>
bool identical_lists(const std::vector<Report>& a,
                     const std::vector<Report>& b) {
  if (a.size() != b.size()) {
    return false;
  }
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (!identical(a[i], b[i])) {
      return false;
    }
  }
  return true;
}

}  // namespace

bool identical(const SweepResult& a, const SweepResult& b) {
  return a.total == b.total && a.strict == b.strict && a.equal == b.equal &&
         a.greater == b.greater && a.inconclusive == b.inconclusive &&
         a.violation_count == b.violation_count &&
         a.disagreement_count == b.disagreement_count &&
         a.unresolved_count == b.unresolved_count &&
         a.observation_count == b.observation_count &&
         identical_lists(a.violations, b.violations) &&
         identical_lists(a.classifier_disagreements,
                         b.classifier_disagreements) &&
         identical_lists(a.unresolved, b.unresolved) &&
         identical_lists(a.observations, b.observations);
}

bool identical(const ConvexitySweepResult& a, const ConvexitySweepResult& b) {
  return a.total == b.total && a.strict == b.strict && a.equal == b.equal &&
         a.greater == b.greater && a.inconclusive == b.inconclusive &&
         a.violation_count == b.violation_count &&
         a.disagreement_count == b.disagreement_count &&
         a.unresolved_count == b.unresolved_count &&
         a.observation_count == b.observation_count &&
         a.identity_checks == b.identity_checks &&
         a.identity_failures == b.identity_failures &&
         a.max_identity_width == b.max_identity_width &&
         identical_lists(a.violations, b.violations) &&
         identical_lists(a.classifier_disagreements,
                         b.classifier_disagreements) &&
         identical_lists(a.unresolved, b.unresolved) &&
         identical_lists(a.observations, b.observations);
}

}  // namespace takagi
