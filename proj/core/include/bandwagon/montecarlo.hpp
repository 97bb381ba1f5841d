// Seeded Monte Carlo harness: Gaussian initial opinions, one trajectory per
// trial, per-(N, m) aggregation of balance probability and hitting times.
//
// Randomness for a trial depends only on (seed, N, m, trial index), so a
// sweep produces the same summaries for any worker count or schedule.
#pragma once

#include <bandwagon/dynamics.hpp>
#include <bandwagon/trajectory.hpp>

#include <cstddef>
#include <cstdint>
#include <functional>
#include <limits>
#include <vector>

namespace bandwagon {

struct ExperimentConfig {
  std::vector<std::size_t> agent_counts;
  std::vector<std::size_t> topic_counts;
  std::size_t trials = 1;
  double opinion_std = 10.0;
  std::uint64_t seed = 42;
  std::size_t budget = 10000;
  double zero_tol = 1e-12;
  /// Worker threads; 0 means std::thread::hardware_concurrency().
  std::size_t threads = 0;

  /// Throws InvalidInput on empty lists, zero sizes, trials == 0,
  /// opinion_std <= 0, budget == 0 or zero_tol <= 0.
  void validate() const;
};

struct CellSummary {
  std::size_t n_agents = 0;
  std::size_t n_topics = 0;
  std::size_t trials_run = 0;
  std::size_t balanced_count = 0;
  std::size_t vanished_count = 0;
  std::size_t budget_exceeded_count = 0;
  /// Mean over balanced trials; NaN when no trial balanced.
  double mean_hitting_time = std::numeric_limits<double>::quiet_NaN();
  double estimated_probability = 0.0;

  friend bool operator==(const CellSummary& a, const CellSummary& b);
};

/// What a sweep keeps from one trajectory.
struct TrialRecord {
  OutcomeKind kind = OutcomeKind::BudgetExceeded;
  std::size_t hitting_time = 0;  // 0 for BudgetExceeded
};

/// Streaming aggregation in trial-index order.
class CellAccumulator {
 public:
  CellAccumulator(std::size_t n_agents, std::size_t n_topics) : n_agents_(n_agents), n_topics_(n_topics) {}

  void add(const TrialRecord& record);
  [[nodiscard]] CellSummary summary() const;

 private:
  std::size_t n_agents_;
  std::size_t n_topics_;
  std::size_t trials_ = 0;
  std::size_t balanced_ = 0;
  std::size_t vanished_ = 0;
  std::size_t exceeded_ = 0;
  std::uint64_t hitting_sum_ = 0;  // integer sum keeps the mean order independent
};

/// Smallest n with n >= ln(2/delta) / (2 epsilon^2) (two-sided Hoeffding).
/// Throws InvalidInput unless 0 < epsilon < 1 and 0 < delta < 1.
std::size_t chernoff_trials(double epsilon, double delta);

/// Counter-seeded SplitMix64 stream; satisfies UniformRandomBitGenerator.
class TrialStream {
 public:
  using result_type = std::uint64_t;

  TrialStream(std::uint64_t seed, std::size_t n_agents, std::size_t n_topics, std::size_t trial);

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }
  result_type operator()() noexcept;

  /// Uniform on [0, 1) with 53 random bits.
  double uniform() noexcept;
  /// Standard normal (Marsaglia polar method).
  double gaussian() noexcept;

 private:
  std::uint64_t state_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

/// N x m matrix of independent N(0, sigma^2) entries. Redrawn wholesale if a
/// zero row or column appears.
OpinionMatrix sample_initial(std::size_t n_agents, std::size_t n_topics, double sigma, TrialStream& stream);

/// Draws and runs trial `trial` of cell (N, m).
TrialRecord run_trial(const ExperimentConfig& config, std::size_t n_agents, std::size_t n_topics,
                      std::size_t trial);

/// All trial records of one cell, in trial-index order, possibly computed in parallel.
std::vector<TrialRecord> run_cell_records(const ExperimentConfig& config, std::size_t n_agents,
                                          std::size_t n_topics);

CellSummary summarize(std::size_t n_agents, std::size_t n_topics, const std::vector<TrialRecord>& records);

/// One summary per (N, m) cell, agents-major, in config order.
std::vector<CellSummary> run_sweep(const ExperimentConfig& config);

}  // namespace bandwagon
