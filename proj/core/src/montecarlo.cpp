#include <bandwagon/montecarlo.hpp>

#include <bandwagon/errors.hpp>

#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <thread>

namespace bandwagon {

namespace {

constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;

std::uint64_t mix64(std::uint64_t z) noexcept {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

bool nan_equal(double a, double b) { return (std::isnan(a) && std::isnan(b)) || a == b; }

}  // namespace

void ExperimentConfig::validate() const {
  if (agent_counts.empty()) throw InvalidInput("at least one agent count is required");
  if (topic_counts.empty()) throw InvalidInput("at least one topic count is required");
  for (auto n : agent_counts) {
    if (n == 0) throw InvalidInput("agent counts must be positive");
  }
  for (auto m : topic_counts) {
    if (m == 0) throw InvalidInput("topic counts must be positive");
  }
  if (trials == 0) throw InvalidInput("trials must be at least 1");
  if (!(opinion_std > 0.0) || !std::isfinite(opinion_std)) throw InvalidInput("opinion std must be positive");
  if (budget == 0) throw InvalidInput("budget must be positive");
  if (!(zero_tol > 0.0)) throw InvalidInput("zero tolerance must be positive");
}

bool operator==(const CellSummary& a, const CellSummary& b) {
  return a.n_agents == b.n_agents && a.n_topics == b.n_topics && a.trials_run == b.trials_run &&
         a.balanced_count == b.balanced_count && a.vanished_count == b.vanished_count &&
         a.budget_exceeded_count == b.budget_exceeded_count &&
         nan_equal(a.mean_hitting_time, b.mean_hitting_time) &&
         nan_equal(a.estimated_probability, b.estimated_probability);
}

void CellAccumulator::add(const TrialRecord& record) {
  ++trials_;
  switch (record.kind) {
    case OutcomeKind::BalancedEquilibrium:
      ++balanced_;
      hitting_sum_ += record.hitting_time;
      break;
    case OutcomeKind::VanishedToZero:
      ++vanished_;
      break;
    case OutcomeKind::BudgetExceeded:
      ++exceeded_;
      break;
  }
}

CellSummary CellAccumulator::summary() const {
  CellSummary s;
  s.n_agents = n_agents_;
  s.n_topics = n_topics_;
  s.trials_run = trials_;
  s.balanced_count = balanced_;
  s.vanished_count = vanished_;
  s.budget_exceeded_count = exceeded_;
  if (balanced_ > 0) s.mean_hitting_time = static_cast<double>(hitting_sum_) / static_cast<double>(balanced_);
  s.estimated_probability = trials_ == 0 ? 0.0 : static_cast<double>(balanced_) / static_cast<double>(trials_);
  return s;
}

std::size_t chernoff_trials(double epsilon, double delta) {
  if (!(epsilon > 0.0 && epsilon < 1.0)) throw InvalidInput("epsilon must lie in (0, 1)");
  if (!(delta > 0.0 && delta < 1.0)) throw InvalidInput("delta must lie in (0, 1)");
  return static_cast<std::size_t>(std::ceil(std::log(2.0 / delta) / (2.0 * epsilon * epsilon)));
}

TrialStream::TrialStream(std::uint64_t seed, std::size_t n_agents, std::size_t n_topics, std::size_t trial) {
  std::uint64_t key = mix64(seed + kGolden);
  key = mix64(key ^ (static_cast<std::uint64_t>(n_agents) + kGolden));
  key = mix64(key ^ (static_cast<std::uint64_t>(n_topics) + 2 * kGolden));
  key = mix64(key ^ (static_cast<std::uint64_t>(trial) + 3 * kGolden));
  state_ = key;
}

TrialStream::result_type TrialStream::operator()() noexcept {
  state_ += kGolden;
  return mix64(state_);
}

double TrialStream::uniform() noexcept { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }

double TrialStream::gaussian() noexcept {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  double u;
  double v;
  double s;
  do {
    u = 2.0 * uniform() - 1.0;
    v = 2.0 * uniform() - 1.0;
    s = u * u + v * v;
  } while (s >= 1.0 || s == 0.0);
  const double factor = std::sqrt(-2.0 * std::log(s) / s);
  spare_ = v * factor;
  has_spare_ = true;
  return u * factor;
}

OpinionMatrix sample_initial(std::size_t n_agents, std::size_t n_topics, double sigma, TrialStream& stream) {
  if (n_agents == 0 || n_topics == 0) throw InvalidInput("sample_initial needs N >= 1 and m >= 1");
  if (!(sigma > 0.0)) throw InvalidInput("sigma must be positive");
  for (;;) {
    RealMatrix values(n_agents, n_topics);
    for (double& v : values.data()) v = sigma * stream.gaussian();
    OpinionMatrix y(std::move(values));
    if (validate_initial(y).accepted()) return y;
  }
}

TrialRecord run_trial(const ExperimentConfig& config, std::size_t n_agents, std::size_t n_topics,
                      std::size_t trial) {
  TrialStream stream(config.seed, n_agents, n_topics, trial);
  const auto y0 = sample_initial(n_agents, n_topics, config.opinion_std, stream);
  TrajectoryOptions options;
  options.budget = config.budget;
  options.zero_tol = config.zero_tol;
  const auto outcome = run_trajectory(y0, options);
  return {outcome.kind, outcome.hitting_time.value_or(0)};
}

std::vector<TrialRecord> run_cell_records(const ExperimentConfig& config, std::size_t n_agents,
                                          std::size_t n_topics) {
  config.validate();
  std::vector<TrialRecord> records(config.trials);
  std::size_t workers = config.threads == 0 ? std::thread::hardware_concurrency() : config.threads;
  workers = std::max<std::size_t>(1, std::min(workers, config.trials));

  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto work = [&] {
    for (;;) {
      const std::size_t trial = next.fetch_add(1);
      if (trial >= config.trials) return;
      try {
        records[trial] = run_trial(config, n_agents, n_topics, trial);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next.store(config.trials);
        return;
      }
    }
  };

  if (workers == 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(work);
  }
  if (failure) std::rethrow_exception(failure);
  return records;
}

CellSummary summarize(std::size_t n_agents, std::size_t n_topics, const std::vector<TrialRecord>& records) {
  CellAccumulator acc(n_agents, n_topics);
  for (const auto& r : records) acc.add(r);
  return acc.summary();
}

std::vector<CellSummary> run_sweep(const ExperimentConfig& config) {
  config.validate();
  std::vector<CellSummary> out;
  out.reserve(config.agent_counts.size() * config.topic_counts.size());
  for (auto n : config.agent_counts) {
    for (auto m : config.topic_counts) out.push_back(summarize(n, m, run_cell_records(config, n, m)));
  }
  return out;
}

}  // namespace bandwagon
