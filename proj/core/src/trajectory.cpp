#include <bandwagon/trajectory.hpp>

#include <bandwagon/errors.hpp>

#include <algorithm>
#include <cmath>

namespace bandwagon {

std::string_view to_string(OutcomeKind kind) noexcept {
  switch (kind) {
    case OutcomeKind::BalancedEquilibrium:
      return "BalancedEquilibrium";
    case OutcomeKind::VanishedToZero:
      return "VanishedToZero";
    case OutcomeKind::BudgetExceeded:
      return "BudgetExceeded";
  }
  return "Unknown";
}

std::vector<double> column_maxima(const OpinionMatrix& y) {
  std::vector<double> mu(y.n_topics(), 0.0);
  for (std::size_t i = 0; i < y.n_agents(); ++i) {
    const auto row = y.row(i);
    for (std::size_t j = 0; j < mu.size(); ++j) mu[j] = std::max(mu[j], std::abs(row[j]));
  }
  return mu;
}

double lyapunov(const OpinionMatrix& y) {
  double v = 0.0;
  for (double mu : column_maxima(y)) v += mu;
  return v;
}

bool is_equilibrium(const AppraisalMatrix& x, const OpinionMatrix& y, double tol) {
  if (x.n_agents() != y.n_agents()) return false;
  if (!validate_initial(y).zero_rows.empty()) return false;
  if (appraisal_update(y) != x) return false;
  const auto next = opinion_update(x, y);
  for (std::size_t i = 0; i < y.n_agents(); ++i) {
    for (std::size_t j = 0; j < y.n_topics(); ++j) {
      if (std::abs(next(i, j) - y(i, j)) > tol) return false;
    }
  }
  return true;
}

TrajectoryOutcome run_trajectory(const OpinionMatrix& y0, const TrajectoryOptions& options,
                                 const StepObserver& observer) {
  if (options.budget == 0) throw InvalidInput("trajectory budget must be positive");
  if (!(options.zero_tol > 0.0)) throw InvalidInput("zero tolerance must be positive");
  if (!validate_initial(y0).zero_rows.empty()) throw InvalidInput("initial opinion matrix has a zero row");

  TrajectoryOutcome outcome{.final_lyapunov = lyapunov(y0), .final_state = ModelState{y0, std::nullopt, 0}};
  if (options.record_trace) outcome.trace.emplace().push_back({0, lyapunov(y0), false});
  auto remember = [&](const OpinionMatrix& y) {
    if (options.snapshot_window == 0) return;
    outcome.recent_opinions.push_back(y);
    if (outcome.recent_opinions.size() > options.snapshot_window) outcome.recent_opinions.pop_front();
  };
  remember(y0);

  ModelState& state = outcome.final_state;
  for (std::size_t t = 1; t <= options.budget; ++t) {
    ModelState next = step(state);
    if (observer) observer(state, next);

    auto certificate = certify_balance(*next.appraisals);
    const double v = lyapunov(next.opinions);
    if (outcome.trace) outcome.trace->push_back({t, v, certificate.balanced});
    remember(next.opinions);
    state = std::move(next);
    outcome.final_lyapunov = v;

    const double peak = state.opinions.max_abs();
    if (certificate.balanced && peak > 0.0) {
      // Row 0 carries the consensus row itself: the faction is canonical (p_0 = 1).
      const auto first = state.opinions.row(0);
      outcome.kind = OutcomeKind::BalancedEquilibrium;
      outcome.hitting_time = t;
      outcome.equilibrium = EquilibriumPoint{*state.appraisals, state.opinions, std::move(*certificate.faction),
                                             std::vector<double>(first.begin(), first.end())};
      return outcome;
    }
    if (peak < options.zero_tol) {
      outcome.kind = OutcomeKind::VanishedToZero;
      outcome.hitting_time = t;
      return outcome;
    }
  }
  outcome.kind = OutcomeKind::BudgetExceeded;
  return outcome;
}

TrajectoryOutcome run_trajectory(const OpinionMatrix& y0, std::size_t budget, double zero_tol,
                                 bool record_trace) {
  return run_trajectory(y0, TrajectoryOptions{budget, zero_tol, record_trace, 0});
}

std::optional<std::size_t> detect_period(std::span<const OpinionMatrix> trace, std::size_t window) {
  if (window < 2 || trace.size() < window) return std::nullopt;
  const auto recent = trace.subspan(trace.size() - window);
  for (std::size_t period = 1; period < window; ++period) {
    bool repeats = true;
    for (std::size_t i = 0; i + period < window && repeats; ++i) {
      repeats = recent[i + period] == recent[i];
    }
    if (repeats) return period;
  }
  return std::nullopt;
}

std::optional<std::size_t> detect_period(const std::deque<OpinionMatrix>& trace, std::size_t window) {
  const std::vector<OpinionMatrix> copy(trace.begin(), trace.end());
  return detect_period(std::span<const OpinionMatrix>(copy), window);
}

StableSetMembership s_stable_membership(const AppraisalMatrix& x) {
  return {!certify_balance(x).balanced};
}

}  // namespace bandwagon
