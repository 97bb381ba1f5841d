// Trajectory runner and outcome classification.
//
// Every trajectory either hits a structurally balanced appraisal matrix in
// finite time (and is frozen at a modulus-consensus equilibrium from then on)
// or keeps X(t) in S_stable and decays to zero. The column-max Lyapunov
// function V(Y) = sum_j max_i |Y_ij| is monitored along the way.
#pragma once

#include <bandwagon/dynamics.hpp>
#include <bandwagon/signed_graph.hpp>

#include <cstddef>
#include <deque>
#include <functional>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

namespace bandwagon {

/// (X*, Y*) = (pp^T, p a^T) with a != 0.
struct EquilibriumPoint {
  AppraisalMatrix appraisals;
  OpinionMatrix opinions;
  FactionVector faction;
  std::vector<double> consensus_row;
};

enum class OutcomeKind { BalancedEquilibrium, VanishedToZero, BudgetExceeded };

std::string_view to_string(OutcomeKind kind) noexcept;

struct TraceEntry {
  std::size_t t = 0;
  double lyapunov = 0.0;
  bool balanced = false;
};

struct TrajectoryOutcome {
  OutcomeKind kind = OutcomeKind::BudgetExceeded;
  std::optional<std::size_t> hitting_time{};
  std::optional<EquilibriumPoint> equilibrium{};
  double final_lyapunov = 0.0;
  std::optional<std::vector<TraceEntry>> trace{};
  /// Last state reached (Y(t), X(t), t).
  ModelState final_state;
  /// Up to `snapshot_window` most recent opinion matrices, oldest first.
  std::deque<OpinionMatrix> recent_opinions{};
};

struct TrajectoryOptions {
  std::size_t budget = 10000;
  double zero_tol = 1e-12;
  bool record_trace = false;
  std::size_t snapshot_window = 0;
};

/// Called after every step with the state before and after it.
using StepObserver = std::function<void(const ModelState& before, const ModelState& after)>;

struct StableSetMembership {
  bool in_s_stable = false;
};

/// Per-column maxima mu_j = max_i |Y_ij|.
std::vector<double> column_maxima(const OpinionMatrix& y);

/// V(Y) = sum_j max_i |Y_ij|. Zero iff Y = 0.
double lyapunov(const OpinionMatrix& y);

/// X == sgn(Y Y^T) exactly and max |Y - (1/N) X Y| <= tol.
bool is_equilibrium(const AppraisalMatrix& x, const OpinionMatrix& y, double tol = 0.0);

/// Iterates the model from y0 until the appraisal matrix is balanced, the
/// opinions fall below zero_tol in max-norm, or the budget is spent.
/// Throws InvalidInput if y0 has a zero row or the options are invalid.
TrajectoryOutcome run_trajectory(const OpinionMatrix& y0, const TrajectoryOptions& options,
                                 const StepObserver& observer = {});

TrajectoryOutcome run_trajectory(const OpinionMatrix& y0, std::size_t budget, double zero_tol,
                                 bool record_trace);

/// Smallest T >= 1 such that the last `window` snapshots satisfy
/// Y(t + T) == Y(t) throughout; nullopt if there is none or the trace is
/// shorter than the window.
std::optional<std::size_t> detect_period(std::span<const OpinionMatrix> trace, std::size_t window);
std::optional<std::size_t> detect_period(const std::deque<OpinionMatrix>& trace, std::size_t window);

/// X in S_stable iff X is not pp^T.
StableSetMembership s_stable_membership(const AppraisalMatrix& x);

}  // namespace bandwagon
