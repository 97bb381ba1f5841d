// Structural balance of signed appraisal graphs.
//
// For a complete sign matrix X in S_1^N the following coincide: X = pp^T for
// some p in {-1,1}^N, rank(X) = 1, every pair of rows is equal or opposite,
// the agents split into two factions, and every triad is balanced.
#pragma once

#include <bandwagon/dynamics.hpp>
#include <bandwagon/matrix.hpp>

#include <cstdint>
#include <optional>
#include <vector>

namespace bandwagon {

/// Two-faction assignment p in {-1,1}^N.
class FactionVector {
 public:
  /// Throws InvalidInput if empty or any entry is not exactly -1 or 1.
  explicit FactionVector(std::vector<std::int8_t> signs);

  [[nodiscard]] std::size_t size() const noexcept { return signs_.size(); }
  std::int8_t operator[](std::size_t i) const noexcept { return signs_[i]; }
  [[nodiscard]] const std::vector<std::int8_t>& signs() const noexcept { return signs_; }

  /// p or -p, whichever starts with +1.
  [[nodiscard]] FactionVector canonical() const;
  [[nodiscard]] bool is_canonical() const noexcept { return signs_.front() == 1; }

  /// p p^T.
  [[nodiscard]] AppraisalMatrix outer() const;

  friend bool operator==(const FactionVector&, const FactionVector&) = default;

 private:
  std::vector<std::int8_t> signs_;
};

struct BalanceCertificate {
  bool balanced = false;
  std::optional<FactionVector> faction;  // canonical, present iff balanced
};

/// Balanced iff X has no zero entries and X = pp^T. Reads p off the first
/// row and verifies in O(N^2).
BalanceCertificate certify_balance(const AppraisalMatrix& x);

/// X_ij X_jk X_ki = 1 for every triple of distinct agents. O(N^3).
/// Throws InvalidInput if an off-diagonal entry is zero.
bool all_triads_balanced(const AppraisalMatrix& x);

/// Connectivity of the graph with edges {(i,j) : i != j, X_ij != 0}.
bool is_connected(const AppraisalMatrix& x);

/// Returns p iff M = pp^T. Same decision as certify_balance; kept separate so
/// the spectral characterisation (1 in sigma(M/N)) can be checked against it.
std::optional<FactionVector> rank_one_sign_check(const AppraisalMatrix& m);

/// X * scale as a real matrix, for the eigensolver.
RealMatrix to_real(const AppraisalMatrix& x, double scale = 1.0);

}  // namespace bandwagon
