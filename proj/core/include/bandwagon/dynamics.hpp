// Coupled opinion / appraisal update.
//
//   X(t+1) = sgn(Y(t) Y(t)^T)
//   Y(t+1) = (1/N) X(t+1) Y(t)
//
// Y is the N x m opinion matrix (agents x topics), X the N x N signed
// appraisal matrix. Everything here is a pure function over values.
#pragma once

#include <bandwagon/matrix.hpp>

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

namespace bandwagon {

/// N x m matrix of finite opinion levels, N >= 1 and m >= 1.
class OpinionMatrix {
 public:
  /// Throws InvalidInput on an empty shape or a non-finite entry.
  explicit OpinionMatrix(RealMatrix values);
  OpinionMatrix(std::initializer_list<std::initializer_list<double>> init);

  [[nodiscard]] std::size_t n_agents() const noexcept { return values_.rows(); }
  [[nodiscard]] std::size_t n_topics() const noexcept { return values_.cols(); }

  double operator()(std::size_t agent, std::size_t topic) const noexcept { return values_(agent, topic); }
  [[nodiscard]] std::span<const double> row(std::size_t agent) const noexcept { return values_.row(agent); }
  [[nodiscard]] const RealMatrix& values() const noexcept { return values_; }

  /// Largest |Y_ij| over the whole matrix.
  [[nodiscard]] double max_abs() const noexcept;

  friend bool operator==(const OpinionMatrix&, const OpinionMatrix&) = default;

 private:
  RealMatrix values_;
};

/// Member of S_1^N: symmetric, entries in {-1, 0, 1}, unit diagonal.
class AppraisalMatrix {
 public:
  /// Throws InvalidInput unless `entries` is square, symmetric, over
  /// {-1,0,1} and has a unit diagonal.
  explicit AppraisalMatrix(Matrix<std::int8_t> entries);
  AppraisalMatrix(std::initializer_list<std::initializer_list<std::int8_t>> init);

  [[nodiscard]] std::size_t n_agents() const noexcept { return entries_.rows(); }
  std::int8_t operator()(std::size_t i, std::size_t j) const noexcept { return entries_(i, j); }
  [[nodiscard]] std::span<const std::int8_t> row(std::size_t i) const noexcept { return entries_.row(i); }
  [[nodiscard]] const Matrix<std::int8_t>& entries() const noexcept { return entries_; }

  /// True when no off-diagonal entry is zero (the appraisal graph is complete).
  [[nodiscard]] bool is_complete() const noexcept;

  friend bool operator==(const AppraisalMatrix&, const AppraisalMatrix&) = default;

 private:
  Matrix<std::int8_t> entries_;
};

struct ModelState {
  OpinionMatrix opinions;
  std::optional<AppraisalMatrix> appraisals;  // absent at t = 0
  std::size_t step_index = 0;
};

/// Zero rows / columns of an initial opinion matrix. Indices are 0-based.
struct ValidationReport {
  std::vector<std::size_t> zero_rows;
  std::vector<std::size_t> zero_columns;

  [[nodiscard]] bool accepted() const noexcept { return zero_rows.empty() && zero_columns.empty(); }
};

/// sgn with sgn(0) = sgn(-0) = 0 and no tolerance band.
constexpr std::int8_t sign_of(double v) noexcept { return v > 0.0 ? 1 : (v < 0.0 ? -1 : 0); }

/// Lists all-zero rows and columns (exact 0.0 comparison).
ValidationReport validate_initial(const OpinionMatrix& y);

/// X = sgn(Y Y^T). Inner products accumulate left to right in double.
/// Throws InvalidInput when a row of Y is all zero.
AppraisalMatrix appraisal_update(const OpinionMatrix& y);

/// (1/N) X Y, divided by the agent count N.
///
/// Each entry is a compensated sum (error-free transformations, then a
/// remainder-corrected division by N). This keeps fixed points exact:
/// X = pp^T and Y = p a^T give back Y bit for bit. Throws DimensionMismatch.
OpinionMatrix opinion_update(const AppraisalMatrix& x, const OpinionMatrix& y);

/// One step of the coupled model. Propagates appraisal_update errors.
ModelState step(const ModelState& state);

}  // namespace bandwagon
