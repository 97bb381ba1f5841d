#include <bandwagon/dynamics.hpp>

#include <bandwagon/errors.hpp>

#include <algorithm>
#include <cmath>
#include <string>

namespace bandwagon {

namespace {

// Knuth's TwoSum: s + err == a + b exactly.
inline void two_sum(double a, double b, double& s, double& err) noexcept {
  s = a + b;
  const double bv = s - a;
  const double av = s - bv;
  err = (a - av) + (b - bv);
}

// Rounds (hi + lo) / n. The remainder hi - q*n is exact under fma, so when
// the true quotient is representable it is returned exactly.
inline double divide_compensated(double hi, double lo, double n) noexcept {
  const double q = hi / n;
  const double r = std::fma(-q, n, hi);
  return (q + (r + lo) / n) + 0.0;  // + 0.0 folds -0.0 into 0.0
}

}  // namespace

OpinionMatrix::OpinionMatrix(RealMatrix values) : values_(std::move(values)) {
  if (values_.rows() == 0 || values_.cols() == 0) {
    throw InvalidInput("opinion matrix must have at least one agent and one topic");
  }
  for (double v : values_.data()) {
    if (!std::isfinite(v)) throw InvalidInput("opinion matrix contains a non-finite entry");
  }
}

OpinionMatrix::OpinionMatrix(std::initializer_list<std::initializer_list<double>> init)
    : OpinionMatrix(RealMatrix(init)) {}

double OpinionMatrix::max_abs() const noexcept {
  double m = 0.0;
  for (double v : values_.data()) m = std::max(m, std::abs(v));
  return m;
}

AppraisalMatrix::AppraisalMatrix(Matrix<std::int8_t> entries) : entries_(std::move(entries)) {
  const std::size_t n = entries_.rows();
  if (n == 0 || entries_.cols() != n) throw InvalidInput("appraisal matrix must be square and non-empty");
  for (std::size_t i = 0; i < n; ++i) {
    if (entries_(i, i) != 1) {
      throw InvalidInput("appraisal matrix diagonal entry " + std::to_string(i) + " is not 1");
    }
    for (std::size_t j = 0; j < n; ++j) {
      const auto v = entries_(i, j);
      if (v < -1 || v > 1) throw InvalidInput("appraisal entries must lie in {-1, 0, 1}");
      if (v != entries_(j, i)) throw InvalidInput("appraisal matrix is not symmetric");
    }
  }
}

AppraisalMatrix::AppraisalMatrix(std::initializer_list<std::initializer_list<std::int8_t>> init)
    : AppraisalMatrix(Matrix<std::int8_t>(init)) {}

bool AppraisalMatrix::is_complete() const noexcept {
  for (auto v : entries_.data()) {
    if (v == 0) return false;
  }
  return true;
}

ValidationReport validate_initial(const OpinionMatrix& y) {
  ValidationReport report;
  const std::size_t n = y.n_agents();
  const std::size_t m = y.n_topics();
  for (std::size_t i = 0; i < n; ++i) {
    bool zero = true;
    for (std::size_t j = 0; j < m && zero; ++j) zero = y(i, j) == 0.0;
    if (zero) report.zero_rows.push_back(i);
  }
  for (std::size_t j = 0; j < m; ++j) {
    bool zero = true;
    for (std::size_t i = 0; i < n && zero; ++i) zero = y(i, j) == 0.0;
    if (zero) report.zero_columns.push_back(j);
  }
  return report;
}

AppraisalMatrix appraisal_update(const OpinionMatrix& y) {
  const std::size_t n = y.n_agents();
  const std::size_t m = y.n_topics();
  Matrix<std::int8_t> x(n, n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    const auto yi = y.row(i);
    for (std::size_t j = i; j < n; ++j) {
      const auto yj = y.row(j);
      double acc = 0.0;
      for (std::size_t k = 0; k < m; ++k) acc += yi[k] * yj[k];
      const auto s = sign_of(acc);
      x(i, j) = s;
      x(j, i) = s;
    }
    if (x(i, i) != 1) throw InvalidInput("zero row: agent " + std::to_string(i) + " has no nonzero opinion");
  }
  return AppraisalMatrix(std::move(x));
}

OpinionMatrix opinion_update(const AppraisalMatrix& x, const OpinionMatrix& y) {
  const std::size_t n = y.n_agents();
  const std::size_t m = y.n_topics();
  if (x.n_agents() != n) {
    throw DimensionMismatch("appraisal matrix is " + std::to_string(x.n_agents()) + "x" +
                            std::to_string(x.n_agents()) + " but opinions have " + std::to_string(n) +
                            " agents");
  }
  const double divisor = static_cast<double>(n);
  RealMatrix out(n, m);
  std::vector<double> hi(m);
  std::vector<double> lo(m);
  for (std::size_t i = 0; i < n; ++i) {
    std::fill(hi.begin(), hi.end(), 0.0);
    std::fill(lo.begin(), lo.end(), 0.0);
    const auto xi = x.row(i);
    for (std::size_t k = 0; k < n; ++k) {
      const auto w = xi[k];
      if (w == 0) continue;
      const auto yk = y.row(k);
      for (std::size_t j = 0; j < m; ++j) {
        const double term = w > 0 ? yk[j] : -yk[j];
        double s;
        double e;
        two_sum(hi[j], term, s, e);
        hi[j] = s;
        lo[j] += e;
      }
    }
    for (std::size_t j = 0; j < m; ++j) out(i, j) = divide_compensated(hi[j], lo[j], divisor);
  }
  return OpinionMatrix(std::move(out));
}

ModelState step(const ModelState& state) {
  auto x = appraisal_update(state.opinions);
  auto y = opinion_update(x, state.opinions);
  return ModelState{std::move(y), std::move(x), state.step_index + 1};
}

}  // namespace bandwagon
