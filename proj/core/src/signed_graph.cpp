#include <bandwagon/signed_graph.hpp>

#include <bandwagon/errors.hpp>

#include <queue>

namespace bandwagon {

FactionVector::FactionVector(std::vector<std::int8_t> signs) : signs_(std::move(signs)) {
  if (signs_.empty()) throw InvalidInput("faction vector must be non-empty");
  for (auto s : signs_) {
    if (s != 1 && s != -1) throw InvalidInput("faction entries must be -1 or 1");
  }
}

FactionVector FactionVector::canonical() const {
  if (is_canonical()) return *this;
  std::vector<std::int8_t> flipped(signs_.size());
  for (std::size_t i = 0; i < signs_.size(); ++i) flipped[i] = static_cast<std::int8_t>(-signs_[i]);
  return FactionVector(std::move(flipped));
}

AppraisalMatrix FactionVector::outer() const {
  const std::size_t n = signs_.size();
  Matrix<std::int8_t> x(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) x(i, j) = static_cast<std::int8_t>(signs_[i] * signs_[j]);
  }
  return AppraisalMatrix(std::move(x));
}

BalanceCertificate certify_balance(const AppraisalMatrix& x) {
  const std::size_t n = x.n_agents();
  const auto first = x.row(0);
  for (std::size_t i = 0; i < n; ++i) {
    const auto pi = first[i];
    if (pi == 0) return {};
    const auto xi = x.row(i);
    for (std::size_t j = 0; j < n; ++j) {
      if (xi[j] != pi * first[j]) return {};
    }
  }
  return {true, FactionVector(std::vector<std::int8_t>(first.begin(), first.end()))};
}

bool all_triads_balanced(const AppraisalMatrix& x) {
  if (!x.is_complete()) throw InvalidInput("triad balance is undefined for an incomplete appraisal graph");
  const std::size_t n = x.n_agents();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      for (std::size_t k = j + 1; k < n; ++k) {
        if (x(i, j) * x(j, k) * x(k, i) != 1) return false;
      }
    }
  }
  return true;
}

bool is_connected(const AppraisalMatrix& x) {
  const std::size_t n = x.n_agents();
  std::vector<bool> seen(n, false);
  std::queue<std::size_t> frontier;
  frontier.push(0);
  seen[0] = true;
  std::size_t reached = 1;
  while (!frontier.empty()) {
    const auto i = frontier.front();
    frontier.pop();
    const auto xi = x.row(i);
    for (std::size_t j = 0; j < n; ++j) {
      if (j != i && xi[j] != 0 && !seen[j]) {
        seen[j] = true;
        ++reached;
        frontier.push(j);
      }
    }
  }
  return reached == n;
}

std::optional<FactionVector> rank_one_sign_check(const AppraisalMatrix& m) {
  auto cert = certify_balance(m);
  return std::move(cert.faction);
}

RealMatrix to_real(const AppraisalMatrix& x, double scale) {
  const std::size_t n = x.n_agents();
  RealMatrix out(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) out(i, j) = x(i, j) * scale;
  }
  return out;
}

}  // namespace bandwagon
