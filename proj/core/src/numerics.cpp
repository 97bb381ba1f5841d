#include <bandwagon/numerics.hpp>

#include <bandwagon/errors.hpp>

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace bandwagon {

namespace {

constexpr double kSymmetryTolerance = 1e-12;
constexpr double kOffDiagonalRatio = 1e-12;
constexpr int kMaxSweeps = 100;

double off_diagonal_norm(const RealMatrix& a) {
  double sum = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) {
      if (i != j) sum += a(i, j) * a(i, j);
    }
  }
  return std::sqrt(sum);
}

double frobenius_norm(const RealMatrix& a) {
  double sum = 0.0;
  for (double v : a.data()) sum += v * v;
  return std::sqrt(sum);
}

// Annihilates a(p, q) with a plane rotation, updating the full symmetric matrix.
void rotate(RealMatrix& a, std::size_t p, std::size_t q) {
  const double apq = a(p, q);
  if (apq == 0.0) return;
  const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
  double t;
  if (std::abs(theta) > 1e150) {
    t = 0.5 / theta;
  } else {
    t = (theta >= 0.0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
  }
  const double c = 1.0 / std::sqrt(t * t + 1.0);
  const double s = t * c;
  const double tau = s / (1.0 + c);

  a(p, p) -= t * apq;
  a(q, q) += t * apq;
  a(p, q) = 0.0;
  a(q, p) = 0.0;
  for (std::size_t r = 0; r < a.rows(); ++r) {
    if (r == p || r == q) continue;
    const double arp = a(r, p);
    const double arq = a(r, q);
    const double new_rp = arp - s * (arq + tau * arp);
    const double new_rq = arq + s * (arp - tau * arq);
    a(r, p) = new_rp;
    a(p, r) = new_rp;
    a(r, q) = new_rq;
    a(q, r) = new_rq;
  }
}

}  // namespace

double Spectrum::spectral_radius() const {
  double r = 0.0;
  for (double v : eigenvalues) r = std::max(r, std::abs(v));
  return r;
}

Spectrum symmetric_eigenvalues(const RealMatrix& m) {
  const std::size_t n = m.rows();
  if (m.cols() != n) throw InvalidInput("eigenvalues need a square matrix");
  RealMatrix a(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (std::abs(m(i, j) - m(j, i)) > kSymmetryTolerance) {
        throw InvalidInput("matrix is not symmetric");
      }
      a(i, j) = 0.5 * (m(i, j) + m(j, i));
    }
  }

  const double target = kOffDiagonalRatio * frobenius_norm(a);
  int sweeps = 0;
  while (off_diagonal_norm(a) >= target && target > 0.0) {
    if (++sweeps > kMaxSweeps) throw std::runtime_error("Jacobi eigensolver did not converge");
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) rotate(a, p, q);
    }
  }

  Spectrum spectrum;
  spectrum.eigenvalues.reserve(n);
  for (std::size_t i = 0; i < n; ++i) spectrum.eigenvalues.push_back(a(i, i));
  std::sort(spectrum.eigenvalues.begin(), spectrum.eigenvalues.end());
  return spectrum;
}

double default_rank_tolerance(const RealMatrix& m) {
  double max_entry = 0.0;
  for (double v : m.data()) max_entry = std::max(max_entry, std::abs(v));
  return 1e-9 * static_cast<double>(std::max(m.rows(), m.cols())) * max_entry;
}

std::size_t numerical_rank(const RealMatrix& m, std::optional<double> tol) {
  const double threshold = tol.value_or(default_rank_tolerance(m));
  if (tol && !(*tol > 0.0)) throw InvalidInput("rank tolerance must be positive");
  if (m.empty() || threshold == 0.0) return 0;  // only the zero matrix has a zero default tolerance

  const std::size_t rows = m.rows();
  const std::size_t cols = m.cols();
  RealMatrix embedding(rows + cols, rows + cols, 0.0);
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < cols; ++j) {
      embedding(i, rows + j) = m(i, j);
      embedding(rows + j, i) = m(i, j);
    }
  }
  const auto spectrum = symmetric_eigenvalues(embedding);
  return static_cast<std::size_t>(
      std::count_if(spectrum.eigenvalues.begin(), spectrum.eigenvalues.end(),
                    [threshold](double v) { return v > threshold; }));
}

}  // namespace bandwagon
