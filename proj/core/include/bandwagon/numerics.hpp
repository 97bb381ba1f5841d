// Small dense symmetric eigenvalue problems (cyclic Jacobi) and numerical rank.
#pragma once

#include <bandwagon/matrix.hpp>

#include <cstddef>
#include <optional>
#include <vector>

namespace bandwagon {

/// Eigenvalues sorted ascending.
struct Spectrum {
  std::vector<double> eigenvalues;

  [[nodiscard]] double smallest() const { return eigenvalues.front(); }
  [[nodiscard]] double largest() const { return eigenvalues.back(); }
  [[nodiscard]] double spectral_radius() const;
};

/// Cyclic Jacobi rotations until the off-diagonal Frobenius norm drops below
/// 1e-12 * ||M||_F. Throws InvalidInput if M is not square or not symmetric
/// within 1e-12 entrywise.
Spectrum symmetric_eigenvalues(const RealMatrix& m);

/// Default rank tolerance: 1e-9 * max(N, m) * max |M_ij|.
double default_rank_tolerance(const RealMatrix& m);

/// Number of singular values of M strictly above `tol`.
///
/// The singular values are read off the symmetric embedding [[0, M], [M^T, 0]],
/// whose eigenvalues are +-sigma_i padded with zeros; this avoids squaring the
/// condition number the way eig(M M^T) would. Throws InvalidInput if tol <= 0.
std::size_t numerical_rank(const RealMatrix& m, std::optional<double> tol = std::nullopt);

}  // namespace bandwagon
