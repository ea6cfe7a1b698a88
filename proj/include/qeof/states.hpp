#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numeric>
#include <span>
#include <string>
#include <vector>

#include "qeof/core/complex_matrix.hpp"
#include "qeof/core/svd.hpp"
#include "qeof/errors.hpp"
#include "qeof/tolerances.hpp"

namespace qeof {

/// A bipartite pure state sum_ij a_ij |i>|j> on C^m (x) C^n with m <= n.
///
/// Amplitudes are stored as an m x n coefficient matrix, A index major. The
/// logical (1-based) basis pair |i j> lives at row-major offset (i-1)*n + (j-1).
/// Instances are immutable once built.
class PureState {
 public:
  /// Validates dimensions and normalization. With `renormalize`, any nonzero
  /// vector is accepted and divided by its norm; otherwise the squared norm must
  /// already be within kNormTolerance of one and amplitudes are kept verbatim.
  PureState(std::size_t m, std::size_t n, std::vector<Complex> amplitudes, bool renormalize = false,
            std::size_t dimension_cap = kDefaultDimensionCap) {
    if (m < 2 || n < m) {
      throw Error(ErrorKind::dimension,
                  "need 2 <= m <= n, got m=" + std::to_string(m) + ", n=" + std::to_string(n));
    }
    if (n > dimension_cap) {
      throw Error(ErrorKind::dimension,
                  "dimension " + std::to_string(n) + " exceeds cap " + std::to_string(dimension_cap));
    }
    if (amplitudes.size() != m * n) {
      throw Error(ErrorKind::dimension, "expected m*n = " + std::to_string(m * n) + " amplitudes, got " +
                                            std::to_string(amplitudes.size()));
    }
    coefficients_ = ComplexMatrix(m, n, std::move(amplitudes));
    const double norm = hs_norm(coefficients_);
    if (renormalize) {
      if (norm <= 1e-12) throw Error(ErrorKind::degenerate_state, "cannot renormalize the zero vector");
      coefficients_ = scaled(std::move(coefficients_), 1.0 / norm);
    } else if (std::abs(norm * norm - 1.0) > kNormTolerance) {
      throw Error(ErrorKind::normalization,
                  "sum of |a_ij|^2 is " + std::to_string(norm * norm) + ", expected 1 (normalization)");
    }
  }

  PureState(const ComplexMatrix& coefficients, bool renormalize = false,
            std::size_t dimension_cap = kDefaultDimensionCap)
      : PureState(coefficients.rows(), coefficients.cols(),
                  std::vector<Complex>(coefficients.entries().begin(), coefficients.entries().end()),
                  renormalize, dimension_cap) {}

  std::size_t m() const noexcept { return coefficients_.rows(); }
  std::size_t n() const noexcept { return coefficients_.cols(); }

  const ComplexMatrix& coefficients() const noexcept { return coefficients_; }

  /// 1-based logical access a_ij.
  Complex amplitude(std::size_t i, std::size_t j) const { return coefficients_(i - 1, j - 1); }

  std::span<const Complex> amplitudes() const noexcept { return coefficients_.entries(); }

  friend bool operator==(const PureState&, const PureState&) = default;

 private:
  ComplexMatrix coefficients_;
};

inline PureState new_pure_state(std::size_t m, std::size_t n, std::vector<Complex> amplitudes,
                                bool renormalize = false) {
  return PureState(m, n, std::move(amplitudes), renormalize);
}

struct SchmidtDecomposition {
  std::vector<double> values;  // lambda_i, nonincreasing, length m, sum 1
  ComplexMatrix basis_a;       // m x m; columns are the |i_A>
  ComplexMatrix basis_b;       // n x n; |i_B> is the complex conjugate of column i

  /// Coefficients after the local rotation: basis_a^dagger * A * basis_b.
  /// For an exact decomposition this is diag(sqrt(lambda)) padded to m x n.
  ComplexMatrix rotate(const ComplexMatrix& coefficients) const {
    return mat_mul(mat_mul(adjoint(basis_a), coefficients), basis_b);
  }
};

inline SchmidtDecomposition schmidt(const PureState& state) {
  Svd d = svd(state.coefficients());
  std::vector<double> values(state.m(), 0.0);
  for (std::size_t i = 0; i < values.size(); ++i) {
    const double s = d.singular_values[i];
    values[i] = s * s;
  }
  // Normalize so the spectrum sums to one even for states accepted within the
  // normalization tolerance; sorting is inherited from the SVD.
  const double total = std::accumulate(values.begin(), values.end(), 0.0);
  for (auto& v : values) {
    v /= total;
    if (v < kZeroSchmidt) v = 0.0;
  }
  return {std::move(values), std::move(d.left), std::move(d.right)};
}

/// The same state expressed in its Schmidt basis: coefficient matrix
/// diag(sqrt(lambda_1), ..., sqrt(lambda_m)) padded with zero columns.
inline PureState to_schmidt_basis(const PureState& state) {
  const auto values = schmidt(state).values;
  ComplexMatrix diag(state.m(), state.n());
  for (std::size_t i = 0; i < values.size(); ++i) diag(i, i) = std::sqrt(values[i]);
  return PureState(diag, true);
}

/// rho_A = Tr_B |psi><psi| = A A^dagger.
inline ComplexMatrix reduced_density_a(const PureState& state) {
  return mat_mul(state.coefficients(), adjoint(state.coefficients()));
}

/// -sum lambda log2 lambda with 0 log 0 = 0, in bits.
inline double von_neumann_entropy(std::span<const double> spectrum) {
  if (spectrum.empty()) throw Error(ErrorKind::invalid_spectrum, "empty spectrum");
  double sum = 0.0;
  for (double v : spectrum) {
    if (!std::isfinite(v) || v < -1e-12) {
      throw Error(ErrorKind::invalid_spectrum, "spectrum entry " + std::to_string(v) + " is negative");
    }
    sum += v;
  }
  if (std::abs(sum - 1.0) > kNormTolerance) {
    throw Error(ErrorKind::invalid_spectrum, "spectrum sums to " + std::to_string(sum));
  }
  double entropy = 0.0;
  for (double v : spectrum) {
    if (v > 0.0) entropy -= v * std::log2(v);
  }
  return std::clamp(entropy, 0.0, std::log2(static_cast<double>(spectrum.size())));
}

inline double von_neumann_entropy(std::initializer_list<double> spectrum) {
  return von_neumann_entropy(std::span<const double>(spectrum.begin(), spectrum.size()));
}

/// Entanglement of formation of a pure state, in ebits.
inline double eof_direct(const PureState& state) { return von_neumann_entropy(schmidt(state).values); }

}  // namespace qeof
