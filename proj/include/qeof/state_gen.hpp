#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <span>
#include <string>
#include <vector>

#include <Eigen/QR>

#include "qeof/core/complex_matrix.hpp"
#include "qeof/core/svd.hpp"
#include "qeof/states.hpp"

// Test-state families. Every random family is a pure function of its seed.

namespace qeof::gen {

namespace detail {

inline std::vector<Complex> gaussian_amplitudes(std::size_t count, std::mt19937_64& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  std::vector<Complex> out(count);
  for (auto& z : out) {
    const double re = normal(rng);
    const double im = normal(rng);
    z = {re, im};
  }
  return out;
}

}  // namespace detail

/// Normalized i.i.d. standard complex Gaussian amplitudes.
inline PureState haar_random(std::size_t m, std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  return PureState(m, n, detail::gaussian_amplitudes(m * n, rng), true);
}

/// Coefficient matrix diag(sqrt(lambda)) padded to m x n, m = lambda.size().
inline PureState schmidt_diag(std::span<const double> lambda, std::size_t n) {
  double sum = 0.0;
  for (double v : lambda) {
    if (!std::isfinite(v) || v < 0.0) {
      throw Error(ErrorKind::invalid_spectrum, "Schmidt value " + std::to_string(v) + " is negative");
    }
    sum += v;
  }
  if (std::abs(sum - 1.0) > kNormTolerance) {
    throw Error(ErrorKind::invalid_spectrum, "Schmidt values sum to " + std::to_string(sum));
  }
  const std::size_t m = lambda.size();
  if (m < 2 || n < m) throw Error(ErrorKind::dimension, "schmidt_diag needs 2 <= len(lambda) <= n");
  ComplexMatrix coeffs(m, n);
  for (std::size_t i = 0; i < m; ++i) coeffs(i, i) = std::sqrt(lambda[i]);
  return PureState(coeffs);
}

inline PureState schmidt_diag(std::initializer_list<double> lambda, std::size_t n) {
  return schmidt_diag(std::span<const double>(lambda.begin(), lambda.size()), n);
}

/// (|11> + |22>)/sqrt(2).
inline PureState bell() {
  const double h = 1.0 / std::sqrt(2.0);
  return PureState(2, 2, {h, 0.0, 0.0, h});
}

/// sum_i |ii>/sqrt(d) on C^d (x) C^n, n defaults to d.
inline PureState max_entangled(std::size_t d, std::size_t n = 0) {
  if (n == 0) n = d;
  if (d < 2 || n < d) throw Error(ErrorKind::dimension, "max_entangled needs 2 <= d <= n");
  ComplexMatrix coeffs(d, n);
  for (std::size_t i = 0; i < d; ++i) coeffs(i, i) = 1.0 / std::sqrt(static_cast<double>(d));
  return PureState(coeffs, true);
}

/// |a> (x) |b> with Gaussian-random local factors.
inline PureState product(std::size_t m, std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  const auto a = detail::gaussian_amplitudes(m, rng);
  const auto b = detail::gaussian_amplitudes(n, rng);
  std::vector<Complex> amps;
  amps.reserve(m * n);
  for (const auto& x : a)
    for (const auto& y : b) amps.push_back(x * y);
  return PureState(m, n, std::move(amps), true);
}

/// Haar-distributed d x d unitary (QR of a Ginibre matrix with the phase fix).
inline ComplexMatrix haar_unitary(std::size_t d, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  const auto g = detail::gaussian_amplitudes(d * d, rng);
  Eigen::MatrixXcd ginibre(d, d);
  for (std::size_t r = 0; r < d; ++r)
    for (std::size_t c = 0; c < d; ++c) ginibre(r, c) = g[r * d + c];
  Eigen::HouseholderQR<Eigen::MatrixXcd> qr(ginibre);
  Eigen::MatrixXcd q = qr.householderQ();
  const Eigen::MatrixXcd r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Eigen::Index c = 0; c < q.cols(); ++c) {
    const double mag = std::abs(r(c, c));
    if (mag > 0.0) q.col(c) *= r(c, c) / mag;
  }
  return qeof::detail::from_eigen(q);
}

/// (U_A (x) U_B)|psi>, i.e. coefficients U_A * A * U_B^T.
inline PureState rotated(const PureState& base, const ComplexMatrix& unitary_a, const ComplexMatrix& unitary_b) {
  auto check = [](const ComplexMatrix& u, std::size_t dim, const char* side) {
    if (u.rows() != dim || u.cols() != dim) {
      throw Error(ErrorKind::dimension, std::string("rotation on side ") + side + " must be " +
                                            std::to_string(dim) + "x" + std::to_string(dim));
    }
    const double defect = max_abs_diff(mat_mul(u, adjoint(u)), ComplexMatrix::identity(dim));
    if (defect > kUnitaryTolerance) {
      throw Error(ErrorKind::invalid_unitary,
                  std::string("rotation on side ") + side + " deviates from unitary by " + std::to_string(defect));
    }
  };
  check(unitary_a, base.m(), "A");
  check(unitary_b, base.n(), "B");
  return PureState(mat_mul(mat_mul(unitary_a, base.coefficients()), transpose(unitary_b)), true);
}

/// Random local rotation drawn from two derived Haar unitaries.
inline PureState randomly_rotated(const PureState& base, std::uint64_t seed) {
  return rotated(base, haar_unitary(base.m(), seed), haar_unitary(base.n(), seed ^ 0x9e3779b97f4a7c15ULL));
}

}  // namespace qeof::gen
