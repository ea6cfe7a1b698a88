#pragma once

#include <algorithm>
#include <vector>

#include <Eigen/Dense>

#include "qeof/core/complex_matrix.hpp"

namespace qeof {

/// M = left * diag(singular_values) * adjoint(right), with full square unitaries
/// on both sides (left is rows x rows, right is cols x cols).
struct Svd {
  ComplexMatrix left;
  std::vector<double> singular_values;  // nonincreasing, length min(rows, cols)
  ComplexMatrix right;
};

namespace detail {

inline Eigen::MatrixXcd to_eigen(const ComplexMatrix& m) {
  Eigen::MatrixXcd out(m.rows(), m.cols());
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c) out(r, c) = m(r, c);
  return out;
}

inline ComplexMatrix from_eigen(const Eigen::MatrixXcd& m) {
  ComplexMatrix out(static_cast<std::size_t>(m.rows()), static_cast<std::size_t>(m.cols()));
  for (Eigen::Index r = 0; r < m.rows(); ++r)
    for (Eigen::Index c = 0; c < m.cols(); ++c) out(r, c) = m(r, c);
  return out;
}

}  // namespace detail

inline Svd svd(const ComplexMatrix& m) {
  if (!m.all_finite()) throw Error(ErrorKind::invalid_input, "svd of a matrix with non-finite entries");
  // Two-sided Jacobi: slow for large matrices but accurate to roundoff, and our
  // matrices are at most 32 x 32.
  Eigen::JacobiSVD<Eigen::MatrixXcd> solver(detail::to_eigen(m), Eigen::ComputeFullU | Eigen::ComputeFullV);
  Svd out{detail::from_eigen(solver.matrixU()), {}, detail::from_eigen(solver.matrixV())};
  const auto& s = solver.singularValues();
  out.singular_values.assign(s.data(), s.data() + s.size());
  for (auto& v : out.singular_values) v = std::max(v, 0.0);
  return out;
}

/// Rebuilds left * diag(s) * right^dagger; shapes follow the original matrix.
inline ComplexMatrix svd_compose(const Svd& d) {
  ComplexMatrix middle(d.left.cols(), d.right.cols());
  for (std::size_t i = 0; i < d.singular_values.size(); ++i) middle(i, i) = d.singular_values[i];
  return mat_mul(mat_mul(d.left, middle), adjoint(d.right));
}

}  // namespace qeof
