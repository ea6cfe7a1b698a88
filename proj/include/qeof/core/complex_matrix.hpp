#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "qeof/errors.hpp"

namespace qeof {

using Complex = std::complex<double>;

/// Dense row-major complex matrix with finite entries.
class ComplexMatrix {
 public:
  ComplexMatrix() = default;

  ComplexMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), entries_(rows * cols, Complex{0.0, 0.0}) {
    check_shape();
  }

  ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<Complex> entries)
      : rows_(rows), cols_(cols), entries_(std::move(entries)) {
    check_shape();
    if (entries_.size() != rows_ * cols_) {
      throw Error(ErrorKind::dimension, "expected " + std::to_string(rows_ * cols_) +
                                            " entries, got " + std::to_string(entries_.size()));
    }
    for (const auto& z : entries_) {
      if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
        throw Error(ErrorKind::invalid_input, "matrix entry is not finite");
      }
    }
  }

  /// Row-by-row literal, mostly for tests: {{a, b}, {c, d}}.
  ComplexMatrix(std::initializer_list<std::initializer_list<Complex>> rows)
      : ComplexMatrix(rows.size(), rows.size() == 0 ? 0 : rows.begin()->size(), flatten(rows)) {}

  static ComplexMatrix identity(std::size_t dim) {
    ComplexMatrix out(dim, dim);
    for (std::size_t i = 0; i < dim; ++i) out(i, i) = 1.0;
    return out;
  }

  static ComplexMatrix diagonal(std::span<const double> values) {
    ComplexMatrix out(values.size(), values.size());
    for (std::size_t i = 0; i < values.size(); ++i) out(i, i) = values[i];
    return out;
  }

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool is_square() const noexcept { return rows_ == cols_; }

  Complex& operator()(std::size_t r, std::size_t c) { return entries_[r * cols_ + c]; }
  const Complex& operator()(std::size_t r, std::size_t c) const { return entries_[r * cols_ + c]; }

  std::span<const Complex> entries() const noexcept { return entries_; }
  std::span<Complex> entries() noexcept { return entries_; }

  bool all_finite() const noexcept {
    for (const auto& z : entries_) {
      if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
    }
    return true;
  }

  friend bool operator==(const ComplexMatrix&, const ComplexMatrix&) = default;

 private:
  static std::vector<Complex> flatten(std::initializer_list<std::initializer_list<Complex>> rows) {
    std::vector<Complex> flat;
    const std::size_t width = rows.size() == 0 ? 0 : rows.begin()->size();
    for (const auto& r : rows) {
      if (r.size() != width) throw Error(ErrorKind::dimension, "ragged matrix literal");
      flat.insert(flat.end(), r.begin(), r.end());
    }
    return flat;
  }

  void check_shape() const {
    if (rows_ == 0 || cols_ == 0) throw Error(ErrorKind::dimension, "matrix must be at least 1x1");
  }

  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Complex> entries_;
};

inline ComplexMatrix adjoint(const ComplexMatrix& m) {
  ComplexMatrix out(m.cols(), m.rows());
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c) out(c, r) = std::conj(m(r, c));
  return out;
}

inline ComplexMatrix transpose(const ComplexMatrix& m) {
  ComplexMatrix out(m.cols(), m.rows());
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c) out(c, r) = m(r, c);
  return out;
}

inline ComplexMatrix mat_mul(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.cols() != b.rows()) {
    throw Error(ErrorKind::dimension, "cannot multiply " + std::to_string(a.rows()) + "x" +
                                          std::to_string(a.cols()) + " by " +
                                          std::to_string(b.rows()) + "x" + std::to_string(b.cols()));
  }
  ComplexMatrix out(a.rows(), b.cols());
  for (std::size_t r = 0; r < a.rows(); ++r) {
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const Complex lhs = a(r, k);
      if (lhs == Complex{}) continue;
      for (std::size_t c = 0; c < b.cols(); ++c) out(r, c) += lhs * b(k, c);
    }
  }
  return out;
}

inline ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) { return mat_mul(a, b); }

inline ComplexMatrix add(const ComplexMatrix& a, const ComplexMatrix& b, double b_scale = 1.0) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw Error(ErrorKind::dimension, "shape mismatch in sum");
  ComplexMatrix out = a;
  auto dst = out.entries();
  auto src = b.entries();
  for (std::size_t i = 0; i < dst.size(); ++i) dst[i] += b_scale * src[i];
  return out;
}

inline ComplexMatrix scaled(ComplexMatrix m, Complex factor) {
  for (auto& z : m.entries()) z *= factor;
  return m;
}

inline Complex trace(const ComplexMatrix& m) {
  if (!m.is_square()) throw Error(ErrorKind::dimension, "trace of a non-square matrix");
  Complex sum{};
  for (std::size_t i = 0; i < m.rows(); ++i) sum += m(i, i);
  return sum;
}

/// sqrt(Tr(X X^dagger)); the Hilbert-Schmidt (Frobenius) norm.
inline double hs_norm(const ComplexMatrix& m) {
  if (!m.all_finite()) throw Error(ErrorKind::invalid_input, "matrix entry is not finite");
  double sum = 0.0;
  for (const auto& z : m.entries()) sum += std::norm(z);
  return std::sqrt(sum);
}

inline ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t ar = 0; ar < a.rows(); ++ar)
    for (std::size_t ac = 0; ac < a.cols(); ++ac) {
      const Complex x = a(ar, ac);
      if (x == Complex{}) continue;
      for (std::size_t br = 0; br < b.rows(); ++br)
        for (std::size_t bc = 0; bc < b.cols(); ++bc)
          out(ar * b.rows() + br, ac * b.cols() + bc) = x * b(br, bc);
    }
  return out;
}

/// Largest entry-wise modulus of A - B.
inline double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw Error(ErrorKind::dimension, "shape mismatch");
  double worst = 0.0;
  auto x = a.entries();
  auto y = b.entries();
  for (std::size_t i = 0; i < x.size(); ++i) worst = std::max(worst, std::abs(x[i] - y[i]));
  return worst;
}

/// max |U^dagger U - I| over entries (columns orthonormal when small).
inline double orthonormality_defect(const ComplexMatrix& u) {
  return max_abs_diff(mat_mul(adjoint(u), u), ComplexMatrix::identity(u.cols()));
}

}  // namespace qeof
