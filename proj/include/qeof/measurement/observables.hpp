#pragma once

#include <algorithm>
#include <array>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "qeof/core/complex_matrix.hpp"
#include "qeof/projections.hpp"
#include "qeof/states.hpp"

namespace qeof {

/// Sigma_s (A side) or Gamma_t (B side) embedded on span{pair.lo, pair.hi}:
/// s = 0 is the projector onto the span, s = 1, 2, 3 act as sigma_x,
/// (i on (lo,hi), -i on (hi,lo)) and sigma_z there, zero elsewhere.
struct ObservableSpec {
  std::size_t side_dim = 2;
  GeneratorIndex pair;
  int s = 0;
};

inline ComplexMatrix build_observable(const ObservableSpec& spec) {
  spec.pair.check(spec.side_dim);
  if (spec.s < 0 || spec.s > 3) throw Error(ErrorKind::invalid_input, "observable index must be 0..3");
  const std::size_t i = spec.pair.lo - 1;
  const std::size_t j = spec.pair.hi - 1;
  ComplexMatrix out(spec.side_dim, spec.side_dim);
  switch (spec.s) {
    case 0:
      out(i, i) = 1.0;
      out(j, j) = 1.0;
      break;
    case 1:
      out(i, j) = 1.0;
      out(j, i) = 1.0;
      break;
    case 2:
      out(i, j) = Complex{0.0, 1.0};
      out(j, i) = Complex{0.0, -1.0};
      break;
    case 3:
      out(i, i) = 1.0;
      out(j, j) = -1.0;
      break;
  }
  return out;
}

/// Nonzero-eigenvalue spectral projectors of a local observable. Sigma_0 has
/// only +1; Sigma_s for s > 0 squares to Sigma_0, so P(+-1) = (Sigma_0 +- Sigma_s)/2.
inline std::vector<std::pair<int, ComplexMatrix>> spectral_projectors(const ObservableSpec& spec) {
  ComplexMatrix p0 = build_observable({spec.side_dim, spec.pair, 0});
  if (spec.s == 0) return {{1, std::move(p0)}};
  const ComplexMatrix sigma = build_observable(spec);
  return {{1, scaled(add(p0, sigma), 0.5)}, {-1, scaled(add(p0, sigma, -1.0), 0.5)}};
}

/// <psi| A (x) B |psi> = sum_pq conj(a_pq) (A a B^T)_pq.
inline Complex local_expectation(const ComplexMatrix& coeffs, const ComplexMatrix& a, const ComplexMatrix& b) {
  const ComplexMatrix image = mat_mul(mat_mul(a, coeffs), transpose(b));
  Complex sum{};
  auto lhs = coeffs.entries();
  auto rhs = image.entries();
  for (std::size_t k = 0; k < lhs.size(); ++k) sum += std::conj(lhs[k]) * rhs[k];
  return sum;
}

inline void check_sides(const PureState& state, const ObservableSpec& a_spec, const ObservableSpec& b_spec) {
  if (a_spec.side_dim != state.m() || b_spec.side_dim != state.n()) {
    throw Error(ErrorKind::dimension, "observable is " + std::to_string(a_spec.side_dim) + "x" +
                                          std::to_string(b_spec.side_dim) + " but the state is " +
                                          std::to_string(state.m()) + "x" + std::to_string(state.n()));
  }
}

/// <psi| Sigma_s (x) Gamma_t |psi>; the imaginary roundoff is discarded.
inline double expectation(const PureState& state, const ObservableSpec& a_spec, const ObservableSpec& b_spec) {
  check_sides(state, a_spec, b_spec);
  return local_expectation(state.coefficients(), build_observable(a_spec), build_observable(b_spec)).real();
}

/// T = <psi| L^dagger L (x) L^dagger L |psi>, measured as Sigma_0 (x) Gamma_0.
inline double weight_from_observable(const PureState& state, GeneratorIndex alpha, GeneratorIndex beta) {
  return expectation(state, {state.m(), alpha, 0}, {state.n(), beta, 0});
}

/// The eight (s, t) settings measured per block, in stream order.
inline constexpr std::array<std::pair<int, int>, 8> kBlockSettings{{
    {0, 0}, {3, 3}, {3, 0}, {0, 3}, {0, 1}, {3, 1}, {0, 2}, {3, 2},
}};

struct ExpectationSet {
  double s0g0 = 0.0;
  double s3g3 = 0.0;
  double s3g0 = 0.0;
  double s0g3 = 0.0;
  double s0g1 = 0.0;
  double s3g1 = 0.0;
  double s0g2 = 0.0;
  double s3g2 = 0.0;

  /// Same order as kBlockSettings.
  static ExpectationSet from_array(const std::array<double, 8>& v) {
    return {v[0], v[1], v[2], v[3], v[4], v[5], v[6], v[7]};
  }
};

inline ExpectationSet exact_expectations(const PureState& state, GeneratorIndex alpha, GeneratorIndex beta) {
  std::array<double, 8> v{};
  for (std::size_t k = 0; k < kBlockSettings.size(); ++k) {
    v[k] = expectation(state, {state.m(), alpha, kBlockSettings[k].first},
                       {state.n(), beta, kBlockSettings[k].second});
  }
  return ExpectationSet::from_array(v);
}

/// Signed bracket <33>^2 - <30>^2 - <03>^2 - <01>^2 + <31>^2 - <02>^2 + <32>^2,
/// taking each squared mean as given (callers may pass bias-corrected squares).
struct SquaredMeans {
  double s3g3, s3g0, s0g3, s0g1, s3g1, s0g2, s3g2;
};

inline double concurrence_bracket(const SquaredMeans& q) {
  return q.s3g3 - q.s3g0 - q.s0g3 - q.s0g1 + q.s3g1 - q.s0g2 + q.s3g2;
}

inline SquaredMeans squares_of(const ExpectationSet& es) {
  auto sq = [](double x) { return x * x; };
  return {sq(es.s3g3), sq(es.s3g0), sq(es.s0g3), sq(es.s0g1), sq(es.s3g1), sq(es.s0g2), sq(es.s3g2)};
}

/// Unclamped C^2 = 1/2 + (C_ab^2 / 2) * bracket with C_ab = 1 / weight.
inline double concurrence_sq_unclamped(double weight, const SquaredMeans& q) {
  if (!(weight > kSkipWeight)) {
    throw Error(ErrorKind::degenerate_block, "<Sigma_0 Gamma_0> = " + std::to_string(weight) + " is below the cutoff");
  }
  const double c_ab = 1.0 / weight;
  return 0.5 + 0.5 * c_ab * c_ab * concurrence_bracket(q);
}

inline double concurrence_sq_from_observables(const ExpectationSet& es) {
  return std::clamp(concurrence_sq_unclamped(es.s0g0, squares_of(es)), 0.0, 1.0);
}

}  // namespace qeof
