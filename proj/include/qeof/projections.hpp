#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "qeof/core/complex_matrix.hpp"
#include "qeof/errors.hpp"
#include "qeof/states.hpp"
#include "qeof/tolerances.hpp"

namespace qeof {

/// Basis pair (lo, hi), 1-based, naming the antisymmetric generator
/// L = |lo><hi| - |hi><lo| on one side.
struct GeneratorIndex {
  std::size_t lo = 1;
  std::size_t hi = 2;

  void check(std::size_t side_dim) const {
    if (lo < 1 || lo >= hi || hi > side_dim) {
      throw Error(ErrorKind::dimension, "generator pair (" + std::to_string(lo) + "," + std::to_string(hi) +
                                            ") out of range for dimension " + std::to_string(side_dim));
    }
  }

  friend auto operator<=>(const GeneratorIndex&, const GeneratorIndex&) = default;
};

using GeneratorPair = std::pair<GeneratorIndex, GeneratorIndex>;

/// `paper` keeps B-side pairs inside the first m basis vectors and normalizes by
/// 1/(m-1)^2; `rect` uses every B-side pair and 1/((m-1)(n-1)).
enum class EnumerationMode { paper, rect };

inline std::string_view to_string(EnumerationMode mode) { return mode == EnumerationMode::paper ? "paper" : "rect"; }

inline EnumerationMode parse_mode(std::string_view text) {
  if (text == "paper") return EnumerationMode::paper;
  if (text == "rect") return EnumerationMode::rect;
  throw Error(ErrorKind::invalid_input, "unknown enumeration mode '" + std::string(text) + "'");
}

/// Theorem prefactor for the chosen enumeration.
inline double normalization(std::size_t m, std::size_t n, EnumerationMode mode) {
  const double a = static_cast<double>(m - 1);
  return mode == EnumerationMode::paper ? 1.0 / (a * a) : 1.0 / (a * static_cast<double>(n - 1));
}

/// Lexicographic in (alpha, beta).
inline std::vector<GeneratorPair> enumerate_pairs(std::size_t m, std::size_t n, EnumerationMode mode) {
  if (m < 2 || n < m) throw Error(ErrorKind::dimension, "enumerate_pairs needs 2 <= m <= n");
  const std::size_t b_limit = mode == EnumerationMode::paper ? m : n;
  std::vector<GeneratorPair> out;
  out.reserve(m * (m - 1) / 2 * b_limit * (b_limit - 1) / 2);
  for (std::size_t i = 1; i <= m; ++i)
    for (std::size_t j = i + 1; j <= m; ++j)
      for (std::size_t k = 1; k <= b_limit; ++k)
        for (std::size_t l = k + 1; l <= b_limit; ++l) out.push_back({{i, j}, {k, l}});
  return out;
}

/// The side_dim x side_dim matrix |lo><hi| - |hi><lo|.
inline ComplexMatrix generator_matrix(std::size_t side_dim, GeneratorIndex g) {
  g.check(side_dim);
  ComplexMatrix out(side_dim, side_dim);
  out(g.lo - 1, g.hi - 1) = 1.0;
  out(g.hi - 1, g.lo - 1) = -1.0;
  return out;
}

/// (L_alpha (x) L_beta)|psi> as an m x n coefficient matrix (unnormalized).
inline ComplexMatrix apply_projection(const PureState& state, GeneratorIndex alpha, GeneratorIndex beta) {
  const ComplexMatrix la = generator_matrix(state.m(), alpha);
  const ComplexMatrix lb = generator_matrix(state.n(), beta);
  return mat_mul(mat_mul(la, state.coefficients()), transpose(lb));
}

/// The state restricted to span{i,j} (x) span{k,l}.
struct BlockState {
  GeneratorIndex alpha;
  GeneratorIndex beta;
  std::array<Complex, 4> block{};  // b_ik, b_il, b_jk, b_jl
  double weight_T = 0.0;
  std::optional<double> c_const;  // 1 / weight_T, only when weight_T > kSkipWeight

  bool contributes() const noexcept { return c_const.has_value(); }
};

inline BlockState make_block(GeneratorIndex alpha, GeneratorIndex beta, const std::array<Complex, 4>& amps) {
  BlockState b{alpha, beta, amps, 0.0, std::nullopt};
  for (const auto& z : amps) b.weight_T += std::norm(z);
  if (b.weight_T > kSkipWeight) b.c_const = 1.0 / b.weight_T;
  return b;
}

inline BlockState block_extract(const PureState& state, GeneratorIndex alpha, GeneratorIndex beta) {
  alpha.check(state.m());
  beta.check(state.n());
  const auto& a = state.coefficients();
  const std::size_t i = alpha.lo - 1, j = alpha.hi - 1, k = beta.lo - 1, l = beta.hi - 1;
  return make_block(alpha, beta, {a(i, k), a(i, l), a(j, k), a(j, l)});
}

/// h(x) = -x log2 x - (1-x) log2(1-x).
inline double binary_entropy(double x) {
  double h = 0.0;
  if (x > 0.0) h -= x * std::log2(x);
  if (x < 1.0) h -= (1.0 - x) * std::log2(1.0 - x);
  return h;
}

/// Two-qubit pure-state entanglement as a function of the concurrence.
inline double eof_from_concurrence(double concurrence) {
  const double c = std::clamp(concurrence, 0.0, 1.0);
  return binary_entropy((1.0 + std::sqrt(std::max(0.0, 1.0 - c * c))) / 2.0);
}

/// Same, from C^2; avoids a square root round trip for measured inputs.
inline double eof_from_concurrence_sq(double c_sq) {
  const double c2 = std::clamp(c_sq, 0.0, 1.0);
  return binary_entropy((1.0 + std::sqrt(1.0 - c2)) / 2.0);
}

inline void require_contributing(const BlockState& b) {
  if (!b.contributes()) {
    throw Error(ErrorKind::degenerate_block, "block weight " + std::to_string(b.weight_T) + " is below the cutoff");
  }
}

/// Concurrence of the normalized block: 2 |b_ik b_jl - b_il b_jk| / T.
inline double block_concurrence(const BlockState& b) {
  require_contributing(b);
  const double c = 2.0 * std::abs(b.block[0] * b.block[3] - b.block[1] * b.block[2]) / b.weight_T;
  return std::clamp(c, 0.0, 1.0);
}

inline double block_eof(const BlockState& b) { return eof_from_concurrence(block_concurrence(b)); }

/// Eigenvalues of the unnormalized reduced block Tr_B of the 4x4 block,
/// in nonincreasing order: (T +- sqrt(T^2 - 4|det|^2)) / 2.
inline std::array<double, 2> block_reduced_spectrum(const BlockState& b) {
  const double det = std::abs(b.block[0] * b.block[3] - b.block[1] * b.block[2]);
  const double t = b.weight_T;
  const double disc = std::sqrt(std::max(0.0, t * t - 4.0 * det * det));
  const double hi = 0.5 * (t + disc);
  // The small root from det^2 / hi keeps relative accuracy when disc ~ t.
  const double lo = hi > 0.0 ? det * det / hi : 0.0;
  return {hi, lo};
}

inline bool is_schmidt_diagonal(const PureState& state, double tol = 1e-12) {
  const auto& a = state.coefficients();
  for (std::size_t r = 0; r < a.rows(); ++r)
    for (std::size_t c = 0; c < a.cols(); ++c) {
      const Complex z = a(r, c);
      if (r != c && std::abs(z) > tol) return false;
      if (r == c && (std::abs(z.imag()) > tol || z.real() < -tol)) return false;
    }
  return true;
}

/// For a Schmidt-diagonal state, counts over contributing blocks how many
/// reduced-block eigenvalues land on each Schmidt index k (1-based). The only
/// amplitudes inside block (i,j) x (k,l) are the diagonal ones at indices
/// {i,j} & {k,l}; each eigenvalue is credited to an unused such index whose
/// lambda matches within kCensusMatch, so ties are counted per index.
inline std::map<std::size_t, std::size_t> spectrum_census(const PureState& state, EnumerationMode mode) {
  if (!is_schmidt_diagonal(state)) {
    throw Error(ErrorKind::invalid_basis, "spectrum census requires a Schmidt-diagonal state");
  }
  const std::size_t m = state.m();
  std::vector<double> lambda(m);
  for (std::size_t k = 0; k < m; ++k) lambda[k] = std::norm(state.coefficients()(k, k));

  std::map<std::size_t, std::size_t> multiplicity;
  for (std::size_t k = 1; k <= m; ++k) multiplicity[k] = 0;

  for (const auto& [alpha, beta] : enumerate_pairs(m, state.n(), mode)) {
    const BlockState b = block_extract(state, alpha, beta);
    if (!b.contributes()) continue;
    std::vector<std::size_t> candidates;
    for (std::size_t p : {alpha.lo, alpha.hi})
      if (p == beta.lo || p == beta.hi) candidates.push_back(p);
    std::vector<bool> used(candidates.size(), false);
    for (double mu : block_reduced_spectrum(b)) {
      if (mu <= kZeroSchmidt) continue;
      bool matched = false;
      for (std::size_t c = 0; c < candidates.size() && !matched; ++c) {
        if (!used[c] && std::abs(mu - lambda[candidates[c] - 1]) <= kCensusMatch) {
          used[c] = true;
          matched = true;
          ++multiplicity[candidates[c]];
        }
      }
      if (!matched) {
        throw Error(ErrorKind::invalid_basis, "block eigenvalue " + std::to_string(mu) +
                                                  " matches no Schmidt value of its support");
      }
    }
  }
  return multiplicity;
}

}  // namespace qeof
