#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>

#include "qeof/projections.hpp"
#include "qeof/state_gen.hpp"
#include "support/oracles.hpp"

namespace {

using qeof::Complex;
using qeof::ComplexMatrix;
using qeof::EnumerationMode;
using qeof::GeneratorIndex;
using qeof::PureState;

// |lo><hi| - |hi><lo| written out independently of the library.
ComplexMatrix generator(std::size_t dim, std::size_t lo, std::size_t hi) {
  ComplexMatrix l(dim, dim);
  l(lo - 1, hi - 1) = 1.0;
  l(hi - 1, lo - 1) = -1.0;
  return l;
}

// (L_alpha (x) L_beta)|psi> through the full Kronecker product, reshaped m x n.
ComplexMatrix projected_by_kron(const PureState& s, GeneratorIndex a, GeneratorIndex b) {
  const ComplexMatrix v = qeof::mat_mul(qeof::kron(generator(s.m(), a.lo, a.hi), generator(s.n(), b.lo, b.hi)),
                                        oracle::vectorize(s.coefficients()));
  ComplexMatrix out(s.m(), s.n());
  for (std::size_t k = 0; k < v.rows(); ++k) out.entries()[k] = v(k, 0);
  return out;
}

const PureState& lambda_state() {
  static const PureState s = qeof::gen::schmidt_diag({0.5, 0.3, 0.2}, 3);
  return s;
}

TEST(EnumeratePairs, Counts) {
  const auto two = qeof::enumerate_pairs(2, 2, EnumerationMode::rect);
  ASSERT_EQ(two.size(), 1u);
  EXPECT_EQ(two[0].first, (GeneratorIndex{1, 2}));
  EXPECT_EQ(two[0].second, (GeneratorIndex{1, 2}));
  EXPECT_EQ(qeof::enumerate_pairs(3, 3, EnumerationMode::rect).size(), 9u);
  EXPECT_EQ(qeof::enumerate_pairs(3, 3, EnumerationMode::paper).size(), 9u);
  EXPECT_EQ(qeof::enumerate_pairs(2, 3, EnumerationMode::rect).size(), 3u);
  EXPECT_EQ(qeof::enumerate_pairs(2, 3, EnumerationMode::paper).size(), 1u);
  for (std::size_t m = 2; m <= 5; ++m)
    for (std::size_t n = m; n <= 6; ++n) {
      EXPECT_EQ(qeof::enumerate_pairs(m, n, EnumerationMode::rect).size(), m * (m - 1) / 2 * (n * (n - 1) / 2));
      EXPECT_EQ(qeof::enumerate_pairs(m, n, EnumerationMode::paper).size(), (m * (m - 1) / 2) * (m * (m - 1) / 2));
    }
}

TEST(EnumeratePairs, LexicographicOrder) {
  const auto pairs = qeof::enumerate_pairs(3, 4, EnumerationMode::rect);
  EXPECT_TRUE(std::is_sorted(pairs.begin(), pairs.end()));
  EXPECT_EQ(std::adjacent_find(pairs.begin(), pairs.end()), pairs.end());
}

TEST(ApplyProjection, CaseFourSameIndices) {
  const ComplexMatrix out = qeof::apply_projection(lambda_state(), {1, 2}, {1, 2});
  ComplexMatrix expected(3, 3);
  expected(0, 0) = std::sqrt(0.3);
  expected(1, 1) = std::sqrt(0.5);
  EXPECT_LE(qeof::max_abs_diff(out, expected), 1e-15);
  EXPECT_LE(qeof::max_abs_diff(out, projected_by_kron(lambda_state(), {1, 2}, {1, 2})), 1e-15);
}

TEST(ApplyProjection, CaseTwoSharedLowIndex) {
  // a = c = 1, b = 2, d = 3: only sqrt(lambda_1) survives, at |2 3>.
  const ComplexMatrix out = qeof::apply_projection(lambda_state(), {1, 2}, {1, 3});
  ComplexMatrix expected(3, 3);
  expected(1, 2) = std::sqrt(0.5);
  EXPECT_LE(qeof::max_abs_diff(out, expected), 1e-15);
  EXPECT_LE(qeof::max_abs_diff(out, projected_by_kron(lambda_state(), {1, 2}, {1, 3})), 1e-15);
}

TEST(ApplyProjection, CaseFiveChainedIndex) {
  // b = c = 2: -sqrt(lambda_2) at |1 3>.
  const ComplexMatrix out = qeof::apply_projection(lambda_state(), {1, 2}, {2, 3});
  ComplexMatrix expected(3, 3);
  expected(0, 2) = -std::sqrt(0.3);
  EXPECT_LE(qeof::max_abs_diff(out, expected), 1e-15);
}

TEST(ApplyProjection, ClosedFormForSchmidtDiagonalStates) {
  // sqrt(l_b) d_bd |ac> - sqrt(l_b) d_bc |ad> - sqrt(l_a) d_ad |bc> + sqrt(l_a) d_ac |bd>
  const PureState s = qeof::gen::schmidt_diag({0.4, 0.3, 0.2, 0.1}, 5);
  const double lam[] = {0.4, 0.3, 0.2, 0.1};
  for (const auto& [alpha, beta] : qeof::enumerate_pairs(4, 5, EnumerationMode::rect)) {
    const std::size_t a = alpha.lo, b = alpha.hi, c = beta.lo, d = beta.hi;
    ComplexMatrix expected(4, 5);
    auto sq = [&](std::size_t k) { return std::sqrt(lam[k - 1]); };
    if (b == d) expected(a - 1, c - 1) += sq(b);
    if (b == c) expected(a - 1, d - 1) -= sq(b);
    if (a == d) expected(b - 1, c - 1) -= sq(a);
    if (a == c) expected(b - 1, d - 1) += sq(a);
    EXPECT_LE(qeof::max_abs_diff(qeof::apply_projection(s, alpha, beta), expected), 1e-15);
  }
}

TEST(ApplyProjection, MatchesKroneckerRouteOnRandomStates) {
  const PureState s = qeof::gen::haar_random(3, 4, 11);
  for (const auto& [alpha, beta] : qeof::enumerate_pairs(3, 4, EnumerationMode::rect)) {
    EXPECT_LE(qeof::max_abs_diff(qeof::apply_projection(s, alpha, beta), projected_by_kron(s, alpha, beta)), 1e-15);
  }
}

TEST(ApplyProjection, RangeErrors) {
  EXPECT_THROW(qeof::apply_projection(lambda_state(), {1, 4}, {1, 2}), qeof::Error);
  EXPECT_THROW(qeof::apply_projection(lambda_state(), {2, 2}, {1, 2}), qeof::Error);
  EXPECT_THROW(qeof::apply_projection(lambda_state(), {1, 2}, {0, 2}), qeof::Error);
}

TEST(BlockExtract, Examples) {
  const auto bell = qeof::block_extract(qeof::gen::bell(), {1, 2}, {1, 2});
  const double h = 1.0 / std::sqrt(2.0);
  EXPECT_EQ(bell.block[0], Complex(h, 0.0));
  EXPECT_EQ(bell.block[3], Complex(h, 0.0));
  EXPECT_NEAR(bell.weight_T, 1.0, 1e-15);
  ASSERT_TRUE(bell.c_const);
  EXPECT_NEAR(*bell.c_const, 1.0, 1e-15);

  const PureState prod = qeof::new_pure_state(3, 3, {1, 0, 0, 0, 0, 0, 0, 0, 0});
  const auto empty = qeof::block_extract(prod, {2, 3}, {2, 3});
  EXPECT_EQ(empty.weight_T, 0.0);
  EXPECT_FALSE(empty.c_const);

  const auto lam = qeof::block_extract(lambda_state(), {1, 2}, {1, 2});
  EXPECT_NEAR(lam.weight_T, 0.8, 1e-15);
  EXPECT_NEAR(*lam.c_const, 1.25, 1e-14);
  EXPECT_NEAR(lam.block[0].real(), std::sqrt(0.5), 1e-15);
  EXPECT_EQ(lam.block[1], Complex{});
  EXPECT_EQ(lam.block[2], Complex{});
  EXPECT_NEAR(lam.block[3].real(), std::sqrt(0.3), 1e-15);
}

TEST(BlockExtract, WeightIdentities) {
  for (std::uint64_t seed = 1; seed <= 6; ++seed) {
    const PureState s = qeof::gen::haar_random(3, 4, seed);
    for (const auto& [alpha, beta] : qeof::enumerate_pairs(3, 4, EnumerationMode::rect)) {
      const auto b = qeof::block_extract(s, alpha, beta);
      double sum = 0.0;
      for (const auto& z : b.block) sum += std::norm(z);
      EXPECT_NEAR(b.weight_T, sum, 1e-12);
      if (b.c_const) {
        EXPECT_NEAR(*b.c_const * b.weight_T, 1.0, 1e-10);
      }
      // <psi| L^dagger L (x) L^dagger L |psi> through the Kronecker product.
      const ComplexMatrix la = generator(3, alpha.lo, alpha.hi), lb = generator(4, beta.lo, beta.hi);
      const Complex measured = oracle::kron_expectation(s.coefficients(), qeof::mat_mul(qeof::adjoint(la), la),
                                                        qeof::mat_mul(qeof::adjoint(lb), lb));
      EXPECT_NEAR(measured.real(), b.weight_T, 1e-12);
      // The projection rotates the block, so it keeps its norm.
      const double proj = qeof::hs_norm(qeof::apply_projection(s, alpha, beta));
      EXPECT_NEAR(proj * proj, b.weight_T, 1e-12);
    }
  }
}

TEST(BlockConcurrence, Examples) {
  EXPECT_NEAR(qeof::block_concurrence(qeof::block_extract(qeof::gen::bell(), {1, 2}, {1, 2})), 1.0, 1e-15);
  const auto lam = qeof::block_extract(lambda_state(), {1, 2}, {1, 2});
  EXPECT_NEAR(qeof::block_concurrence(lam), 2.0 * std::sqrt(0.15) / 0.8, 1e-15);
  EXPECT_NEAR(qeof::block_concurrence(lam), 0.968246, 1e-6);
  const double h = std::sqrt(0.5);
  const auto product = qeof::make_block({1, 2}, {1, 2}, {h, h, 0.0, 0.0});
  EXPECT_EQ(qeof::block_concurrence(product), 0.0);
}

TEST(BlockConcurrence, DegenerateBlockIsAnError) {
  const auto empty = qeof::make_block({1, 2}, {1, 2}, {0.0, 0.0, 0.0, 1e-7});
  try {
    qeof::block_concurrence(empty);
    FAIL();
  } catch (const qeof::Error& e) {
    EXPECT_EQ(e.kind(), qeof::ErrorKind::degenerate_block);
  }
  EXPECT_THROW(qeof::block_eof(empty), qeof::Error);
}

TEST(BlockEof, Examples) {
  const double h = std::sqrt(0.5);
  EXPECT_NEAR(qeof::block_eof(qeof::make_block({1, 2}, {1, 2}, {h, 0.0, 0.0, h})), 1.0, 1e-15);
  EXPECT_NEAR(qeof::block_eof(qeof::make_block({1, 2}, {1, 2}, {1.0, 0.0, 0.0, 0.0})), 0.0, 1e-15);
  // C = 2 sqrt(0.9 * 0.1) = 0.6, so E = h(0.9).
  const auto b = qeof::make_block({1, 2}, {1, 2}, {std::sqrt(0.9), 0.0, 0.0, std::sqrt(0.1)});
  EXPECT_NEAR(qeof::block_concurrence(b), 0.6, 1e-15);
  EXPECT_NEAR(oracle::binary_entropy(0.9), 0.46899, 1e-5);
  EXPECT_NEAR(qeof::block_eof(b), oracle::binary_entropy(0.9), 1e-14);
}

TEST(BlockEof, ScaleInvariance) {
  const PureState s = qeof::gen::haar_random(2, 2, 5);
  const auto base = qeof::block_extract(s, {1, 2}, {1, 2});
  const Complex factors[] = {{0.3, 0.0}, {0.0, -2.0}, {1e-4, 1e-4}, {-7.0, 3.0}};
  for (const Complex f : factors) {
    std::array<Complex, 4> amps = base.block;
    for (auto& z : amps) z *= f;
    const auto scaled = qeof::make_block({1, 2}, {1, 2}, amps);
    EXPECT_NEAR(qeof::block_concurrence(scaled), qeof::block_concurrence(base), 1e-12);
    EXPECT_NEAR(qeof::block_eof(scaled), qeof::block_eof(base), 1e-12);
  }
}

TEST(BlockReducedSpectrum, MatchesEigenOracle) {
  const PureState s = qeof::gen::haar_random(3, 3, 21);
  for (const auto& [alpha, beta] : qeof::enumerate_pairs(3, 3, EnumerationMode::rect)) {
    const auto b = qeof::block_extract(s, alpha, beta);
    const ComplexMatrix x{{b.block[0], b.block[1]}, {b.block[2], b.block[3]}};
    const auto eig = oracle::hermitian_eigenvalues(qeof::mat_mul(x, qeof::adjoint(x)));
    const auto mu = qeof::block_reduced_spectrum(b);
    EXPECT_NEAR(mu[0], eig[1], 1e-14);
    EXPECT_NEAR(mu[1], eig[0], 1e-14);
  }
}

// Brute-force census: project through the Kronecker product, take the reduced
// density of the projected vector, diagonalize with the oracle and match each
// eigenvalue to the (distinct) Schmidt values.
std::map<std::size_t, std::size_t> brute_force_census(const PureState& s, EnumerationMode mode,
                                                      const std::vector<double>& lambda) {
  std::map<std::size_t, std::size_t> out;
  for (std::size_t k = 1; k <= lambda.size(); ++k) out[k] = 0;
  for (const auto& [alpha, beta] : qeof::enumerate_pairs(s.m(), s.n(), mode)) {
    const ComplexMatrix v = projected_by_kron(s, alpha, beta);
    const ComplexMatrix rho = qeof::mat_mul(v, qeof::adjoint(v));
    if (qeof::trace(rho).real() <= 1e-12) continue;
    for (double mu : oracle::hermitian_eigenvalues(rho)) {
      if (mu <= 1e-12) continue;
      for (std::size_t k = 0; k < lambda.size(); ++k)
        if (std::abs(mu - lambda[k]) <= 1e-10) ++out[k + 1];
    }
  }
  return out;
}

TEST(SpectrumCensus, SquareCases) {
  for (std::size_t m = 2; m <= 5; ++m) {
    std::vector<double> lambda(m);
    double total = 0.0;
    for (std::size_t k = 0; k < m; ++k) total += (lambda[k] = static_cast<double>(m - k) + 0.1 * k * k);
    for (auto& v : lambda) v /= total;
    const PureState s = qeof::gen::schmidt_diag(lambda, m);
    for (auto mode : {EnumerationMode::paper, EnumerationMode::rect}) {
      const auto census = qeof::spectrum_census(s, mode);
      EXPECT_EQ(census, brute_force_census(s, mode, lambda));
      for (const auto& [k, count] : census) EXPECT_EQ(count, (m - 1) * (m - 1)) << "m=" << m << " k=" << k;
    }
  }
}

TEST(SpectrumCensus, RectangularCases) {
  const std::pair<std::size_t, std::size_t> dims[] = {{2, 3}, {2, 5}, {3, 4}, {3, 5}, {4, 6}};
  for (auto [m, n] : dims) {
    std::vector<double> lambda(m);
    for (std::size_t k = 0; k < m; ++k) lambda[k] = static_cast<double>(2 * m - k);
    const double total = std::accumulate(lambda.begin(), lambda.end(), 0.0);
    for (auto& v : lambda) v /= total;
    const PureState s = qeof::gen::schmidt_diag(lambda, n);
    const auto rect = qeof::spectrum_census(s, EnumerationMode::rect);
    EXPECT_EQ(rect, brute_force_census(s, EnumerationMode::rect, lambda));
    for (const auto& [k, count] : rect) EXPECT_EQ(count, (m - 1) * (n - 1)) << m << "x" << n << " k=" << k;
    for (const auto& [k, count] : qeof::spectrum_census(s, EnumerationMode::paper)) EXPECT_EQ(count, (m - 1) * (m - 1));
  }
}

TEST(SpectrumCensus, TwoByTwoHasOneEach) {
  const auto census = qeof::spectrum_census(qeof::gen::schmidt_diag({0.7, 0.3}, 2), EnumerationMode::rect);
  EXPECT_EQ(census.at(1), 1u);
  EXPECT_EQ(census.at(2), 1u);
}

TEST(SpectrumCensus, DegenerateSpectrumCountsPerIndex) {
  const auto census = qeof::spectrum_census(qeof::gen::max_entangled(4), EnumerationMode::paper);
  for (const auto& [k, count] : census) EXPECT_EQ(count, 9u);
}

TEST(SpectrumCensus, WeightsSumToCensusWeightedSpectrum) {
  const PureState s = qeof::gen::schmidt_diag({0.45, 0.3, 0.15, 0.1}, 6);
  const double lambda[] = {0.45, 0.3, 0.15, 0.1};
  for (auto mode : {EnumerationMode::paper, EnumerationMode::rect}) {
    double weights = 0.0;
    for (const auto& [alpha, beta] : qeof::enumerate_pairs(4, 6, mode)) {
      const auto b = qeof::block_extract(s, alpha, beta);
      if (b.contributes()) weights += b.weight_T;
    }
    double expected = 0.0;
    for (const auto& [k, count] : qeof::spectrum_census(s, mode)) expected += static_cast<double>(count) * lambda[k - 1];
    EXPECT_NEAR(weights, expected, 1e-10);
  }
}

TEST(SpectrumCensus, RejectsNonDiagonalInput) {
  try {
    qeof::spectrum_census(qeof::gen::haar_random(3, 3, 1), EnumerationMode::rect);
    FAIL();
  } catch (const qeof::Error& e) {
    EXPECT_EQ(e.kind(), qeof::ErrorKind::invalid_basis);
  }
}

}  // namespace
