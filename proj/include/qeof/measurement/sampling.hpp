#pragma once

#include <algorithm>
#include <cstdint>
#include <random>

#include "qeof/measurement/observables.hpp"

namespace qeof {

struct OutcomeProbabilities {
  double minus = 0.0;
  double zero = 1.0;
  double plus = 0.0;

  double mean() const noexcept { return plus - minus; }
  /// Single-shot variance of the +-1/0 outcome.
  double variance() const noexcept { return plus + minus - mean() * mean(); }
};

/// Exact outcome distribution of measuring Sigma_s (x) Gamma_t on |psi>.
inline OutcomeProbabilities outcome_probabilities(const PureState& state, const ObservableSpec& a_spec,
                                                  const ObservableSpec& b_spec) {
  check_sides(state, a_spec, b_spec);
  double plus = 0.0, minus = 0.0;
  for (const auto& [ea, pa] : spectral_projectors(a_spec)) {
    for (const auto& [eb, pb] : spectral_projectors(b_spec)) {
      const double p = local_expectation(state.coefficients(), pa, pb).real();
      (ea * eb > 0 ? plus : minus) += p;
    }
  }
  plus = std::clamp(plus, 0.0, 1.0);
  minus = std::clamp(minus, 0.0, 1.0);
  const double zero = std::max(0.0, 1.0 - plus - minus);
  const double total = plus + minus + zero;
  return {minus / total, zero / total, plus / total};
}

struct OutcomeCounts {
  std::uint64_t minus = 0;
  std::uint64_t zero = 0;
  std::uint64_t plus = 0;

  std::uint64_t shots() const noexcept { return minus + zero + plus; }
  double mean() const noexcept {
    return (static_cast<double>(plus) - static_cast<double>(minus)) / static_cast<double>(shots());
  }
  /// Plug-in single-shot variance (divides by N).
  double variance() const noexcept {
    const double second = static_cast<double>(plus + minus) / static_cast<double>(shots());
    return std::max(0.0, second - mean() * mean());
  }
};

/// SplitMix64 finalizer.
inline std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Sub-stream seed for (master, block, observable[, replicate]); independent of
/// the order in which streams are consumed.
inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t block, std::uint64_t observable,
                                 std::uint64_t replicate = 0) {
  std::uint64_t h = mix64(master);
  h = mix64(h ^ block);
  h = mix64(h ^ observable);
  return mix64(h ^ replicate);
}

/// Categorical draw of `shots` outcomes as two chained binomials.
inline OutcomeCounts draw_counts(const OutcomeProbabilities& p, std::uint64_t shots, std::mt19937_64& rng) {
  OutcomeCounts c;
  auto binomial = [&rng](std::uint64_t trials, double prob) -> std::uint64_t {
    if (trials == 0 || prob <= 0.0) return 0;
    if (prob >= 1.0) return trials;
    std::binomial_distribution<std::uint64_t> dist(trials, prob);
    return dist(rng);
  };
  c.plus = binomial(shots, p.plus);
  const double rest = 1.0 - p.plus;
  c.minus = rest > 0.0 ? binomial(shots - c.plus, std::min(1.0, p.minus / rest)) : 0;
  c.zero = shots - c.plus - c.minus;
  return c;
}

inline OutcomeCounts sample_observable(const PureState& state, const ObservableSpec& a_spec,
                                       const ObservableSpec& b_spec, std::uint64_t shots, std::uint64_t stream_seed) {
  if (shots == 0) throw Error(ErrorKind::invalid_input, "shots must be at least 1");
  std::mt19937_64 rng(stream_seed);
  return draw_counts(outcome_probabilities(state, a_spec, b_spec), shots, rng);
}

}  // namespace qeof
