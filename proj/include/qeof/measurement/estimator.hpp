#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "qeof/measurement/observables.hpp"
#include "qeof/measurement/sampling.hpp"
#include "qeof/reconstruction.hpp"

namespace qeof {

struct ShotPlan {
  std::uint64_t shots_per_observable = 10000;
  std::uint64_t master_seed = 0;
  /// Replace sampled counts by the exact outcome probabilities (infinite-shot limit).
  bool use_exact_probabilities = false;
  /// Use mean^2 - s^2/N for each squared mean, removing the O(1/N) bias of C^2.
  bool unbiased_squares = false;
  /// Nonparametric bootstrap replicates over resampled counts; 0 disables.
  std::uint32_t bootstrap_resamples = 0;
};

struct BlockEstimate {
  GeneratorIndex alpha;
  GeneratorIndex beta;
  double t_hat = 0.0;
  double c_const_hat = 0.0;  // 1 / t_hat
  double concurrence_sq_hat = 0.0;
  double c_hat = 0.0;  // sqrt(concurrence_sq_hat)
  double e_block_hat = 0.0;
  double contribution = 0.0;  // (E + log2(1/T)) * T, before normalization
  double std_error = 0.0;     // of `contribution`, first-order delta method
  std::vector<std::string> clamps;
};

struct EstimateReport {
  EnumerationMode mode = EnumerationMode::rect;
  Basis basis = Basis::schmidt;
  ShotPlan plan;
  double normalization = 0.0;
  std::vector<BlockEstimate> blocks;  // measured blocks with t_hat above the cutoff
  std::size_t dropped_blocks = 0;
  double e_hat = 0.0;
  double std_error = 0.0;
  std::optional<double> bootstrap_std_error;
  std::uint64_t shots_used = 0;
  std::size_t clamp_count = 0;

  bool certified() const noexcept { return basis == Basis::schmidt; }
};

namespace detail {

/// One observable's sample summary.
struct MeanSummary {
  double mean = 0.0;
  double variance_of_mean = 0.0;  // plug-in single-shot variance / N
  double square = 0.0;            // mean^2, optionally bias-corrected
};

inline MeanSummary summarize(double mean, double single_shot_var, std::uint64_t shots, bool unbiased, bool exact) {
  const double n = static_cast<double>(shots);
  MeanSummary s{mean, single_shot_var / n, mean * mean};
  if (unbiased && !exact && shots > 1) s.square -= single_shot_var / (n - 1.0);
  return s;
}

/// dE/d(C^2) for E = h((1 + sqrt(1 - C^2)) / 2).
inline double eof_slope(double c_sq) {
  const double u = 1.0 - c_sq;
  if (u < 1e-12) return 1.0 / (2.0 * std::numbers::ln2);
  const double root = std::sqrt(u);
  const double x = 0.5 * (1.0 + root);
  return std::log2((1.0 - x) / x) * (-1.0 / (4.0 * root));
}

/// Assembles one block from its eight summaries (kBlockSettings order). Returns
/// nullopt when the measured weight is at or below the cutoff.
inline std::optional<BlockEstimate> assemble_block(GeneratorIndex alpha, GeneratorIndex beta,
                                                   const std::array<MeanSummary, 8>& s) {
  BlockEstimate b;
  b.alpha = alpha;
  b.beta = beta;
  double t = s[0].mean;
  if (!(t > kSkipWeight)) return std::nullopt;
  if (t > 1.0) {
    t = 1.0;
    b.clamps.push_back("t_hat");
  }
  b.t_hat = t;
  b.c_const_hat = 1.0 / t;

  const SquaredMeans q{s[1].square, s[2].square, s[3].square, s[4].square,
                       s[5].square, s[6].square, s[7].square};
  const double bracket = concurrence_bracket(q);
  const double raw_c_sq = concurrence_sq_unclamped(t, q);
  double c_sq = raw_c_sq;
  bool c_sq_clamped = false;
  if (c_sq < 0.0 || c_sq > 1.0) {
    c_sq = std::clamp(c_sq, 0.0, 1.0);
    c_sq_clamped = true;
    b.clamps.push_back("concurrence_sq");
  }
  b.concurrence_sq_hat = c_sq;
  b.c_hat = std::sqrt(c_sq);
  double h_arg = 0.5 * (1.0 + std::sqrt(1.0 - c_sq));
  if (h_arg < 0.5 || h_arg > 1.0) {
    h_arg = std::clamp(h_arg, 0.5, 1.0);
    b.clamps.push_back("h_argument");
  }
  b.e_block_hat = binary_entropy(h_arg);
  b.contribution = (b.e_block_hat - std::log2(t)) * t;

  // Delta method over independent observables. A clamped C^2 sits on the
  // boundary of its domain and gets zero slope.
  const double slope = (c_sq_clamped || c_sq <= 0.0) ? 0.0 : eof_slope(c_sq);
  const double dcsq_dt = -bracket / (t * t * t);
  const double d_dt = b.e_block_hat - std::log2(t) - 1.0 / std::numbers::ln2 + t * slope * dcsq_dt;
  static constexpr std::array<double, 7> kSigns{+1, -1, -1, -1, +1, -1, +1};
  double var = d_dt * d_dt * s[0].variance_of_mean;
  for (std::size_t k = 0; k < kSigns.size(); ++k) {
    const double grad = t * slope * kSigns[k] * s[k + 1].mean / (t * t);
    var += grad * grad * s[k + 1].variance_of_mean;
  }
  b.std_error = std::sqrt(var);
  return b;
}

}  // namespace detail

/// Simulated measurement of the block-sum entanglement formula: per block, the
/// eight local observables are sampled independently, T and C^2 are formed from
/// the sample means, and the block terms are summed with the theorem prefactor.
inline EstimateReport estimate_eof(const PureState& state, const ShotPlan& plan,
                                   EnumerationMode mode = EnumerationMode::rect, Basis basis = Basis::schmidt) {
  if (plan.shots_per_observable == 0) throw Error(ErrorKind::invalid_input, "shots must be at least 1");
  const PureState working = basis == Basis::schmidt ? to_schmidt_basis(state) : state;
  const std::size_t m = working.m(), n = working.n();
  const bool exact = plan.use_exact_probabilities;

  EstimateReport report;
  report.mode = mode;
  report.basis = basis;
  report.plan = plan;
  report.normalization = normalization(m, n, mode);

  struct Measured {
    std::size_t block;
    GeneratorIndex alpha, beta;
    std::array<OutcomeCounts, 8> counts;
  };
  std::vector<Measured> measured;  // kept for the bootstrap

  double sum = 0.0, var = 0.0;
  const auto pairs = enumerate_pairs(m, n, mode);
  for (std::size_t block = 0; block < pairs.size(); ++block) {
    const auto& [alpha, beta] = pairs[block];
    std::array<detail::MeanSummary, 8> summary{};
    Measured record{block, alpha, beta, {}};
    bool dropped = false;
    for (std::size_t obs = 0; obs < kBlockSettings.size(); ++obs) {
      const ObservableSpec a{m, alpha, kBlockSettings[obs].first};
      const ObservableSpec b{n, beta, kBlockSettings[obs].second};
      const OutcomeProbabilities p = outcome_probabilities(working, a, b);
      report.shots_used += plan.shots_per_observable;
      if (exact) {
        summary[obs] = detail::summarize(p.mean(), p.variance(), plan.shots_per_observable, false, true);
      } else {
        std::mt19937_64 rng(derive_seed(plan.master_seed, block, obs));
        record.counts[obs] = draw_counts(p, plan.shots_per_observable, rng);
        summary[obs] = detail::summarize(record.counts[obs].mean(), record.counts[obs].variance(),
                                         plan.shots_per_observable, plan.unbiased_squares, false);
      }
      // Zero-weight blocks are dropped after the weight measurement.
      if (obs == 0 && !(summary[0].mean > kSkipWeight)) {
        dropped = true;
        break;
      }
    }
    if (dropped) {
      ++report.dropped_blocks;
      continue;
    }
    auto est = detail::assemble_block(alpha, beta, summary);
    report.clamp_count += est->clamps.size();
    sum += est->contribution;
    var += est->std_error * est->std_error;
    report.blocks.push_back(std::move(*est));
    if (!exact) measured.push_back(std::move(record));
  }
  report.e_hat = report.normalization * sum;
  report.std_error = report.normalization * std::sqrt(var);

  if (plan.bootstrap_resamples > 0 && !exact) {
    std::vector<double> totals;
    totals.reserve(plan.bootstrap_resamples);
    for (std::uint32_t rep = 1; rep <= plan.bootstrap_resamples; ++rep) {
      double total = 0.0;
      for (std::size_t k = 0; k < measured.size(); ++k) {
        std::array<detail::MeanSummary, 8> summary{};
        for (std::size_t obs = 0; obs < 8; ++obs) {
          const auto& c = measured[k].counts[obs];
          const double shots = static_cast<double>(c.shots());
          const OutcomeProbabilities empirical{static_cast<double>(c.minus) / shots,
                                               static_cast<double>(c.zero) / shots,
                                               static_cast<double>(c.plus) / shots};
          std::mt19937_64 rng(derive_seed(plan.master_seed, measured[k].block, obs, rep));
          const OutcomeCounts resampled = draw_counts(empirical, c.shots(), rng);
          summary[obs] = detail::summarize(resampled.mean(), resampled.variance(), c.shots(),
                                           plan.unbiased_squares, false);
        }
        if (auto est = detail::assemble_block(measured[k].alpha, measured[k].beta, summary)) {
          total += est->contribution;
        }
      }
      totals.push_back(report.normalization * total);
    }
    double mean = 0.0;
    for (double t : totals) mean += t;
    mean /= static_cast<double>(totals.size());
    double ss = 0.0;
    for (double t : totals) ss += (t - mean) * (t - mean);
    report.bootstrap_std_error = totals.size() > 1 ? std::sqrt(ss / static_cast<double>(totals.size() - 1)) : 0.0;
  }
  return report;
}

}  // namespace qeof
