#pragma once

#include <cmath>
#include <string>
#include <string_view>
#include <vector>

#include "qeof/projections.hpp"
#include "qeof/states.hpp"

namespace qeof {

/// `schmidt` rotates the state to its Schmidt form before summing blocks; the
/// block sum only equals the entanglement there. `raw` sums the blocks of the
/// coefficients as given and is kept to show the basis dependence.
enum class Basis { schmidt, raw };

inline std::string_view to_string(Basis basis) { return basis == Basis::schmidt ? "schmidt" : "raw"; }

inline Basis parse_basis(std::string_view text) {
  if (text == "schmidt") return Basis::schmidt;
  if (text == "raw") return Basis::raw;
  throw Error(ErrorKind::invalid_input, "unknown basis '" + std::string(text) + "'");
}

struct ReconstructionTerm {
  GeneratorIndex alpha;
  GeneratorIndex beta;
  double weight_T = 0.0;
  double c_const = 0.0;
  double block_eof = 0.0;
  double contribution = 0.0;  // (E + log2 C) / C, evaluated as (E + log2 C) * T
};

struct ReconstructionReport {
  EnumerationMode mode = EnumerationMode::rect;
  Basis basis = Basis::schmidt;
  double normalization = 0.0;
  std::vector<ReconstructionTerm> terms;  // contributing blocks only, lexicographic
  double total = 0.0;
  double direct = 0.0;
  double residual_vs_direct = 0.0;

  /// Raw-basis totals carry no guarantee of equalling the entanglement.
  bool certified() const noexcept { return basis == Basis::schmidt; }
};

inline ReconstructionTerm reconstruction_term(const BlockState& b) {
  ReconstructionTerm t{b.alpha, b.beta, b.weight_T, *b.c_const, block_eof(b), 0.0};
  t.contribution = (t.block_eof + std::log2(t.c_const)) * t.weight_T;
  return t;
}

inline ReconstructionReport reconstruct_eof(const PureState& state, EnumerationMode mode,
                                            Basis basis = Basis::schmidt) {
  const PureState working = basis == Basis::schmidt ? to_schmidt_basis(state) : state;
  ReconstructionReport report;
  report.mode = mode;
  report.basis = basis;
  report.normalization = normalization(state.m(), state.n(), mode);

  double sum = 0.0;
  for (const auto& [alpha, beta] : enumerate_pairs(working.m(), working.n(), mode)) {
    const BlockState b = block_extract(working, alpha, beta);
    if (!b.contributes()) continue;
    report.terms.push_back(reconstruction_term(b));
    sum += report.terms.back().contribution;
  }
  report.total = report.normalization * sum;
  report.direct = eof_direct(state);
  report.residual_vs_direct = std::abs(report.total - report.direct);
  return report;
}

/// |block-sum reconstruction in the Schmidt basis - direct entropy|.
inline double verify_theorem(const PureState& state, EnumerationMode mode) {
  return reconstruct_eof(state, mode, Basis::schmidt).residual_vs_direct;
}

}  // namespace qeof
