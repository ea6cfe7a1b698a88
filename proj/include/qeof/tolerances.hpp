#pragma once

#include <cstddef>

namespace qeof {

/// Schmidt values below this are treated as exactly zero.
inline constexpr double kZeroSchmidt = 1e-12;

/// Blocks whose weight T does not exceed this contribute nothing to the sum.
inline constexpr double kSkipWeight = 1e-12;

/// Accepted deviation of the squared norm from one for a pure state.
inline constexpr double kNormTolerance = 1e-8;

/// Largest accepted deviation of U U^dagger from the identity for local rotations.
inline constexpr double kUnitaryTolerance = 1e-8;

/// Eigenvalue matching tolerance used by the multiplicity census.
inline constexpr double kCensusMatch = 1e-10;

inline constexpr std::size_t kDefaultDimensionCap = 32;

}  // namespace qeof
