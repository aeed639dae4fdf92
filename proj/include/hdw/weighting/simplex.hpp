#pragma once

#include <array>

namespace hdw::weighting {

/// (coverage weight, communication weight).
using WeightPair = std::array<double, 2>;

inline constexpr WeightPair kUniform{0.5, 0.5};

/// Clamps negatives to zero and L1-normalizes; falls back to uniform when the
/// clamped sum is zero or not finite.
WeightPair normalize(WeightPair w);

/// Non-negative and sums to one within tol.
bool on_simplex(const WeightPair& w, double tol = 1e-9);

}  // namespace hdw::weighting
