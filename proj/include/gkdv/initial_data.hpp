#pragma once

#include <cstdint>
#include <vector>

#include "gkdv/spectral_field.hpp"

namespace gkdv {

// Seeded rough data: coefficient magnitudes ~ <n>^{-decay} with Gaussian
// factors and uniform phases (hand-rolled Box-Muller so the stream is pinned
// by the engine alone), Hermitian-symmetrized, mean zero, then normalized to
// target_hs_norm in H^s when the target is positive.
SpectralField random_hs_data(const TorusGrid& grid, double s,
                             std::uint64_t seed, double decay,
                             double target_hs_norm = 1.0);

// Single-bump data a sech^2((x - lambda/2)/w), band-limited by the grid.
SpectralField bump_data(const TorusGrid& grid, double amplitude, double width);

struct CoeffEntry {
  std::int64_t n;
  double re;
  double im;
};

// Field from an explicit coefficient list; entries at -n are filled by
// conjugation unless given, and Hermitian consistency is enforced.
SpectralField field_from_coeffs(const TorusGrid& grid,
                                const std::vector<CoeffEntry>& entries);

}  // namespace gkdv
