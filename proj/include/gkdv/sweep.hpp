#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "gkdv/multiplier.hpp"

namespace gkdv {

// The multiplier bounds checked numerically: the non-resonance bound
// |M_{k+2}| <~ |alpha| on Omega, the three Gamma \ Omega bounds on M_{k+2},
// and the two bounds on the symmetrized Gamma_{2k+2} multiplier.
enum class Lemma { nonres, mk2_1, mk2_2, mk2_3, m2k2_1, m2k2_2 };

const char* lemma_name(Lemma lemma);
std::optional<Lemma> lemma_from_name(const std::string& name);

struct SweepConfig {
  Lemma lemma = Lemma::nonres;
  MultiplierParams params;
  double lambda = 1.0;
  std::int64_t bound = 0;        // |n_j| <= bound; 0 -> ceil(4 N lambda)
  std::uint64_t count = 100000;  // sampled tuples (random sampler)
  std::uint64_t seed = 1;
  bool exhaustive = false;       // enumerate every tuple up to `bound`
};

inline constexpr int kHistogramBins = 49;  // half-decades of log10(ratio), from -12

struct SweepReport {
  std::string lemma;
  MultiplierParams params;
  double lambda = 1.0;
  std::int64_t bound = 0;
  std::uint64_t seed = 0;
  bool exhaustive = false;

  std::uint64_t requested = 0;
  std::uint64_t checked = 0;
  std::uint64_t filtered = 0;             // side conditions not met
  std::uint64_t skipped_zero = 0;         // LHS = RHS = 0
  std::uint64_t rhs_zero_lhs_nonzero = 0; // reported, never divided
  std::uint64_t omega_alpha_zero = 0;     // alpha = 0 reclassifications
  bool empty = false;

  double max_ratio = 0.0;
  std::vector<std::int64_t> argmax;
  std::array<std::uint64_t, kHistogramBins> histogram{};

  std::string to_json() const;
};

// Deterministic (seeded, chunk-ordered reduction) sweep of one lemma's
// LHS/RHS ratio over sampled or exhaustively enumerated lattice tuples.
SweepReport bound_sweep(const SweepConfig& config);

}  // namespace gkdv
