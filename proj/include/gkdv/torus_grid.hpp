#pragma once

#include <numbers>

#include "gkdv/errors.hpp"

namespace gkdv {

inline constexpr double kTwoPi = 2.0 * std::numbers::pi_v<double>;

// Smallest 2^a 3^b 5^c >= n (FFT-friendly transform length).
int next_fast_size(int n);

// Uniform lattice for a lambda-periodic torus.  Retained Fourier modes are
// xi = n/lambda (cycles per unit length) for |n| <= mode_bound, and the
// physical grid is `samples` equispaced points on [0, lambda).
// samples >= 2*mode_bound + 1 keeps the represented band alias-free.
struct TorusGrid {
  double period = 1.0;  // lambda > 0
  int mode_bound = 0;   // K
  int samples = 1;      // P

  TorusGrid() = default;
  TorusGrid(double lambda, int K, int P);

  // Grid with the default (FFT-friendly) sample count for K modes.
  static TorusGrid make(double lambda, int K);

  int coeff_count() const { return 2 * mode_bound + 1; }
  double frequency(int n) const { return n / period; }          // cycles
  double angular(int n) const { return kTwoPi * n / period; }   // radians
  double point(int p) const { return period * p / samples; }

  bool operator==(const TorusGrid&) const = default;
};

}  // namespace gkdv
