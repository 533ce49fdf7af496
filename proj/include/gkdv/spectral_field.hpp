#pragma once

#include <complex>
#include <vector>

#include "gkdv/torus_grid.hpp"

namespace gkdv {

using Complex = std::complex<double>;

// Fourier coefficients of a lambda-periodic function under the convention
//
//   fhat(xi) = \int_0^lambda e^{-2 pi i x xi} f(x) dx,   xi = n/lambda,
//   f(x)     = (1/lambda) \sum_n e^{+2 pi i x xi} fhat(n/lambda),
//
// stored for n in [-K, K].  `real_valued` records the constructor's claim
// that the field represents a real function (Hermitian coefficients).
struct SpectralField {
  TorusGrid grid;
  std::vector<Complex> coeffs;  // index i <-> n = i - K
  bool real_valued = false;

  SpectralField() = default;
  explicit SpectralField(const TorusGrid& g, bool real = false)
      : grid(g), coeffs(g.coeff_count(), Complex(0.0, 0.0)), real_valued(real) {}

  int mode_bound() const { return grid.mode_bound; }
  double lambda() const { return grid.period; }

  Complex& at(int n) { return coeffs[static_cast<std::size_t>(n + grid.mode_bound)]; }
  const Complex& at(int n) const {
    return coeffs[static_cast<std::size_t>(n + grid.mode_bound)];
  }
  // Coefficient with zero extension outside the represented band.
  Complex coeff(int n) const {
    return (n >= -grid.mode_bound && n <= grid.mode_bound) ? at(n)
                                                           : Complex(0.0, 0.0);
  }

  double max_abs_coeff() const;
  // Max deviation |fhat(-n) - conj(fhat(n))| over the band.
  double hermitian_defect() const;
  bool is_hermitian(double rel_tol = 1e-9) const;

  SpectralField& operator+=(const SpectralField& other);
  SpectralField& operator-=(const SpectralField& other);
  SpectralField& operator*=(double scale);
};

SpectralField operator+(SpectralField a, const SpectralField& b);
SpectralField operator-(SpectralField a, const SpectralField& b);
SpectralField operator*(double s, SpectralField a);

}  // namespace gkdv
