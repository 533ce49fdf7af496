#pragma once

// Test-only reference implementations.  Everything here is built from plain
// coefficient arithmetic (no FFT, no multiplier algebra), so the production
// paths are checked against independently computed values.

#include <cmath>
#include <complex>
#include <vector>

#include "gkdv/lattice_fourier.hpp"
#include "gkdv/multiplier.hpp"

namespace oracles {

using gkdv::Complex;
using gkdv::SpectralField;

// Direct counting-measure convolution: h(n) = (1/lambda) sum f(n-n1) g(n1),
// output band 2K.  O(K^2).
inline SpectralField dense_convolve(const SpectralField& f,
                                    const SpectralField& g) {
  const int K = f.mode_bound();
  const double lambda = f.lambda();
  gkdv::TorusGrid grid(lambda, 2 * K, gkdv::next_fast_size(4 * K + 1));
  SpectralField out(grid, f.real_valued && g.real_valued);
  for (int n = -2 * K; n <= 2 * K; ++n) {
    Complex acc(0.0, 0.0);
    for (int n1 = -K; n1 <= K; ++n1) {
      const int n2 = n - n1;
      if (n2 < -K || n2 > K) continue;
      acc += f.at(n2) * g.at(n1);
    }
    out.at(n) = acc / lambda;
  }
  return out;
}

// p-fold convolution power of a band-K field (band pK), by repeated dense
// convolution.
inline SpectralField dense_power(const SpectralField& f, int p) {
  SpectralField acc = f;
  for (int j = 1; j < p; ++j) {
    // widen the narrower factor onto the wider band before convolving
    const SpectralField& wide = acc;
    const int K = wide.mode_bound() + f.mode_bound();
    gkdv::TorusGrid grid(f.lambda(), K, gkdv::next_fast_size(2 * K + 1));
    SpectralField next(grid, wide.real_valued && f.real_valued);
    for (int n = -K; n <= K; ++n) {
      Complex sum(0.0, 0.0);
      for (int n1 = -f.mode_bound(); n1 <= f.mode_bound(); ++n1) {
        const int n2 = n - n1;
        if (n2 < -wide.mode_bound() || n2 > wide.mode_bound()) continue;
        sum += wide.at(n2) * f.at(n1);
      }
      next.at(n) = sum / f.lambda();
    }
    acc = std::move(next);
  }
  return acc;
}

// \int_0^lambda |f|^2 dx by direct exponential-sum evaluation on a uniform
// grid unrelated to the transform length (exact for band-limited |f|^2 once
// points > 2 * band).
inline double quadrature_l2sq(const SpectralField& f, int points) {
  const double lambda = f.lambda();
  double acc = 0.0;
  for (int p = 0; p < points; ++p) {
    const double x = lambda * p / points;
    Complex v(0.0, 0.0);
    for (int n = -f.mode_bound(); n <= f.mode_bound(); ++n) {
      v += f.at(n) * std::exp(Complex(0.0, gkdv::kTwoPi * x * n / lambda));
    }
    v /= lambda;
    acc += std::norm(v);
  }
  return acc * lambda / points;
}

// d/dt E(I u) along the truncated flow, by the chain rule and dense
// convolution powers only:
//   u_t = -u_xxx + mu d_x trunc_K(u^{k+1})
//   dE  = \int d_x(Iu) d_x(I u_t) dx + mu \int (Iu)^{k+1} (I u_t) dx.
inline double galerkin_dE_Iu_dt(const SpectralField& u,
                                const gkdv::MultiplierParams& p, double mu) {
  const int K = u.mode_bound();
  const double lambda = u.lambda();

  const SpectralField power = dense_power(u, p.k + 1);  // band (k+1)K
  SpectralField u_t(u.grid, true);
  for (int n = -K; n <= K; ++n) {
    const double theta = u.grid.angular(n);
    const Complex linear = Complex(0.0, theta * theta * theta) * u.at(n);
    const Complex flux = Complex(0.0, mu * theta) * power.at(n);
    u_t.at(n) = linear + flux;
  }

  auto m_at = [&](int n) { return gkdv::m_value(u.grid.frequency(n), p); };

  double quad = 0.0;
  for (int n = -K; n <= K; ++n) {
    const double theta = u.grid.angular(n);
    const double m = m_at(n);
    quad += theta * theta * m * m *
            (u.at(n) * std::conj(u_t.at(n))).real();
  }
  quad /= lambda;

  SpectralField Iu = u;
  for (int n = -K; n <= K; ++n) Iu.at(n) *= m_at(n);
  const SpectralField Iu_pow = dense_power(Iu, p.k + 1);
  double nonlin = 0.0;
  for (int n = -K; n <= K; ++n) {
    const double m = m_at(n);
    nonlin += (Iu_pow.at(-n) * (m * u_t.at(n))).real();
  }
  nonlin /= lambda;

  return quad + mu * nonlin;
}

// Least-squares slope of log2(y) against log2(x).
inline double log2_slope(const std::vector<double>& x,
                         const std::vector<double>& y) {
  const std::size_t n = x.size();
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const double lx = std::log2(x[i]);
    const double ly = std::log2(std::max(y[i], 1e-300));
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

}  // namespace oracles
