#include "gkdv/initial_data.hpp"

#include <cmath>
#include <random>

#include "gkdv/lattice_fourier.hpp"

namespace gkdv {
namespace {

double unit_uniform(std::mt19937_64& rng) {
  return (static_cast<double>(rng() >> 11) + 0.5) * 0x1.0p-53;
}

// Box-Muller pair from the raw engine; keeps the stream independent of any
// library distribution implementation.
std::pair<double, double> gaussian_pair(std::mt19937_64& rng) {
  const double u1 = unit_uniform(rng);
  const double u2 = unit_uniform(rng);
  const double r = std::sqrt(-2.0 * std::log(u1));
  return {r * std::cos(kTwoPi * u2), r * std::sin(kTwoPi * u2)};
}

}  // namespace

SpectralField random_hs_data(const TorusGrid& grid, double s,
                             std::uint64_t seed, double decay,
                             double target_hs_norm) {
  std::mt19937_64 rng(seed ^ 0x5851f42d4c957f2dULL);
  SpectralField f(grid, /*real=*/true);
  for (int n = 1; n <= grid.mode_bound; ++n) {
    const auto [g1, g2] = gaussian_pair(rng);
    const double xi = grid.frequency(n);
    const double mag = std::pow(1.0 + xi * xi, -0.5 * decay);
    const Complex c = mag * Complex(g1, g2) / std::sqrt(2.0);
    f.at(n) = c;
    f.at(-n) = std::conj(c);
  }
  f.at(0) = Complex(0.0, 0.0);
  if (target_hs_norm > 0.0) {
    const double norm = sobolev_norm(f, s);
    if (norm > 0.0) f *= target_hs_norm / norm;
  }
  return f;
}

SpectralField bump_data(const TorusGrid& grid, double amplitude, double width) {
  if (!(width > 0.0)) throw PreconditionError("bump width must be positive");
  std::vector<double> samples(static_cast<std::size_t>(grid.samples));
  const double center = 0.5 * grid.period;
  for (int p = 0; p < grid.samples; ++p) {
    const double x = grid.point(p);
    const double c = std::cosh((x - center) / width);
    samples[static_cast<std::size_t>(p)] = amplitude / (c * c);
  }
  return forward_transform(samples, grid);
}

SpectralField field_from_coeffs(const TorusGrid& grid,
                                const std::vector<CoeffEntry>& entries) {
  SpectralField f(grid, /*real=*/true);
  std::vector<bool> given(f.coeffs.size(), false);
  for (const CoeffEntry& e : entries) {
    if (e.n < -grid.mode_bound || e.n > grid.mode_bound) {
      throw DimensionError("coefficient index outside the grid band");
    }
    f.at(static_cast<int>(e.n)) = Complex(e.re, e.im);
    given[static_cast<std::size_t>(e.n + grid.mode_bound)] = true;
  }
  // Fill unspecified mirror modes by conjugation.
  for (int n = 1; n <= grid.mode_bound; ++n) {
    const auto ip = static_cast<std::size_t>(n + grid.mode_bound);
    const auto im = static_cast<std::size_t>(-n + grid.mode_bound);
    if (given[ip] && !given[im]) f.at(-n) = std::conj(f.at(n));
    if (given[im] && !given[ip]) f.at(n) = std::conj(f.at(-n));
  }
  if (!f.is_hermitian()) {
    throw SymmetryError("coefficient list is not Hermitian-consistent");
  }
  return f;
}

}  // namespace gkdv
