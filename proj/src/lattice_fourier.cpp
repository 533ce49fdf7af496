#include "gkdv/lattice_fourier.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "gkdv/fft.hpp"

namespace gkdv {

// ---------------------------------------------------------------------------
// SpectralField basics
// ---------------------------------------------------------------------------

double SpectralField::max_abs_coeff() const {
  double m = 0.0;
  for (const Complex& c : coeffs) m = std::max(m, std::abs(c));
  return m;
}

double SpectralField::hermitian_defect() const {
  double worst = 0.0;
  for (int n = 0; n <= grid.mode_bound; ++n) {
    worst = std::max(worst, std::abs(at(-n) - std::conj(at(n))));
  }
  return worst;
}

bool SpectralField::is_hermitian(double rel_tol) const {
  const double scale = max_abs_coeff();
  return hermitian_defect() <= rel_tol * std::max(scale, 1e-300);
}

SpectralField& SpectralField::operator+=(const SpectralField& other) {
  if (grid != other.grid) throw GridMismatchError("field grids differ");
  for (std::size_t i = 0; i < coeffs.size(); ++i) coeffs[i] += other.coeffs[i];
  real_valued = real_valued && other.real_valued;
  return *this;
}

SpectralField& SpectralField::operator-=(const SpectralField& other) {
  if (grid != other.grid) throw GridMismatchError("field grids differ");
  for (std::size_t i = 0; i < coeffs.size(); ++i) coeffs[i] -= other.coeffs[i];
  real_valued = real_valued && other.real_valued;
  return *this;
}

SpectralField& SpectralField::operator*=(double scale) {
  for (Complex& c : coeffs) c *= scale;
  return *this;
}

SpectralField operator+(SpectralField a, const SpectralField& b) { return a += b; }
SpectralField operator-(SpectralField a, const SpectralField& b) { return a -= b; }
SpectralField operator*(double s, SpectralField a) { return a *= s; }

// ---------------------------------------------------------------------------
// Transforms
// ---------------------------------------------------------------------------

SpectralField forward_transform(std::span<const double> samples,
                                const TorusGrid& grid) {
  if (static_cast<int>(samples.size()) != grid.samples) {
    throw DimensionError("sample count does not match the grid");
  }
  std::vector<std::complex<double>> half(samples.size() / 2 + 1);
  fft::r2c(samples.data(), half.data(), grid.samples);

  SpectralField out(grid, /*real=*/true);
  const double scale = grid.period / grid.samples;
  for (int n = 0; n <= grid.mode_bound; ++n) {
    const Complex c = scale * half[static_cast<std::size_t>(n)];
    out.at(n) = c;
    out.at(-n) = std::conj(c);
  }
  return out;
}

std::vector<double> inverse_transform(const SpectralField& field) {
  if (!field.is_hermitian()) {
    throw SymmetryError("non-Hermitian coefficients; real samples undefined");
  }
  const TorusGrid& g = field.grid;
  std::vector<std::complex<double>> half(
      static_cast<std::size_t>(g.samples / 2 + 1), Complex(0.0, 0.0));
  for (int n = 0; n <= g.mode_bound; ++n) {
    half[static_cast<std::size_t>(n)] = field.at(n) / g.period;
  }
  return fft::c2r(half, g.samples);
}

std::vector<Complex> inverse_transform_complex(const SpectralField& field,
                                               int samples) {
  const TorusGrid& g = field.grid;
  if (samples < g.coeff_count()) {
    throw AliasingError("padded sample count below the coefficient count");
  }
  std::vector<Complex> spec(static_cast<std::size_t>(samples), Complex(0.0, 0.0));
  for (int n = -g.mode_bound; n <= g.mode_bound; ++n) {
    const int slot = n >= 0 ? n : n + samples;
    spec[static_cast<std::size_t>(slot)] = field.at(n) / g.period;
  }
  std::vector<Complex> out(static_cast<std::size_t>(samples));
  fft::c2c(spec.data(), out.data(), samples, +1);
  return out;
}

std::vector<double> inverse_transform_padded(const SpectralField& field,
                                             int samples) {
  const TorusGrid& g = field.grid;
  if (samples < g.coeff_count()) {
    throw AliasingError("padded sample count below the coefficient count");
  }
  std::vector<std::complex<double>> half(
      static_cast<std::size_t>(samples / 2 + 1), Complex(0.0, 0.0));
  for (int n = 0; n <= g.mode_bound; ++n) {
    half[static_cast<std::size_t>(n)] = field.at(n) / g.period;
  }
  return fft::c2r(half, samples);
}

// ---------------------------------------------------------------------------
// Convolution and norms
// ---------------------------------------------------------------------------

SpectralField convolve(const SpectralField& f, const SpectralField& g,
                       bool truncate_to_input) {
  if (f.grid != g.grid) throw GridMismatchError("convolve: grids differ");
  const TorusGrid& in = f.grid;
  const int K = in.mode_bound;
  const int K_out = truncate_to_input ? K : 2 * K;
  // Product of two band-K fields is band-2K exactly; 4K+1 samples are
  // alias-free for every retained target mode.
  const int pad = next_fast_size(4 * K + 1);

  std::vector<Complex> fa = inverse_transform_complex(f, pad);
  std::vector<Complex> gb = inverse_transform_complex(g, pad);
  for (int p = 0; p < pad; ++p) {
    fa[static_cast<std::size_t>(p)] *= gb[static_cast<std::size_t>(p)];
  }
  std::vector<Complex> spec(static_cast<std::size_t>(pad));
  fft::c2c(fa.data(), spec.data(), pad, -1);

  TorusGrid out_grid(in.period, K_out,
                     std::max(in.samples, next_fast_size(2 * K_out + 1)));
  SpectralField out(out_grid, f.real_valued && g.real_valued);
  const double scale = in.period / pad;
  for (int n = -K_out; n <= K_out; ++n) {
    const int slot = n >= 0 ? n : n + pad;
    out.at(n) = scale * spec[static_cast<std::size_t>(slot)];
  }
  return out;
}

double sobolev_norm(const SpectralField& f, double s, bool homogeneous) {
  const TorusGrid& g = f.grid;
  if (homogeneous && s < 0.0) {
    const double scale = std::max(f.max_abs_coeff(), 1e-300);
    if (std::abs(f.at(0)) > 1e-13 * scale) {
      throw SingularityError(
          "homogeneous norm of negative order needs a mean-zero field");
    }
  }
  double sum = 0.0;
  for (int n = -g.mode_bound; n <= g.mode_bound; ++n) {
    const double xi = g.frequency(n);
    double w;
    if (homogeneous) {
      if (n == 0) continue;  // zero (s>0) or excluded mean-zero mode (s<0)
      w = std::pow(std::abs(xi), 2.0 * s);
    } else {
      w = std::pow(1.0 + xi * xi, s);
    }
    sum += w * std::norm(f.at(n));
  }
  return std::sqrt(sum / g.period);
}

double l2_norm(const SpectralField& f) { return sobolev_norm(f, 0.0); }

SpectralField project(const Projection& kind, const SpectralField& f) {
  SpectralField out = f;
  const TorusGrid& g = f.grid;
  if (std::holds_alternative<ProjectMeanZero>(kind)) {
    out.at(0) = Complex(0.0, 0.0);
    return out;
  }
  double lo, hi;
  if (const auto* dy = std::get_if<ProjectDyadic>(&kind)) {
    if (dy->shell < 0.0) throw PreconditionError("dyadic shell must be >= 0");
    lo = dy->shell;
    hi = 2.0 * dy->shell;
  } else {
    const auto& band = std::get<ProjectBand>(kind);
    if (band.lo < 0.0 || band.hi < 0.0) {
      throw PreconditionError("band bounds must be nonnegative");
    }
    lo = band.lo;
    hi = band.hi;
  }
  for (int n = -g.mode_bound; n <= g.mode_bound; ++n) {
    const double a = std::abs(g.frequency(n));
    if (!(a >= lo && a < hi)) out.at(n) = Complex(0.0, 0.0);
  }
  return out;
}

SpectralField fractional_derivative(double order, bool homogeneous,
                                    const SpectralField& f) {
  const TorusGrid& g = f.grid;
  SpectralField out = f;
  if (homogeneous && order < 0.0) {
    const double scale = std::max(f.max_abs_coeff(), 1e-300);
    if (std::abs(f.at(0)) > 1e-13 * scale) {
      throw SingularityError(
          "negative homogeneous order on a field with nonzero mean");
    }
  }
  for (int n = -g.mode_bound; n <= g.mode_bound; ++n) {
    const double theta = g.angular(n);  // 2 pi xi
    double sym;
    if (homogeneous) {
      if (n == 0) {
        sym = order == 0.0 ? 1.0 : 0.0;  // 0^0 = identity; mean stays zero
      } else {
        sym = std::pow(std::abs(theta), order);
      }
    } else {
      sym = std::pow(1.0 + theta * theta, 0.5 * order);
    }
    out.at(n) *= sym;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Hyperplane functionals
// ---------------------------------------------------------------------------

HyperplanePoint::HyperplanePoint(std::vector<std::int64_t> idx, double lam)
    : n(std::move(idx)), lambda(lam) {
  if (lambda <= 0.0) throw PreconditionError("lambda must be positive");
  const std::int64_t total = std::accumulate(n.begin(), n.end(), std::int64_t{0});
  if (total != 0) throw PreconditionError("tuple is not on the hyperplane");
}

namespace detail {

void check_hyperplane_fields(std::span<const SpectralField> fields) {
  if (fields.size() < 2 || fields.size() > 10) {
    throw PreconditionError("hyperplane functional arity must be in [2,10]");
  }
  for (const SpectralField& f : fields) {
    if (f.grid != fields[0].grid) {
      throw GridMismatchError("hyperplane functional: grids differ");
    }
  }
}

}  // namespace detail

Complex hyperplane_functional_tensor(
    std::span<const std::vector<SlotSymbol>> terms,
    std::span<const SpectralField> fields) {
  detail::check_hyperplane_fields(fields);
  const int nf = static_cast<int>(fields.size());
  const int K = fields[0].mode_bound();
  const double lambda = fields[0].lambda();
  // Product of nf band-K factors has trigonometric degree nf*K; uniform
  // quadrature is exact once pad > nf*K.
  const int pad = next_fast_size(nf * K + 1);

  Complex total(0.0, 0.0);
  for (const auto& term : terms) {
    if (static_cast<int>(term.size()) != nf) {
      throw DimensionError("tensor term arity does not match field count");
    }
    std::vector<Complex> prod(static_cast<std::size_t>(pad), Complex(1.0, 0.0));
    for (int j = 0; j < nf; ++j) {
      SpectralField filtered = fields[static_cast<std::size_t>(j)];
      for (int n = -K; n <= K; ++n) {
        filtered.at(n) *= term[static_cast<std::size_t>(j)](
            filtered.grid.frequency(n));
      }
      const std::vector<Complex> phys = inverse_transform_complex(filtered, pad);
      for (int p = 0; p < pad; ++p) {
        prod[static_cast<std::size_t>(p)] *= phys[static_cast<std::size_t>(p)];
      }
    }
    Complex integral(0.0, 0.0);
    for (const Complex& v : prod) integral += v;
    total += integral * (lambda / pad);
  }
  return total;
}

}  // namespace gkdv
