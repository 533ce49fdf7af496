#include "gkdv/strichartz.hpp"

#include <cmath>

#include "gkdv/fft.hpp"
#include "gkdv/lattice_fourier.hpp"
#include "gkdv/parallel.hpp"
#include "gkdv/solver.hpp"

namespace gkdv {
namespace {

double partition_ramp(double x) { return x > 0.0 ? std::exp(-1.0 / x) : 0.0; }

}  // namespace

double eta_window(double t) {
  const double a = partition_ramp(2.0 - std::abs(t));
  const double b = partition_ramp(std::abs(t) - 1.0);
  return a == 0.0 ? 0.0 : a / (a + b);
}

double c_constant(double M, double lambda) {
  if (!(M > 0.0) || !(lambda > 0.0)) {
    throw PreconditionError("c_constant: M and lambda must be positive");
  }
  if (M <= 1.0) return 1.0;
  return std::sqrt(1.0 / M + 1.0 / lambda);
}

CountingSetResult counting_set(const CountingSetQuery& q,
                               std::int64_t search_bound) {
  CountingSetResult out;
  const double il = 1.0 / q.lambda;
  for (std::int64_t n1 = -search_bound; n1 <= search_bound; ++n1) {
    const double xi1 = static_cast<double>(n1) * il;
    const double xi2 = q.xi - xi1;
    const bool separated = std::abs(xi1 * xi1 - xi2 * xi2) >= q.M;
    const bool thin =
        std::abs(q.tau - xi1 * xi1 * xi1 - xi2 * xi2 * xi2) <= q.width;
    if (separated && thin) out.members.push_back(n1);

    if (q.xi != 0.0) {
      // tau - xi1^3 - xi2^3 = 3 xi [ a - (xi1 - xi/2)^2 ], a = (tau - xi^3/4)/(3 xi),
      // and |xi1^2 - xi2^2| = |xi| |2 xi1 - xi|.
      const bool separated_q = std::abs(q.xi) * std::abs(2.0 * xi1 - q.xi) >= q.M;
      const double a = (q.tau - 0.25 * q.xi * q.xi * q.xi) / (3.0 * q.xi);
      const double centered = xi1 - 0.5 * q.xi;
      const bool thin_q =
          std::abs(centered * centered - a) <= q.width / (3.0 * std::abs(q.xi));
      if (separated_q && thin_q) out.members_quadratic_form.push_back(n1);
    }
  }
  if (q.xi != 0.0) {
    out.characterizations_agree = out.members == out.members_quadratic_form;
  }
  return out;
}

SpectralField apply_IM(const SpectralField& f, const SpectralField& g,
                       double M) {
  if (f.grid != g.grid) throw GridMismatchError("apply_IM: grids differ");
  const TorusGrid& in = f.grid;
  const int K = in.mode_bound;
  TorusGrid out_grid(in.period, 2 * K, next_fast_size(4 * K + 1));
  SpectralField out(out_grid, false);

  for (int n = -2 * K; n <= 2 * K; ++n) {
    Complex acc(0.0, 0.0);
    const int lo = std::max(-K, n - K), hi = std::min(K, n + K);
    for (int n1 = lo; n1 <= hi; ++n1) {
      const double xi1 = in.frequency(n1);
      const double xi2 = in.frequency(n - n1);
      if (std::abs(xi1 * xi1 - xi2 * xi2) >= M) {
        acc += f.at(n1) * g.at(n - n1);
      }
    }
    out.at(n) = acc / in.period;
  }
  out.real_valued = f.real_valued && g.real_valued && out.is_hermitian();
  return out;
}

double bilinear_ratio(const SpectralField& phi1, const SpectralField& phi2,
                      double M, int time_samples) {
  if (phi1.grid != phi2.grid) throw GridMismatchError("bilinear_ratio: grids differ");
  const double n1 = l2_norm(phi1);
  const double n2 = l2_norm(phi2);
  if (n1 == 0.0 || n2 == 0.0) {
    throw UndefinedRatioError("bilinear_ratio: a factor has zero norm");
  }
  const TorusGrid& g = phi1.grid;
  const double lambda = g.period;

  // Uniform quadrature over supp eta = [-2, 2] (the integrand vanishes to
  // all orders at both ends, so the plain sum converges superalgebraically
  // under sample doubling).  Each node needs the restricted convolution of
  // the exactly-propagated fields: O(K^2) work, parallel over nodes with an
  // ordered merge.
  const double t_lo = -2.0, t_hi = 2.0;
  const double dt = (t_hi - t_lo) / time_samples;
  std::vector<double> contrib(static_cast<std::size_t>(time_samples), 0.0);

  parallel_for_chunks(contrib.size(), [&](std::size_t j) {
    const double t = t_lo + dt * static_cast<double>(j);
    const double w = eta_window(t);
    if (w == 0.0) return;
    const SpectralField a = free_propagator(phi1, t);
    const SpectralField b = free_propagator(phi2, t);
    const SpectralField prod = apply_IM(a, b, M);
    double l2sq = 0.0;
    for (const Complex& c : prod.coeffs) l2sq += std::norm(c);
    l2sq /= lambda;
    contrib[j] = w * w * w * w * l2sq;  // |eta^2 .|^2 = eta^4 |.|^2
  });

  double integral = 0.0;
  for (double v : contrib) integral += v;
  integral *= dt;
  return std::sqrt(integral) / (c_constant(M, lambda) * n1 * n2);
}

void SpaceTimeField::validate() const {
  if (slices.size() < 16) throw ResolutionError("need at least 16 time samples");
  if (!(dt > 0.0)) throw PreconditionError("time step must be positive");
  for (const SpectralField& s : slices) {
    if (s.grid != grid) throw GridMismatchError("slice grid mismatch");
  }
  // The cutoff support is [-2, 2]; a window an eta-support short of length 4
  // cannot hold it.
  if (window_length() < 4.0 - 1e-12) {
    throw ResolutionError("window shorter than the cutoff support");
  }
}

SpaceTimeField sample_free_evolution(const SpectralField& phi, double t0,
                                     double t1, int count) {
  if (count < 2) throw ResolutionError("need at least 2 samples");
  SpaceTimeField out;
  out.grid = phi.grid;
  out.t0 = t0;
  out.dt = (t1 - t0) / (count - 1);
  out.slices.reserve(static_cast<std::size_t>(count));
  for (int j = 0; j < count; ++j) {
    out.slices.push_back(free_propagator(phi, t0 + out.dt * j));
  }
  return out;
}

BourgainNorms bourgain_norm(const SpaceTimeField& u, double s, double b) {
  u.validate();
  const TorusGrid& g = u.grid;
  const int K = g.mode_bound;
  const int nt = static_cast<int>(u.slices.size());
  const int npad = next_fast_size(4 * nt);  // 4x padding against wrap-around
  const double mid = u.t0 + 0.5 * u.window_length();
  const double period = npad * u.dt;
  const double dtau = kTwoPi / period;  // angular tau lattice spacing

  double x_sq = 0.0;
  double x_half_sq = 0.0;  // the b = 1/2 piece entering Y^s
  double y_sq = 0.0;
  std::vector<Complex> in(static_cast<std::size_t>(npad));
  std::vector<Complex> spec(static_cast<std::size_t>(npad));

  for (int n = -K; n <= K; ++n) {
    const double xi = g.frequency(n);
    const double theta = g.angular(n);
    const double disp = theta * theta * theta;  // angular dispersion phase rate

    std::fill(in.begin(), in.end(), Complex(0.0, 0.0));
    for (int j = 0; j < nt; ++j) {
      const double t = u.time(static_cast<std::size_t>(j)) - mid;
      const double w = eta_window(t);
      // demodulate: remove e^{+i theta^3 t} carried by the free flow
      in[static_cast<std::size_t>(j)] =
          w * u.slices[static_cast<std::size_t>(j)].at(n) *
          std::exp(Complex(0.0, -disp * t));
    }
    fft::c2c(in.data(), spec.data(), npad, -1);

    const double weight_s = std::pow(1.0 + xi * xi, s);
    double mode_x = 0.0;
    double mode_x_half = 0.0;
    double mode_l1 = 0.0;
    for (int mm = 0; mm < npad; ++mm) {
      const int ms = mm <= npad / 2 ? mm : mm - npad;
      const double tau = dtau * ms;  // offset from the dispersion surface
      const double amp = std::abs(u.dt * spec[static_cast<std::size_t>(mm)]);
      const double bracket = 1.0 + tau * tau;
      mode_x += std::pow(bracket, b) * amp * amp;
      mode_x_half += std::sqrt(bracket) * amp * amp;
      mode_l1 += amp;
    }
    mode_x *= dtau / kTwoPi;
    mode_x_half *= dtau / kTwoPi;
    mode_l1 *= dtau / kTwoPi;
    x_sq += weight_s * mode_x / g.period;
    x_half_sq += weight_s * mode_x_half / g.period;
    y_sq += weight_s * mode_l1 * mode_l1 / g.period;
  }

  BourgainNorms out;
  out.x_sb = std::sqrt(x_sq);
  out.y_s = std::sqrt(x_half_sq) + std::sqrt(y_sq);
  return out;
}

double l4_spacetime_norm(const SpaceTimeField& u) {
  u.validate();
  const TorusGrid& g = u.grid;
  const int pad = next_fast_size(4 * g.mode_bound + 1);
  const double mid = u.t0 + 0.5 * u.window_length();

  double acc = 0.0;
  for (std::size_t j = 0; j < u.slices.size(); ++j) {
    const double w = eta_window(u.time(j) - mid);
    if (w == 0.0) continue;
    const std::vector<double> phys = inverse_transform_padded(u.slices[j], pad);
    double sum4 = 0.0;
    for (double v : phys) sum4 += v * v * v * v;
    acc += w * w * w * w * sum4 * (g.period / pad) * u.dt;
  }
  return std::pow(acc, 0.25);
}

}  // namespace gkdv
