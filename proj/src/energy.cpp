#include "gkdv/energy.hpp"

#include <atomic>
#include <cmath>
#include <ostream>

#include "gkdv/fft.hpp"
#include "gkdv/lattice_fourier.hpp"
#include "gkdv/resonance.hpp"

namespace gkdv {
namespace {

void require_real(const SpectralField& u, const char* who) {
  if (!u.is_hermitian()) {
    throw SymmetryError(std::string(who) + ": field must represent a real function");
  }
}

std::string csv_number(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace

std::vector<Complex> power_spectrum(const SpectralField& u, int q) {
  const TorusGrid& g = u.grid;
  const int K = g.mode_bound;
  const int out_bound = q * K;
  const int pad = next_fast_size(2 * out_bound + 1);
  std::vector<double> phys = inverse_transform_padded(u, pad);
  std::vector<double> pw(phys.size());
  for (std::size_t i = 0; i < phys.size(); ++i) {
    double v = 1.0;
    for (int j = 0; j < q; ++j) v *= phys[i];
    pw[i] = v;
  }
  std::vector<std::complex<double>> half = fft::r2c(pw);
  std::vector<Complex> out(static_cast<std::size_t>(2 * out_bound + 1));
  const double scale = g.period / pad;
  for (int n = 0; n <= out_bound; ++n) {
    const Complex c = scale * half[static_cast<std::size_t>(n)];
    out[static_cast<std::size_t>(n + out_bound)] = c;
    out[static_cast<std::size_t>(-n + out_bound)] = std::conj(c);
  }
  return out;
}

double hamiltonian(const SpectralField& u, int k, double mu) {
  if (k != 3 && k != 4) throw PreconditionError("k must be 3 or 4");
  require_real(u, "hamiltonian");
  const TorusGrid& g = u.grid;

  double quad = 0.0;
  for (int n = -g.mode_bound; n <= g.mode_bound; ++n) {
    const double theta = g.angular(n);
    quad += theta * theta * std::norm(u.at(n));
  }
  quad /= g.period;

  // u^{k+2} has trigonometric degree (k+2)K; quadrature on pad > (k+2)K
  // points is exact.
  const int pad = next_fast_size((k + 2) * g.mode_bound + 1);
  const std::vector<double> phys = inverse_transform_padded(u, pad);
  double pw = 0.0;
  for (double v : phys) {
    double acc = 1.0;
    for (int j = 0; j < k + 2; ++j) acc *= v;
    pw += acc;
  }
  pw *= g.period / pad;

  return 0.5 * quad + mu / (k + 2) * pw;
}

double e_of_Iu(const SpectralField& u, const MultiplierParams& p, double mu) {
  require_real(u, "e_of_Iu");
  return hamiltonian(i_apply(u, p), p.k, mu);
}

SecondEnergy second_modified_energy(const SpectralField& u,
                                    const MultiplierParams& p, double mu,
                                    bool allow_large) {
  p.validate();
  require_real(u, "second_modified_energy");
  const double lambda = u.lambda();
  const int K = u.mode_bound();
  const MultiplierTable table(p, lambda, (p.k + 2) * K + 1);
  const std::int64_t threshold =
      static_cast<std::int64_t>(std::floor(p.N * lambda));

  auto m_of = [&](std::int64_t n) { return table(n); };

  // Correction multiplier rho on Gamma_{k+2}:
  //   rho = chi_{max|n_j| > N lambda} [ sigma + mu chi_Omega sigma_tilde/(k+2) ]
  // which is (mu chi_Omega M + i sigma alpha) / (i alpha) evaluated at
  // angular frequencies, restricted to where the derivative multiplier is
  // actually supported.
  auto rho = [&](TupleView t) -> double {
    std::int64_t mx = 0;
    for (std::int64_t n : t.n) mx = std::max<std::int64_t>(mx, n < 0 ? -n : n);
    if (mx <= threshold) return 0.0;
    double prod_m = 1.0;
    for (std::int64_t n : t.n) prod_m *= m_of(n);
    double value = prod_m / (p.k + 2);
    if (mu != 0.0) {
      const double st = sigma_tilde_core(t, p, m_of);
      value += mu * st / (p.k + 2);
    }
    return value;
  };

  const Complex corr = hyperplane_functional_symmetric(
      p.k + 2, u, [&](TupleView t) { return Complex(rho(t), 0.0); },
      allow_large);

  SecondEnergy out;
  out.correction = corr.real();
  out.imag_residue = std::abs(corr.imag());
  const double scale = std::max(std::abs(corr.real()), 1e-300);
  if (out.imag_residue > 1e-6 * scale && out.imag_residue > 1e-14) {
    throw SymmetryError(
        "second modified energy: imaginary residue exceeds 1e-6 relative");
  }
  out.value = e_of_Iu(u, p, mu) - out.correction;
  return out;
}

IncrementTerms increment_terms(const SpectralField& u,
                               const MultiplierParams& p, double mu) {
  p.validate();
  require_real(u, "increment_terms");
  const TorusGrid& g = u.grid;
  const int K = g.mode_bound;
  const double lambda = g.period;
  const int q = p.k + 1;
  const int qK = q * K;

  const SpectralField Iu = i_apply(u, p);
  const std::vector<Complex> B = power_spectrum(Iu, q);   // ((Iu)^{k+1})^
  const std::vector<Complex> B0 = power_spectrum(u, q);   // (u^{k+1})^

  const double c3 = kTwoPi * kTwoPi * kTwoPi;

  // dE1 = i (2pi)^3 (1/lambda) sum_{|z| <= K}
  //        [ B(-z) m(z) z^3  -  mu B0(-z) m(z)^2 z^3 ] uhat(z)
  Complex acc1(0.0, 0.0);
  for (int n = -K; n <= K; ++n) {
    const double xi = g.frequency(n);
    const double m = m_value(xi, p);
    const double z3 = xi * xi * xi;
    const Complex b = B[static_cast<std::size_t>(-n + qK)];
    const Complex b0 = B0[static_cast<std::size_t>(-n + qK)];
    acc1 += (b * (m * z3) - mu * b0 * (m * m * z3)) * u.at(n);
  }
  acc1 *= Complex(0.0, c3) / lambda;

  // dE2 = mu 2pi i (1/lambda) sum_{|z| <= K} B(-z) m(z) z B0(z).
  // The transfer variable z is the flux mode; the dynamics on the grid only
  // feed the retained band, so the sum is truncated to |z| <= K (this is
  // what makes the identity exact along the truncated flow).
  Complex acc2(0.0, 0.0);
  for (int n = -K; n <= K; ++n) {
    const double xi = g.frequency(n);
    const double m = m_value(xi, p);
    acc2 += B[static_cast<std::size_t>(-n + qK)] * (m * xi) *
            B0[static_cast<std::size_t>(n + qK)];
  }
  acc2 *= mu * Complex(0.0, kTwoPi) / lambda;

  return IncrementTerms{acc1, acc2};
}

double almost_conservation_bound(double N, double lambda, double eps) {
  return std::pow(N, -3.0 + eps) + std::pow(N, -2.0 + eps) / std::sqrt(lambda);
}

EnergyReport energy_report(const SpectralField& u, const MultiplierParams& p,
                           double time, double mu, bool allow_large) {
  EnergyReport r;
  r.hamiltonian = hamiltonian(u, p.k, mu);
  r.e_Iu = e_of_Iu(u, p, mu);
  r.e_I2 = second_modified_energy(u, p, mu, allow_large).value;
  r.gap = std::abs(r.e_I2 - r.e_Iu);
  r.h1_norm_Iu = sobolev_norm(i_apply(u, p), 1.0);
  r.time = time;
  return r;
}

std::vector<WindowIncrement> almost_conservation_run(const Trajectory& traj,
                                                     const MultiplierParams& p,
                                                     double eps,
                                                     bool allow_large) {
  std::vector<WindowIncrement> out;
  if (traj.samples.size() < 2) return out;
  const double bound =
      almost_conservation_bound(p.N, traj.config.grid.period, eps);

  std::vector<double> e2(traj.samples.size());
  for (std::size_t i = 0; i < traj.samples.size(); ++i) {
    e2[i] = second_modified_energy(traj.samples[i], p, traj.config.mu,
                                   allow_large)
                .value;
  }
  for (std::size_t i = 0; i + 1 < traj.samples.size(); ++i) {
    WindowIncrement w;
    w.t0 = traj.times[i];
    w.t1 = traj.times[i + 1];
    w.increment = std::abs(e2[i + 1] - e2[i]);
    w.bound = bound;
    w.ratio = w.increment / bound;
    out.push_back(w);
  }
  return out;
}

void write_diagnostics_csv(std::ostream& out, const Trajectory& traj,
                           const MultiplierParams& p, bool allow_large) {
  out << "t,hamiltonian,e_Iu,e_I2,gap,h1_Iu,mass,dE1_re,dE2_re\n";
  for (std::size_t i = 0; i < traj.samples.size(); ++i) {
    const SpectralField& u = traj.samples[i];
    const EnergyReport r =
        energy_report(u, p, traj.times[i], traj.config.mu, allow_large);
    const IncrementTerms inc = increment_terms(u, p, traj.config.mu);
    const double mass = u.at(0).real();
    out << csv_number(r.time) << ',' << csv_number(r.hamiltonian) << ','
        << csv_number(r.e_Iu) << ',' << csv_number(r.e_I2) << ','
        << csv_number(r.gap) << ',' << csv_number(r.h1_norm_Iu) << ','
        << csv_number(mass) << ',' << csv_number(inc.dE1.real()) << ','
        << csv_number(inc.dE2.real()) << '\n';
  }
}

}  // namespace gkdv
