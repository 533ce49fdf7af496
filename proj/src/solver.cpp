#include "gkdv/solver.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdio>
#include <limits>

#include "gkdv/fft.hpp"
#include "gkdv/lattice_fourier.hpp"

namespace gkdv {
namespace {

// Per-stage nonlinear evaluation: N(u)^(n) = mu * (2 pi i n/lambda) *
// (u^{k+1})^(n) truncated to the band, plus the flux integrand q = \int u^k dx
// needed by the running gauge integral.  One padded inverse/forward pair.
struct StageEval {
  std::vector<Complex> nonlinear;  // size 2K+1
  double flux_mean = 0.0;          // \int u^k dx
  double max_abs_u = 0.0;
  double energy_power = 0.0;       // \int u^{k+2} dx
};

class NonlinearOp {
 public:
  NonlinearOp(const SolverConfig& config)
      : config_(config),
        K_(config.grid.mode_bound),
        pad_(config.padded_samples()),
        half_(static_cast<std::size_t>(pad_ / 2 + 1)),
        phys_(static_cast<std::size_t>(pad_)),
        powk_(static_cast<std::size_t>(pad_)) {}

  StageEval operator()(const std::vector<Complex>& uhat) {
    const double lambda = config_.grid.period;
    std::fill(half_.begin(), half_.end(), Complex(0.0, 0.0));
    for (int n = 0; n <= K_; ++n) {
      half_[static_cast<std::size_t>(n)] =
          uhat[static_cast<std::size_t>(n + K_)] / lambda;
    }
    fft::c2r(half_.data(), phys_.data(), pad_);

    StageEval out;
    out.nonlinear.assign(static_cast<std::size_t>(2 * K_ + 1), Complex(0.0, 0.0));
    double flux = 0.0, epow = 0.0, umax = 0.0;
    for (int p = 0; p < pad_; ++p) {
      const double u = phys_[static_cast<std::size_t>(p)];
      double uk = 1.0;
      for (int j = 0; j < config_.k; ++j) uk *= u;
      flux += uk;
      epow += uk * u * u;
      powk_[static_cast<std::size_t>(p)] = uk * u;  // u^{k+1}
      umax = std::max(umax, std::abs(u));
    }
    const double dx = lambda / pad_;
    out.flux_mean = flux * dx;
    out.energy_power = epow * dx;
    out.max_abs_u = umax;

    if (config_.mu != 0.0) {
      fft::r2c(powk_.data(), halfspec_scratch(), pad_);
      const double scale = lambda / pad_;
      for (int n = -K_; n <= K_; ++n) {
        const Complex flux_hat =
            n >= 0 ? scale * scratch_[static_cast<std::size_t>(n)]
                   : std::conj(scale * scratch_[static_cast<std::size_t>(-n)]);
        const Complex deriv(0.0, kTwoPi * n / lambda);  // d_x symbol
        out.nonlinear[static_cast<std::size_t>(n + K_)] =
            config_.mu * deriv * flux_hat;
      }
    }
    return out;
  }

 private:
  std::complex<double>* halfspec_scratch() {
    scratch_.resize(static_cast<std::size_t>(pad_ / 2 + 1));
    return scratch_.data();
  }

  const SolverConfig& config_;
  int K_;
  int pad_;
  std::vector<Complex> half_;
  std::vector<double> phys_;
  std::vector<double> powk_;
  std::vector<Complex> scratch_;
};

std::vector<Complex> phase_factors(const TorusGrid& g, double t) {
  std::vector<Complex> ph(static_cast<std::size_t>(g.coeff_count()));
  for (int n = -g.mode_bound; n <= g.mode_bound; ++n) {
    const double theta = g.angular(n);
    ph[static_cast<std::size_t>(n + g.mode_bound)] =
        std::exp(Complex(0.0, theta * theta * theta * t));
  }
  return ph;
}

void apply_phase(std::vector<Complex>& v, const std::vector<Complex>& ph) {
  for (std::size_t i = 0; i < v.size(); ++i) v[i] *= ph[i];
}

bool finite(const std::vector<Complex>& v) {
  for (const Complex& c : v) {
    if (!std::isfinite(c.real()) || !std::isfinite(c.imag())) return false;
  }
  return true;
}

// \int u_x^2 dx from coefficients (Parseval).
double quadratic_energy_of(const std::vector<Complex>& coeffs,
                           const TorusGrid& g) {
  double acc = 0.0;
  for (int n = -g.mode_bound; n <= g.mode_bound; ++n) {
    const double theta = g.angular(n);
    acc += theta * theta *
           std::norm(coeffs[static_cast<std::size_t>(n + g.mode_bound)]);
  }
  return acc / g.period;
}

}  // namespace

void SolverConfig::validate() const {
  if (k != 3 && k != 4) throw PreconditionError("k must be 3 or 4");
  if (!(dt > 0.0)) throw PreconditionError("dt must be positive");
  if (!(t_end >= 0.0)) throw PreconditionError("t_end must be nonnegative");
  if (record_every < 1) throw PreconditionError("record_every must be >= 1");
  if (dealias_pad != 0.0 && dealias_pad < 0.5 * (k + 2)) {
    throw PreconditionError(
        "dealias_pad below (k+2)/2: u^{k+2} would alias onto the band");
  }
}

int SolverConfig::padded_samples() const {
  const double factor = dealias_pad == 0.0 ? 0.5 * (k + 2) : dealias_pad;
  const int K = grid.mode_bound;
  int want = static_cast<int>(std::ceil(factor * (2 * K + 1)));
  // Exactness of both the retained flux band and the u^{k+2} quadrature
  // needs strictly more than (k+2)K points.
  want = std::max(want, (k + 2) * K + 1);
  return next_fast_size(want);
}

double SolverConfig::cfl_limit(double max_abs_u) const {
  const double speed = std::pow(max_abs_u, k) * (k + 1);
  const double kmax = kTwoPi * grid.mode_bound / grid.period;
  if (speed <= 0.0 || kmax <= 0.0) return std::numeric_limits<double>::infinity();
  return 0.5 / (kmax * speed);
}

SpectralField free_propagator(const SpectralField& phi, double t) {
  SpectralField out = phi;
  const std::vector<Complex> ph = phase_factors(phi.grid, t);
  apply_phase(out.coeffs, ph);
  return out;
}

Trajectory integrate(const SolverConfig& config, const SpectralField& phi) {
  config.validate();
  if (phi.grid != config.grid) throw GridMismatchError("initial data off grid");
  if (!phi.is_hermitian()) throw SymmetryError("initial data must be real");

  Trajectory traj;
  traj.config = config;

  NonlinearOp nonlinear(config);
  std::vector<Complex> u = phi.coeffs;
  double gauge = 0.0;

  const std::vector<Complex> e_half = phase_factors(config.grid, 0.5 * config.dt);
  const std::vector<Complex> e_full = phase_factors(config.grid, config.dt);

  const std::int64_t n_steps =
      static_cast<std::int64_t>(std::ceil(config.t_end / config.dt - 1e-12));

  StageEval s1 = nonlinear(u);
  {
    const double limit = config.cfl_limit(s1.max_abs_u);
    if (config.dt > limit) {
      std::fprintf(stderr,
                   "gkdv: warning: dt = %g exceeds the nonlinear transport "
                   "guard %g\n",
                   config.dt, limit);
    }
  }
  const double e0 = 0.5 * quadratic_energy_of(u, config.grid) +
                    config.mu / (config.k + 2) * s1.energy_power;

  auto record = [&](double t, const std::vector<Complex>& coeffs, double g_int,
                    double energy) {
    SpectralField f(config.grid, /*real=*/true);
    f.coeffs = coeffs;
    traj.times.push_back(t);
    traj.samples.push_back(std::move(f));
    traj.gauge_integral.push_back(g_int);
    traj.energy.push_back(energy);
  };

  record(0.0, u, 0.0, e0);
  traj.last_valid_time = 0.0;

  const double dt = config.dt;
  std::vector<Complex> stage(u.size()), k1, k2, k3, k4;

  for (std::int64_t step = 0; step < n_steps; ++step) {
    const double t = step * dt;

    // Integrating-factor RK4 on v = S(-t) u rebased at each step:
    //   k1 = N(u)
    //   k2 = S(-dt/2) N(S(dt/2)(u + dt/2 k1))
    //   k3 = S(-dt/2) N(S(dt/2)(u + dt/2 k2))
    //   k4 = S(-dt)   N(S(dt)  (u + dt  k3))
    //   u <- S(dt) (u + dt/6 (k1 + 2k2 + 2k3 + k4))
    k1 = s1.nonlinear;

    for (std::size_t i = 0; i < u.size(); ++i) {
      stage[i] = (u[i] + 0.5 * dt * k1[i]) * e_half[i];
    }
    StageEval s2 = nonlinear(stage);
    k2 = s2.nonlinear;
    for (std::size_t i = 0; i < u.size(); ++i) {
      k2[i] = std::conj(e_half[i]) * k2[i];
    }

    for (std::size_t i = 0; i < u.size(); ++i) {
      stage[i] = (u[i] + 0.5 * dt * k2[i]) * e_half[i];
    }
    StageEval s3 = nonlinear(stage);
    k3 = s3.nonlinear;
    for (std::size_t i = 0; i < u.size(); ++i) {
      k3[i] = std::conj(e_half[i]) * k3[i];
    }

    for (std::size_t i = 0; i < u.size(); ++i) {
      stage[i] = (u[i] + dt * k3[i]) * e_full[i];
    }
    StageEval s4 = nonlinear(stage);
    k4 = s4.nonlinear;
    for (std::size_t i = 0; i < u.size(); ++i) {
      k4[i] = std::conj(e_full[i]) * k4[i];
    }

    for (std::size_t i = 0; i < u.size(); ++i) {
      u[i] = (u[i] + dt / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i])) *
             e_full[i];
    }
    // Simpson-consistent update of the running gauge integral.
    gauge += dt / 6.0 *
             (s1.flux_mean + 2.0 * s2.flux_mean + 2.0 * s3.flux_mean +
              s4.flux_mean);

    if (!finite(u)) {
      traj.blew_up = true;
      break;
    }

    s1 = nonlinear(u);  // reused as next step's first stage
    const double t_next = t + dt;
    traj.last_valid_time = t_next;
    const double e_now = 0.5 * quadratic_energy_of(u, config.grid) +
                         config.mu / (config.k + 2) * s1.energy_power;
    traj.max_energy_drift =
        std::max(traj.max_energy_drift, std::abs(e_now - e0));

    if ((step + 1) % config.record_every == 0 || step + 1 == n_steps) {
      record(t_next, u, gauge, e_now);
    }
  }
  return traj;
}

SpectralField rescale(const SpectralField& phi_on_unit, std::int64_t lambda,
                      int k) {
  if (lambda < 1) throw PreconditionError("rescale: lambda must be a positive integer");
  if (std::abs(phi_on_unit.lambda() - 1.0) > 1e-12) {
    throw PreconditionError("rescale expects data on the unit torus");
  }
  const TorusGrid& in = phi_on_unit.grid;
  TorusGrid out_grid(static_cast<double>(lambda), in.mode_bound, in.samples);
  SpectralField out(out_grid, phi_on_unit.real_valued);
  const double scale = std::pow(static_cast<double>(lambda), 1.0 - 2.0 / k);
  for (int n = -in.mode_bound; n <= in.mode_bound; ++n) {
    out.at(n) = scale * phi_on_unit.at(n);  // frequency n -> n/lambda
  }
  return out;
}

SpectralField unrescale(const SpectralField& phi_lambda, std::int64_t lambda,
                        int k) {
  if (lambda < 1) throw PreconditionError("unrescale: lambda must be positive");
  const TorusGrid& in = phi_lambda.grid;
  if (std::abs(in.period - static_cast<double>(lambda)) > 1e-9) {
    throw PreconditionError("unrescale: grid period does not match lambda");
  }
  TorusGrid out_grid(1.0, in.mode_bound, in.samples);
  SpectralField out(out_grid, phi_lambda.real_valued);
  const double scale = std::pow(static_cast<double>(lambda), 2.0 / k - 1.0);
  for (int n = -in.mode_bound; n <= in.mode_bound; ++n) {
    out.at(n) = scale * phi_lambda.at(n);
  }
  return out;
}

double lambda_of_N(double N, double s, int k) {
  const double denom = 2.0 / k + s - 0.5;
  if (!(denom > 0.0)) throw PreconditionError("lambda exponent denominator <= 0");
  return std::pow(N, (1.0 - s) / denom);
}

std::int64_t lambda_int_of_N(double N, double s, int k) {
  return std::max<std::int64_t>(1, std::llround(lambda_of_N(N, s, k)));
}

SpectralField shift_field(const SpectralField& f, double shift) {
  SpectralField out = f;
  const TorusGrid& g = f.grid;
  for (int n = -g.mode_bound; n <= g.mode_bound; ++n) {
    out.at(n) *= std::exp(Complex(0.0, kTwoPi * g.frequency(n) * shift));
  }
  return out;
}

Trajectory gauge_transform(const Trajectory& traj) {
  Trajectory out = traj;
  for (std::size_t i = 0; i < traj.samples.size(); ++i) {
    out.samples[i] = shift_field(traj.samples[i], traj.gauge_integral[i]);
  }
  return out;
}

}  // namespace gkdv
