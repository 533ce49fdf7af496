#pragma once

#include <cstdint>
#include <vector>

#include "gkdv/spectral_field.hpp"

namespace gkdv {

// Pseudospectral integrator for  u_t + u_xxx = mu (u^{k+1})_x  on the
// lambda-torus.  The linear part is integrated exactly (integrating factor);
// classical RK4 advances the twisted variable, with the nonlinearity formed
// in physical space on a dealiased padded grid.
struct SolverConfig {
  TorusGrid grid;
  int k = 3;
  double dt = 1e-4;
  double t_end = 1.0;
  // Padding factor relative to 2K+1; must be >= (k+2)/2 so that both the
  // flux u^{k+1} and the energy density u^{k+2} are alias-free.  0 = auto.
  double dealias_pad = 0.0;
  int record_every = 1;
  double mu = 1.0;  // +1 defocusing, -1 focusing, 0 linear (for tests)

  void validate() const;
  int padded_samples() const;
  // Nonlinear-transport step guard dt <= 0.5 / ((2 pi K/lambda) (k+1) max|u|^k);
  // violations warn on stderr but do not abort.
  double cfl_limit(double max_abs_u) const;
};

struct Trajectory {
  SolverConfig config;
  std::vector<double> times;
  std::vector<SpectralField> samples;
  std::vector<double> gauge_integral;  // \int_0^t \int_T u^k dx ds at samples
  std::vector<double> energy;          // Hamiltonian at samples
  double max_energy_drift = 0.0;       // max over *steps* of |E - E(0)|
  bool blew_up = false;
  double last_valid_time = 0.0;
};

// Solution map of the free equation u_t + u_xxx = 0: coefficient-wise phase
// e^{ +i (2 pi xi)^3 t } — the inverse of the operator e^{t d_x^3}, whose own
// symbol is e^{ -i (2 pi xi)^3 t }.  Exactly unitary.
SpectralField free_propagator(const SpectralField& phi, double t);

Trajectory integrate(const SolverConfig& config, const SpectralField& phi);

// phi_lambda(x) = lambda^{-2/k} phi(x/lambda) for phi on the unit torus and
// integer lambda >= 1: coefficient n keeps its index (frequency n -> n/lambda)
// and scales by lambda^{1-2/k}.
SpectralField rescale(const SpectralField& phi_on_unit, std::int64_t lambda,
                      int k);

// Inverse map at matched times: u(t, x) = lambda^{2/k} u_lambda(lambda^3 t, lambda x).
SpectralField unrescale(const SpectralField& phi_lambda, std::int64_t lambda,
                        int k);

// lambda ~ N^{(1-s)/(2/k + s - 1/2)}, and its integer rounding for rescale.
double lambda_of_N(double N, double s, int k);
std::int64_t lambda_int_of_N(double N, double s, int k);

// Spatial translation by `shift`, realized as the exact spectral phase
// e^{2 pi i xi shift}; an isometry on every Sobolev slice.
SpectralField shift_field(const SpectralField& f, double shift);

// Gauge transform G u(t, x) = u(t, x + \int_0^t \int u^k dx ds) applied
// slice-wise using the trajectory's recorded gauge integral.
Trajectory gauge_transform(const Trajectory& traj);

}  // namespace gkdv
