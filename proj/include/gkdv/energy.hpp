#pragma once

#include <complex>
#include <cstdint>
#include <iosfwd>
#include <vector>

#include "gkdv/multiplier.hpp"
#include "gkdv/solver.hpp"

namespace gkdv {

// E(u) = \int ( u_x^2 / 2 + mu u^{k+2} / (k+2) ) dx, the conserved energy of
// u_t + u_xxx = mu (u^{k+1})_x.  Quadratic part summed spectrally, the power
// part by exact quadrature on an internally padded grid.
double hamiltonian(const SpectralField& u, int k, double mu = 1.0);

// E(Iu).  Equals hamiltonian(u) whenever N clears every grid frequency.
double e_of_Iu(const SpectralField& u, const MultiplierParams& p,
               double mu = 1.0);

struct SecondEnergy {
  double value = 0.0;
  double correction = 0.0;     // E_I^2 = E(Iu) - correction
  double imag_residue = 0.0;   // |Im| of the correction functional
};

// Second modified energy: E(Iu) minus the non-resonant correction
// functional.  The correction multiplier is supported on tuples reaching
// above the threshold (max_j |xi_j| > N; below it the energy-derivative
// multiplier vanishes identically, so there is nothing to correct), and
// tuples of the non-resonance set with exactly vanishing dispersive phase
// are reclassified as resonant.  An imaginary residue above 1e-6 relative
// aborts: it would mean broken conjugate symmetry, not physics.
SecondEnergy second_modified_energy(const SpectralField& u,
                                    const MultiplierParams& p, double mu = 1.0,
                                    bool allow_large = false);

struct IncrementTerms {
  std::complex<double> dE1;  // Gamma_{k+2} functional
  std::complex<double> dE2;  // Gamma_{2k+2} functional
};

// The two hyperplane functionals whose sum is d/dt E(Iu) along the truncated
// flow, evaluated against uhat directly (the interaction-picture phases
// cancel on the hyperplane).  Multipliers are evaluated at angular
// frequencies 2 pi xi, which makes the identity hold with constant exactly 1:
//   dE1 = i (2pi)^3 Lambda_{k+2}[ sigma alpha - mu (sum m_j^2 xi_j^3)/(k+2) ]
//   dE2 = mu 2pi i (k+2) Lambda_{2k+2}[ sigma(xi_1..xi_{k+1}, T) T ]_sym
// both reduced to spectral pairings against dealiased power spectra.
IncrementTerms increment_terms(const SpectralField& u,
                               const MultiplierParams& p, double mu = 1.0);

// Almost-conservation reference bound K = N^{-3+eps} + N^{-2+eps} lambda^{-1/2}.
double almost_conservation_bound(double N, double lambda, double eps = 0.1);

struct EnergyReport {
  double hamiltonian = 0.0;
  double e_Iu = 0.0;
  double e_I2 = 0.0;
  double gap = 0.0;  // |e_I2 - e_Iu|
  double h1_norm_Iu = 0.0;
  double time = 0.0;
};

EnergyReport energy_report(const SpectralField& u, const MultiplierParams& p,
                           double time, double mu = 1.0,
                           bool allow_large = false);

struct WindowIncrement {
  double t0 = 0.0;
  double t1 = 0.0;
  double increment = 0.0;  // |E_I^2(t1) - E_I^2(t0)|
  double bound = 0.0;      // K(N, lambda, eps)
  double ratio = 0.0;
};

// Per-window increments of E_I^2 along a recorded trajectory, with the
// reference bound.  Measurement only; nothing is asserted here.
std::vector<WindowIncrement> almost_conservation_run(const Trajectory& traj,
                                                     const MultiplierParams& p,
                                                     double eps = 0.1,
                                                     bool allow_large = false);

// Diagnostics stream: one row per recorded sample, header mandatory.
// Columns: t,hamiltonian,e_Iu,e_I2,gap,h1_Iu,mass,dE1_re,dE2_re
void write_diagnostics_csv(std::ostream& out, const Trajectory& traj,
                           const MultiplierParams& p,
                           bool allow_large = false);

// Full spectrum of u^q for a band-limited field (modes |zeta| <= q K,
// alias-free).  Returned indexed by zeta + qK.
std::vector<Complex> power_spectrum(const SpectralField& u, int q);

}  // namespace gkdv
