#pragma once

#include <cstdint>
#include <vector>

#include "gkdv/spectral_field.hpp"

namespace gkdv {

// Fixed C-infinity time cutoff: 1 on [-1,1], 0 outside (-2,2), built from
// the exponential partition function
//   r(x) = exp(-1/x) (x > 0),    eta(t) = r(2-|t|) / (r(2-|t|) + r(|t|-1)).
double eta_window(double t);

// Periodic bilinear Strichartz constant: 1 for M <= 1, (1/M + 1/lambda)^{1/2}
// for M > 1 (the jump at M = 1 is kept as printed).
double c_constant(double M, double lambda);

// Counting set A_{xi,tau} = { xi_1 in Z/lambda : |xi_1^2 - xi_2^2| >= M,
// |tau - xi_1^3 - xi_2^3| <= width } with xi_2 = xi - xi_1.
struct CountingSetQuery {
  double xi = 0.0;      // must lie on the lattice Z/lambda
  double tau = 0.0;
  double M = 1.0;
  double lambda = 1.0;
  double width = 1.0;   // the O(1) thickness
};

struct CountingSetResult {
  std::vector<std::int64_t> members;  // lattice indices n1 (xi_1 = n1/lambda)
  // For xi != 0, membership recomputed through the completed-square form
  //   (xi_1 - xi/2)^2 = a + O(1/|xi|),  a = (tau - xi^3/4) / (3 xi):
  // the thickness window maps to width / (3 |xi|) exactly.
  std::vector<std::int64_t> members_quadratic_form;
  bool characterizations_agree = true;
};

CountingSetResult counting_set(const CountingSetQuery& q,
                               std::int64_t search_bound);

// Frequency-restricted product: the convolution with pairs
// |xi_1^2 - xi_2^2| < M removed ('>= M' realizes the restriction exactly).
// M = 0 recovers the full convolution.  Output carries mode bound 2K.
SpectralField apply_IM(const SpectralField& f, const SpectralField& g,
                       double M);

// || eta^2(t) I_M(S(t) phi1, S(t) phi2) ||_{L^2_{xt}} /
//   ( C(M, lambda) ||phi1||_{L^2} ||phi2||_{L^2} ),
// the time integral over supp eta by uniform quadrature (`time_samples`
// points, default 256).
double bilinear_ratio(const SpectralField& phi1, const SpectralField& phi2,
                      double M, int time_samples = 256);

// Uniform time samples of a (windowable) space-time field.
struct SpaceTimeField {
  TorusGrid grid;
  double t0 = -2.0;
  double dt = 0.0;
  std::vector<SpectralField> slices;  // >= 16 slices

  void validate() const;
  double time(std::size_t j) const { return t0 + dt * static_cast<double>(j); }
  double window_length() const {
    return dt * static_cast<double>(slices.size() - 1);
  }
};

// Free evolution eta-windowable sampling of S(t) phi on [t0, t1].
SpaceTimeField sample_free_evolution(const SpectralField& phi, double t0,
                                     double t1, int count);

struct BourgainNorms {
  double x_sb = 0.0;  // X_{s,b} estimator at the requested b
  double y_s = 0.0;   // Y^s estimator: X_{s,1/2} piece + L^2_xi L^1_tau piece
};

// Discrete X_{s,b}/Y^s estimator of the eta-windowed field.  Each spatial
// mode is demodulated by its dispersion phase e^{-i (2 pi xi)^3 t} before
// the time transform, so <tau - xi^3> becomes a weight near the origin of
// the demodulated variable; the window is zero-padded 4x against
// wrap-around.  This is an estimator of the continuum norm; refinement in
// the slice count is the convergence check.
BourgainNorms bourgain_norm(const SpaceTimeField& u, double s, double b);

// || eta u ||_{L^4_{xt}} by padded-grid quadrature (windowed).
double l4_spacetime_norm(const SpaceTimeField& u);

}  // namespace gkdv
