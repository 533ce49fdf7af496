#include "gkdv/multiplier.hpp"

#include <cmath>

#include "gkdv/errors.hpp"
#include "gkdv/lattice_fourier.hpp"

namespace gkdv {
namespace {

constexpr double kLog2 = 0.6931471805599453094;

// Quintic smoothstep and the bridge profile.  On N < |xi| < 2N write
// u = log(|xi|/N)/log 2 and m = exp(g) with
//   g(u) = (s-1) * S(u) * u * log 2,      S(u) = u^3 (10 - 15u + 6u^2),
// so g, g', g'' match the flat branch at u=0 and the power branch at u=1.
double smoothstep(double u) { return u * u * u * (10.0 + u * (-15.0 + 6.0 * u)); }
// B(u) = d/dL [S(u) u log2] / log2 = S'(u) u + S(u)
double bridge_B(double u) {
  return u * u * u * (40.0 + u * (-75.0 + 36.0 * u));
}
// B'(u) = S''(u) u + 2 S'(u)
double bridge_Bp(double u) {
  return u * u * (120.0 + u * (-300.0 + 180.0 * u));
}

// g and its derivatives with respect to L = log|xi| on the bridge.
struct LogDerivs {
  double g, gp, gpp;
};

LogDerivs bridge_log_derivs(double a, const MultiplierParams& p) {
  const double u = std::log(a / p.N) / kLog2;
  LogDerivs d;
  d.g = (p.s - 1.0) * smoothstep(u) * (u * kLog2);
  d.gp = (p.s - 1.0) * bridge_B(u);
  d.gpp = (p.s - 1.0) * bridge_Bp(u) / kLog2;
  return d;
}

}  // namespace

void MultiplierParams::validate() const {
  if (!(s >= 0.5 && s < 1.0)) throw PreconditionError("s must lie in [1/2, 1)");
  if (!(N >= 1.0)) throw PreconditionError("N must be >= 1");
  if (k != 3 && k != 4) throw PreconditionError("k must be 3 or 4");
  if (!(cmp_large > 1.0) || !(cmp_sim > 1.0)) {
    throw PreconditionError("comparison constants must exceed 1");
  }
  if (!(cmp_gtrsim_N > 0.0 && cmp_gtrsim_N <= 1.0)) {
    throw PreconditionError("cmp_gtrsim_N must lie in (0, 1]");
  }
}

bool MultiplierParams::similar(double a, double b) const {
  a = std::abs(a);
  b = std::abs(b);
  const double hi = std::max(a, b), lo = std::min(a, b);
  if (hi == 0.0) return true;  // both vanish
  return hi <= cmp_sim * lo;
}

double m_value(double xi, const MultiplierParams& p) {
  const double a = std::abs(xi);
  if (a <= p.N) return 1.0;
  if (a >= 2.0 * p.N) {
    return std::pow(p.N, 1.0 - p.s) * std::pow(a, p.s - 1.0);
  }
  return std::exp(bridge_log_derivs(a, p).g);
}

MDerivatives m_derivatives(double xi, const MultiplierParams& p) {
  const double a = std::abs(xi);
  const double sign = xi < 0.0 ? -1.0 : 1.0;
  MDerivatives out{1.0, 0.0, 0.0};
  if (a <= p.N) return out;

  // m = exp(g(L)), L = log a:
  //   m'  = m g'/a,   m'' = m (g'^2 + g'' - g') / a^2   (per unit xi > 0)
  double g, gp, gpp;
  if (a >= 2.0 * p.N) {
    g = (p.s - 1.0) * std::log(a / p.N);
    gp = p.s - 1.0;
    gpp = 0.0;
  } else {
    const LogDerivs d = bridge_log_derivs(a, p);
    g = d.g;
    gp = d.gp;
    gpp = d.gpp;
  }
  const double m = std::exp(g);
  out.m = m;
  out.dm = sign * m * gp / a;                            // m even => dm odd
  out.d2m = m * (gp * gp + gpp - gp) / (a * a);          // d2m even
  return out;
}

double m2xi3_second_derivative(double xi, const MultiplierParams& p) {
  const double a = std::abs(xi);
  const double sign = xi < 0.0 ? -1.0 : 1.0;
  if (a == 0.0) return 0.0;
  if (a <= p.N) return sign * 6.0 * a;  // f = xi^3 exactly

  // f = exp(2g + 3L) for xi > 0, so
  //   f'' = (f / xi^2) [ (2g'+3)(2g'+2) + 2g'' ];  f is odd in xi.
  double gp, gpp, m;
  if (a >= 2.0 * p.N) {
    gp = p.s - 1.0;
    gpp = 0.0;
    m = std::pow(p.N, 1.0 - p.s) * std::pow(a, p.s - 1.0);
  } else {
    const LogDerivs d = bridge_log_derivs(a, p);
    gp = d.gp;
    gpp = d.gpp;
    m = std::exp(d.g);
  }
  const double f = m * m * a * a * a;
  return sign * (f / (a * a)) * ((2.0 * gp + 3.0) * (2.0 * gp + 2.0) + 2.0 * gpp);
}

SpectralField i_apply(const SpectralField& f, const MultiplierParams& p) {
  SpectralField out = f;
  const TorusGrid& g = f.grid;
  for (int n = -g.mode_bound; n <= g.mode_bound; ++n) {
    out.at(n) *= m_value(g.frequency(n), p);
  }
  return out;
}

NormComparison norm_comparison(const SpectralField& f,
                               const MultiplierParams& p) {
  NormComparison out{};
  out.hs = sobolev_norm(f, p.s);
  out.i_h1 = sobolev_norm(i_apply(f, p), 1.0);
  const double n_factor = std::pow(p.N, 1.0 - p.s);
  out.lower_ratio = out.i_h1 > 0.0 ? out.hs / out.i_h1 : 0.0;
  out.upper_ratio = out.hs > 0.0 ? out.i_h1 / (n_factor * out.hs) : 0.0;
  return out;
}

MultiplierTable::MultiplierTable(const MultiplierParams& p, double lambda,
                                 int n_max) {
  vals_.resize(static_cast<std::size_t>(n_max) + 1);
  for (int n = 0; n <= n_max; ++n) {
    vals_[static_cast<std::size_t>(n)] = m_value(n / lambda, p);
  }
}

}  // namespace gkdv
