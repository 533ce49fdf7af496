#pragma once

#include <vector>

#include "gkdv/spectral_field.hpp"

namespace gkdv {

// Parameters of the frequency-truncation multiplier m_{N,s} together with
// the concrete constants realizing the comparisons used by the resonance
// sets:  a >> b  <=>  a > cmp_large * b;   a ~ b  <=>  max/min <= cmp_sim;
// |xi| >~ N  <=>  |xi| >= cmp_gtrsim_N * N.
struct MultiplierParams {
  double N = 16.0;
  double s = 0.5;    // Sobolev index in [1/2, 1)
  int k = 3;         // nonlinearity degree, 3 or 4
  double cmp_large = 10.0;
  double cmp_sim = 10.0;
  double cmp_gtrsim_N = 1.0;

  void validate() const;
  bool much_greater(double a, double b) const { return a > cmp_large * b; }
  bool similar(double a, double b) const;
  bool gtrsim_N(double a) const { return a >= cmp_gtrsim_N * N; }
};

// m_{N,s}(xi): 1 for |xi| <= N, N^{1-s} |xi|^{s-1} for |xi| >= 2N, and a C^2
// quintic-smoothstep bridge in log|xi| applied to the exponent in between.
// Even, nonincreasing in |xi|, values in (0, 1].
double m_value(double xi, const MultiplierParams& p);

// First and second derivatives of m (classical; the bridge is C^2).
struct MDerivatives {
  double m;
  double dm;
  double d2m;
};
MDerivatives m_derivatives(double xi, const MultiplierParams& p);

// f''(xi) for f(xi) = m(xi)^2 xi^3 (odd in xi).
double m2xi3_second_derivative(double xi, const MultiplierParams& p);

// I_{N,s} f: coefficient-wise multiplication by m.
SpectralField i_apply(const SpectralField& f, const MultiplierParams& p);

// The two norm-comparison ratios around ||f||_{H^s} <= C ||If||_{H^1}
// <= C N^{1-s} ||f||_{H^s}.
struct NormComparison {
  double hs;           // ||f||_{H^s}
  double i_h1;         // ||If||_{H^1}
  double lower_ratio;  // ||f||_{H^s} / ||If||_{H^1}
  double upper_ratio;  // ||If||_{H^1} / (N^{1-s} ||f||_{H^s})
};
NormComparison norm_comparison(const SpectralField& f, const MultiplierParams& p);

// Table of m(n/lambda) for |n| <= n_max; the hot loops in sweeps and the
// correction functionals index this instead of calling m_value.
class MultiplierTable {
 public:
  MultiplierTable() = default;
  MultiplierTable(const MultiplierParams& p, double lambda, int n_max);
  double operator()(std::int64_t n) const {
    return vals_[static_cast<std::size_t>(n >= 0 ? n : -n)];
  }
  int n_max() const { return static_cast<int>(vals_.size()) - 1; }

 private:
  std::vector<double> vals_;
};

}  // namespace gkdv
