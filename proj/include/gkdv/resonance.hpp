#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <cstdint>
#include <span>

#include "gkdv/lattice_fourier.hpp"
#include "gkdv/multiplier.hpp"

namespace gkdv {

// ---------------------------------------------------------------------------
// Dispersive phase alpha = sum xi_j^3 and the resonance decomposition of
// Gamma_{k+2}.  Tuples live on the integer lattice (xi_j = n_j / lambda), so
// alpha's vanishing is decided in exact integer arithmetic.
// ---------------------------------------------------------------------------

inline __int128 cubic_index_sum(std::span<const std::int64_t> n) {
  __int128 acc = 0;
  for (std::int64_t v : n) {
    acc += static_cast<__int128>(v) * v * v;
  }
  return acc;
}

inline double alpha_of(TupleView t) {
  const double il = 1.0 / t.lambda;
  return static_cast<double>(cubic_index_sum(t.n)) * il * il * il;
}

inline bool alpha_is_zero(TupleView t) { return cubic_index_sum(t.n) == 0; }

double alpha(const HyperplanePoint& t);
bool alpha_is_zero(const HyperplanePoint& t);

// Decreasing rearrangement by modulus; ties keep original order.
// Writes the signed values xi_j^* into `out` (size >= t.size()).
void rearrange_by_modulus(TupleView t, std::span<double> out);

struct OmegaMembership {
  bool in_omega1 = false;
  bool in_omega2 = false;
  bool in_omega3 = false;
  bool in_omega4 = false;
  bool in_omega = false;  // union of the four
  double alpha = 0.0;
  std::vector<double> rearranged;  // xi_1^*, xi_2^*, ...
};

// ---------------------------------------------------------------------------
// Core evaluations, templated on the m-evaluator (direct or table-backed).
// MEval maps an integer lattice index to m(n/lambda).
// ---------------------------------------------------------------------------

struct OmegaFlags {
  bool o1 = false, o2 = false, o3 = false, o4 = false, any = false;
};

// Membership in Omega_1..Omega_4 for a Gamma_{k+2} tuple. `xi_star` receives
// the rearrangement (size == t.size()).
template <typename MEval>
OmegaFlags classify_core(TupleView t, const MultiplierParams& p, MEval&& m_of,
                         std::span<double> xi_star) {
  rearrange_by_modulus(t, xi_star);
  const std::size_t m = t.size();
  const double x1 = xi_star[0], x2 = xi_star[1], x3 = xi_star[2];
  const double a1 = std::abs(x1), a2 = std::abs(x2), a3 = std::abs(x3);
  const double a4 = m > 3 ? std::abs(xi_star[3]) : 0.0;

  OmegaFlags f;
  f.o1 = p.much_greater(a3, a4);

  // Two separated high frequencies with a low pair.
  const bool two_high_two_low = p.similar(a1, a2) && p.gtrsim_N(a2) &&
                                p.much_greater(p.N, a3) &&
                                (m <= 3 || p.similar(a3, a4));
  if (two_high_two_low) {
    double tail = 0.0;
    for (std::size_t j = 2; j < m; ++j) {
      tail += xi_star[j] * xi_star[j] * xi_star[j];
    }
    f.o2 = p.much_greater(std::abs(x1 * x1 * x1 + x2 * x2 * x2), std::abs(tail));
  }

  f.o3 = p.much_greater(a1, a3) &&
         p.much_greater(std::abs(x1 + x2) * a1, a3 * a3);

  if (m >= 5) {
    const double x4 = xi_star[3], x5 = xi_star[4];
    const double a5 = std::abs(x5);
    if (p.much_greater(a4, a5)) {
      const bool phase_sep = p.much_greater(
          std::abs(x1 + x2) * std::abs(x1 + xi_star[2]) * std::abs(x1 + x4),
          a5 * a1 * a1);
      if (phase_sep) {
        // |m(x1)^2 x1^3 + ... + m(x4)^2 x4^3| >> |m(x5)^2 x5^3 + m(x6)^2 x6^3|
        // with x6 := 0 when the tuple has only five entries.
        auto msq_cubed = [&](double x) {
          // xi_star values are exact lattice multiples of 1/lambda.
          const std::int64_t nn =
              static_cast<std::int64_t>(std::llround(x * t.lambda));
          const double mm = m_of(nn);
          return mm * mm * x * x * x;
        };
        double head = 0.0;
        for (std::size_t j = 0; j < 4; ++j) head += msq_cubed(xi_star[j]);
        double low = msq_cubed(x5);
        if (m >= 6) low += msq_cubed(xi_star[5]);
        f.o4 = p.much_greater(std::abs(head), std::abs(low));
      }
    }
  }
  f.any = f.o1 || f.o2 || f.o3 || f.o4;
  return f;
}

// sum_j m(xi_j)^2 xi_j^3 (the modulus-relevant part of the printed M_{k+2}).
template <typename MEval>
double weighted_cubic_sum(TupleView t, MEval&& m_of) {
  double acc = 0.0;
  const double il = 1.0 / t.lambda;
  for (std::int64_t nj : t.n) {
    const double xi = static_cast<double>(nj) * il;
    const double mm = m_of(nj);
    acc += mm * mm * xi * xi * xi;
  }
  return acc;
}

template <typename MEval>
double product_of_m(TupleView t, MEval&& m_of) {
  double acc = 1.0;
  for (std::int64_t nj : t.n) acc *= m_of(nj);
  return acc;
}

// Effective non-resonance indicator: the Omega union with tuples whose
// dispersive phase vanishes exactly reclassified as resonant, so the
// division in sigma_tilde is always sound.  `alpha_zero_out` reports the
// reclassification when non-null.
template <typename MEval>
bool effective_omega_core(TupleView t, const MultiplierParams& p, MEval&& m_of,
                          bool* alpha_zero_out = nullptr) {
  std::array<double, 10> buf;
  const OmegaFlags f =
      classify_core(t, p, m_of, std::span<double>(buf.data(), t.size()));
  if (!f.any) return false;
  if (alpha_is_zero(t)) {
    if (alpha_zero_out) *alpha_zero_out = true;
    return false;
  }
  return true;
}

// sigma_tilde = -chi_Omega * (sum m_j^2 xi_j^3) / alpha  (real-valued).
template <typename MEval>
double sigma_tilde_core(TupleView t, const MultiplierParams& p, MEval&& m_of,
                        bool* alpha_zero_out = nullptr) {
  if (!effective_omega_core(t, p, m_of, alpha_zero_out)) return 0.0;
  return -weighted_cubic_sum(t, m_of) / alpha_of(t);
}

// Symmetrized Gamma_{2k+2} multiplier built from a (k+2)-ary block kernel:
//   i (k+2) * average over the C(2k+2, k+1) block choices of
//       kernel(xi_S..., T) * T,   T = sum of the complementary block.
// `kernel` sees the sub-tuple (n_S..., T) as a TupleView.
template <typename Kernel>
std::complex<double> symmetrized_block_multiplier(TupleView t, int k,
                                                  Kernel&& kernel) {
  const int total = 2 * k + 2;
  const int pick = k + 1;
  if (static_cast<int>(t.size()) != total) {
    throw PreconditionError("tuple arity must be 2k+2");
  }

  std::array<int, 10> comb;  // ascending positions of the chosen block
  for (int j = 0; j < pick; ++j) comb[static_cast<std::size_t>(j)] = j;
  std::array<std::int64_t, 10> sub;

  double acc = 0.0;
  std::uint64_t count = 0;
  const double il = 1.0 / t.lambda;
  for (;;) {
    std::int64_t block_sum = 0;
    for (int j = 0; j < pick; ++j) {
      const std::int64_t v = t.n[static_cast<std::size_t>(comb[static_cast<std::size_t>(j)])];
      sub[static_cast<std::size_t>(j)] = v;
      block_sum += v;
    }
    const std::int64_t T = -block_sum;  // complement sum by the hyperplane
    sub[static_cast<std::size_t>(pick)] = T;
    const TupleView block{
        std::span<const std::int64_t>(sub.data(), static_cast<std::size_t>(pick + 1)),
        t.lambda};
    acc += kernel(block) * (static_cast<double>(T) * il);
    ++count;

    // next combination
    int j = pick - 1;
    while (j >= 0 && comb[static_cast<std::size_t>(j)] == total - pick + j) --j;
    if (j < 0) break;
    ++comb[static_cast<std::size_t>(j)];
    for (int i = j + 1; i < pick; ++i) {
      comb[static_cast<std::size_t>(i)] = comb[static_cast<std::size_t>(i - 1)] + 1;
    }
  }
  const double avg = acc / static_cast<double>(count);
  return std::complex<double>(0.0, (k + 2) * avg);
}

// ---------------------------------------------------------------------------
// Public (HyperplanePoint-based) wrappers
// ---------------------------------------------------------------------------

OmegaMembership classify(const HyperplanePoint& t, const MultiplierParams& p);
bool effective_omega(const HyperplanePoint& t, const MultiplierParams& p);

// Printed symbols: M_{k+2} = i sum m_j^2 xi_j^3,  sigma_{k+2} = prod m /(k+2).
std::complex<double> M_k2(const HyperplanePoint& t, const MultiplierParams& p);
double sigma_k2(const HyperplanePoint& t, const MultiplierParams& p);
double sigma_tilde(const HyperplanePoint& t, const MultiplierParams& p);

// M_{2k+2} = i (k+2) [ sigma_tilde(xi_1..xi_{k+1}, T) * T ]_sym with the
// symmetrization realized as the block-combination average.
std::complex<double> M_2k2(const HyperplanePoint& t, const MultiplierParams& p);

// Double-mean-value ratio |f(xi+eta+lam)-f(xi+eta)-f(xi+lam)+f(xi)| /
// (|f''(xi)| |eta| |lam|) for f = m^2 xi^3.  Requires |eta|,|lam| <=
// |xi| / cmp_large; returns 0 when eta or lam vanishes.
double dmvt_ratio(double xi, double eta, double lam, const MultiplierParams& p);

}  // namespace gkdv
