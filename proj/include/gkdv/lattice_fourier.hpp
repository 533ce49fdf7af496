#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <variant>
#include <vector>

#include "gkdv/parallel.hpp"
#include "gkdv/spectral_field.hpp"

namespace gkdv {

// ---------------------------------------------------------------------------
// Transforms
// ---------------------------------------------------------------------------

// Discrete realization of fhat(xi) = \int_0^lambda e^{-2 pi i x xi} f(x) dx
// via the length-P DFT scaled by lambda/P.  samples.size() must equal P.
SpectralField forward_transform(std::span<const double> samples,
                                const TorusGrid& grid);

// Physical samples f(x_p) = (1/lambda) sum_n e^{2 pi i x_p n/lambda} fhat.
// Requires Hermitian coefficients (real output); throws SymmetryError.
std::vector<double> inverse_transform(const SpectralField& field);

// General (complex-valued) inversion, optionally on a finer grid of
// `samples` points; used for dealiased products of filtered fields.
std::vector<Complex> inverse_transform_complex(const SpectralField& field,
                                               int samples);

// Physical samples of a real field on an arbitrary padded grid.
std::vector<double> inverse_transform_padded(const SpectralField& field,
                                             int samples);

// ---------------------------------------------------------------------------
// Algebra on fields
// ---------------------------------------------------------------------------

// (f g)^(xi) = \int fhat(xi - xi_1) ghat(xi_1) (d xi_1)_lambda, computed by a
// dealiased physical-space product.  Result carries mode bound 2K unless
// truncate_to_input keeps the original band.
SpectralField convolve(const SpectralField& f, const SpectralField& g,
                       bool truncate_to_input = false);

// ||f||_{H^s} = || <xi>^s fhat ||_{L^2((d xi)_lambda)}; the homogeneous
// variant uses |xi|^s and requires a mean-zero field when s < 0.
double sobolev_norm(const SpectralField& f, double s, bool homogeneous = false);
double l2_norm(const SpectralField& f);

struct ProjectMeanZero {};
struct ProjectDyadic {
  double shell;  // keeps shell <= |xi| < 2*shell
};
struct ProjectBand {
  double lo;
  double hi;  // keeps lo <= |xi| < hi
};
using Projection = std::variant<ProjectMeanZero, ProjectDyadic, ProjectBand>;

SpectralField project(const Projection& kind, const SpectralField& f);

// D^order (homogeneous, symbol |2 pi xi|^order) or J^order (inhomogeneous,
// symbol <2 pi xi>^order).  Homogeneous negative order needs mean-zero input.
SpectralField fractional_derivative(double order, bool homogeneous,
                                    const SpectralField& f);

// ---------------------------------------------------------------------------
// Hyperplane functionals over Gamma_n = { sum_j xi_j = 0 }
// ---------------------------------------------------------------------------

// Integer frequency tuple on the Z/lambda lattice with sum zero.
struct HyperplanePoint {
  std::vector<std::int64_t> n;
  double lambda = 1.0;

  HyperplanePoint() = default;
  HyperplanePoint(std::vector<std::int64_t> idx, double lam);

  std::size_t size() const { return n.size(); }
  double xi(std::size_t j) const { return static_cast<double>(n[j]) / lambda; }
};

// View passed to dense-path multipliers: the integer tuple plus lambda.
struct TupleView {
  std::span<const std::int64_t> n;
  double lambda;
  double xi(std::size_t j) const { return static_cast<double>(n[j]) / lambda; }
  std::size_t size() const { return n.size(); }
};

inline constexpr std::uint64_t kDenseTermBudget = 10'000'000;

// Dense evaluation of
//   Lambda_n[W] = \int_{Gamma_n} W(xi_1..xi_n) prod_j fhat_j(xi_j)
// with n-1 free counting measures (lambda^{1-n} sum over the lattice).
// Cost (2K+1)^{n-1}; refuses beyond kDenseTermBudget unless allow_large.
// The multiplier runs under a deterministic chunked parallel reduction.
template <typename Multiplier>
Complex hyperplane_functional_dense(Multiplier&& W,
                                    std::span<const SpectralField> fields,
                                    bool allow_large = false);

// Same functional for a multiplier invariant under argument permutations and
// a single field in every slot: enumerates value-sorted tuples once and
// weights by orbit multiplicity.  This is the production path for the
// correction functionals.
template <typename Multiplier>
Complex hyperplane_functional_symmetric(int n, const SpectralField& field,
                                        Multiplier&& W,
                                        bool allow_large = false);

// Fast path for multipliers that are sums of tensor products
//   W = sum_t prod_j w_{t,j}(xi_j):
// each term becomes \int prod_j (filtered f_j)(x) dx on a padded grid.
using SlotSymbol = std::function<Complex(double xi)>;
Complex hyperplane_functional_tensor(
    std::span<const std::vector<SlotSymbol>> terms,
    std::span<const SpectralField> fields);

// Implementation ------------------------------------------------------------

namespace detail {

void check_hyperplane_fields(std::span<const SpectralField> fields);

template <typename Multiplier>
Complex dense_sum_chunk(Multiplier& W, std::span<const SpectralField> fields,
                        std::int64_t outer) {
  const int nf = static_cast<int>(fields.size());
  const int K = fields[0].mode_bound();
  const double lambda = fields[0].lambda();
  std::vector<std::int64_t> idx(static_cast<std::size_t>(nf), 0);
  idx[0] = outer;
  Complex acc(0.0, 0.0);

  // Odometer over the free indices 1..nf-2; the last index balances the sum.
  const int free_lo = 1, free_hi = nf - 2;
  for (int j = free_lo; j <= free_hi; ++j) idx[static_cast<std::size_t>(j)] = -K;
  for (;;) {
    std::int64_t partial = 0;
    for (int j = 0; j <= free_hi; ++j) partial += idx[static_cast<std::size_t>(j)];
    const std::int64_t last = -partial;
    if (last >= -K && last <= K) {
      idx[static_cast<std::size_t>(nf - 1)] = last;
      Complex prod = fields[0].at(static_cast<int>(outer));
      for (int j = 1; j < nf; ++j) {
        prod *= fields[static_cast<std::size_t>(j)].at(
            static_cast<int>(idx[static_cast<std::size_t>(j)]));
        if (prod == Complex(0.0, 0.0)) break;
      }
      if (prod != Complex(0.0, 0.0)) {
        acc += W(TupleView{std::span<const std::int64_t>(idx), lambda}) * prod;
      }
    }
    int j = free_hi;
    for (; j >= free_lo; --j) {
      auto& v = idx[static_cast<std::size_t>(j)];
      if (v < K) {
        ++v;
        break;
      }
      v = -K;
    }
    if (j < free_lo) break;
  }
  return acc;
}

// Enumerates tuples n_1 >= n_2 >= ... >= n_m with sum 0 and |n_j| <= K,
// calling visit(tuple, multiplicity).  `head` fixes n_1 (parallel chunking).
template <typename Visit>
void enumerate_sorted_tuples(int m, int K, std::int64_t head, Visit&& visit) {
  std::vector<std::int64_t> tuple(static_cast<std::size_t>(m), 0);
  tuple[0] = head;

  // Depth-first with feasibility pruning: at depth d (0-based), remaining
  // sum R must be reachable with m-d values in [-K, prev].
  auto rec = [&](auto&& self, int d, std::int64_t R, std::int64_t prev) -> void {
    const int remaining = m - d;
    if (remaining == 1) {
      if (R >= -K && R <= prev) {
        tuple[static_cast<std::size_t>(d)] = R;
        // Orbit size: m! / prod(count of each repeated value)!.
        double mult = 1.0;
        int run = 1;
        for (int j = 1; j < m; ++j) {
          if (tuple[static_cast<std::size_t>(j)] ==
              tuple[static_cast<std::size_t>(j - 1)]) {
            ++run;
          } else {
            run = 1;
          }
          mult *= static_cast<double>(j + 1) / run;
        }
        visit(std::span<const std::int64_t>(tuple), mult);
      }
      return;
    }
    // n_d <= prev, n_d <= K, and the tail can still balance:
    //   R - n_d <= (remaining-1) * n_d  =>  n_d >= ceil(R / remaining)
    //   R - n_d >= -(remaining-1) * K  =>  n_d <= R + (remaining-1) * K
    std::int64_t hi = std::min<std::int64_t>({prev, K, R + (remaining - 1) * K});
    std::int64_t lo = -K;
    {
      // ceil division for possibly negative R
      std::int64_t q = R / remaining;
      if (R % remaining != 0 && R > 0) ++q;
      lo = std::max<std::int64_t>(lo, q);
    }
    for (std::int64_t v = hi; v >= lo; --v) {
      tuple[static_cast<std::size_t>(d)] = v;
      self(self, d + 1, R - v, v);
    }
  };
  rec(rec, 1, -head, head);
}

}  // namespace detail

template <typename Multiplier>
Complex hyperplane_functional_dense(Multiplier&& W,
                                    std::span<const SpectralField> fields,
                                    bool allow_large) {
  detail::check_hyperplane_fields(fields);
  const int nf = static_cast<int>(fields.size());
  const int K = fields[0].mode_bound();
  const double lambda = fields[0].lambda();

  double terms = 1.0;
  for (int j = 0; j < nf - 1; ++j) terms *= 2.0 * K + 1.0;
  if (!allow_large && terms > static_cast<double>(kDenseTermBudget)) {
    throw SizeOverflowError(
        "dense hyperplane sum exceeds the term budget; pass allow_large");
  }

  std::vector<Complex> partial(static_cast<std::size_t>(2 * K + 1),
                               Complex(0.0, 0.0));
  parallel_for_chunks(partial.size(), [&](std::size_t c) {
    const std::int64_t outer = static_cast<std::int64_t>(c) - K;
    partial[c] = detail::dense_sum_chunk(W, fields, outer);
  });

  Complex total(0.0, 0.0);
  for (const Complex& p : partial) total += p;  // fixed merge order
  double measure = 1.0;
  for (int j = 0; j < nf - 1; ++j) measure /= lambda;
  return total * measure;
}

template <typename Multiplier>
Complex hyperplane_functional_symmetric(int n, const SpectralField& field,
                                        Multiplier&& W, bool allow_large) {
  if (n < 2 || n > 10) throw PreconditionError("tuple arity must be in [2,10]");
  const int K = field.mode_bound();
  const double lambda = field.lambda();

  double sorted_estimate = 1.0;
  for (int j = 0; j < n - 1; ++j) sorted_estimate *= 2.0 * K + 1.0;
  double fact = 1.0;
  for (int j = 2; j <= n; ++j) fact *= j;
  if (!allow_large &&
      sorted_estimate / fact > static_cast<double>(kDenseTermBudget)) {
    throw SizeOverflowError(
        "sorted hyperplane sum exceeds the term budget; pass allow_large");
  }

  // The leading (largest) entry of a zero-sum sorted tuple is >= 0.
  std::vector<Complex> partial(static_cast<std::size_t>(K + 1),
                               Complex(0.0, 0.0));
  parallel_for_chunks(partial.size(), [&](std::size_t c) {
    const std::int64_t head = static_cast<std::int64_t>(K) - static_cast<std::int64_t>(c);
    Complex acc(0.0, 0.0);
    detail::enumerate_sorted_tuples(
        n, K, head, [&](std::span<const std::int64_t> tuple, double mult) {
          Complex prod(1.0, 0.0);
          for (std::int64_t nj : tuple) {
            prod *= field.at(static_cast<int>(nj));
            if (prod == Complex(0.0, 0.0)) return;
          }
          acc += mult * W(TupleView{tuple, lambda}) * prod;
        });
    partial[c] = acc;
  });

  Complex total(0.0, 0.0);
  for (const Complex& p : partial) total += p;
  double measure = 1.0;
  for (int j = 0; j < n - 1; ++j) measure /= lambda;
  return total * measure;
}

}  // namespace gkdv
