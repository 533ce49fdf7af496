#include "gkdv/resonance.hpp"

#include <algorithm>
#include <numeric>

namespace gkdv {
namespace {

TupleView view(const HyperplanePoint& t) {
  return TupleView{std::span<const std::int64_t>(t.n), t.lambda};
}

void require_arity(const HyperplanePoint& t, int expected) {
  if (static_cast<int>(t.size()) != expected) {
    throw PreconditionError("tuple arity does not match k");
  }
}

}  // namespace

double alpha(const HyperplanePoint& t) { return alpha_of(view(t)); }
bool alpha_is_zero(const HyperplanePoint& t) { return alpha_is_zero(view(t)); }

void rearrange_by_modulus(TupleView t, std::span<double> out) {
  const std::size_t m = t.size();
  std::array<int, 10> order;
  std::iota(order.begin(), order.begin() + m, 0);
  std::stable_sort(order.begin(), order.begin() + m, [&](int a, int b) {
    return std::abs(t.n[static_cast<std::size_t>(a)]) >
           std::abs(t.n[static_cast<std::size_t>(b)]);
  });
  for (std::size_t j = 0; j < m; ++j) {
    out[j] = t.xi(static_cast<std::size_t>(order[j]));
  }
}

OmegaMembership classify(const HyperplanePoint& t, const MultiplierParams& p) {
  require_arity(t, p.k + 2);
  OmegaMembership out;
  out.rearranged.resize(t.size());
  auto m_of = [&](std::int64_t n) {
    return m_value(static_cast<double>(n) / t.lambda, p);
  };
  const OmegaFlags f = classify_core(view(t), p, m_of,
                                     std::span<double>(out.rearranged));
  out.in_omega1 = f.o1;
  out.in_omega2 = f.o2;
  out.in_omega3 = f.o3;
  out.in_omega4 = f.o4;
  out.in_omega = f.any;
  out.alpha = alpha(t);
  return out;
}

bool effective_omega(const HyperplanePoint& t, const MultiplierParams& p) {
  require_arity(t, p.k + 2);
  auto m_of = [&](std::int64_t n) {
    return m_value(static_cast<double>(n) / t.lambda, p);
  };
  return effective_omega_core(view(t), p, m_of);
}

std::complex<double> M_k2(const HyperplanePoint& t, const MultiplierParams& p) {
  require_arity(t, p.k + 2);
  auto m_of = [&](std::int64_t n) {
    return m_value(static_cast<double>(n) / t.lambda, p);
  };
  return std::complex<double>(0.0, weighted_cubic_sum(view(t), m_of));
}

double sigma_k2(const HyperplanePoint& t, const MultiplierParams& p) {
  require_arity(t, p.k + 2);
  auto m_of = [&](std::int64_t n) {
    return m_value(static_cast<double>(n) / t.lambda, p);
  };
  return product_of_m(view(t), m_of) / (p.k + 2);
}

double sigma_tilde(const HyperplanePoint& t, const MultiplierParams& p) {
  require_arity(t, p.k + 2);
  auto m_of = [&](std::int64_t n) {
    return m_value(static_cast<double>(n) / t.lambda, p);
  };
  return sigma_tilde_core(view(t), p, m_of);
}

std::complex<double> M_2k2(const HyperplanePoint& t, const MultiplierParams& p) {
  require_arity(t, 2 * p.k + 2);
  auto m_of = [&](std::int64_t n) {
    return m_value(static_cast<double>(n) / t.lambda, p);
  };
  return symmetrized_block_multiplier(view(t), p.k, [&](TupleView block) {
    return sigma_tilde_core(block, p, m_of);
  });
}

double dmvt_ratio(double xi, double eta, double lam, const MultiplierParams& p) {
  if (std::abs(eta) * p.cmp_large > std::abs(xi) ||
      std::abs(lam) * p.cmp_large > std::abs(xi)) {
    throw PreconditionError("dmvt: |eta|, |lam| must be << |xi|");
  }
  if (eta == 0.0 || lam == 0.0) return 0.0;

  auto f = [&](double x) {
    const double m = m_value(x, p);
    return m * m * x * x * x;
  };
  const double lhs =
      std::abs(f(xi + eta + lam) - f(xi + eta) - f(xi + lam) + f(xi));
  const double denom =
      std::abs(m2xi3_second_derivative(xi, p)) * std::abs(eta) * std::abs(lam);
  return lhs / denom;
}

}  // namespace gkdv
