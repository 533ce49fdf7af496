#include "gkdv/continuation.hpp"

#include <cmath>
#include <numeric>

#include "gkdv/errors.hpp"
#include "gkdv/json_io.hpp"

namespace gkdv {
namespace {

std::int64_t checked_narrow(__int128 v) {
  if (v > INT64_MAX || v < INT64_MIN) {
    throw std::overflow_error("rational arithmetic overflow");
  }
  return static_cast<std::int64_t>(v);
}

__int128 gcd128(__int128 a, __int128 b) {
  if (a < 0) a = -a;
  if (b < 0) b = -b;
  while (b != 0) {
    const __int128 r = a % b;
    a = b;
    b = r;
  }
  return a;
}

// Normalize in 128-bit before narrowing so intermediate products may exceed
// int64 as long as the reduced value fits.
Rational make_rational(__int128 n, __int128 d) {
  if (d == 0) throw PreconditionError("rational with zero denominator");
  if (d < 0) {
    n = -n;
    d = -d;
  }
  const __int128 g = gcd128(n, d);
  if (g > 1) {
    n /= g;
    d /= g;
  }
  return Rational(checked_narrow(n), checked_narrow(d));
}

}  // namespace

Rational::Rational(std::int64_t n) : num(n), den(1) {}

Rational::Rational(std::int64_t n, std::int64_t d) {
  if (d == 0) throw PreconditionError("rational with zero denominator");
  if (d < 0) {
    n = -n;
    d = -d;
  }
  const std::int64_t g = std::gcd(n < 0 ? -n : n, d);
  num = g ? n / g : n;
  den = g ? d / g : d;
}

Rational Rational::operator+(const Rational& o) const {
  return make_rational(static_cast<__int128>(num) * o.den +
                           static_cast<__int128>(o.num) * den,
                       static_cast<__int128>(den) * o.den);
}

Rational Rational::operator-(const Rational& o) const { return *this + (-o); }

Rational Rational::operator*(const Rational& o) const {
  return make_rational(static_cast<__int128>(num) * o.num,
                       static_cast<__int128>(den) * o.den);
}

Rational Rational::operator/(const Rational& o) const {
  if (o.num == 0) throw PreconditionError("rational division by zero");
  return make_rational(static_cast<__int128>(num) * o.den,
                       static_cast<__int128>(den) * o.num);
}

bool Rational::operator<(const Rational& o) const {
  return static_cast<__int128>(num) * o.den < static_cast<__int128>(o.num) * den;
}

std::string Rational::str() const {
  if (den == 1) return std::to_string(num);
  return std::to_string(num) + "/" + std::to_string(den);
}

std::optional<Rational> parse_rational(const std::string& text) {
  if (text.empty()) return std::nullopt;
  const auto slash = text.find('/');
  try {
    if (slash != std::string::npos) {
      const std::int64_t p = std::stoll(text.substr(0, slash));
      const std::int64_t q = std::stoll(text.substr(slash + 1));
      if (q == 0) return std::nullopt;
      return Rational(p, q);
    }
    const auto dot = text.find('.');
    if (dot == std::string::npos) {
      return Rational(std::stoll(text));
    }
    // terminating decimal: scale by a power of ten
    const std::string head = text.substr(0, dot);
    const std::string tail = text.substr(dot + 1);
    if (tail.empty() || tail.size() > 15) return std::nullopt;
    std::int64_t scale = 1;
    for (std::size_t i = 0; i < tail.size(); ++i) scale *= 10;
    const bool negative = !head.empty() && head[0] == '-';
    const std::int64_t whole = head == "-" || head.empty() ? 0 : std::stoll(head);
    const std::int64_t frac = std::stoll(tail);
    const std::int64_t total =
        (negative ? -1 : 1) * ((negative ? -whole : whole) * scale + frac);
    return Rational(total, scale);
  } catch (const std::exception&) {
    return std::nullopt;
  }
}

GwpThreshold gwp_threshold(int k) {
  if (k != 3 && k != 4) throw PreconditionError("k must be 3 or 4");
  // d = 2/k - 1/2 so both printed conditions read  c > c' (1-s)/(d+s).
  const Rational d = Rational(2, k) - Rational(1, 2);

  // 2 (d+s) > (5/2)(1-s)  =>  (2 + 5/2) s > 5/2 - 2 d
  const Rational a2(2), a52(5, 2);
  const Rational cond_a = (a52 - a2 * d) / (a2 + a52);

  // 3 (d+s) > 3 (1-s)  =>  2 s > 1 - d
  const Rational cond_b = (Rational(1) - d) / Rational(2);

  GwpThreshold out;
  out.condition_a = cond_a;
  out.condition_b = cond_b;
  out.local_floor = Rational(1, 2);
  out.value = std::max(std::max(cond_a, cond_b), out.local_floor);
  // Inclusive only when the (non-strict) local floor binds strictly above
  // both strict exponent conditions.
  out.inclusive = cond_a < out.local_floor && cond_b < out.local_floor;
  return out;
}

ContinuationPlan build_plan(double N, Rational s, int k, double C0,
                            Rational eps, Rational eps_prime) {
  if (!(N >= 2.0)) throw PreconditionError("build_plan requires N >= 2");
  if (!(C0 > 0.0)) throw PreconditionError("C0 must be positive");
  const GwpThreshold thr = gwp_threshold(k);

  ContinuationPlan plan;
  plan.k = k;
  plan.s = s;
  plan.N = N;
  plan.C0 = C0;
  plan.eps = eps;
  plan.eps_prime = eps_prime;

  if (s > thr.value || (thr.inclusive && s == thr.value)) {
    plan.feasible = true;
  } else {
    plan.feasible = false;
    if (s < thr.local_floor) {
      plan.violated = "s >= 1/2 (local theory floor)";
    } else if (!(s > thr.condition_a)) {
      plan.violated = "2 > (5/2)(1-s)/(2/k+s-1/2), requires s > " +
                      thr.condition_a.str();
    } else {
      plan.violated =
          "3 > 3(1-s)/(2/k+s-1/2), requires s > " + thr.condition_b.str();
    }
  }

  const double sd = s.to_double();
  const double exponent = (1.0 - sd) / (2.0 / k + sd - 0.5);
  auto fill = [&](double n_value, double& lambda, double& delta, double& kb,
                  double& iters, double& time) {
    lambda = std::pow(n_value, exponent);
    delta = std::pow(lambda, -eps.to_double());
    kb = std::pow(n_value, -3.0 + eps_prime.to_double()) +
         std::pow(n_value, -2.0 + eps_prime.to_double()) / std::sqrt(lambda);
    iters = C0 / kb;
    time = C0 * delta * std::pow(lambda, -3.0) / kb;
  };

  fill(N, plan.lambda, plan.delta, plan.K_bound, plan.iterations,
       plan.existence_time);
  plan.lambda_int = std::max<std::int64_t>(1, std::llround(plan.lambda));

  double l2, d2, k2, i2, t2;
  fill(2.0 * N, l2, d2, k2, i2, t2);
  plan.extends = t2 > plan.existence_time;
  return plan;
}

std::string ContinuationPlan::to_json() const {
  const GwpThreshold thr = gwp_threshold(k);
  JsonObject obj;
  obj.add("k", k)
      .add("threshold", thr.value.str())
      .add("threshold_inclusive", thr.inclusive)
      .add("condition_a", thr.condition_a.str())
      .add("condition_b", thr.condition_b.str())
      .add("local_floor", thr.local_floor.str())
      .add("s", s.str())
      .add("N", N)
      .add("lambda", lambda)
      .add("lambda_int", lambda_int)
      .add("delta", delta)
      .add("K_bound", K_bound)
      .add("C0", C0)
      .add("iterations", iterations)
      .add("existence_time", existence_time)
      .add("eps", eps.str())
      .add("eps_prime", eps_prime.str())
      .add("feasible", feasible)
      .add("violated", violated)
      .add("extends_under_N_doubling", extends);
  return obj.str();
}

}  // namespace gkdv
