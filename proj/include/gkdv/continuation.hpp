#pragma once

#include <cstdint>
#include <optional>
#include <string>

namespace gkdv {

// Exact rational arithmetic over int64 (normalized, positive denominator).
// Comparisons and products cross-multiply through __int128, which is ample
// for the threshold algebra's small numerators.
struct Rational {
  std::int64_t num = 0;
  std::int64_t den = 1;

  Rational() = default;
  Rational(std::int64_t n);  // NOLINT: implicit integer promotion intended
  Rational(std::int64_t n, std::int64_t d);

  Rational operator+(const Rational& o) const;
  Rational operator-(const Rational& o) const;
  Rational operator*(const Rational& o) const;
  Rational operator/(const Rational& o) const;
  Rational operator-() const { return Rational(-num, den); }

  bool operator==(const Rational& o) const { return num == o.num && den == o.den; }
  bool operator<(const Rational& o) const;
  bool operator<=(const Rational& o) const { return *this < o || *this == o; }
  bool operator>(const Rational& o) const { return o < *this; }
  bool operator>=(const Rational& o) const { return o <= *this; }

  double to_double() const { return static_cast<double>(num) / den; }
  std::string str() const;  // "p/q" (or "p" when q = 1)
};

// Parses "p/q", plain integers, and terminating decimals ("0.75" -> 3/4).
std::optional<Rational> parse_rational(const std::string& text);

// Regularity threshold for global continuation: the two exponent conditions
//   2 > (5/2)(1-s)/(2/k + s - 1/2)   and   3 > 3(1-s)/(2/k + s - 1/2)
// solved exactly for s, combined with the local floor s >= 1/2.  The
// threshold is inclusive exactly when the floor is the binding constraint.
struct GwpThreshold {
  Rational value;
  bool inclusive = false;
  Rational condition_a;  // strict lower bound from the first condition
  Rational condition_b;  // strict lower bound from the second condition
  Rational local_floor;  // 1/2
};

GwpThreshold gwp_threshold(int k);

struct ContinuationPlan {
  int k = 3;
  Rational s;
  double N = 0.0;
  double lambda = 0.0;          // N^{(1-s)/(2/k+s-1/2)}
  std::int64_t lambda_int = 1;  // rounded companion for rescaling
  double delta = 0.0;           // lambda^{-eps}
  double K_bound = 0.0;         // N^{-3+eps'} + N^{-2+eps'} lambda^{-1/2}
  double C0 = 0.0;
  double iterations = 0.0;      // C0 / K
  double existence_time = 0.0;  // C0 delta lambda^{-3} / K
  Rational eps;                 // delta exponent
  Rational eps_prime;           // the "+" in the K exponents
  bool feasible = false;
  std::string violated;         // named binding inequality when infeasible
  bool extends = false;         // existence_time grows from N to 2N

  std::string to_json() const;
};

// Assembles the full iteration bookkeeping at a given (N, s, k).  s below
// the threshold produces an infeasible plan naming the violated inequality.
ContinuationPlan build_plan(double N, Rational s, int k, double C0,
                            Rational eps = Rational(1, 100),
                            Rational eps_prime = Rational(1, 100));

}  // namespace gkdv
