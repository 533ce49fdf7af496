#include "gkdv/torus_grid.hpp"

namespace gkdv {

int next_fast_size(int n) {
  if (n < 1) return 1;
  for (int candidate = n;; ++candidate) {
    int m = candidate;
    while (m % 2 == 0) m /= 2;
    while (m % 3 == 0) m /= 3;
    while (m % 5 == 0) m /= 5;
    if (m == 1) return candidate;
  }
}

TorusGrid::TorusGrid(double lambda, int K, int P)
    : period(lambda), mode_bound(K), samples(P) {
  if (!(lambda > 0.0)) throw PreconditionError("torus period must be positive");
  if (K < 0) throw PreconditionError("mode bound must be nonnegative");
  if (P < 2 * K + 1) {
    throw AliasingError("sample count below 2K+1: represented band would alias");
  }
}

TorusGrid TorusGrid::make(double lambda, int K) {
  return TorusGrid(lambda, K, next_fast_size(2 * K + 1));
}

}  // namespace gkdv
