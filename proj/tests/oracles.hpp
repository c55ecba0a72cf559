#pragma once

// Test-only reference computations. Each one takes a different route from
// the library code it checks: full products instead of fused traces,
// Kronecker products instead of index arithmetic, closed forms instead of
// numerics.

#include <cmath>
#include <cstdint>
#include <vector>

#include "mumd/linalg.hpp"
#include "mumd/mum.hpp"
#include "mumd/rng.hpp"
#include "mumd/states.hpp"

namespace oracle {

using mumd::Complex;
using mumd::ComplexMatrix;

inline ComplexMatrix random_matrix(std::size_t n, std::uint64_t seed) {
  mumd::Rng rng(seed);
  ComplexMatrix m(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m(i, j) = Complex(rng.gaussian(), rng.gaussian());
  return m;
}

inline ComplexMatrix random_hermitian(std::size_t n, std::uint64_t seed) {
  const ComplexMatrix a = random_matrix(n, seed);
  return (a + a.adjoint()) * 0.5;
}

inline ComplexMatrix random_integer_matrix(std::size_t n, std::uint64_t seed) {
  mumd::Rng rng(seed);
  ComplexMatrix m(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      m(i, j) = Complex(static_cast<double>(rng.next() % 7) - 3.0, static_cast<double>(rng.next() % 5) - 2.0);
  return m;
}

// Tr(X rho) via the explicit Kronecker product and full matrix product.
inline Complex kron_expectation(const ComplexMatrix& rho, const ComplexMatrix& a, const ComplexMatrix& b) {
  return mumd::trace(mumd::matmul(mumd::kron(a, b), rho));
}

inline double j_by_kron(const mumd::BipartiteState& s, const mumd::MumSet& p, const mumd::MumSet& q) {
  Complex sum{};
  for (std::size_t b = 0; b < p.elements.size(); ++b)
    for (std::size_t n = 0; n < p.elements[b].size(); ++n)
      sum += kron_expectation(s.rho, p.elements[b][n], q.elements[b][n]);
  return sum.real();
}

// Eigenvalues of the isotropic partial transpose: the flip operator has
// eigenvalues +-1, so PT(rho_iso) has (1-alpha)/d^2 + alpha/d and
// (1-alpha)/d^2 - alpha/d.
inline double isotropic_pt_min(int d, double alpha) {
  return (1.0 - alpha) / (static_cast<double>(d) * d) - alpha / d;
}

inline double isotropic_j(int d, double kappa, double alpha) {
  return (d + 1) * (alpha * kappa + (1.0 - alpha) / d);
}

// Bisection for the smallest x in [lo, hi] with pred(x) true, assuming pred
// is monotone (false then true).
template <typename Pred>
double bisect_flip(double lo, double hi, double resolution, Pred pred) {
  while (hi - lo > resolution) {
    const double mid = 0.5 * (lo + hi);
    (pred(mid) ? hi : lo) = mid;
  }
  return hi;
}

}  // namespace oracle
