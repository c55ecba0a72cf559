#pragma once

#include <optional>
#include <vector>

#include "mumd/linalg.hpp"
#include "mumd/operator_basis.hpp"

namespace mumd {

// A complete set of d+1 mutually unbiased measurements. elements[b-1][n-1]
// holds P_n^{(b)}.
struct MumSet {
  int d = 0;
  std::vector<std::vector<ComplexMatrix>> elements;
  double kappa = 0.0;
  std::optional<double> t;  // absent for MUB lifts and loaded sets

  const ComplexMatrix& at(int n, int b) const {
    return elements.at(static_cast<std::size_t>(b - 1)).at(static_cast<std::size_t>(n - 1));
  }
};

enum class RootSign { Plus, Minus };

inline constexpr double kConstructionPsdTol = 1e-12;

// kappa = 1/d + t^2 (1 + sqrt d)^2 (d - 1)
double kappa_from_t(int d, double t);
// Inverse of kappa_from_t; kappa must lie in (1/d, 1]. kappa == 1/d is
// accepted as the boundary and maps to t = 0.
double t_from_kappa(int d, double kappa, RootSign sign = RootSign::Plus);
// 1/d + 2/d^2, the largest kappa reachable with the Gell-Mann basis.
double optimal_kappa(int d);

// P_n^{(b)} = I/d + t F_n^{(b)} with
//   F^{(b)}   = sum_n F_{n,b}
//   F_n^{(b)} = F^{(b)} - (d + sqrt d) F_{n,b}   (n < d)
//   F_d^{(b)} = (1 + sqrt d) F^{(b)}
// Throws PositivityError naming the worst element if any P is not PSD at
// kConstructionPsdTol.
MumSet build_mums(const OperatorBasis& basis, double t);

// Gell-Mann basis at t_from_kappa(d, kappa, sign).
MumSet gell_mann_mums(int d, double kappa, RootSign sign = RootSign::Plus);
// Default construction: gell_mann_mums(d, optimal_kappa(d)).
MumSet optimal_gell_mann_mums(int d);

// Largest t > 0 keeping every element PSD at kConstructionPsdTol, by
// bisection on [0, 1] to absolute resolution 1e-12.
double max_valid_t(const OperatorBasis& basis);

struct MumReport {
  double max_trace_violation = 0.0;       // |Tr P - 1|
  double max_cross_violation = 0.0;       // |Tr(P P') - 1/d|, b != b'
  double max_same_violation = 0.0;        // same b vs kappa / (1-kappa)/(d-1)
  double max_completeness_violation = 0.0;  // |sum_n P_n^{(b)} - I|
  double max_hermiticity_defect = 0.0;
  double min_eigenvalue = 0.0;
  double inferred_kappa = 0.0;  // mean of Tr(P^2)
  double kappa_spread = 0.0;    // max - min of Tr(P^2)
  double kappa_mismatch = 0.0;  // |inferred - stored|
  bool shape_ok = false;
  bool pass = false;
};

MumReport verify_mums(const MumSet& set, double tol);

// Entrywise complex conjugate; same kappa.
MumSet conjugate_mums(const MumSet& set);
// U P U^dagger for every element; u must be unitary within 1e-10.
MumSet rotate_mums(const MumSet& set, const ComplexMatrix& u);

}  // namespace mumd
