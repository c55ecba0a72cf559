#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "mumd/linalg.hpp"

namespace mumd {

// Density matrix on C^d (x) C^d. Basis index of |i>|j> is i*d + j (first
// factor major) everywhere in the toolkit.
struct BipartiteState {
  int d = 0;
  ComplexMatrix rho;
};

inline constexpr double kStateTraceTol = 1e-10;
inline constexpr double kStatePsdTol = 1e-10;
inline constexpr double kPptTol = 1e-10;

struct StateReport {
  double hermiticity_defect = 0.0;
  double trace_error = 0.0;
  double min_eigenvalue = 0.0;
  bool dims_ok = false;
  bool pass = false;
};

StateReport check_state(const BipartiteState& state);
// Validates and wraps; throws ValidationError if any invariant fails.
BipartiteState make_state(int d, ComplexMatrix rho);

// |Phi+> = sum_i |ii> / sqrt d
std::vector<Complex> max_entangled_vector(int d);
BipartiteState max_entangled(int d);
// alpha |Phi+><Phi+| + (1 - alpha) I / d^2
BipartiteState isotropic(int d, double alpha);
// sum_{s,t} p[s*d + t] |Phi_{s,t}><Phi_{s,t}|,  |Phi_{s,t}> = (U_{s,t} (x) I)|Phi+>
BipartiteState bell_diagonal(int d, std::span<const double> p);
std::vector<Complex> bell_vector(int d, int s, int t);

// Normalized complex Gaussian vector from Rng(seed).
std::vector<Complex> random_pure_vector(int d, std::uint64_t seed);
ComplexMatrix random_pure(int d, std::uint64_t seed);
// sum_i w_i |phi_i><phi_i| (x) |psi_i><psi_i|, w normalized exponentials.
BipartiteState random_separable(int d, int k, std::uint64_t seed);
// G G^dagger / Tr(G G^dagger) for a d^2 x d^2 complex Ginibre G.
BipartiteState random_density(int d, std::uint64_t seed);

// Transpose on the second factor: ((i,j),(k,l)) -> ((i,l),(k,j)).
ComplexMatrix partial_transpose(const BipartiteState& state);

struct PptResult {
  double min_eigenvalue = 0.0;
  bool is_ppt = false;
};

PptResult ppt_check(const BipartiteState& state);

}  // namespace mumd
