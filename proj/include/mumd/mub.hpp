#pragma once

#include <vector>

#include "mumd/linalg.hpp"

namespace mumd {

struct MumSet;

// m orthonormal bases of C^d, each stored as a unitary whose columns are
// the basis vectors.
struct BasisSet {
  int d = 0;
  std::vector<ComplexMatrix> bases;
};

bool is_prime(int n);

// Complete set of d+1 MUBs for prime d: computational basis first, then
// for d = 2 the X and Y eigenbases, for odd d the bases with components
// <l|j_k> = zeta^{k l^2 + j l} / sqrt(d), k = 0..d-1.
// Throws UnsupportedDimensionError for composite d.
BasisSet mub_prime(int d);

struct MubReport {
  double max_overlap_deviation = 0.0;  // max | |<b_i|c_j>|^2 - 1/d |
  double max_unitarity_defect = 0.0;
  bool pass = false;
};

MubReport verify_mub(const BasisSet& set, double tol);

// P_n^{(b)} = |n_b><n_b|, kappa = 1. Requires d+1 bases passing verify_mub
// at 1e-10.
MumSet mums_from_mubs(const BasisSet& set);

}  // namespace mumd
