#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "mumd/linalg.hpp"

namespace mumd {

// Position of a basis element on the measurement grid: n in 1..d-1
// (element within a measurement), b in 1..d+1 (measurement).
struct GridIndex {
  int n = 0;
  int b = 0;
  friend bool operator==(const GridIndex&, const GridIndex&) = default;
};

// d^2-1 Hermitian traceless operators, orthonormal under Tr(F F').
// Once a grid is assigned, elements are addressable by (n, b).
class OperatorBasis {
 public:
  OperatorBasis(int d, std::vector<ComplexMatrix> elements);

  int d() const noexcept { return d_; }
  std::size_t size() const noexcept { return elements_.size(); }
  const std::vector<ComplexMatrix>& elements() const noexcept { return elements_; }
  const ComplexMatrix& operator[](std::size_t flat) const { return elements_.at(flat); }

  bool has_grid() const noexcept { return !grid_.empty(); }
  GridIndex grid_index(std::size_t flat) const;
  std::size_t flat_index(GridIndex index) const;
  const ComplexMatrix& at(int n, int b) const { return elements_[flat_index({n, b})]; }

 private:
  friend OperatorBasis assign_grid(OperatorBasis basis);

  int d_;
  std::vector<ComplexMatrix> elements_;
  std::vector<GridIndex> grid_;       // flat -> (n,b)
  std::vector<std::size_t> inverse_;  // (b-1)*(d-1) + (n-1) -> flat
};

// Symmetric pairs (j<k, lexicographic), antisymmetric pairs, then the
// d-1 diagonal elements; grid already assigned.
OperatorBasis gell_mann_basis(int d);

// Groups the Gell-Mann-ordered flat list into d+1 measurements of d-1
// elements. Measurement b = v+1 (v = 0..d-1) is the "star" at index v:
// sym(v,k) for k > v (n = k-v), then antisym(j,v) for j < v
// (n = d-v+j). Measurement d+1 holds diag_l at n = l.
// Grouping each measurement as a star on the index graph is what lets the
// MUM construction reach kappa = 1/d + 2/d^2 for every d.
OperatorBasis assign_grid(OperatorBasis basis);

// U_{s,t} = sum_j zeta^{s j} |j><j+t mod d|, flat index s*d + t.
std::vector<ComplexMatrix> weyl_operators(int d);
const ComplexMatrix& weyl_at(const std::vector<ComplexMatrix>& ops, int d, int s, int t);

struct BasisReport {
  double max_trace = 0.0;
  double max_hermiticity_defect = 0.0;
  double max_gram_deviation = 0.0;  // max |Tr(F_i F_j) - delta_ij|
  std::size_t element_count = 0;
  bool count_ok = false;
  bool pass = false;
};

BasisReport verify_orthonormal_basis(const OperatorBasis& basis, double tol);

}  // namespace mumd
