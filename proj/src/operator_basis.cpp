#include "mumd/operator_basis.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>
#include <utility>

#include "mumd/error.hpp"

namespace mumd {

OperatorBasis::OperatorBasis(int d, std::vector<ComplexMatrix> elements)
    : d_(d), elements_(std::move(elements)) {
  if (d < 2) throw ValidationError("OperatorBasis: d must be >= 2, got " + std::to_string(d));
  for (const auto& e : elements_) {
    if (e.dim() != static_cast<std::size_t>(d)) {
      throw ValidationError("OperatorBasis: element of dim " + std::to_string(e.dim()) +
                            " in a d=" + std::to_string(d) + " basis");
    }
  }
}

GridIndex OperatorBasis::grid_index(std::size_t flat) const {
  if (!has_grid()) throw ValidationError("OperatorBasis: no grid assigned");
  return grid_.at(flat);
}

std::size_t OperatorBasis::flat_index(GridIndex index) const {
  if (!has_grid()) throw ValidationError("OperatorBasis: no grid assigned");
  if (index.n < 1 || index.n > d_ - 1 || index.b < 1 || index.b > d_ + 1) {
    throw ValidationError("OperatorBasis: grid index (" + std::to_string(index.n) + "," +
                          std::to_string(index.b) + ") out of range");
  }
  return inverse_[static_cast<std::size_t>((index.b - 1) * (d_ - 1) + (index.n - 1))];
}

OperatorBasis gell_mann_basis(int d) {
  if (d < 2) throw ValidationError("gell_mann_basis: d must be >= 2, got " + std::to_string(d));
  const auto n = static_cast<std::size_t>(d);
  const double inv_sqrt2 = 1.0 / std::numbers::sqrt2;
  std::vector<ComplexMatrix> out;
  out.reserve(n * n - 1);

  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t k = j + 1; k < n; ++k) {
      ComplexMatrix m(n);
      m(j, k) = inv_sqrt2;
      m(k, j) = inv_sqrt2;
      out.push_back(std::move(m));
    }
  // -i(|j><k| - |k><j|)/sqrt2
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t k = j + 1; k < n; ++k) {
      ComplexMatrix m(n);
      m(j, k) = Complex(0.0, -inv_sqrt2);
      m(k, j) = Complex(0.0, inv_sqrt2);
      out.push_back(std::move(m));
    }
  for (std::size_t l = 1; l < n; ++l) {
    ComplexMatrix m(n);
    const double norm = 1.0 / std::sqrt(static_cast<double>(l * (l + 1)));
    for (std::size_t j = 0; j < l; ++j) m(j, j) = norm;
    m(l, l) = -static_cast<double>(l) * norm;
    out.push_back(std::move(m));
  }
  return assign_grid(OperatorBasis(d, std::move(out)));
}

OperatorBasis assign_grid(OperatorBasis basis) {
  const int d = basis.d();
  const auto expected = static_cast<std::size_t>(d * d - 1);
  if (basis.size() != expected) {
    throw ValidationError("assign_grid: expected " + std::to_string(expected) + " elements, got " +
                          std::to_string(basis.size()));
  }
  std::vector<GridIndex> grid;
  grid.reserve(expected);

  for (int j = 0; j < d; ++j)
    for (int k = j + 1; k < d; ++k) grid.push_back({k - j, j + 1});
  for (int j = 0; j < d; ++j)
    for (int k = j + 1; k < d; ++k) grid.push_back({d - k + j, k + 1});
  for (int l = 1; l < d; ++l) grid.push_back({l, d + 1});

  std::vector<std::size_t> inverse(expected, expected);
  for (std::size_t flat = 0; flat < grid.size(); ++flat) {
    const auto slot = static_cast<std::size_t>((grid[flat].b - 1) * (d - 1) + (grid[flat].n - 1));
    inverse[slot] = flat;
  }
  basis.grid_ = std::move(grid);
  basis.inverse_ = std::move(inverse);
  return basis;
}

std::vector<ComplexMatrix> weyl_operators(int d) {
  if (d < 2) throw ValidationError("weyl_operators: d must be >= 2, got " + std::to_string(d));
  const auto n = static_cast<std::size_t>(d);
  std::vector<ComplexMatrix> ops;
  ops.reserve(n * n);
  for (std::size_t s = 0; s < n; ++s)
    for (std::size_t t = 0; t < n; ++t) {
      ComplexMatrix u(n);
      for (std::size_t j = 0; j < n; ++j) {
        // Reduce the exponent mod d first so zeta^0 is exactly 1.
        const auto power = static_cast<double>((s * j) % n);
        u(j, (j + t) % n) = std::polar(1.0, 2.0 * std::numbers::pi * power / static_cast<double>(d));
      }
      ops.push_back(std::move(u));
    }
  return ops;
}

const ComplexMatrix& weyl_at(const std::vector<ComplexMatrix>& ops, int d, int s, int t) {
  return ops.at(static_cast<std::size_t>(s * d + t));
}

BasisReport verify_orthonormal_basis(const OperatorBasis& basis, double tol) {
  BasisReport r;
  const auto& el = basis.elements();
  r.element_count = el.size();
  r.count_ok = el.size() == static_cast<std::size_t>(basis.d() * basis.d() - 1);
  for (std::size_t i = 0; i < el.size(); ++i) {
    r.max_trace = std::max(r.max_trace, std::abs(trace(el[i])));
    r.max_hermiticity_defect = std::max(r.max_hermiticity_defect, hermiticity_defect(el[i]));
    for (std::size_t j = i; j < el.size(); ++j) {
      const Complex g = trace_product(el[i], el[j]);
      const double target = i == j ? 1.0 : 0.0;
      r.max_gram_deviation = std::max(r.max_gram_deviation, std::abs(g - target));
    }
  }
  r.pass = r.count_ok && r.max_trace <= tol && r.max_hermiticity_defect <= tol &&
           r.max_gram_deviation <= tol;
  return r;
}

}  // namespace mumd
