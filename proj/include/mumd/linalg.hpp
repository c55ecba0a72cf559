#pragma once

// Dense square complex matrices and the handful of operations the
// detection toolkit needs. Sizes here never exceed 64x64, so everything is
// plain O(n^3) loops over a row-major buffer.

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace mumd {

using Complex = std::complex<double>;

inline constexpr double kDefaultTol = 1e-10;
inline constexpr double kHermitianTol = 1e-12;

class ComplexMatrix {
 public:
  ComplexMatrix() = default;
  explicit ComplexMatrix(std::size_t dim);
  ComplexMatrix(std::size_t dim, std::vector<Complex> entries);

  static ComplexMatrix identity(std::size_t dim);
  static ComplexMatrix diagonal(std::span<const double> values);
  // |v><w|
  static ComplexMatrix outer(std::span<const Complex> v, std::span<const Complex> w);
  static ComplexMatrix projector(std::span<const Complex> v) { return outer(v, v); }

  std::size_t dim() const noexcept { return dim_; }
  std::span<const Complex> entries() const noexcept { return entries_; }

  Complex& operator()(std::size_t row, std::size_t col) { return entries_[row * dim_ + col]; }
  const Complex& operator()(std::size_t row, std::size_t col) const {
    return entries_[row * dim_ + col];
  }

  std::vector<Complex> column(std::size_t col) const;

  ComplexMatrix adjoint() const;
  ComplexMatrix conjugate() const;
  ComplexMatrix transpose() const;

  ComplexMatrix& operator+=(const ComplexMatrix& other);
  ComplexMatrix& operator-=(const ComplexMatrix& other);
  ComplexMatrix& operator*=(Complex scalar);

  friend bool operator==(const ComplexMatrix&, const ComplexMatrix&) = default;

 private:
  std::size_t dim_ = 0;
  std::vector<Complex> entries_;
};

ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b);
ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b);
ComplexMatrix operator*(ComplexMatrix a, Complex scalar);
ComplexMatrix operator*(Complex scalar, ComplexMatrix a);

ComplexMatrix matmul(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);
// a * m * a^dagger
ComplexMatrix conjugate_by(const ComplexMatrix& u, const ComplexMatrix& m);

Complex trace(const ComplexMatrix& a);
// Tr(a b) without forming the product.
Complex trace_product(const ComplexMatrix& a, const ComplexMatrix& b);

// Tr((a (x) b) rho) for rho on dim(a)*dim(b), without forming the Kronecker
// product. Index convention: first factor major.
Complex local_expectation(const ComplexMatrix& rho, const ComplexMatrix& a, const ComplexMatrix& b);

// <v| m |v>
Complex expectation(const ComplexMatrix& m, std::span<const Complex> v);

double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b);
// max |a - a^dagger|
double hermiticity_defect(const ComplexMatrix& a);
// max |u u^dagger - I|
double unitarity_defect(const ComplexMatrix& u);
bool is_hermitian(const ComplexMatrix& a, double tol = kHermitianTol);

struct EigenDecomposition {
  std::vector<double> values;  // descending
  ComplexMatrix vectors;       // column k pairs with values[k]
};

// Cyclic complex Jacobi. Throws ValidationError on non-Hermitian input.
EigenDecomposition hermitian_eigen(const ComplexMatrix& a);
std::vector<double> hermitian_eigenvalues(const ComplexMatrix& a);
double min_eigenvalue(const ComplexMatrix& a);
bool is_psd(const ComplexMatrix& a, double tol);

}  // namespace mumd
