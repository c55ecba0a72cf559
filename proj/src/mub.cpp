#include "mumd/mub.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "mumd/error.hpp"
#include "mumd/mum.hpp"

namespace mumd {

bool is_prime(int n) {
  if (n < 2) return false;
  for (int k = 2; k * k <= n; ++k)
    if (n % k == 0) return false;
  return true;
}

BasisSet mub_prime(int d) {
  if (!is_prime(d)) {
    throw UnsupportedDimensionError(
        "mub_prime: d=" + std::to_string(d) +
        " is not prime; no complete MUB construction is available. Use mutually unbiased "
        "measurements (gen-mums) instead, which exist in every dimension");
  }
  const auto n = static_cast<std::size_t>(d);
  BasisSet set{d, {}};
  set.bases.push_back(ComplexMatrix::identity(n));

  if (d == 2) {
    const double h = 1.0 / std::numbers::sqrt2;
    set.bases.emplace_back(2, std::vector<Complex>{h, h, h, -h});
    set.bases.emplace_back(2, std::vector<Complex>{h, h, Complex(0, h), Complex(0, -h)});
    return set;
  }

  const double norm = 1.0 / std::sqrt(static_cast<double>(d));
  for (std::size_t k = 0; k < n; ++k) {
    ComplexMatrix u(n);
    for (std::size_t l = 0; l < n; ++l)
      for (std::size_t j = 0; j < n; ++j) {
        const std::size_t power = (k * l * l + j * l) % n;
        u(l, j) = std::polar(norm, 2.0 * std::numbers::pi * static_cast<double>(power) /
                                       static_cast<double>(d));
      }
    set.bases.push_back(std::move(u));
  }
  return set;
}

MubReport verify_mub(const BasisSet& set, double tol) {
  MubReport r;
  const double target = 1.0 / static_cast<double>(set.d);
  for (const auto& u : set.bases) {
    if (u.dim() != static_cast<std::size_t>(set.d)) {
      throw ValidationError("verify_mub: basis of dim " + std::to_string(u.dim()) + " in a d=" +
                            std::to_string(set.d) + " set");
    }
    r.max_unitarity_defect = std::max(r.max_unitarity_defect, unitarity_defect(u));
  }
  for (std::size_t x = 0; x < set.bases.size(); ++x)
    for (std::size_t y = x + 1; y < set.bases.size(); ++y) {
      // Entry (i,j) of U_x^dagger U_y is <x_i|y_j>.
      const ComplexMatrix overlaps = matmul(set.bases[x].adjoint(), set.bases[y]);
      for (const Complex& z : overlaps.entries())
        r.max_overlap_deviation = std::max(r.max_overlap_deviation, std::abs(std::norm(z) - target));
    }
  r.pass = r.max_overlap_deviation <= tol && r.max_unitarity_defect <= tol;
  return r;
}

MumSet mums_from_mubs(const BasisSet& set) {
  if (set.bases.size() != static_cast<std::size_t>(set.d + 1)) {
    throw ValidationError("mums_from_mubs: need " + std::to_string(set.d + 1) + " bases, got " +
                          std::to_string(set.bases.size()));
  }
  const MubReport report = verify_mub(set, kDefaultTol);
  if (!report.pass) {
    throw VerificationError("mums_from_mubs: bases are not mutually unbiased (overlap deviation " +
                            std::to_string(report.max_overlap_deviation) + ", unitarity defect " +
                            std::to_string(report.max_unitarity_defect) + ")");
  }
  MumSet out;
  out.d = set.d;
  out.kappa = 1.0;
  for (const auto& u : set.bases) {
    std::vector<ComplexMatrix> povm;
    for (std::size_t col = 0; col < u.dim(); ++col) povm.push_back(ComplexMatrix::projector(u.column(col)));
    out.elements.push_back(std::move(povm));
  }
  return out;
}

}  // namespace mumd
