#include <doctest.h>

#include <cmath>
#include <numbers>
#include <set>

#include "mumd/error.hpp"
#include "mumd/operator_basis.hpp"

using namespace mumd;

TEST_CASE("d=2 Gell-Mann basis is the Pauli matrices over sqrt 2") {
  const OperatorBasis basis = gell_mann_basis(2);
  REQUIRE(basis.size() == 3);
  const double h = 1.0 / std::numbers::sqrt2;
  CHECK(max_abs_diff(basis[0], ComplexMatrix(2, {0.0, h, h, 0.0})) < 1e-15);
  CHECK(max_abs_diff(basis[1], ComplexMatrix(2, {0.0, Complex(0, -h), Complex(0, h), 0.0})) < 1e-15);
  CHECK(max_abs_diff(basis[2], ComplexMatrix(2, {h, 0.0, 0.0, -h})) < 1e-15);
}

TEST_CASE("Gell-Mann basis sizes") {
  CHECK(gell_mann_basis(6).size() == 35);
  CHECK_THROWS_AS(gell_mann_basis(1), ValidationError);
}

TEST_CASE("Gell-Mann bases are orthonormal, traceless and Hermitian") {
  for (int d = 2; d <= 8; ++d) {
    const BasisReport r = verify_orthonormal_basis(gell_mann_basis(d), 1e-10);
    CAPTURE(d);
    CHECK(r.pass);
    CHECK(r.max_trace <= 1e-12);
    CHECK(r.max_hermiticity_defect <= 1e-12);
  }
}

TEST_CASE("orthonormal traceless basis is complete: sum F^2 = (d^2-1)/d I") {
  for (int d = 2; d <= 6; ++d) {
    const OperatorBasis basis = gell_mann_basis(d);
    ComplexMatrix sum(static_cast<std::size_t>(d));
    for (const auto& f : basis.elements()) sum += matmul(f, f);
    const double c = (d * d - 1.0) / d;
    CHECK(max_abs_diff(sum, ComplexMatrix::identity(static_cast<std::size_t>(d)) * c) <= 1e-9);
  }
}

TEST_CASE("verify_orthonormal_basis flags broken bases") {
  const OperatorBasis good = gell_mann_basis(3);

  std::vector<ComplexMatrix> scaled = good.elements();
  scaled[2] *= std::numbers::sqrt2;  // Tr(F^2) = 2
  const BasisReport r1 = verify_orthonormal_basis(OperatorBasis(3, scaled), 1e-10);
  CHECK_FALSE(r1.pass);
  CHECK(std::abs(r1.max_gram_deviation - 1.0) < 1e-12);

  std::vector<ComplexMatrix> with_identity = good.elements();
  with_identity.push_back(ComplexMatrix::identity(3));
  const BasisReport r2 = verify_orthonormal_basis(OperatorBasis(3, with_identity), 1e-10);
  CHECK_FALSE(r2.pass);
  CHECK(r2.max_trace == doctest::Approx(3.0));
}

TEST_CASE("grid assignment") {
  SUBCASE("d=2 puts one element in each of three measurements") {
    const OperatorBasis basis = gell_mann_basis(2);
    CHECK(basis.grid_index(0) == GridIndex{1, 1});
    CHECK(basis.grid_index(1) == GridIndex{1, 2});
    CHECK(basis.grid_index(2) == GridIndex{1, 3});
  }
  SUBCASE("d=3 covers b in 1..4 and n in 1..2") {
    const OperatorBasis basis = gell_mann_basis(3);
    std::set<std::pair<int, int>> seen;
    for (std::size_t i = 0; i < basis.size(); ++i) {
      const GridIndex g = basis.grid_index(i);
      CHECK(g.n >= 1);
      CHECK(g.n <= 2);
      CHECK(g.b >= 1);
      CHECK(g.b <= 4);
      seen.insert({g.n, g.b});
    }
    CHECK(seen.size() == 8);
  }
  SUBCASE("(n,b) -> flat -> (n,b) round-trips for d=5") {
    const OperatorBasis basis = gell_mann_basis(5);
    for (int b = 1; b <= 6; ++b)
      for (int n = 1; n <= 4; ++n) CHECK(basis.grid_index(basis.flat_index({n, b})) == GridIndex{n, b});
    for (std::size_t i = 0; i < basis.size(); ++i) CHECK(basis.flat_index(basis.grid_index(i)) == i);
  }
  SUBCASE("measurement b=v+1 is the star at index v; diagonals go last") {
    const int d = 4;
    const OperatorBasis basis = gell_mann_basis(d);
    for (int b = 1; b <= d; ++b) {
      const int v = b - 1;
      for (int n = 1; n < d; ++n) {
        const ComplexMatrix& f = basis.at(n, b);
        // Every off-diagonal element of the star touches row/column v.
        bool touches = false;
        for (int k = 0; k < d; ++k)
          if (std::abs(f(static_cast<std::size_t>(v), static_cast<std::size_t>(k))) > 0.0) touches = true;
        CHECK(touches);
      }
    }
    for (int n = 1; n < d; ++n) {
      const ComplexMatrix& f = basis.at(n, d + 1);
      CHECK(std::abs(f(0, 1)) == 0.0);
    }
  }
  CHECK_THROWS_AS(assign_grid(OperatorBasis(3, {ComplexMatrix::identity(3)})), ValidationError);
  CHECK_THROWS_AS(gell_mann_basis(3).flat_index({3, 1}), ValidationError);
}

TEST_CASE("Weyl operators") {
  const auto u2 = weyl_operators(2);
  CHECK(weyl_at(u2, 2, 0, 0) == ComplexMatrix::identity(2));
  CHECK(max_abs_diff(weyl_at(u2, 2, 1, 0), ComplexMatrix(2, {1.0, 0.0, 0.0, -1.0})) < 1e-15);
  CHECK(weyl_at(u2, 2, 0, 1) == ComplexMatrix(2, {0.0, 1.0, 1.0, 0.0}));

  for (int d : {3, 5, 6}) {
    const auto ops = weyl_operators(d);
    CHECK(weyl_at(ops, d, 0, 0) == ComplexMatrix::identity(static_cast<std::size_t>(d)));
    for (int s = 0; s < d; ++s)
      for (int t = 0; t < d; ++t) {
        CHECK(unitarity_defect(weyl_at(ops, d, s, t)) <= 1e-12);
        for (int s2 = 0; s2 < d; ++s2)
          for (int t2 = 0; t2 < d; ++t2) {
            const Complex g = trace_product(weyl_at(ops, d, s, t).adjoint(), weyl_at(ops, d, s2, t2));
            const double target = (s == s2 && t == t2) ? d : 0.0;
            CHECK(std::abs(g - target) <= 1e-10);
          }
      }
  }
}
