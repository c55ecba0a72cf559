#include <doctest.h>

#include <cmath>

#include "mumd/error.hpp"
#include "mumd/operator_basis.hpp"
#include "mumd/states.hpp"
#include "oracles.hpp"

using namespace mumd;

namespace {

double purity(const ComplexMatrix& rho) { return trace(matmul(rho, rho)).real(); }

}  // namespace

TEST_CASE("max_entangled") {
  const BipartiteState s = max_entangled(2);
  CHECK(s.rho.dim() == 4);
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) {
      const bool corner = (i == 0 || i == 3) && (j == 0 || j == 3);
      CHECK(s.rho(i, j) == Complex(corner ? 0.5 : 0.0));
    }
  for (int d = 2; d <= 6; ++d) {
    const BipartiteState m = max_entangled(d);
    CHECK(std::abs(trace(m.rho) - 1.0) < 1e-14);
    CHECK(std::abs(purity(m.rho) - 1.0) < 1e-12);
    CHECK(check_state(m).pass);
  }
}

TEST_CASE("isotropic") {
  const BipartiteState zero = isotropic(3, 0.0);
  CHECK(max_abs_diff(zero.rho, ComplexMatrix::identity(9) * (1.0 / 9.0)) < 1e-15);
  CHECK(max_abs_diff(isotropic(4, 1.0).rho, max_entangled(4).rho) < 1e-15);
  CHECK(ppt_check(isotropic(3, 0.25)).is_ppt);
  CHECK_THROWS_AS(isotropic(3, -0.1), ValidationError);
  CHECK_THROWS_AS(isotropic(3, 1.1), ValidationError);
}

TEST_CASE("bell_vector and bell_diagonal") {
  const int d = 3;
  // Bell basis is orthonormal.
  for (int s = 0; s < d; ++s)
    for (int t = 0; t < d; ++t)
      for (int s2 = 0; s2 < d; ++s2)
        for (int t2 = 0; t2 < d; ++t2) {
          const auto u = bell_vector(d, s, t);
          const auto v = bell_vector(d, s2, t2);
          Complex ip{};
          for (std::size_t k = 0; k < u.size(); ++k) ip += std::conj(u[k]) * v[k];
          CHECK(std::abs(ip - ((s == s2 && t == t2) ? 1.0 : 0.0)) < 1e-12);
        }

  std::vector<double> delta(9, 0.0);
  delta[0] = 1.0;
  CHECK(max_abs_diff(bell_diagonal(d, delta).rho, max_entangled(d).rho) < 1e-15);

  const std::vector<double> uniform(9, 1.0 / 9.0);
  CHECK(max_abs_diff(bell_diagonal(d, uniform).rho, ComplexMatrix::identity(9) * (1.0 / 9.0)) < 1e-12);

  std::vector<double> neg = uniform;
  neg[0] = -0.1;
  neg[1] += 0.1 + 1.0 / 9.0;
  CHECK_THROWS_AS(bell_diagonal(d, neg), ValidationError);
  std::vector<double> unnormalized = uniform;
  unnormalized[0] += 1e-6;
  CHECK_THROWS_AS(bell_diagonal(d, unnormalized), ValidationError);
  CHECK_THROWS_AS(bell_diagonal(d, std::vector<double>(4, 0.25)), ValidationError);
}

TEST_CASE("random_pure") {
  const ComplexMatrix a = random_pure(4, 17);
  CHECK(std::abs(trace(a) - 1.0) < 1e-12);
  CHECK(std::abs(purity(a) - 1.0) < 1e-12);
  CHECK(random_pure(4, 17) == a);
  CHECK_FALSE(random_pure(4, 18) == a);
}

TEST_CASE("random_pure populations are unbiased") {
  for (int d : {2, 3}) {
    const int n = 10000;
    double sum = 0.0, sum2 = 0.0;
    for (int seed = 0; seed < n; ++seed) {
      const double p = random_pure(d, static_cast<std::uint64_t>(seed))(0, 0).real();
      sum += p;
      sum2 += p * p;
    }
    const double mean = sum / n;
    const double se = std::sqrt((sum2 / n - mean * mean) / n);
    CAPTURE(d);
    CHECK(std::abs(mean - 1.0 / d) <= 5.0 * se);
  }
}

TEST_CASE("random_separable") {
  const BipartiteState one = random_separable(3, 1, 5);
  CHECK(std::abs(purity(one.rho) - 1.0) < 1e-12);
  CHECK(ppt_check(one).is_ppt);

  for (int k : {1, 2, 8, 30}) {
    const BipartiteState s = random_separable(3, k, 100 + static_cast<std::uint64_t>(k));
    CHECK(check_state(s).pass);
    CHECK(ppt_check(s).is_ppt);
  }
  CHECK(random_separable(4, 5, 9).rho == random_separable(4, 5, 9).rho);
  CHECK_THROWS_AS(random_separable(3, 0, 1), ValidationError);
}

TEST_CASE("random_density") {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const BipartiteState s = random_density(3, seed);
    const StateReport r = check_state(s);
    CHECK(r.pass);
    CHECK(r.min_eigenvalue >= 0.0);
  }
}

TEST_CASE("check_state and make_state") {
  ComplexMatrix bad = ComplexMatrix::identity(4) * 0.5;
  CHECK_FALSE(check_state({2, bad}).pass);
  CHECK_THROWS_AS(make_state(2, bad), ValidationError);

  std::vector<double> diag{1.5, -0.5, 0.0, 0.0};
  CHECK(check_state({2, ComplexMatrix::diagonal(diag)}).min_eigenvalue < 0.0);
  CHECK_THROWS_AS(make_state(2, ComplexMatrix::diagonal(diag)), ValidationError);

  ComplexMatrix nonherm = ComplexMatrix::identity(4) * 0.25;
  nonherm(0, 1) = Complex(0.1, 0.0);
  CHECK_THROWS_AS(make_state(2, nonherm), ValidationError);

  CHECK_THROWS_AS(make_state(3, ComplexMatrix::identity(4) * 0.25), ValidationError);
  CHECK_NOTHROW(make_state(2, ComplexMatrix::identity(4) * 0.25));
}

TEST_CASE("partial_transpose") {
  const BipartiteState s = random_density(3, 77);
  const ComplexMatrix pt = partial_transpose(s);
  CHECK(partial_transpose({3, pt}) == s.rho);
  CHECK(hermiticity_defect(pt) < 1e-15);

  // Product state: PT only transposes the second factor.
  const ComplexMatrix a = random_pure(3, 1);
  const ComplexMatrix b = random_pure(3, 2);
  const BipartiteState prod{3, kron(a, b)};
  CHECK(max_abs_diff(partial_transpose(prod), kron(a, b.transpose())) < 1e-15);
  CHECK(ppt_check(prod).is_ppt);

  for (int d = 2; d <= 4; ++d) {
    const auto ev = hermitian_eigenvalues(partial_transpose(max_entangled(d)));
    CHECK(std::abs(ev.front() - 1.0 / d) < 1e-12);
    CHECK(std::abs(ev.back() + 1.0 / d) < 1e-12);
  }
}

TEST_CASE("ppt_check") {
  CHECK(ppt_check(isotropic(4, 0.19)).is_ppt);
  CHECK_FALSE(ppt_check(isotropic(4, 0.21)).is_ppt);
  const PptResult mixed = ppt_check(isotropic(3, 0.0));
  CHECK(std::abs(mixed.min_eigenvalue - 1.0 / 9.0) < 1e-12);

  for (int d = 2; d <= 6; ++d)
    for (double alpha : {0.0, 0.1, 0.3, 0.7, 1.0}) {
      const PptResult r = ppt_check(isotropic(d, alpha));
      CHECK(std::abs(r.min_eigenvalue - oracle::isotropic_pt_min(d, alpha)) < 1e-12);
    }
}
