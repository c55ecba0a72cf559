#include "mumd/states.hpp"

#include <cmath>
#include <numeric>
#include <string>
#include <utility>

#include "mumd/error.hpp"
#include "mumd/operator_basis.hpp"
#include "mumd/rng.hpp"

namespace mumd {

namespace {

void require_local_dim(int d, const char* op) {
  if (d < 2) throw ValidationError(std::string(op) + ": d must be >= 2, got " + std::to_string(d));
}

std::size_t total_dim(int d) { return static_cast<std::size_t>(d) * static_cast<std::size_t>(d); }

std::vector<Complex> gaussian_vector(Rng& rng, int d) {
  std::vector<Complex> v(static_cast<std::size_t>(d));
  double norm2 = 0.0;
  for (auto& z : v) {
    z = rng.complex_gaussian();
    norm2 += std::norm(z);
  }
  const double inv = 1.0 / std::sqrt(norm2);
  for (auto& z : v) z *= inv;
  return v;
}

}  // namespace

StateReport check_state(const BipartiteState& state) {
  StateReport r;
  r.dims_ok = state.d >= 2 && state.rho.dim() == total_dim(state.d);
  if (!r.dims_ok) return r;
  r.hermiticity_defect = hermiticity_defect(state.rho);
  r.trace_error = std::abs(trace(state.rho) - 1.0);
  if (r.hermiticity_defect <= kHermitianTol) r.min_eigenvalue = min_eigenvalue(state.rho);
  r.pass = r.hermiticity_defect <= kHermitianTol && r.trace_error <= kStateTraceTol &&
           r.min_eigenvalue >= -kStatePsdTol;
  return r;
}

BipartiteState make_state(int d, ComplexMatrix rho) {
  BipartiteState state{d, std::move(rho)};
  const StateReport r = check_state(state);
  if (!r.dims_ok) {
    throw ValidationError("make_state: rho of dim " + std::to_string(state.rho.dim()) +
                          " does not match d=" + std::to_string(d));
  }
  if (!r.pass) {
    throw ValidationError("make_state: not a density matrix (hermiticity " +
                          std::to_string(r.hermiticity_defect) + ", trace error " +
                          std::to_string(r.trace_error) + ", min eigenvalue " +
                          std::to_string(r.min_eigenvalue) + ")");
  }
  return state;
}

std::vector<Complex> max_entangled_vector(int d) {
  require_local_dim(d, "max_entangled");
  std::vector<Complex> v(total_dim(d));
  const double amp = 1.0 / std::sqrt(static_cast<double>(d));
  for (int i = 0; i < d; ++i) v[static_cast<std::size_t>(i * d + i)] = amp;
  return v;
}

BipartiteState max_entangled(int d) {
  // Entries set directly so they are exactly 1/d.
  require_local_dim(d, "max_entangled");
  ComplexMatrix rho(total_dim(d));
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      rho(static_cast<std::size_t>(i * d + i), static_cast<std::size_t>(j * d + j)) = 1.0 / d;
  return {d, std::move(rho)};
}

BipartiteState isotropic(int d, double alpha) {
  require_local_dim(d, "isotropic");
  if (!(alpha >= 0.0 && alpha <= 1.0)) {
    throw ValidationError("isotropic: alpha=" + std::to_string(alpha) + " outside [0,1]");
  }
  ComplexMatrix rho = max_entangled(d).rho * alpha;
  const double mixed = (1.0 - alpha) / static_cast<double>(total_dim(d));
  for (std::size_t i = 0; i < total_dim(d); ++i) rho(i, i) += mixed;
  return {d, std::move(rho)};
}

std::vector<Complex> bell_vector(int d, int s, int t) {
  const auto ops = weyl_operators(d);
  const ComplexMatrix& u = weyl_at(ops, d, s, t);
  const auto n = static_cast<std::size_t>(d);
  const double amp = 1.0 / std::sqrt(static_cast<double>(d));
  // (U (x) I) sum_i |i>|i> / sqrt d = sum_{j,i} U_{ji} |j>|i> / sqrt d
  std::vector<Complex> v(n * n);
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t i = 0; i < n; ++i) v[j * n + i] = u(j, i) * amp;
  return v;
}

BipartiteState bell_diagonal(int d, std::span<const double> p) {
  require_local_dim(d, "bell_diagonal");
  if (p.size() != total_dim(d)) {
    throw ValidationError("bell_diagonal: expected " + std::to_string(total_dim(d)) +
                          " weights, got " + std::to_string(p.size()));
  }
  double sum = 0.0;
  for (double w : p) {
    if (!(w >= 0.0)) throw ValidationError("bell_diagonal: negative weight " + std::to_string(w));
    sum += w;
  }
  if (std::abs(sum - 1.0) > 1e-12) {
    throw ValidationError("bell_diagonal: weights sum to " + std::to_string(sum));
  }
  ComplexMatrix rho(total_dim(d));
  for (int s = 0; s < d; ++s)
    for (int t = 0; t < d; ++t) {
      const double w = p[static_cast<std::size_t>(s * d + t)];
      if (w == 0.0) continue;
      rho += ComplexMatrix::projector(bell_vector(d, s, t)) * w;
    }
  return {d, std::move(rho)};
}

std::vector<Complex> random_pure_vector(int d, std::uint64_t seed) {
  require_local_dim(d, "random_pure");
  Rng rng(seed);
  return gaussian_vector(rng, d);
}

ComplexMatrix random_pure(int d, std::uint64_t seed) {
  return ComplexMatrix::projector(random_pure_vector(d, seed));
}

BipartiteState random_separable(int d, int k, std::uint64_t seed) {
  require_local_dim(d, "random_separable");
  if (k < 1) throw ValidationError("random_separable: k must be >= 1, got " + std::to_string(k));
  Rng rng(seed);
  std::vector<double> w(static_cast<std::size_t>(k));
  for (auto& x : w) x = rng.exponential();
  const double total = std::accumulate(w.begin(), w.end(), 0.0);
  ComplexMatrix rho(total_dim(d));
  for (int i = 0; i < k; ++i) {
    const auto phi = gaussian_vector(rng, d);
    const auto psi = gaussian_vector(rng, d);
    rho += kron(ComplexMatrix::projector(phi), ComplexMatrix::projector(psi)) *
           (w[static_cast<std::size_t>(i)] / total);
  }
  return {d, std::move(rho)};
}

BipartiteState random_density(int d, std::uint64_t seed) {
  require_local_dim(d, "random_density");
  Rng rng(seed);
  const std::size_t n = total_dim(d);
  ComplexMatrix g(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) g(i, j) = rng.complex_gaussian();
  ComplexMatrix rho = matmul(g, g.adjoint());
  rho *= 1.0 / trace(rho).real();
  return {d, std::move(rho)};
}

ComplexMatrix partial_transpose(const BipartiteState& state) {
  const auto n = static_cast<std::size_t>(state.d);
  if (state.rho.dim() != n * n) throw ValidationError("partial_transpose: rho dimension mismatch");
  ComplexMatrix out(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k)
        for (std::size_t l = 0; l < n; ++l) out(i * n + l, k * n + j) = state.rho(i * n + j, k * n + l);
  return out;
}

PptResult ppt_check(const BipartiteState& state) {
  PptResult r;
  r.min_eigenvalue = min_eigenvalue(partial_transpose(state));
  r.is_ppt = r.min_eigenvalue >= -kPptTol;
  return r;
}

}  // namespace mumd
