#include "mumd/criteria.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>
#include <utility>

#include "mumd/error.hpp"
#include "mumd/rng.hpp"

namespace mumd {

namespace {

void require_compatible(const BipartiteState& state, const MumSet& pset, const MumSet& qset,
                        const char* op) {
  if (pset.d != state.d || qset.d != state.d) {
    throw ValidationError(std::string(op) + ": dimension mismatch (state d=" + std::to_string(state.d) +
                          ", P d=" + std::to_string(pset.d) + ", Q d=" + std::to_string(qset.d) + ")");
  }
  if (state.rho.dim() != static_cast<std::size_t>(state.d * state.d)) {
    throw ValidationError(std::string(op) + ": rho dimension does not match d");
  }
  if (std::abs(pset.kappa - qset.kappa) > kKappaMatchTol) {
    throw ValidationError(std::string(op) + ": kappa mismatch (" + std::to_string(pset.kappa) + " vs " +
                          std::to_string(qset.kappa) + ")");
  }
  const auto rows = static_cast<std::size_t>(state.d + 1);
  if (pset.elements.size() != rows || qset.elements.size() != rows) {
    throw ValidationError(std::string(op) + ": MUM sets must hold d+1 measurements");
  }
}

double real_checked(Complex z, const char* what) {
  if (std::abs(z.imag()) > kImaginaryTol) {
    throw InvariantError(std::string(what) + ": imaginary part " + std::to_string(z.imag()) +
                         " exceeds tolerance");
  }
  return z.real();
}

void require_weights(int d, std::span<const double> p, const char* op) {
  if (p.size() != static_cast<std::size_t>(d * d)) {
    throw ValidationError(std::string(op) + ": expected " + std::to_string(d * d) + " weights");
  }
  double sum = 0.0;
  for (double w : p) {
    if (!(w >= 0.0)) throw ValidationError(std::string(op) + ": negative weight");
    sum += w;
  }
  if (std::abs(sum - 1.0) > 1e-12) {
    throw ValidationError(std::string(op) + ": weights sum to " + std::to_string(sum));
  }
}

}  // namespace

const char* to_string(Verdict v) { return v == Verdict::Entangled ? "entangled" : "inconclusive"; }

DetectionReport make_report(std::string criterion, double value, double bound, double tolerance,
                            std::optional<double> kappa, int d) {
  DetectionReport r;
  r.criterion = std::move(criterion);
  r.value = value;
  r.bound = bound;
  r.tolerance = tolerance;
  r.verdict = value > bound + tolerance ? Verdict::Entangled : Verdict::Inconclusive;
  r.kappa = kappa;
  r.d = d;
  return r;
}

double j_value(const BipartiteState& state, const MumSet& pset, const MumSet& qset) {
  require_compatible(state, pset, qset, "j_value");
  Complex sum{};
  for (std::size_t b = 0; b < pset.elements.size(); ++b)
    for (std::size_t n = 0; n < pset.elements[b].size(); ++n)
      sum += local_expectation(state.rho, pset.elements[b][n], qset.elements[b][n]);
  return real_checked(sum, "j_value");
}

DetectionReport mum_criterion(const BipartiteState& state, const MumSet& pset, const MumSet& qset,
                              double tolerance) {
  const double j = j_value(state, pset, qset);
  return make_report("mum", j, 1.0 + pset.kappa, tolerance, pset.kappa, state.d);
}

double j_isotropic_closed(int d, double kappa, double alpha) {
  return (d + 1) * (alpha * kappa + (1.0 - alpha) / d);
}

double mub_value(const BipartiteState& state, const BasisSet& bases, MubPairing pairing) {
  if (bases.d != state.d) throw ValidationError("mub_value: dimension mismatch");
  Complex sum{};
  for (const auto& u : bases.bases)
    for (std::size_t i = 0; i < u.dim(); ++i) {
      const auto v = u.column(i);
      std::vector<Complex> w = v;
      if (pairing == MubPairing::Conjugate)
        for (auto& z : w) z = std::conj(z);
      std::vector<Complex> vw(v.size() * w.size());
      for (std::size_t a = 0; a < v.size(); ++a)
        for (std::size_t c = 0; c < w.size(); ++c) vw[a * w.size() + c] = v[a] * w[c];
      sum += expectation(state.rho, vw);
    }
  return real_checked(sum, "mub_value");
}

DetectionReport mub_criterion(const BipartiteState& state, const BasisSet& bases, MubPairing pairing,
                              double tolerance) {
  const auto m = static_cast<int>(bases.bases.size());
  if (m < 2) throw ValidationError("mub_criterion: need at least 2 bases");
  const MubReport check = verify_mub(bases, kDefaultTol);
  if (!check.pass) {
    throw VerificationError("mub_criterion: bases are not mutually unbiased (overlap deviation " +
                            std::to_string(check.max_overlap_deviation) + ")");
  }
  const double value = mub_value(state, bases, pairing);
  DetectionReport r = make_report("mub", value, 1.0 + static_cast<double>(m - 1) / state.d, tolerance,
                                  std::nullopt, state.d);
  r.parameters["m"] = m;
  return r;
}

double correlation_diagonal_sum(const BipartiteState& state, const OperatorBasis& basis) {
  if (basis.d() != state.d) throw ValidationError("correlation_matrix_trace: dimension mismatch");
  Complex sum{};
  for (const auto& f : basis.elements()) sum += local_expectation(state.rho, f, f);
  return real_checked(sum, "correlation_matrix_trace");
}

double correlation_matrix_trace(const BipartiteState& state, const OperatorBasis& basis) {
  return 0.5 * correlation_diagonal_sum(state, basis);
}

double correlation_trace_bound(int d) { return (d - 1.0) / (2.0 * d); }

DetectionReport correlation_criterion(const BipartiteState& state, const OperatorBasis& basis,
                                      double tolerance) {
  return make_report("correlation-trace", correlation_matrix_trace(state, basis),
                     correlation_trace_bound(state.d), tolerance, std::nullopt, state.d);
}

IdentityCheck j_correlation_identity(const BipartiteState& state, const MumSet& pset,
                                     const OperatorBasis& basis) {
  if (pset.d != basis.d() || state.d != basis.d()) {
    throw ValidationError("j_correlation_identity: dimension mismatch");
  }
  if (!pset.t) throw ValidationError("j_correlation_identity: mismatched provenance (MUM set has no t)");
  const MumSet rebuilt = build_mums(basis, *pset.t);
  for (std::size_t b = 0; b < rebuilt.elements.size(); ++b)
    for (std::size_t n = 0; n < rebuilt.elements[b].size(); ++n)
      if (max_abs_diff(rebuilt.elements[b][n], pset.elements.at(b).at(n)) > kDefaultTol) {
        throw ValidationError("j_correlation_identity: mismatched provenance (MUM set was not built from this basis)");
      }
  const int d = state.d;
  IdentityCheck out;
  out.lhs = j_value(state, pset, pset);
  out.rhs = (d + 1.0) / d +
            (2.0 * (d * pset.kappa - 1.0) / (d - 1.0)) * correlation_matrix_trace(state, basis);
  return out;
}

BellChoice bell_choice(const MumSet& pset, std::span<const double> p) {
  const int d = pset.d;
  require_weights(d, p, "bell_choice");
  const auto best = std::max_element(p.begin(), p.end());  // first maximum: smallest (s,t)
  const auto flat = static_cast<int>(best - p.begin());
  const int s = flat / d;
  const int t = flat % d;
  const auto ops = weyl_operators(d);
  BellChoice out;
  out.qset = conjugate_mums(rotate_mums(pset, weyl_at(ops, d, s, t).adjoint()));
  out.c = *best;
  out.s = s;
  out.t = t;
  return out;
}

IdentityCheck pure_identity_check(const ComplexMatrix& pure, const MumSet& pset) {
  if (pure.dim() != static_cast<std::size_t>(pset.d)) {
    throw ValidationError("pure_identity_check: state dimension does not match MUM set");
  }
  const double purity = trace_product(pure, pure).real();
  if (std::abs(purity - 1.0) > 1e-9) {
    throw ValidationError("pure_identity_check: state is mixed (purity " + std::to_string(purity) + ")");
  }
  IdentityCheck out;
  for (const auto& row : pset.elements)
    for (const auto& p : row) {
      const double prob = trace_product(p, pure).real();
      out.lhs += prob * prob;
    }
  out.rhs = 1.0 + pset.kappa;
  return out;
}

std::vector<double> setting_distribution(const BipartiteState& state, const MumSet& pset,
                                         const MumSet& qset, int b) {
  require_compatible(state, pset, qset, "setting_distribution");
  const auto d = static_cast<std::size_t>(state.d);
  const auto& prow = pset.elements.at(static_cast<std::size_t>(b - 1));
  const auto& qrow = qset.elements.at(static_cast<std::size_t>(b - 1));
  std::vector<double> probs(d * d);
  for (std::size_t n = 0; n < d; ++n)
    for (std::size_t m = 0; m < d; ++m) {
      const double q = real_checked(local_expectation(state.rho, prow[n], qrow[m]), "setting_distribution");
      if (q < -1e-12) {
        throw InvariantError("setting_distribution: negative probability " + std::to_string(q) +
                             " in setting " + std::to_string(b));
      }
      probs[n * d + m] = std::max(q, 0.0);
    }
  return probs;
}

SimulationResult simulate_counts(const BipartiteState& state, const MumSet& pset, const MumSet& qset,
                                 std::uint64_t shots_per_setting, std::uint64_t seed) {
  if (shots_per_setting < 1) throw ValidationError("simulate_counts: shots_per_setting must be >= 1");
  const auto d = static_cast<std::size_t>(state.d);
  Rng rng(seed);
  SimulationResult out;
  out.shots_per_setting = shots_per_setting;
  const auto shots = static_cast<double>(shots_per_setting);
  double variance = 0.0;

  for (int b = 1; b <= state.d + 1; ++b) {
    const std::vector<double> probs = setting_distribution(state, pset, qset, b);
    std::vector<double> cdf(probs.size());
    std::partial_sum(probs.begin(), probs.end(), cdf.begin());
    const double total = cdf.back();
    if (std::abs(total - 1.0) > 1e-10) {
      throw InvariantError("simulate_counts: setting " + std::to_string(b) + " probabilities sum to " +
                           std::to_string(total));
    }
    std::vector<std::uint64_t> counts(probs.size(), 0);
    for (std::uint64_t k = 0; k < shots_per_setting; ++k) {
      const double u = rng.uniform() * total;
      auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
      if (it == cdf.end()) --it;
      ++counts[static_cast<std::size_t>(it - cdf.begin())];
    }
    std::uint64_t coincidences = 0;
    for (std::size_t n = 0; n < d; ++n) coincidences += counts[n * d + n];
    const double freq = static_cast<double>(coincidences) / shots;
    out.j_estimate += freq;
    variance += freq * (1.0 - freq) / shots;
    out.counts.push_back(std::move(counts));
  }
  out.std_error = std::sqrt(variance);
  return out;
}

}  // namespace mumd
