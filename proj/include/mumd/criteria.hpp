#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "mumd/mub.hpp"
#include "mumd/mum.hpp"
#include "mumd/operator_basis.hpp"
#include "mumd/states.hpp"

namespace mumd {

enum class Verdict { Entangled, Inconclusive };

const char* to_string(Verdict v);

inline constexpr double kVerdictTol = 1e-9;
inline constexpr double kKappaMatchTol = 1e-9;
inline constexpr double kImaginaryTol = 1e-10;

struct DetectionReport {
  std::string criterion;
  double value = 0.0;
  double bound = 0.0;
  Verdict verdict = Verdict::Inconclusive;
  double tolerance = kVerdictTol;
  std::optional<double> kappa;
  int d = 0;
  std::map<std::string, double> parameters;  // state family parameters, m, ...
};

// verdict = entangled iff value > bound + tolerance
DetectionReport make_report(std::string criterion, double value, double bound, double tolerance,
                            std::optional<double> kappa, int d);

// J = sum_b sum_n Tr((P_n^{(b)} (x) Q_n^{(b)}) rho). Both sets must share d
// with the state and have kappa equal within 1e-9.
double j_value(const BipartiteState& state, const MumSet& pset, const MumSet& qset);

// Separable states satisfy J <= 1 + kappa.
DetectionReport mum_criterion(const BipartiteState& state, const MumSet& pset, const MumSet& qset,
                              double tolerance = kVerdictTol);

// (d+1)(alpha kappa + (1-alpha)/d): J of the isotropic state under the
// (P, conj P) pairing.
double j_isotropic_closed(int d, double kappa, double alpha);

// Which vector the second party projects on in the MUB criterion.
// Conjugate: |i_k> (x) |i_k*>, under which the isotropic state gives
// m(alpha + (1-alpha)/d). Self: |i_k> (x) |i_k>.
enum class MubPairing { Conjugate, Self };

double mub_value(const BipartiteState& state, const BasisSet& bases, MubPairing pairing);
// I_m <= 1 + (m-1)/d for separable states. Bases must pass verify_mub at
// 1e-10 and m >= 2.
DetectionReport mub_criterion(const BipartiteState& state, const BasisSet& bases,
                              MubPairing pairing = MubPairing::Conjugate,
                              double tolerance = kVerdictTol);

// sum_i Tr(rho F_i (x) F_i) over the orthonormal basis (Tr F_i F_j = delta).
double correlation_diagonal_sum(const BipartiteState& state, const OperatorBasis& basis);
// Trace of the correlation matrix on the su(d) generators G_i = F_i/sqrt 2
// (Tr G_i G_j = delta/2), i.e. half of correlation_diagonal_sum. In this
// normalization separable states obey Tr(T) <= (d-1)/(2d).
double correlation_matrix_trace(const BipartiteState& state, const OperatorBasis& basis);
double correlation_trace_bound(int d);
DetectionReport correlation_criterion(const BipartiteState& state, const OperatorBasis& basis,
                                      double tolerance = kVerdictTol);

struct IdentityCheck {
  double lhs = 0.0;
  double rhs = 0.0;
};

// lhs = J(rho, P, P); rhs = (d+1)/d + 2(d kappa - 1)/(d-1) Tr(T).
// pset must be build_mums(basis, t) for its recorded t.
IdentityCheck j_correlation_identity(const BipartiteState& state, const MumSet& pset,
                                     const OperatorBasis& basis);

struct BellChoice {
  MumSet qset;
  double c = 0.0;  // max p
  int s = 0;
  int t = 0;
};

// Picks (s*,t*) = argmax p (lexicographically smallest on ties) and returns
// Q = conj(U^dagger P U) with U = U_{s*,t*}. With this Q the (s*,t*) Bell
// component alone contributes c kappa (d+1) to J.
BellChoice bell_choice(const MumSet& pset, std::span<const double> p);

// sum_{b,n} Tr(P_n^{(b)} rho)^2 against 1 + kappa for a pure rho.
IdentityCheck pure_identity_check(const ComplexMatrix& pure, const MumSet& pset);

struct SimulationResult {
  double j_estimate = 0.0;
  double std_error = 0.0;
  std::uint64_t shots_per_setting = 0;
  // counts[b][n*d + n']: outcome n on the first party, n' on the second
  std::vector<std::vector<std::uint64_t>> counts;
};

// Per setting b, samples shots from q_b(n,n') = Tr((P_n (x) Q_n') rho) by
// inverse CDF. J is estimated from the coincidence (n = n') frequencies;
// std_error sums the per-setting binomial variances in quadrature.
SimulationResult simulate_counts(const BipartiteState& state, const MumSet& pset, const MumSet& qset,
                                 std::uint64_t shots_per_setting, std::uint64_t seed);

// Joint outcome distribution of setting b, row-major over (n, n').
std::vector<double> setting_distribution(const BipartiteState& state, const MumSet& pset,
                                         const MumSet& qset, int b);

}  // namespace mumd
