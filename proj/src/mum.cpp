#include "mumd/mum.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "mumd/error.hpp"

namespace mumd {

namespace {

double sqrt_d(int d) { return std::sqrt(static_cast<double>(d)); }

void require_valid_basis(const OperatorBasis& basis, const char* op) {
  const BasisReport report = verify_orthonormal_basis(basis, kDefaultTol);
  if (!report.pass) {
    throw ValidationError(std::string(op) + ": operator basis fails orthonormality (gram " +
                          std::to_string(report.max_gram_deviation) + ", trace " +
                          std::to_string(report.max_trace) + ")");
  }
  if (!basis.has_grid()) throw ValidationError(std::string(op) + ": operator basis has no grid");
}

// F_n^{(b)} for every (b, n), independent of t.
std::vector<std::vector<ComplexMatrix>> direction_operators(const OperatorBasis& basis) {
  const int d = basis.d();
  const double rd = sqrt_d(d);
  std::vector<std::vector<ComplexMatrix>> out;
  for (int b = 1; b <= d + 1; ++b) {
    ComplexMatrix total(static_cast<std::size_t>(d));
    for (int n = 1; n < d; ++n) total += basis.at(n, b);
    std::vector<ComplexMatrix> row;
    for (int n = 1; n < d; ++n) row.push_back(total - (d + rd) * basis.at(n, b));
    row.push_back((1.0 + rd) * total);
    out.push_back(std::move(row));
  }
  return out;
}

struct WorstElement {
  double min_eigenvalue = std::numeric_limits<double>::infinity();
  int n = 0;
  int b = 0;
};

WorstElement most_negative(const std::vector<std::vector<ComplexMatrix>>& elements) {
  WorstElement worst;
  for (std::size_t b = 0; b < elements.size(); ++b)
    for (std::size_t n = 0; n < elements[b].size(); ++n) {
      const double ev = min_eigenvalue(elements[b][n]);
      if (ev < worst.min_eigenvalue) worst = {ev, static_cast<int>(n + 1), static_cast<int>(b + 1)};
    }
  return worst;
}

std::vector<std::vector<ComplexMatrix>> assemble(int d, const std::vector<std::vector<ComplexMatrix>>& directions,
                                                 double t) {
  const ComplexMatrix base = ComplexMatrix::identity(static_cast<std::size_t>(d)) * (1.0 / d);
  std::vector<std::vector<ComplexMatrix>> out;
  for (const auto& row : directions) {
    std::vector<ComplexMatrix> povm;
    for (const auto& f : row) povm.push_back(base + t * f);
    out.push_back(std::move(povm));
  }
  return out;
}

}  // namespace

double kappa_from_t(int d, double t) {
  const double a = 1.0 + sqrt_d(d);
  return 1.0 / d + t * t * a * a * (d - 1);
}

double t_from_kappa(int d, double kappa, RootSign sign) {
  if (d < 2) throw ValidationError("t_from_kappa: d must be >= 2");
  const double lo = 1.0 / d;
  if (!(kappa >= lo && kappa <= 1.0)) {
    throw ValidationError("t_from_kappa: kappa=" + std::to_string(kappa) + " outside (1/d, 1] for d=" +
                          std::to_string(d));
  }
  const double a = 1.0 + sqrt_d(d);
  const double t = std::sqrt((kappa - lo) / (a * a * (d - 1)));
  return sign == RootSign::Plus ? t : -t;
}

double optimal_kappa(int d) {
  if (d < 2) throw ValidationError("optimal_kappa: d must be >= 2");
  return 1.0 / d + 2.0 / (static_cast<double>(d) * d);
}

MumSet build_mums(const OperatorBasis& basis, double t) {
  require_valid_basis(basis, "build_mums");
  const int d = basis.d();
  MumSet set;
  set.d = d;
  set.elements = assemble(d, direction_operators(basis), t);
  set.kappa = kappa_from_t(d, t);
  set.t = t;

  const WorstElement worst = most_negative(set.elements);
  if (worst.min_eigenvalue < -kConstructionPsdTol) {
    throw PositivityError("build_mums: P_" + std::to_string(worst.n) + "^(" + std::to_string(worst.b) +
                              ") has eigenvalue " + std::to_string(worst.min_eigenvalue) + " at t=" +
                              std::to_string(t),
                          worst.min_eigenvalue, worst.n, worst.b);
  }
  return set;
}

MumSet gell_mann_mums(int d, double kappa, RootSign sign) {
  return build_mums(gell_mann_basis(d), t_from_kappa(d, kappa, sign));
}

MumSet optimal_gell_mann_mums(int d) { return gell_mann_mums(d, optimal_kappa(d)); }

double max_valid_t(const OperatorBasis& basis) {
  require_valid_basis(basis, "max_valid_t");
  const int d = basis.d();
  const auto directions = direction_operators(basis);
  auto feasible = [&](double t) {
    return most_negative(assemble(d, directions, t)).min_eigenvalue >= -kConstructionPsdTol;
  };
  double lo = 0.0;
  double hi = 1.0;
  if (feasible(hi)) return hi;
  while (hi - lo > 1e-12) {
    const double mid = 0.5 * (lo + hi);
    (feasible(mid) ? lo : hi) = mid;
  }
  return lo;
}

MumReport verify_mums(const MumSet& set, double tol) {
  MumReport r;
  const int d = set.d;
  const auto nd = static_cast<std::size_t>(d);
  r.shape_ok = d >= 2 && set.elements.size() == nd + 1;
  for (const auto& row : set.elements) {
    if (row.size() != nd) r.shape_ok = false;
    for (const auto& p : row)
      if (p.dim() != nd) r.shape_ok = false;
  }
  if (!r.shape_ok) return r;

  const ComplexMatrix id = ComplexMatrix::identity(nd);
  const double off_target = (1.0 - set.kappa) / (d - 1);
  double purity_sum = 0.0;
  double purity_min = std::numeric_limits<double>::infinity();
  double purity_max = -purity_min;
  r.min_eigenvalue = std::numeric_limits<double>::infinity();

  for (std::size_t b = 0; b < set.elements.size(); ++b) {
    ComplexMatrix total(nd);
    for (std::size_t n = 0; n < nd; ++n) {
      const ComplexMatrix& p = set.elements[b][n];
      total += p;
      r.max_trace_violation = std::max(r.max_trace_violation, std::abs(trace(p) - 1.0));
      const double herm = hermiticity_defect(p);
      r.max_hermiticity_defect = std::max(r.max_hermiticity_defect, herm);
      if (herm <= kHermitianTol) r.min_eigenvalue = std::min(r.min_eigenvalue, min_eigenvalue(p));

      const double purity = trace_product(p, p).real();
      purity_sum += purity;
      purity_min = std::min(purity_min, purity);
      purity_max = std::max(purity_max, purity);
      r.max_same_violation = std::max(r.max_same_violation, std::abs(purity - set.kappa));

      for (std::size_t m = n + 1; m < nd; ++m)
        r.max_same_violation = std::max(
            r.max_same_violation, std::abs(trace_product(p, set.elements[b][m]) - off_target));
      for (std::size_t c = b + 1; c < set.elements.size(); ++c)
        for (const auto& q : set.elements[c])
          r.max_cross_violation =
              std::max(r.max_cross_violation, std::abs(trace_product(p, q) - 1.0 / d));
    }
    r.max_completeness_violation = std::max(r.max_completeness_violation, max_abs_diff(total, id));
  }

  r.inferred_kappa = purity_sum / static_cast<double>(nd * (nd + 1));
  r.kappa_spread = purity_max - purity_min;
  r.kappa_mismatch = std::abs(r.inferred_kappa - set.kappa);
  const bool kappa_in_range = r.inferred_kappa > 1.0 / d && r.inferred_kappa <= 1.0 + tol;
  r.pass = kappa_in_range && r.max_trace_violation <= tol && r.max_cross_violation <= tol &&
           r.max_same_violation <= tol && r.max_completeness_violation <= tol &&
           r.max_hermiticity_defect <= tol && r.min_eigenvalue >= -tol && r.kappa_spread <= tol &&
           r.kappa_mismatch <= tol;
  return r;
}

MumSet conjugate_mums(const MumSet& set) {
  MumSet out = set;
  for (auto& row : out.elements)
    for (auto& p : row) p = p.conjugate();
  return out;
}

MumSet rotate_mums(const MumSet& set, const ComplexMatrix& u) {
  if (u.dim() != static_cast<std::size_t>(set.d)) {
    throw ValidationError("rotate_mums: unitary of dim " + std::to_string(u.dim()) + " for d=" +
                          std::to_string(set.d));
  }
  const double defect = unitarity_defect(u);
  if (defect > kDefaultTol) {
    throw ValidationError("rotate_mums: matrix is not unitary (defect " + std::to_string(defect) + ")");
  }
  MumSet out = set;
  for (auto& row : out.elements)
    for (auto& p : row) p = conjugate_by(u, p);
  return out;
}

}  // namespace mumd
