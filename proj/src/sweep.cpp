#include "mumd/sweep.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "mumd/criteria.hpp"
#include "mumd/error.hpp"
#include "mumd/serialize.hpp"
#include "mumd/states.hpp"

namespace mumd {

Family parse_family(const std::string& name) {
  if (name == "isotropic") return Family::Isotropic;
  if (name == "bell-diagonal") return Family::BellDiagonal;
  if (name == "max-entangled") return Family::MaxEntangled;
  if (name == "random-separable") return Family::RandomSeparable;
  throw ValidationError("unknown state family '" + name + "'");
}

const char* to_string(Family f) {
  switch (f) {
    case Family::Isotropic: return "isotropic";
    case Family::BellDiagonal: return "bell-diagonal";
    case Family::MaxEntangled: return "max-entangled";
    case Family::RandomSeparable: return "random-separable";
  }
  return "?";
}

Pairing parse_pairing(const std::string& name) {
  if (name == "self") return Pairing::Self;
  if (name == "conjugate") return Pairing::Conjugate;
  if (name == "bell-choice") return Pairing::BellChoice;
  throw ValidationError("unknown pairing '" + name + "'");
}

const char* to_string(Pairing p) {
  switch (p) {
    case Pairing::Self: return "self";
    case Pairing::Conjugate: return "conjugate";
    case Pairing::BellChoice: return "bell-choice";
  }
  return "?";
}

std::size_t ParamGrid::count() const {
  if (!(step > 0.0) || !(start <= stop) || !std::isfinite(start) || !std::isfinite(stop)) return 0;
  const double span = (stop - start) / step;
  if (span > static_cast<double>(kMaxGridPoints)) return kMaxGridPoints + 1;
  // Absorb rounding in (stop - start)/step, e.g. 1/0.01 = 99.999...
  return static_cast<std::size_t>(std::floor(span + 1e-9)) + 1;
}

double ParamGrid::at(std::size_t i) const {
  return std::min(start + static_cast<double>(i) * step, stop);
}

ParamGrid parse_grid(const std::string& text) {
  const auto first = text.find(':');
  const auto second = first == std::string::npos ? std::string::npos : text.find(':', first + 1);
  if (second == std::string::npos || text.find(':', second + 1) != std::string::npos) {
    throw ValidationError("grid must be start:stop:step, got '" + text + "'");
  }
  ParamGrid g;
  try {
    std::size_t used = 0;
    const auto parse = [&](const std::string& part) {
      const double v = std::stod(part, &used);
      if (used != part.size()) throw std::invalid_argument(part);
      return v;
    };
    g.start = parse(text.substr(0, first));
    g.stop = parse(text.substr(first + 1, second - first - 1));
    g.step = parse(text.substr(second + 1));
  } catch (const std::exception&) {
    throw ValidationError("grid must be start:stop:step with numeric parts, got '" + text + "'");
  }
  return g;
}

void validate(const SweepSpec& spec) {
  if (spec.d < 2) throw ValidationError("sweep: d must be >= 2");
  if (!(spec.grid.step > 0.0)) throw ValidationError("sweep: step must be > 0");
  if (!(spec.grid.start <= spec.grid.stop)) throw ValidationError("sweep: start must be <= stop");
  if (spec.grid.count() > kMaxGridPoints) throw ValidationError("sweep: more than 1e6 grid points");
  switch (spec.family) {
    case Family::Isotropic:
      if (spec.grid.start < 0.0 || spec.grid.stop > 1.0) {
        throw ValidationError("sweep: isotropic alpha grid must lie in [0,1]");
      }
      break;
    case Family::BellDiagonal: {
      const double lo = 1.0 / (static_cast<double>(spec.d) * spec.d);
      if (spec.grid.start < lo - 1e-15 || spec.grid.stop > 1.0) {
        throw ValidationError("sweep: Bell-diagonal c grid must lie in [1/d^2, 1]");
      }
      if (spec.pairing != Pairing::BellChoice) {
        throw ValidationError("sweep: Bell-diagonal sweeps use --pairing bell-choice");
      }
      break;
    }
    default:
      throw ValidationError(std::string("sweep: family '") + to_string(spec.family) + "' cannot be swept");
  }
}

std::vector<double> bell_sweep_weights(int d, double c) {
  const auto cells = static_cast<std::size_t>(d * d);
  std::vector<double> p(cells, (1.0 - c) / static_cast<double>(cells - 1));
  p[0] = c;
  return p;
}

std::string emit_figure_data(const SweepSpec& spec) {
  validate(spec);
  const int d = spec.d;
  const double kappa = spec.kappa.value_or(optimal_kappa(d));
  const MumSet pset = gell_mann_mums(d, kappa);
  const MumSet conj = conjugate_mums(pset);

  std::string csv = "family,d,kappa,param,value,bound,verdict,ppt_min_eig\n";
  const std::size_t count = spec.grid.count();
  for (std::size_t i = 0; i < count; ++i) {
    const double param = spec.grid.at(i);
    DetectionReport report;
    double ppt_min = 0.0;
    if (spec.family == Family::Isotropic) {
      const BipartiteState state = isotropic(d, param);
      const MumSet* qset = &pset;
      MumSet chosen;
      if (spec.pairing == Pairing::Conjugate) {
        qset = &conj;
      } else if (spec.pairing == Pairing::BellChoice) {
        // The isotropic state is Bell-diagonal with its weight peaked on (0,0).
        std::vector<double> p(static_cast<std::size_t>(d * d), (1.0 - param) / (d * d));
        p[0] += param;
        chosen = bell_choice(pset, p).qset;
        qset = &chosen;
      }
      report = mum_criterion(state, pset, *qset);
      ppt_min = ppt_check(state).min_eigenvalue;
    } else {
      const auto p = bell_sweep_weights(d, param);
      const double c = *std::max_element(p.begin(), p.end());
      report = make_report("mum-bell-lower-bound", c * kappa * (d + 1), 1.0 + kappa, kVerdictTol, kappa, d);
      ppt_min = ppt_check(bell_diagonal(d, p)).min_eigenvalue;
    }
    csv += std::string(to_string(spec.family)) + ',' + std::to_string(d) + ',' + format_double(kappa) + ',' +
           format_double(param) + ',' + format_double(report.value) + ',' + format_double(report.bound) + ',' +
           to_string(report.verdict) + ',' + format_double(ppt_min) + '\n';
  }
  return csv;
}

}  // namespace mumd
