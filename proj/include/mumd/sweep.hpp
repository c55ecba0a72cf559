#pragma once

#include <cstddef>
#include <optional>
#include <string>

#include "mumd/mum.hpp"

namespace mumd {

enum class Family { Isotropic, BellDiagonal, MaxEntangled, RandomSeparable };
enum class Pairing { Self, Conjugate, BellChoice };

Family parse_family(const std::string& name);
const char* to_string(Family f);
Pairing parse_pairing(const std::string& name);
const char* to_string(Pairing p);

// start:stop:step, inclusive of stop when it lies on the grid.
struct ParamGrid {
  double start = 0.0;
  double stop = 0.0;
  double step = 1.0;

  std::size_t count() const;
  double at(std::size_t i) const;
};

inline constexpr std::size_t kMaxGridPoints = 1'000'000;

ParamGrid parse_grid(const std::string& text);

struct SweepSpec {
  Family family = Family::Isotropic;
  int d = 2;
  ParamGrid grid;
  std::optional<double> kappa;  // nullopt = optimal_kappa(d)
  Pairing pairing = Pairing::Conjugate;
  std::string output_path;      // empty = stdout
};

// Throws ValidationError on an unusable spec.
void validate(const SweepSpec& spec);

// Bell-diagonal sweep weights: p_{0,0} = c, the rest share 1 - c.
std::vector<double> bell_sweep_weights(int d, double c);

// CSV with header family,d,kappa,param,value,bound,verdict,ppt_min_eig and
// one row per grid point in grid order. Isotropic rows carry J under the
// requested pairing; Bell-diagonal rows (param = c, pairing bell-choice)
// carry the guaranteed lower bound c kappa (d+1).
std::string emit_figure_data(const SweepSpec& spec);

}  // namespace mumd
