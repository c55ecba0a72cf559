#include "mumd/cli.hpp"

#include <algorithm>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "mumd/criteria.hpp"
#include "mumd/error.hpp"
#include "mumd/serialize.hpp"
#include "mumd/sweep.hpp"

namespace mumd {

namespace {

using nlohmann::json;

struct StateOptions {
  std::string state_file;
  std::string family;
  int d = 0;
  std::optional<double> alpha;
  std::string p_file;
  std::optional<std::uint64_t> seed;
  int k = 0;
};

struct MumOptions {
  std::string kappa;
  std::optional<double> t;
  bool max_t = false;
  std::string sign = "+";
};

struct LoadedState {
  BipartiteState state;
  std::optional<std::vector<double>> bell_weights;
};

void add_state_options(CLI::App* cmd, StateOptions& o, bool allow_file) {
  if (allow_file) cmd->add_option("--state", o.state_file, "State JSON file");
  cmd->add_option("--family", o.family, "isotropic|bell-diagonal|max-entangled|random-separable");
  cmd->add_option("--d", o.d, "Local dimension");
  cmd->add_option("--alpha", o.alpha, "Isotropic mixing parameter");
  cmd->add_option("--p", o.p_file, "Bell-diagonal weights JSON (d*d numbers, s-major)");
  cmd->add_option("--seed", o.seed, "Seed for random-separable");
  cmd->add_option("--k", o.k, "Product components for random-separable (default d*d)");
}

void add_mum_options(CLI::App* cmd, MumOptions& o) {
  auto* kappa = cmd->add_option("--kappa", o.kappa, "Purity parameter, a number or 'optimal'");
  auto* t = cmd->add_option("--t", o.t, "Construction parameter t");
  auto* max_t = cmd->add_flag("--max-t", o.max_t, "Use the largest PSD-feasible t");
  kappa->excludes(t)->excludes(max_t);
  t->excludes(max_t);
  cmd->add_option("--sign", o.sign, "Root of t for --kappa: + or -");
}

std::vector<double> read_weights(const std::string& path, int d) {
  const json j = read_json_file(path);
  std::vector<double> p;
  auto take = [&](const json& x) {
    if (!x.is_number()) throw ValidationError("malformed payload: Bell weights must be numbers");
    p.push_back(x.get<double>());
  };
  if (!j.is_array()) throw ValidationError("malformed payload: Bell weights must be an array");
  for (const json& row : j) {
    if (row.is_array()) {
      for (const json& x : row) take(x);
    } else {
      take(row);
    }
  }
  if (p.size() != static_cast<std::size_t>(d * d)) {
    throw ValidationError("Bell weights: expected " + std::to_string(d * d) + " values, got " +
                          std::to_string(p.size()));
  }
  return p;
}

LoadedState load_state(const StateOptions& o) {
  if (!o.state_file.empty()) {
    if (!o.family.empty()) throw ValidationError("--state and --family are mutually exclusive");
    LoadedState out{state_from_json(read_json_file(o.state_file)), std::nullopt};
    if (!o.p_file.empty()) out.bell_weights = read_weights(o.p_file, out.state.d);
    return out;
  }
  if (o.family.empty()) throw ValidationError("a state is required: pass --state <file> or --family");
  if (o.d < 2) throw ValidationError("--d must be >= 2");
  const int d = o.d;
  switch (parse_family(o.family)) {
    case Family::Isotropic: {
      if (!o.alpha) throw ValidationError("--family isotropic requires --alpha");
      std::vector<double> p(static_cast<std::size_t>(d * d), (1.0 - *o.alpha) / (d * d));
      p[0] += *o.alpha;
      return {isotropic(d, *o.alpha), p};
    }
    case Family::BellDiagonal: {
      if (o.p_file.empty()) throw ValidationError("--family bell-diagonal requires --p <file>");
      auto p = read_weights(o.p_file, d);
      return {bell_diagonal(d, p), p};
    }
    case Family::MaxEntangled: {
      std::vector<double> p(static_cast<std::size_t>(d * d), 0.0);
      p[0] = 1.0;
      return {max_entangled(d), p};
    }
    case Family::RandomSeparable:
      if (!o.seed) throw ValidationError("--family random-separable requires an explicit --seed");
      return {random_separable(d, o.k > 0 ? o.k : d * d, *o.seed), std::nullopt};
  }
  throw ValidationError("unknown family");
}

MumSet build_pset(int d, const MumOptions& o) {
  if (o.max_t) {
    const OperatorBasis basis = gell_mann_basis(d);
    return build_mums(basis, max_valid_t(basis));
  }
  if (o.t) return build_mums(gell_mann_basis(d), *o.t);
  if (o.sign != "+" && o.sign != "-") throw ValidationError("--sign must be + or -");
  const RootSign sign = o.sign == "+" ? RootSign::Plus : RootSign::Minus;
  double kappa = optimal_kappa(d);
  if (!o.kappa.empty() && o.kappa != "optimal") {
    try {
      std::size_t used = 0;
      kappa = std::stod(o.kappa, &used);
      if (used != o.kappa.size()) throw std::invalid_argument(o.kappa);
    } catch (const std::exception&) {
      throw ValidationError("--kappa must be a number or 'optimal', got '" + o.kappa + "'");
    }
  }
  return gell_mann_mums(d, kappa, sign);
}

MumSet build_qset(const MumSet& pset, Pairing pairing, const LoadedState& loaded) {
  switch (pairing) {
    case Pairing::Self: return pset;
    case Pairing::Conjugate: return conjugate_mums(pset);
    case Pairing::BellChoice:
      if (!loaded.bell_weights) {
        throw ValidationError("--pairing bell-choice needs Bell weights (--p <file> or a Bell-diagonal family)");
      }
      return bell_choice(pset, *loaded.bell_weights).qset;
  }
  throw ValidationError("unknown pairing");
}

void emit(const std::string& payload, const std::string& path, std::ostream& out) {
  if (path.empty()) {
    out << payload;
    if (payload.empty() || payload.back() != '\n') out << '\n';
    return;
  }
  std::ofstream file(path, std::ios::binary);
  if (!file) throw ValidationError("cannot write '" + path + "'");
  file << payload;
  if (payload.empty() || payload.back() != '\n') file << '\n';
}

std::string one_line(std::string s) {
  std::replace(s.begin(), s.end(), '\n', ' ');
  return s;
}

// Returns the exit code for a verify run and writes a JSON report.
int verify_payload(const Payload& payload, double tol, std::ostream& out) {
  json report;
  bool pass = false;
  if (const auto* m = std::get_if<ComplexMatrix>(&payload)) {
    report["type"] = "matrix";
    report["hermiticity_defect"] = hermiticity_defect(*m);
    pass = hermiticity_defect(*m) <= tol;
  } else if (const auto* basis = std::get_if<OperatorBasis>(&payload)) {
    const BasisReport r = verify_orthonormal_basis(*basis, tol);
    report = {{"type", "operator-basis"}, {"d", basis->d()}, {"element_count", r.element_count},
              {"max_trace", r.max_trace}, {"max_hermiticity_defect", r.max_hermiticity_defect},
              {"max_gram_deviation", r.max_gram_deviation}};
    pass = r.pass;
  } else if (const auto* set = std::get_if<BasisSet>(&payload)) {
    const MubReport r = verify_mub(*set, tol);
    report = {{"type", "basis-set"}, {"d", set->d}, {"bases", set->bases.size()},
              {"max_overlap_deviation", r.max_overlap_deviation},
              {"max_unitarity_defect", r.max_unitarity_defect}};
    pass = r.pass;
  } else if (const auto* mums = std::get_if<MumSet>(&payload)) {
    const MumReport r = verify_mums(*mums, tol);
    report = {{"type", "mum-set"},
              {"d", mums->d},
              {"kappa", mums->kappa},
              {"shape_ok", r.shape_ok},
              {"max_trace_violation", r.max_trace_violation},
              {"max_cross_violation", r.max_cross_violation},
              {"max_same_violation", r.max_same_violation},
              {"max_completeness_violation", r.max_completeness_violation},
              {"max_hermiticity_defect", r.max_hermiticity_defect},
              {"min_eigenvalue", r.shape_ok ? r.min_eigenvalue : 0.0},
              {"inferred_kappa", r.inferred_kappa},
              {"kappa_spread", r.kappa_spread}};
    pass = r.pass;
  } else if (const auto* state = std::get_if<BipartiteState>(&payload)) {
    const StateReport r = check_state(*state);
    report = {{"type", "state"},
              {"d", state->d},
              {"dims_ok", r.dims_ok},
              {"hermiticity_defect", r.hermiticity_defect},
              {"trace_error", r.trace_error},
              {"min_eigenvalue", r.min_eigenvalue}};
    pass = r.pass;
  }
  report["tolerance"] = tol;
  report["pass"] = pass;
  out << report.dump() << '\n';
  return pass ? kExitOk : kExitVerification;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Entanglement detection with mutually unbiased measurements", "mumd"};
  app.require_subcommand(1);
  app.fallthrough();
  double tol = 1e-9;
  app.add_option("--tol", tol, "Tolerance threaded to verifiers and verdicts")->capture_default_str();

  std::string out_path;
  int d = 0;

  auto* gen_basis = app.add_subcommand("gen-basis", "Emit the Gell-Mann operator basis with (n,b) labels");
  gen_basis->add_option("--d", d, "Local dimension")->required();
  gen_basis->add_option("--out", out_path, "Output file (default stdout)");

  auto* gen_mub = app.add_subcommand("gen-mub", "Emit d+1 MUBs for prime d");
  gen_mub->add_option("--d", d, "Prime dimension")->required();
  gen_mub->add_option("--out", out_path, "Output file (default stdout)");

  MumOptions mum_opts;
  auto* gen_mums = app.add_subcommand("gen-mums", "Emit a complete MUM set");
  gen_mums->add_option("--d", d, "Local dimension")->required();
  add_mum_options(gen_mums, mum_opts);
  gen_mums->add_option("--out", out_path, "Output file (default stdout)");

  StateOptions state_opts;
  auto* gen_state = app.add_subcommand("gen-state", "Emit a bipartite density matrix");
  add_state_options(gen_state, state_opts, false);
  gen_state->add_option("--out", out_path, "Output file (default stdout)");

  std::string verify_file;
  auto* verify = app.add_subcommand("verify", "Verify a basis, MUB set, MUM set, state or matrix file");
  verify->add_option("file", verify_file, "Payload JSON")->required();

  std::string pairing_name = "conjugate";
  std::string criterion_name = "mum";
  int mub_count = 0;
  auto* detect = app.add_subcommand("detect", "Evaluate a separability criterion on a state");
  add_state_options(detect, state_opts, true);
  add_mum_options(detect, mum_opts);
  detect->add_option("--pairing", pairing_name, "self|conjugate|bell-choice");
  detect->add_option("--criterion", criterion_name, "mum|mub|correlation");
  detect->add_option("--m", mub_count, "Number of MUBs for --criterion mub (default d+1)");
  detect->add_option("--out", out_path, "Output file (default stdout)");

  std::string sweep_family;
  std::string sweep_param;
  std::string sweep_pairing;
  std::string sweep_kappa = "optimal";
  auto* sweep = app.add_subcommand("sweep", "Emit figure data as CSV");
  sweep->add_option("--family", sweep_family, "isotropic|bell-diagonal")->required();
  sweep->add_option("--d", d, "Local dimension")->required();
  sweep->add_option("--param", sweep_param, "start:stop:step")->required();
  sweep->add_option("--kappa", sweep_kappa, "Purity parameter or 'optimal'");
  sweep->add_option("--pairing", sweep_pairing, "self|conjugate|bell-choice");
  sweep->add_option("--out", out_path, "Output CSV (default stdout)");

  std::uint64_t shots = 0;
  std::optional<std::uint64_t> sim_seed;
  auto* simulate = app.add_subcommand("simulate", "Estimate J from simulated measurement counts");
  add_state_options(simulate, state_opts, true);
  add_mum_options(simulate, mum_opts);
  simulate->add_option("--pairing", pairing_name, "self|conjugate|bell-choice");
  simulate->add_option("--shots", shots, "Shots per measurement setting")->required();
  simulate->add_option("--sample-seed", sim_seed, "Sampling seed (defaults to --seed)");
  simulate->add_option("--out", out_path, "Output file (default stdout)");

  auto* oracle = app.add_subcommand("oracle-ppt", "Minimum eigenvalue of the partial transpose");
  add_state_options(oracle, state_opts, true);
  oracle->add_option("--out", out_path, "Output file (default stdout)");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      out << app.help();
      return kExitOk;
    }
    err << "error: usage: " << one_line(e.what()) << '\n';
    return kExitValidation;
  }

  try {
    if (gen_basis->parsed()) {
      emit(to_json(gell_mann_basis(d)), out_path, out);
    } else if (gen_mub->parsed()) {
      emit(to_json(mub_prime(d)), out_path, out);
    } else if (gen_mums->parsed()) {
      emit(to_json(build_pset(d, mum_opts)), out_path, out);
    } else if (gen_state->parsed()) {
      emit(to_json(load_state(state_opts).state), out_path, out);
    } else if (verify->parsed()) {
      return verify_payload(parse_payload(read_json_file(verify_file)), tol, out);
    } else if (detect->parsed()) {
      const LoadedState loaded = load_state(state_opts);
      const int dim = loaded.state.d;
      DetectionReport report;
      if (criterion_name == "mum") {
        const MumSet pset = build_pset(dim, mum_opts);
        report = mum_criterion(loaded.state, pset, build_qset(pset, parse_pairing(pairing_name), loaded), tol);
      } else if (criterion_name == "mub") {
        const Pairing pairing = parse_pairing(pairing_name);
        if (pairing == Pairing::BellChoice) throw ValidationError("--criterion mub supports self|conjugate pairing");
        BasisSet bases = mub_prime(dim);
        const int m = mub_count > 0 ? mub_count : dim + 1;
        if (m < 2 || m > dim + 1) throw ValidationError("--m must lie in 2..d+1");
        bases.bases.resize(static_cast<std::size_t>(m));
        report = mub_criterion(loaded.state, bases,
                               pairing == Pairing::Self ? MubPairing::Self : MubPairing::Conjugate, tol);
      } else if (criterion_name == "correlation") {
        report = correlation_criterion(loaded.state, gell_mann_basis(dim), tol);
      } else {
        throw ValidationError("unknown criterion '" + criterion_name + "'");
      }
      emit(to_json(report), out_path, out);
    } else if (sweep->parsed()) {
      SweepSpec spec;
      spec.family = parse_family(sweep_family);
      spec.d = d;
      spec.grid = parse_grid(sweep_param);
      if (sweep_kappa != "optimal") {
        try {
          std::size_t used = 0;
          spec.kappa = std::stod(sweep_kappa, &used);
          if (used != sweep_kappa.size()) throw std::invalid_argument(sweep_kappa);
        } catch (const std::exception&) {
          throw ValidationError("--kappa must be a number or 'optimal', got '" + sweep_kappa + "'");
        }
      }
      if (sweep_pairing.empty()) {
        spec.pairing = spec.family == Family::BellDiagonal ? Pairing::BellChoice : Pairing::Conjugate;
      } else {
        spec.pairing = parse_pairing(sweep_pairing);
      }
      spec.output_path = out_path;
      emit(emit_figure_data(spec), out_path, out);
    } else if (simulate->parsed()) {
      const std::optional<std::uint64_t> seed = sim_seed ? sim_seed : state_opts.seed;
      if (!seed) throw ValidationError("simulate requires an explicit --seed");
      const LoadedState loaded = load_state(state_opts);
      const MumSet pset = build_pset(loaded.state.d, mum_opts);
      const MumSet qset = build_qset(pset, parse_pairing(pairing_name), loaded);
      const SimulationResult sim = simulate_counts(loaded.state, pset, qset, shots, *seed);
      std::string payload = "{\"j_estimate\":" + format_double(sim.j_estimate) +
                            ",\"std_error\":" + format_double(sim.std_error) +
                            ",\"j_exact\":" + format_double(j_value(loaded.state, pset, qset)) +
                            ",\"kappa\":" + format_double(pset.kappa) + ",\"d\":" + std::to_string(loaded.state.d) +
                            ",\"shots_per_setting\":" + std::to_string(shots) + ",\"seed\":" + std::to_string(*seed) +
                            ",\"counts\":[";
      for (std::size_t b = 0; b < sim.counts.size(); ++b) {
        payload += b ? ",[" : "[";
        for (std::size_t k = 0; k < sim.counts[b].size(); ++k) {
          if (k) payload += ',';
          payload += std::to_string(sim.counts[b][k]);
        }
        payload += ']';
      }
      payload += "]}";
      emit(payload, out_path, out);
    } else if (oracle->parsed()) {
      emit(to_json(ppt_check(load_state(state_opts).state)), out_path, out);
    }
  } catch (const VerificationError& e) {
    err << "error: verification: " << one_line(e.what()) << '\n';
    return kExitVerification;
  } catch (const InvariantError& e) {
    err << "error: invariant: " << one_line(e.what()) << '\n';
    return kExitVerification;
  } catch (const ValidationError& e) {
    err << "error: validation: " << one_line(e.what()) << '\n';
    return kExitValidation;
  } catch (const std::exception& e) {
    err << "error: internal: " << one_line(e.what()) << '\n';
    return 1;
  }
  return kExitOk;
}

}  // namespace mumd
