// Copyright 2026 The nvpf Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "nvpf/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <cstdlib>
#include <ctime>
#include <filesystem>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "nvpf/ga_optimizer.hpp"
#include "nvpf/grover_targets.hpp"
#include "nvpf/paperlab.hpp"
#include "nvpf/pulsesim.hpp"
#include "nvpf/serialization.hpp"

namespace nvpf::cli {

namespace fs = std::filesystem;

namespace {

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string utc_now() {
  const std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

struct RunManifest {
  RunManifest(std::string cmd, std::string config, std::optional<std::uint64_t> s = std::nullopt)
      : command(std::move(cmd)), config_path(std::move(config)), seed(s) {}

  std::string command;
  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::string started = utc_now();
  std::vector<std::string> output_paths;

  void write(const fs::path& main_output) const {
    Json j{{"command", command},
           {"config_path", config_path},
           {"seed", seed ? Json(*seed) : Json(nullptr)},
           {"started", started},
           {"finished", utc_now()},
           {"output_paths", output_paths}};
    fs::path path = main_output;
    path += ".manifest.json";
    write_file_atomic(path, j.dump(2) + "\n");
  }
};

// seq.json -> seq.trace.csv
fs::path sibling(const fs::path& main, const std::string& suffix) {
  fs::path p = main;
  p.replace_extension();
  p += suffix;
  return p;
}

struct Grid {
  double lo;
  double hi;
  int n;
};

Grid parse_grid(const std::string& s) {
  const auto a = s.find(':');
  const auto b = a == std::string::npos ? a : s.find(':', a + 1);
  if (b == std::string::npos) throw UsageError("grid must be lo:hi:n");
  Grid g{};
  try {
    std::size_t used = 0;
    g.lo = std::stod(s.substr(0, a));
    g.hi = std::stod(s.substr(a + 1, b - a - 1));
    g.n = std::stoi(s.substr(b + 1), &used);
    if (used != s.size() - b - 1) throw UsageError("");
  } catch (const std::exception&) {
    throw UsageError("grid must be lo:hi:n");
  }
  if (g.n < 1) throw UsageError("grid is empty");
  if (!(g.lo <= g.hi)) throw UsageError("grid needs lo <= hi");
  return g;
}

std::vector<double> grid_points(const Grid& g) {
  std::vector<double> v(g.n);
  for (int k = 0; k < g.n; ++k)
    v[k] = g.n == 1 ? g.lo : g.lo + (g.hi - g.lo) * k / static_cast<double>(g.n - 1);
  return v;
}

RobustSampling parse_robust(const std::string& s) {
  std::stringstream ss(s);
  std::string part;
  std::vector<std::string> parts;
  while (std::getline(ss, part, ',')) parts.push_back(part);
  if (parts.size() != 3) throw UsageError("--robust must be lo,hi,k");
  RobustSampling r;
  try {
    r.range.lo_mhz = std::stod(parts[0]);
    r.range.hi_mhz = std::stod(parts[1]);
    r.n_samples = std::stoi(parts[2]);
  } catch (const std::exception&) {
    throw UsageError("--robust must be lo,hi,k");
  }
  if (!(r.range.lo_mhz > 0 && r.range.lo_mhz <= r.range.hi_mhz) || r.n_samples < 1)
    throw UsageError("--robust needs 0 < lo <= hi and k >= 1");
  return r;
}

SpinRegister register_for(const TargetFile& t) {
  SpinRegister reg = default_register(t.target);
  if (t.couplings) reg.couplings = *t.couplings;
  return reg;
}

// Register of a sequence file: the target's when present, otherwise one carbon.
SpinRegister register_for(const SequenceFile& f) {
  return f.target ? register_for(*f.target) : SpinRegister{};
}

std::string basis_label(int index, int n_qubits) {
  std::string s(n_qubits, '0');
  for (int q = 0; q < n_qubits; ++q)
    if (index & (1 << (n_qubits - 1 - q))) s[q] = '1';
  return s;
}

DensityMatrix parse_initial(const std::string& spec, int dim) {
  int n_qubits = 0;
  while ((1 << n_qubits) < dim) ++n_qubits;
  if (spec == "mixed") return maximally_mixed(dim);
  if (spec.rfind("prepared:", 0) == 0) {
    if (dim != 4) throw UsageError("prepared:p,c needs a two-qubit register");
    const auto comma = spec.find(',');
    if (comma == std::string::npos) throw UsageError("prepared state must be prepared:p,c");
    try {
      return initial_state_model(std::stod(spec.substr(9, comma - 9)),
                                 std::stod(spec.substr(comma + 1)));
    } catch (const std::invalid_argument& e) {
      throw UsageError(std::string("prepared state: ") + e.what());
    }
  }
  if (static_cast<int>(spec.size()) == n_qubits &&
      spec.find_first_not_of("01") == std::string::npos) {
    int index = 0;
    for (char c : spec) index = 2 * index + (c - '0');
    return basis_state(dim, index);
  }
  throw UsageError("--initial must be a " + std::to_string(n_qubits) +
                   "-bit basis label, 'mixed' or 'prepared:p,c'");
}

std::string matrix_csv(const DensityMatrix& rho, bool imag) {
  std::string out;
  for (Eigen::Index r = 0; r < rho.rows(); ++r) {
    for (Eigen::Index c = 0; c < rho.cols(); ++c) {
      if (c) out += ",";
      out += format_number(imag ? rho(r, c).imag() : rho(r, c).real());
    }
    out += "\n";
  }
  return out;
}

std::uint64_t resolve_seed(const std::optional<std::uint64_t>& flag, std::uint64_t fallback) {
  if (flag) return *flag;
  if (const char* env = std::getenv("NVPF_SEED"); env && *env) {
    try {
      std::size_t used = 0;
      const unsigned long long v = std::stoull(env, &used);
      if (used == std::string(env).size()) return v;
    } catch (const std::exception&) {
    }
    throw UsageError("NVPF_SEED must be a non-negative integer");
  }
  return fallback;
}

// --- verify -----------------------------------------------------------------

struct VerifyArgs {
  std::vector<std::string> entries;
  bool all = false;
  int rabi_samples = 5;
  std::string out = "verification.csv";
};

int cmd_verify(const VerifyArgs& a, std::ostream& out) {
  if (a.all == !a.entries.empty()) throw UsageError("give exactly one of --entry or --all");
  if (a.rabi_samples < 1) throw UsageError("--rabi-samples must be >= 1");
  std::vector<CatalogEntry> selected;
  if (a.all) {
    selected = builtin_catalog();
  } else {
    for (const auto& name : a.entries) {
      const CatalogEntry* e = find_entry(name);
      if (!e) throw UsageError("unknown catalog entry: " + name);
      selected.push_back(*e);
    }
  }
  RunManifest m{"verify", ""};
  VerifyTolerances tol;
  tol.rabi_samples = a.rabi_samples;
  const auto rows = verify_catalog(selected, tol);
  write_file_atomic(a.out, verification_csv(rows));
  m.output_paths.push_back(a.out);
  m.write(a.out);

  bool all_pass = true;
  for (const auto& r : rows) {
    out << (r.pass ? "PASS " : "FAIL ") << r.name << " computed=" << format_number(r.computed)
        << " published=" << format_number(r.published) << "\n";
    all_pass = all_pass && r.pass;
  }
  return all_pass ? kOk : kQualityMissed;
}

// --- optimize ---------------------------------------------------------------

struct OptimizeArgs {
  std::string target;
  int pulses = 4;
  std::string robust;
  std::string ga;
  std::optional<std::uint64_t> seed;
  double rabi = 0.5;
  std::string out = "sequence.json";
};

int cmd_optimize(const OptimizeArgs& a, std::ostream& out) {
  if (a.pulses < 1) throw UsageError("--pulses must be >= 1");
  if (!(a.rabi > 0)) throw UsageError("--rabi must be positive");
  const TargetFile target = target_from_json(read_json_file(a.target));
  GAConfig config = a.ga.empty() ? GAConfig{} : ga_config_from_json(read_json_file(a.ga));
  config.seed = resolve_seed(a.seed, config.seed);
  std::optional<RobustSampling> robust;
  if (!a.robust.empty()) robust = parse_robust(a.robust);

  RunManifest m{"optimize", a.ga.empty() ? a.target : a.ga, config.seed};
  const SpinRegister reg = register_for(target);
  const Objective objective = make_sequence_objective(target.target, a.pulses, reg, a.rabi, robust);
  const OptimizationResult result =
      optimize(objective, ParameterBounds::uniform(a.pulses), config);

  SequenceFile best;
  best.sequence = decode_params(result.best_params, a.pulses, a.rabi);
  if (robust) best.sequence.rabi_range_mhz = robust->range;
  best.name = target.target.name;
  best.target = target;

  const fs::path seq_path = a.out;
  const fs::path trace_path = sibling(seq_path, ".trace.csv");
  const fs::path result_path = sibling(seq_path, ".result.json");
  write_file_atomic(seq_path, sequence_file_to_json(best).dump(2) + "\n");
  write_file_atomic(trace_path, trace_csv(result));
  write_file_atomic(result_path, optimization_result_to_json(result).dump(2) + "\n");
  m.output_paths = {seq_path.string(), trace_path.string(), result_path.string()};
  m.write(seq_path);

  out << "best_fitness=" << format_number(result.best_fitness)
      << " generations=" << result.generations_run << "\n";
  return result.best_fitness >= config.target_fitness ? kOk : kQualityMissed;
}

// --- simulate ---------------------------------------------------------------

struct SimulateArgs {
  std::string seq;
  std::string initial;
  std::optional<double> rabi;
  bool density = false;
  std::string out = "populations.csv";
};

int cmd_simulate(const SimulateArgs& a, std::ostream& out) {
  const SequenceFile f = sequence_file_from_json(read_json_file(a.seq));
  if (a.rabi && !(*a.rabi > 0)) throw UsageError("--rabi must be positive");
  const SpinRegister reg = register_for(f);
  const int dim = reg.dim();
  int n_qubits = 0;
  while ((1 << n_qubits) < dim) ++n_qubits;
  const DensityMatrix rho0 =
      a.initial.empty() ? basis_state(dim, 0) : parse_initial(a.initial, dim);

  RunManifest m{"simulate", a.seq};
  const DensityMatrix rho = evolve_state(f.sequence, rho0, reg.hamiltonian(), reg.drive(), a.rabi);
  const auto p = populations(rho);
  std::string csv = "state,population\n";
  for (int k = 0; k < dim; ++k) csv += basis_label(k, n_qubits) + "," + format_number(p[k]) + "\n";
  write_file_atomic(a.out, csv);
  m.output_paths.push_back(a.out);
  if (a.density) {
    const fs::path re = sibling(a.out, ".rho_re.csv");
    const fs::path im = sibling(a.out, ".rho_im.csv");
    write_file_atomic(re, matrix_csv(rho, false));
    write_file_atomic(im, matrix_csv(rho, true));
    m.output_paths.push_back(re.string());
    m.output_paths.push_back(im.string());
  }
  m.write(a.out);
  for (int k = 0; k < dim; ++k) out << basis_label(k, n_qubits) << " " << format_number(p[k]) << "\n";
  return kOk;
}

// --- sweep ------------------------------------------------------------------

struct SweepArgs {
  std::string kind;
  std::string seq;
  std::string grid;
  std::string target;
  std::string out = "sweep.csv";
};

int cmd_sweep(const SweepArgs& a, std::ostream& out) {
  const Grid g = parse_grid(a.grid);
  const SequenceFile f = sequence_file_from_json(read_json_file(a.seq));
  const auto xs = grid_points(g);
  std::vector<std::pair<double, double>> rows;

  if (a.kind == "rabi") {
    if (!(g.lo > 0)) throw UsageError("Rabi grid must be positive");
    std::optional<TargetFile> t = f.target;
    if (!a.target.empty()) t = target_from_json(read_json_file(a.target));
    if (!t) throw UsageError("rabi sweep needs a target (in the sequence file or --target)");
    const SpinRegister reg = register_for(*t);
    const OperatorMatrix u_t = target_unitary(t->target);
    if (u_t.rows() != reg.dim()) throw UsageError("target does not match the register");
    const SequencePropagator prop = reg.propagator();
    for (double x : xs) rows.emplace_back(x, gate_fidelity(prop.unitary(f.sequence, x), u_t));
  } else if (a.kind == "polarization") {
    try {
      rows = polarization_sweep(f.sequence, xs);
    } catch (const std::invalid_argument& e) {
      throw UsageError(e.what());
    }
  } else {
    throw UsageError("--kind must be rabi or polarization");
  }

  RunManifest m{"sweep", a.seq};
  std::string csv = "x,y\n";
  for (const auto& [x, y] : rows) csv += format_number(x) + "," + format_number(y) + "\n";
  write_file_atomic(a.out, csv);
  m.output_paths.push_back(a.out);
  m.write(a.out);
  out << rows.size() << " rows written to " << a.out << "\n";
  return kOk;
}

// --- spectrum ---------------------------------------------------------------

struct SpectrumArgs {
  std::string transition = "minus";
  double nu_d = 5.0;
  int points = 4096;
  double dwell = 0.05;
  std::string out = "spectrum.csv";
};

int cmd_spectrum(const SpectrumArgs& a, std::ostream& out) {
  Transition t;
  if (a.transition == "minus") {
    t = Transition::ZeroToMinus;
  } else if (a.transition == "plus") {
    t = Transition::ZeroToPlus;
  } else {
    throw UsageError("--transition must be minus or plus");
  }
  std::vector<SpectrumPoint> spec;
  try {
    spec = fid_spectrum(t, a.nu_d, a.dwell, a.points);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  RunManifest m{"spectrum", ""};
  std::string csv = "frequency_mhz,amplitude\n";
  for (const auto& p : spec) csv += format_number(p.frequency_mhz) + "," + format_number(p.amplitude) + "\n";
  write_file_atomic(a.out, csv);
  m.output_paths.push_back(a.out);
  m.write(a.out);
  out << spec.size() << " bins written to " << a.out << "\n";
  return kOk;
}

// --- export-catalog ---------------------------------------------------------

int cmd_export(const std::string& dir, std::ostream& out) {
  fs::create_directories(dir);
  for (const auto& e : builtin_catalog()) {
    const fs::path p = fs::path(dir) / (e.name + ".json");
    write_file_atomic(p, catalog_entry_to_json(e).dump(2) + "\n");
  }
  out << builtin_catalog().size() << " entries written to " << dir << "\n";
  return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Pulse-sequence design and verification for NV-center registers", "nvpf"};
  app.require_subcommand(1);

  VerifyArgs verify;
  auto* v = app.add_subcommand("verify", "Check the built-in tables against their published fidelities");
  v->add_option("--entry", verify.entries, "Catalog entry name (repeatable)");
  v->add_flag("--all", verify.all, "Verify every entry");
  v->add_option("--rabi-samples", verify.rabi_samples, "Samples for robust averages");
  v->add_option("--out", verify.out, "Verification CSV");

  OptimizeArgs opt;
  auto* o = app.add_subcommand("optimize", "Search for a pulse sequence with the genetic algorithm");
  o->add_option("--target", opt.target, "Target JSON")->required();
  o->add_option("--pulses", opt.pulses, "Number of pulses");
  o->add_option("--robust", opt.robust, "Average over Rabi lo,hi,k");
  o->add_option("--ga", opt.ga, "GA config JSON");
  o->add_option("--seed", opt.seed, "RNG seed (overrides NVPF_SEED and the config)");
  o->add_option("--rabi", opt.rabi, "Nominal Rabi frequency in MHz");
  o->add_option("--out", opt.out, "Best sequence JSON");

  SimulateArgs sim;
  auto* s = app.add_subcommand("simulate", "Evolve a state through a sequence");
  s->add_option("--seq", sim.seq, "Sequence JSON")->required();
  s->add_option("--initial", sim.initial, "Basis label, 'mixed' or 'prepared:p,c'");
  s->add_option("--rabi", sim.rabi, "Rabi frequency override in MHz");
  s->add_flag("--density", sim.density, "Also write the density matrix");
  s->add_option("--out", sim.out, "Populations CSV");

  SweepArgs sw;
  auto* w = app.add_subcommand("sweep", "Sweep Rabi frequency or 14N polarization");
  w->add_option("--kind", sw.kind, "rabi or polarization")->required();
  w->add_option("--seq", sw.seq, "Sequence JSON")->required();
  w->add_option("--grid", sw.grid, "lo:hi:n")->required();
  w->add_option("--target", sw.target, "Target JSON for rabi sweeps");
  w->add_option("--out", sw.out, "Output CSV");

  SpectrumArgs sp;
  auto* p = app.add_subcommand("spectrum", "Simulated FID spectrum");
  p->add_option("--transition", sp.transition, "minus or plus");
  p->add_option("--nu-d", sp.nu_d, "Phase-ramp frequency in MHz");
  p->add_option("--points", sp.points, "Number of time points (power of two >= 256)");
  p->add_option("--dwell", sp.dwell, "Time step in microseconds");
  p->add_option("--out", sp.out, "Output CSV");

  std::string export_dir = "catalog";
  auto* x = app.add_subcommand("export-catalog", "Write every catalog entry as a sequence JSON");
  x->add_option("--dir", export_dir, "Output directory");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(std::move(reversed));
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kUsageError;
  }

  try {
    if (*v) return cmd_verify(verify, out);
    if (*o) return cmd_optimize(opt, out);
    if (*s) return cmd_simulate(sim, out);
    if (*w) return cmd_sweep(sw, out);
    if (*p) return cmd_spectrum(sp, out);
    if (*x) return cmd_export(export_dir, out);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kUsageError;
  }
  return kUsageError;
}

int run(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return run(args, std::cout, std::cerr);
}

}  // namespace nvpf::cli
