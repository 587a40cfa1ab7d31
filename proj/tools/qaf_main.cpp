#include <algorithm>
#include <bit>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "qaf/compiler.hpp"
#include "qaf/errors.hpp"
#include "qaf/factoring.hpp"
#include "qaf/formats.hpp"
#include "qaf/gadgets.hpp"
#include "qaf/netlist.hpp"
#include "qaf/solvers.hpp"

namespace {

using json = nlohmann::ordered_json;
using namespace qaf;

void print_json(const json& doc) { std::cout << doc.dump(2) << "\n"; }

json spins_json(const SpinVector& state) {
  json arr = json::array();
  for (Spin s : state) arr.push_back(s.value());
  return arr;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw ParseError("cannot open '" + path + "' for writing");
  out << text;
}

// Flags shared by every command that runs a solver.
struct SolverFlags {
  std::string method = "sa";
  AnnealSchedule schedule;
  std::size_t restarts = 20;
  std::size_t trotter = 16;
  std::uint64_t seed = 1;
  std::size_t max_exact = kDefaultMaxExact;

  void attach(CLI::App* cmd) {
    cmd->add_option("--method", method, "Solver: exact, sa, or sqa")
        ->check(CLI::IsMember({"exact", "sa", "sqa"}))
        ->capture_default_str();
    cmd->add_option("--sweeps", schedule.sweeps, "Annealing sweeps per restart")->capture_default_str();
    cmd->add_option("--restarts", restarts, "Independent SA restarts")->capture_default_str();
    cmd->add_option("--seed", seed, "Seed for the solver RNG streams")->capture_default_str();
    cmd->add_option("--beta0", schedule.beta_start, "Initial inverse temperature")->capture_default_str();
    cmd->add_option("--beta1", schedule.beta_end, "Final inverse temperature")->capture_default_str();
    cmd->add_option("--gamma0", schedule.gamma_start, "Initial transverse field")->capture_default_str();
    cmd->add_option("--gamma1", schedule.gamma_end, "Final transverse field")->capture_default_str();
    cmd->add_option("--trotter", trotter, "Trotter slices for sqa")->capture_default_str();
    cmd->add_option("--max-exact", max_exact, "Free-qubit bound for the exact solver")
        ->envname("QAF_MAX_EXACT")
        ->capture_default_str();
  }

  SolverChoice choice() const {
    if (method == "exact") return SolverChoice::Exact;
    if (method == "sqa") return SolverChoice::SQA;
    return SolverChoice::SA;
  }

  SolverOptions options() const {
    SolverOptions opt;
    opt.method = choice();
    opt.schedule = schedule;
    opt.restarts = restarts;
    opt.trotter_slices = trotter;
    opt.seed = seed;
    opt.max_exact = max_exact;
    return opt;
  }
};

int run_verify_gate(const std::string& gate) {
  if (gate != "nor") throw ContractError("unknown gadget '" + gate + "'");
  const VerificationReport rep = verify_gadget(nor_gadget());
  json doc;
  doc["gate"] = gate;
  doc["passed"] = rep.passed;
  doc["ground_energy"] = rep.ground_energy;
  doc["gap"] = rep.gap;
  doc["ground_states"] = json::array();
  for (const auto& s : rep.ground_states) doc["ground_states"].push_back(spins_json(s));
  doc["mismatches"] = rep.mismatches;
  print_json(doc);
  return rep.passed ? 0 : 1;
}

int run_build(const std::string& kind, std::size_t p, std::size_t q, const CompileOptions& opts,
              const std::string& out_path, const std::string& netlist_path) {
  Circuit circuit;
  if (kind == "half-adder") {
    circuit = half_adder();
  } else if (kind == "full-adder") {
    circuit = full_adder();
  } else {
    circuit = multiplier(p, q);
  }
  const CompiledModel compiled = compile(circuit, opts);

  if (!out_path.empty()) write_file(out_path, emit_ising(compiled.model));
  if (!netlist_path.empty()) write_file(netlist_path, emit_netlist_json(circuit));

  json doc;
  doc["circuit"] = kind;
  doc["nets"] = circuit.net_count();
  doc["gates"] = circuit.gates().size();
  doc["wires"] = circuit.wires().size();
  doc["qubits"] = compiled.stats.qubit_count;
  doc["couplings"] = compiled.stats.coupling_count;
  doc["max_degree"] = compiled.stats.max_degree;
  doc["certified_ground_energy"] = compiled.certified_ground_energy();
  doc["energy_offset"] = compiled.energy_offset;
  print_json(doc);
  return 0;
}

ClampSet parse_clamp_flags(const std::vector<std::string>& flags, ClampSet base) {
  for (const std::string& f : flags) {
    const auto eq = f.find('=');
    if (eq == std::string::npos) throw ParseError("--clamp expects i=+1 or i=-1, got '" + f + "'");
    std::size_t idx = 0;
    try {
      std::size_t used = 0;
      idx = std::stoull(f.substr(0, eq), &used);
      if (used != eq) throw std::invalid_argument("trailing");
    } catch (const std::exception&) {
      throw ParseError("--clamp index must be an unsigned integer, got '" + f + "'");
    }
    const std::string v = f.substr(eq + 1);
    if (v == "+1" || v == "1") {
      base.set(idx, spin_up);
    } else if (v == "-1") {
      base.set(idx, spin_down);
    } else {
      throw ParseError("--clamp value must be +1 or -1, got '" + f + "'");
    }
  }
  return base;
}

SolveResult dispatch_solve(const IsingModel& model, const ClampSet& clamps, const SolverFlags& fl) {
  switch (fl.choice()) {
    case SolverChoice::Exact:
      return solve_exact(model, clamps, fl.max_exact);
    case SolverChoice::SA:
      return solve_sa(model, clamps, fl.schedule, fl.restarts, fl.seed);
    case SolverChoice::SQA:
    default:
      return solve_sqa(model, clamps, fl.schedule, fl.trotter, fl.seed);
  }
}

int run_solve(const std::string& model_path, const SolverFlags& fl,
              const std::vector<std::string>& clamp_flags, const std::string& netlist_path,
              const CompileOptions& compile_opts, std::optional<double> target_energy) {
  const std::string text = read_file(model_path);
  IsingFile file = parse_ising_string(text);
  const ClampSet clamps = parse_clamp_flags(clamp_flags, file.clamps);

  const SolveResult result = dispatch_solve(file.model, clamps, fl);

  json doc;
  doc["method"] = fl.method;
  doc["energy"] = result.best_energy;
  doc["state"] = spins_json(result.best_state);
  if (result.ground_states) {
    doc["num_ground_states"] = result.ground_states->size();
    doc["ground_states"] = json::array();
    for (const auto& s : *result.ground_states) doc["ground_states"].push_back(spins_json(s));
  } else {
    doc["seed"] = result.seed;
    doc["num_restarts_hit_best"] = result.num_restarts_hit_best;
  }

  if (!netlist_path.empty()) {
    const Circuit circuit = parse_netlist_json(read_file(netlist_path));
    const CompiledModel compiled = compile(circuit, compile_opts);
    if (!(compiled.model == file.model))
      throw ContractError("netlist sidecar does not compile to the model in '" + model_path + "'");
    json regs;
    std::vector<std::size_t> in_qubits, out_qubits;
    for (NetId id : circuit.inputs()) in_qubits.push_back(compiled.map.net_to_qubit.at(id));
    for (NetId id : circuit.outputs()) out_qubits.push_back(compiled.map.net_to_qubit.at(id));
    regs["inputs"] = decode_register(result.best_state, in_qubits);
    regs["outputs"] = decode_register(result.best_state, out_qubits);
    doc["registers"] = regs;
  }

  int rc = 0;
  if (target_energy) {
    const bool reached = result.best_energy <= *target_energy + 1e-9;
    doc["target_energy"] = *target_energy;
    doc["target_reached"] = reached;
    if (!reached) rc = 1;
  }
  print_json(doc);
  return rc;
}

int run_multiply(std::uint64_t m, std::uint64_t n, std::size_t pm, std::size_t pn,
                 const SolverOptions& opts) {
  const MultiplyOutcome out = multiply_qa(m, n, pm, pn, opts);
  json doc;
  doc["m"] = m;
  doc["n"] = n;
  doc["product"] = out.product;
  doc["energy"] = out.energy;
  doc["certified_energy"] = out.certified_energy;
  print_json(doc);
  return 0;
}

int run_factor(const FactorProblem& prob) {
  const FactorResult res = factor_qa(prob);
  json doc;
  doc["product"] = prob.product;
  doc["m"] = res.m;
  doc["n"] = res.n;
  doc["energy"] = res.energy;
  doc["verified"] = res.verified;
  doc["attempts_used"] = res.attempts_used;
  print_json(doc);
  return res.verified ? 0 : 1;
}

int run_estimate(std::size_t bits, bool paper_only) {
  const ResourceEstimate est = estimate_resources(bits, /*compile_artifact=*/!paper_only);
  json doc;
  doc["bit_width"] = est.bit_width;
  doc["paper_estimate"] = est.paper_estimate;
  doc["qubits_per_chip"] = est.qubits_per_chip;
  doc["chips"] = est.chips;
  doc["width_m"] = est.width_m;
  doc["width_n"] = est.width_n;
  if (est.artifact_qubits) doc["artifact_qubits"] = *est.artifact_qubits;
  print_json(doc);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"NOR-gadget Ising compiler and annealing toolkit"};
  app.require_subcommand(1);

  // verify-gate
  std::string gate_name;
  CLI::App* verify = app.add_subcommand("verify-gate", "Enumerate a gate gadget against its truth table");
  verify->add_option("gate", gate_name, "Gadget name (nor)")->required();

  // build
  std::string build_kind;
  std::size_t build_p = 2, build_q = 2;
  CompileOptions build_opts;
  std::string build_out, build_netlist;
  CLI::App* build = app.add_subcommand("build", "Compile a circuit into an Ising model file");
  build->add_option("circuit", build_kind, "half-adder, full-adder, or multiplier")
      ->required()
      ->check(CLI::IsMember({"half-adder", "full-adder", "multiplier"}));
  build->add_option("--p", build_p, "Multiplier first-operand width")->capture_default_str();
  build->add_option("--q", build_q, "Multiplier second-operand width")->capture_default_str();
  build->add_option("--max-degree", build_opts.max_degree, "Degree cap enforced with copy qubits")
      ->capture_default_str();
  build->add_flag("--fuse", build_opts.fuse_plain_wires, "Fuse plain-wired nets into shared qubits");
  build->add_option("-o,--output", build_out, "Write the model to this .ising file");
  build->add_option("--netlist", build_netlist, "Write the circuit netlist JSON here");

  // solve
  std::string solve_model;
  SolverFlags solve_flags;
  std::vector<std::string> solve_clamps;
  std::string solve_netlist;
  CompileOptions solve_compile;
  double solve_target = 0.0;
  CLI::App* solve = app.add_subcommand("solve", "Find low-energy states of an Ising model file");
  solve->add_option("model", solve_model, "Path to a .ising model file")->required();
  solve_flags.attach(solve);
  solve->add_option("--clamp", solve_clamps, "Clamp a qubit, e.g. --clamp 3=+1 (overrides file clamps)");
  solve->add_option("--netlist", solve_netlist, "Netlist sidecar for register decoding");
  solve->add_option("--max-degree", solve_compile.max_degree, "Degree cap used when checking the sidecar")
      ->capture_default_str();
  solve->add_flag("--fuse", solve_compile.fuse_plain_wires, "Sidecar was compiled with fused plain wires");
  CLI::Option* target_opt =
      solve->add_option("--target-energy", solve_target, "Exit 1 unless this energy is reached");

  // multiply
  std::uint64_t mul_m = 0, mul_n = 0;
  std::size_t mul_pm = 0, mul_pn = 0;
  SolverFlags mul_flags;
  bool mul_fuse = false;
  CLI::App* multiply = app.add_subcommand("multiply", "Multiply two integers on the compiled circuit");
  multiply->add_option("M", mul_m, "First factor")->required();
  multiply->add_option("N", mul_n, "Second factor")->required();
  multiply->add_option("--pm", mul_pm, "First operand width (default: fit M)");
  multiply->add_option("--pn", mul_pn, "Second operand width (default: fit N)");
  mul_flags.attach(multiply);
  multiply->add_flag("--fuse", mul_fuse, "Compile with fused plain wires");

  // factor
  std::uint64_t fac_p = 0;
  std::size_t fac_pm = 0, fac_pn = 0;
  std::size_t fac_attempts = 50;
  SolverFlags fac_flags;
  bool fac_fuse = false;
  bool force_odd = false, no_force_odd = false;
  CLI::App* factor = app.add_subcommand("factor", "Factor an integer by clamping the product register");
  factor->add_option("P", fac_p, "Composite to factor")->required();
  factor->add_option("--pm", fac_pm, "First factor width (default: derived from P)");
  factor->add_option("--pn", fac_pn, "Second factor width (default: derived from P)");
  factor->add_option("--attempts", fac_attempts, "Annealing attempts before giving up")
      ->capture_default_str();
  fac_flags.attach(factor);
  factor->add_flag("--fuse", fac_fuse, "Compile with fused plain wires");
  CLI::Option* fo = factor->add_flag("--force-odd", force_odd, "Clamp both factor LSBs to 1");
  factor->add_flag("--no-force-odd", no_force_odd, "Keep factor LSBs free even for odd P")->excludes(fo);

  // estimate
  std::size_t est_bits = 0;
  bool est_paper_only = false;
  CLI::App* estimate = app.add_subcommand("estimate", "Qubit and chip budget for factoring p-bit numbers");
  estimate->add_option("--bits", est_bits, "Target number size in bits")->required();
  estimate->add_flag("--paper-only", est_paper_only, "Skip compiling the artifact multiplier");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (app.got_subcommand(verify)) return run_verify_gate(gate_name);
    if (app.got_subcommand(build))
      return run_build(build_kind, build_p, build_q, build_opts, build_out, build_netlist);
    if (app.got_subcommand(solve)) {
      std::optional<double> target;
      if (target_opt->count() > 0) target = solve_target;
      return run_solve(solve_model, solve_flags, solve_clamps, solve_netlist, solve_compile, target);
    }
    if (app.got_subcommand(multiply)) {
      SolverOptions opts = mul_flags.options();
      opts.fuse_plain_wires = mul_fuse;
      const std::size_t pm = mul_pm ? mul_pm : std::max<std::size_t>(1, std::bit_width(mul_m));
      const std::size_t pn = mul_pn ? mul_pn : std::max<std::size_t>(1, std::bit_width(mul_n));
      return run_multiply(mul_m, mul_n, pm, pn, opts);
    }
    if (app.got_subcommand(factor)) {
      FactorProblem prob;
      prob.product = fac_p;
      prob.width_m = fac_pm;
      prob.width_n = fac_pn;
      prob.attempts = fac_attempts;
      prob.force_odd = force_odd ? true : (no_force_odd ? false : fac_p % 2 == 1);
      prob.solver = fac_flags.options();
      prob.solver.fuse_plain_wires = fac_fuse;
      return run_factor(prob);
    }
    if (app.got_subcommand(estimate)) return run_estimate(est_bits, est_paper_only);
  } catch (const NonConvergenceError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const UnsatisfiableError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
