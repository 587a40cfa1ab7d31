#include "qaf/factoring.hpp"

#include <algorithm>
#include <bit>
#include <string>

namespace qaf {

namespace {

constexpr double kEnergyTol = 1e-9;

std::size_t bit_length(std::uint64_t v) { return static_cast<std::size_t>(std::bit_width(v)); }

SolveResult run_solver(const IsingModel& model, const ClampSet& clamps,
                       const SolverOptions& options, std::uint64_t seed) {
  switch (options.method) {
    case SolverChoice::Exact:
      return solve_exact(model, clamps, options.max_exact);
    case SolverChoice::SA:
      return solve_sa(model, clamps, options.schedule, options.restarts, seed);
    case SolverChoice::SQA:
      return solve_sqa(model, clamps, options.schedule, options.trotter_slices, seed);
  }
  throw ContractError("run_solver: unknown solver choice");
}

CompiledModel compile_multiplier(std::size_t width_m, std::size_t width_n,
                                 const SolverOptions& options) {
  CompileOptions copt;
  copt.max_degree = options.max_degree;
  copt.fuse_plain_wires = options.fuse_plain_wires;
  return compile(multiplier(width_m, width_n), copt);
}

}  // namespace

FactoringWidths factoring_widths(std::size_t p) {
  if (p < 1) throw ContractError("factoring_widths: bit width must be at least 1");
  return {(p + 1) / 2 + 1, p - 1};
}

MultiplyOutcome multiply_qa(std::uint64_t m, std::uint64_t n, std::size_t width_m,
                            std::size_t width_n, const SolverOptions& options) {
  if (width_m < 1 || width_n < 1)
    throw ContractError("multiply_qa: register widths must be at least 1");
  if (width_m < 64 && (m >> width_m) != 0)
    throw ContractError("multiply_qa: m = " + std::to_string(m) + " does not fit in " +
                        std::to_string(width_m) + " bits");
  if (width_n < 64 && (n >> width_n) != 0)
    throw ContractError("multiply_qa: n = " + std::to_string(n) + " does not fit in " +
                        std::to_string(width_n) + " bits");

  const CompiledModel compiled = compile_multiplier(width_m, width_n, options);
  ClampSet clamps;
  const auto& in = compiled.map.input_qubits;
  const std::vector<std::size_t> m_reg(in.begin(), in.begin() + static_cast<std::ptrdiff_t>(width_m));
  const std::vector<std::size_t> n_reg(in.begin() + static_cast<std::ptrdiff_t>(width_m), in.end());
  encode_register(clamps, m, m_reg);
  encode_register(clamps, n, n_reg);

  const SolveResult sol = run_solver(compiled.model, clamps, options, options.seed);
  const double certified = compiled.certified_ground_energy();
  if (sol.best_energy > certified + kEnergyTol)
    throw NonConvergenceError("multiply_qa: best energy " + std::to_string(sol.best_energy) +
                              " misses the certified ground energy " + std::to_string(certified));

  MultiplyOutcome out;
  out.product = decode_register(sol.best_state, compiled.map.output_qubits);
  out.energy = sol.best_energy;
  out.certified_energy = certified;
  return out;
}

namespace {

// Clamps shared by the inverse problems: full product register, plus both
// factor LSBs when odd-only search is requested.
ClampSet inverse_clamps(const CompiledModel& compiled, std::uint64_t product,
                        std::size_t width_m, bool force_odd) {
  ClampSet clamps;
  encode_register(clamps, product, compiled.map.output_qubits);
  if (force_odd) {
    clamps.set(compiled.map.input_qubits.at(0), spin_up);
    clamps.set(compiled.map.input_qubits.at(width_m), spin_up);
  }
  return clamps;
}

struct DecodedPair {
  std::uint64_t m = 0;
  std::uint64_t n = 0;
};

DecodedPair decode_factors(const CompiledModel& compiled, const SpinVector& state,
                           std::size_t width_m) {
  const auto& in = compiled.map.input_qubits;
  const std::vector<std::size_t> m_reg(in.begin(), in.begin() + static_cast<std::ptrdiff_t>(width_m));
  const std::vector<std::size_t> n_reg(in.begin() + static_cast<std::ptrdiff_t>(width_m), in.end());
  DecodedPair d;
  d.m = decode_register(state, m_reg);
  d.n = decode_register(state, n_reg);
  return d;
}

}  // namespace

FactorResult factor_qa(const FactorProblem& prob) {
  if (prob.product < 4) throw ContractError("factor_qa: product must be at least 4");
  if (prob.attempts < 1) throw ContractError("factor_qa: attempts must be at least 1");

  std::size_t width_m = prob.width_m, width_n = prob.width_n;
  if (width_m == 0 && width_n == 0) {
    const FactoringWidths w = factoring_widths(bit_length(prob.product));
    width_m = w.width_m;
    width_n = w.width_n;
  }
  if (width_m < 2 || width_n < 2)
    throw ContractError("factor_qa: widths must be at least 2 for nontrivial factors");
  if (width_m + width_n < bit_length(prob.product))
    throw ContractError("factor_qa: product does not fit in width_m + width_n bits");

  const CompiledModel compiled = compile_multiplier(width_m, width_n, prob.solver);
  const ClampSet clamps = inverse_clamps(compiled, prob.product, width_m, prob.force_odd);
  const double certified = compiled.certified_ground_energy();

  if (prob.solver.method == SolverChoice::Exact) {
    // One deterministic attempt; the full ground manifold either contains a
    // nontrivial factorization or proves there is none.
    const SolveResult sol = solve_exact(compiled.model, clamps, prob.solver.max_exact);
    if (sol.best_energy > certified + kEnergyTol)
      throw UnsatisfiableError("factor_qa: no representable factorization of " +
                               std::to_string(prob.product) + " in widths (" +
                               std::to_string(width_m) + ", " + std::to_string(width_n) + ")");
    for (const SpinVector& state : *sol.ground_states) {
      const DecodedPair d = decode_factors(compiled, state, width_m);
      if (d.m * d.n != prob.product || d.m == 1 || d.n == 1) continue;
      FactorResult result;
      result.m = std::min(d.m, d.n);
      result.n = std::max(d.m, d.n);
      result.energy = sol.best_energy;
      result.verified = true;
      result.attempts_used = 1;
      return result;
    }
    throw UnsatisfiableError("factor_qa: only trivial factorizations of " +
                             std::to_string(prob.product) + " are representable in widths (" +
                             std::to_string(width_m) + ", " + std::to_string(width_n) + ")");
  }

  for (std::size_t attempt = 0; attempt < prob.attempts; ++attempt) {
    const SolveResult sol =
        run_solver(compiled.model, clamps, prob.solver, prob.solver.seed + attempt);
    if (sol.best_energy > certified + kEnergyTol) continue;  // missed the ground manifold
    const DecodedPair d = decode_factors(compiled, sol.best_state, width_m);
    if (d.m * d.n != prob.product) continue;  // never return an unverified pair
    if (d.m == 1 || d.n == 1) continue;       // trivial split: retry with the next seed
    FactorResult result;
    result.m = std::min(d.m, d.n);
    result.n = std::max(d.m, d.n);
    result.energy = sol.best_energy;
    result.verified = true;
    result.attempts_used = attempt + 1;
    return result;
  }
  throw NonConvergenceError("factor_qa: no verified nontrivial factorization of " +
                            std::to_string(prob.product) + " in " +
                            std::to_string(prob.attempts) + " attempts");
}

std::set<std::pair<std::uint64_t, std::uint64_t>> enumerate_factorizations(
    std::uint64_t product, std::size_t width_m, std::size_t width_n, std::size_t max_free,
    bool force_odd) {
  if (width_m < 1 || width_n < 1)
    throw ContractError("enumerate_factorizations: widths must be at least 1");
  if (width_m + width_n < 64 && (product >> (width_m + width_n)) != 0)
    throw ContractError("enumerate_factorizations: product does not fit in the product register");

  SolverOptions options;
  options.fuse_plain_wires = true;  // keeps desk-scale instances inside the exact bound
  const CompiledModel compiled = compile_multiplier(width_m, width_n, options);
  const ClampSet clamps = inverse_clamps(compiled, product, width_m, force_odd);

  const SolveResult sol = solve_exact(compiled.model, clamps, max_free);
  std::set<std::pair<std::uint64_t, std::uint64_t>> pairs;
  if (sol.best_energy > compiled.certified_ground_energy() + kEnergyTol) return pairs;
  for (const SpinVector& state : *sol.ground_states) {
    const DecodedPair d = decode_factors(compiled, state, width_m);
    pairs.emplace(d.m, d.n);
  }
  return pairs;
}

}  // namespace qaf
