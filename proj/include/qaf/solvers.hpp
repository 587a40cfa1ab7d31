#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <vector>

#include "qaf/ising.hpp"

namespace qaf {

/// Default cap on the exact solver's free-qubit count (2^24 states). The
/// CLI lets the environment raise it; the library takes it per call.
inline constexpr std::size_t kDefaultMaxExact = 24;

/// Linear-in-sweep annealing schedule. beta drives classical SA; gamma is
/// the transverse-field ramp for SQA, with sqa_beta the fixed per-slice
/// inverse temperature the path-integral runs at.
struct AnnealSchedule {
  std::size_t sweeps = 1000;
  double beta_start = 0.1;
  double beta_end = 5.0;
  double gamma_start = 3.0;
  double gamma_end = 0.01;
  double sqa_beta = 1.0;

  /// Throws ContractError unless sweeps >= 1, beta_end >= beta_start > 0,
  /// gamma_start >= gamma_end >= 0, and sqa_beta > 0.
  void validate() const;

  double beta_at(std::size_t sweep) const;   // reaches beta_end on the last sweep
  double gamma_at(std::size_t sweep) const;  // reaches gamma_end on the last sweep
};

struct SolveResult {
  /// Full-length state, clamped positions holding their clamp values.
  SpinVector best_state;
  /// Always model.energy(best_state), recomputed canonically.
  double best_energy = 0.0;
  /// Exact solver only: the complete ground manifold, ties included,
  /// lifted to full states and sorted by enumeration code.
  std::optional<std::vector<SpinVector>> ground_states;
  /// SA: restarts whose best equals the returned best. Exact/SQA: 1.
  std::size_t num_restarts_hit_best = 0;
  std::uint64_t seed = 0;
};

/// Exhaustive ground-state search over the clamp-reduced model. Refuses
/// with BoundError when more than max_free qubits remain free. The
/// enumeration is Gray-coded and block-parallel, with a canonical
/// re-evaluation pass so results are exact and independent of thread count.
SolveResult solve_exact(const IsingModel& model, const ClampSet& clamps = ClampSet{},
                        std::size_t max_free = kDefaultMaxExact);

/// Classical simulated annealing: `restarts` independent runs of
/// single-spin Metropolis sweeps (fixed index order) with beta interpolated
/// linearly per sweep. Restart r uses an RNG stream derived from
/// (seed, r), so the result is deterministic however restarts are
/// scheduled; ties across restarts go to the lowest restart index.
SolveResult solve_sa(const IsingModel& model, const ClampSet& clamps = ClampSet{},
                     const AnnealSchedule& schedule = AnnealSchedule{}, std::size_t restarts = 20,
                     std::uint64_t seed = 1);

/// Simulated quantum annealing: path-integral Monte Carlo over
/// trotter_slices replicas closed in a ring, each replica carrying the
/// problem couplings at inverse temperature sqa_beta, with the inter-slice
/// ferromagnetic coupling derived from the current transverse field. Local
/// sweeps plus per-qubit global (all-slice) moves; the answer is the best
/// single replica by classical energy.
SolveResult solve_sqa(const IsingModel& model, const ClampSet& clamps = ClampSet{},
                      const AnnealSchedule& schedule = AnnealSchedule{},
                      std::size_t trotter_slices = 16, std::uint64_t seed = 1);

namespace detail {

/// Splitmix64-style stream derivation; stream 0 is not the identity.
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream);

/// Uniform double in [0, 1) from the top 53 bits.
double uniform01(std::mt19937_64& rng);

/// Metropolis rule: accept iff delta_e <= 0 or u < exp(-beta * delta_e).
bool metropolis_accept(double delta_e, double beta, double u);

/// Inter-slice coupling (our sign convention: negative = ferromagnetic):
/// 0.5 * ln(tanh(beta_slice * gamma)) for gamma > 0, and exactly 0 when
/// gamma <= 0 so a switched-off field leaves the replicas independent.
double transverse_coupling(double beta_slice, double gamma);

}  // namespace detail

}  // namespace qaf
