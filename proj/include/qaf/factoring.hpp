#pragma once

#include <cstdint>
#include <set>
#include <utility>

#include "qaf/compiler.hpp"
#include "qaf/solvers.hpp"

namespace qaf {

/// Operand register widths used to factor a p-bit number: the smaller
/// factor of a p-bit composite fits in ceil(p/2)+1 bits and the larger in
/// p-1 bits, without excluding the trivial 1 x P split a priori.
struct FactoringWidths {
  std::size_t width_m = 0;
  std::size_t width_n = 0;
};

FactoringWidths factoring_widths(std::size_t p);

enum class SolverChoice { Exact, SA, SQA };

/// How the driver compiles and solves one multiplier instance.
struct SolverOptions {
  SolverChoice method = SolverChoice::SA;
  AnnealSchedule schedule{};
  std::size_t restarts = 20;        // SA
  std::size_t trotter_slices = 16;  // SQA
  std::uint64_t seed = 1;
  std::size_t max_exact = kDefaultMaxExact;
  std::size_t max_degree = 8;
  bool fuse_plain_wires = false;
};

struct MultiplyOutcome {
  std::uint64_t product = 0;
  double energy = 0.0;
  double certified_energy = 0.0;
};

/// Forward multiplication on the annealer: clamps both input registers of
/// a compiled multiplier(width_m, width_n), solves, and decodes the product
/// register. Throws NonConvergenceError when the solver misses the
/// certified ground energy, so a returned product is always m*n.
MultiplyOutcome multiply_qa(std::uint64_t m, std::uint64_t n, std::size_t width_m,
                            std::size_t width_n, const SolverOptions& options = SolverOptions{});

struct FactorProblem {
  std::uint64_t product = 0;
  /// Zero widths mean "derive from the product's bit length" via
  /// factoring_widths.
  std::size_t width_m = 0;
  std::size_t width_n = 0;
  /// Clamp both factor LSBs to 1. Sound for odd products: every
  /// factorization of an odd number is odd x odd.
  bool force_odd = false;
  std::size_t attempts = 50;
  SolverOptions solver{};
};

struct FactorResult {
  std::uint64_t m = 0;
  std::uint64_t n = 0;  // canonical order m <= n
  double energy = 0.0;
  bool verified = false;  // m * n == product, recomputed in integers
  std::size_t attempts_used = 0;
};

/// Inverse multiplication: clamps the full product register (high zero
/// bits included) of a compiled multiplier, solves with per-attempt seeds
/// seed+0, seed+1, ..., rejects trivial 1 x P splits, and returns the first
/// verified nontrivial pair. Exact solving proves unsatisfiability
/// (UnsatisfiableError) when no acceptable factorization is representable;
/// heuristic solvers throw NonConvergenceError once attempts run out.
FactorResult factor_qa(const FactorProblem& prob);

/// All factorizations of `product` representable in the given widths,
/// read off the complete exact ground manifold with the product register
/// clamped. Compiles with fused Plain wires so desk-scale widths stay
/// inside the enumeration bound; ground-state decodings are identical to
/// the unfused lowering. Returns the empty set when the clamped model's
/// ground energy misses the certificate (no consistent assignment exists).
std::set<std::pair<std::uint64_t, std::uint64_t>> enumerate_factorizations(
    std::uint64_t product, std::size_t width_m, std::size_t width_n,
    std::size_t max_free = kDefaultMaxExact, bool force_odd = false);

}  // namespace qaf
