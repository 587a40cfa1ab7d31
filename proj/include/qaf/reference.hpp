#pragma once

#include "qaf/solvers.hpp"

namespace qaf::reference {

/// Straight-line serial implementations with no incremental tricks, no
/// Gray coding and no OpenMP. They define the expected behaviour of the
/// production kernels: the tests and the bench tool check that the fast
/// paths return identical results.

double energy(const IsingModel& model, const SpinVector& state);

/// Plain 0..2^n-1 enumeration, full energy evaluation per state.
SolveResult solve_exact(const IsingModel& model, const ClampSet& clamps = ClampSet{},
                        std::size_t max_free = kDefaultMaxExact);

/// Sequential restarts with the same (seed, restart) stream derivation and
/// sweep order as the parallel kernel, so results must match it bitwise.
SolveResult solve_sa(const IsingModel& model, const ClampSet& clamps = ClampSet{},
                     const AnnealSchedule& schedule = AnnealSchedule{}, std::size_t restarts = 20,
                     std::uint64_t seed = 1);

}  // namespace qaf::reference
