#include "qaf/reference.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace qaf::reference {

double energy(const IsingModel& model, const SpinVector& state) {
  if (state.size() != model.size()) throw ContractError("reference::energy: state length mismatch");
  double e = 0.0;
  for (std::size_t i = 0; i < model.size(); ++i) e += model.bias(i) * state[i].value();
  for (const auto& [key, j] : model.couplings())
    e += j * state[key.first].value() * state[key.second].value();
  return e;
}

namespace {

SpinVector state_from_code(std::uint64_t code, std::size_t n) {
  SpinVector s;
  s.reserve(n);
  for (std::size_t i = 0; i < n; ++i) s.push_back((code >> i) & 1 ? spin_up : spin_down);
  return s;
}

}  // namespace

SolveResult solve_exact(const IsingModel& model, const ClampSet& clamps, std::size_t max_free) {
  const ReducedModel red = reduce(model, clamps);
  const std::size_t nf = red.model.size();
  if (nf > max_free)
    throw BoundError("reference::solve_exact: " + std::to_string(nf) +
                     " free qubits exceed the enumeration bound of " + std::to_string(max_free));

  SolveResult result;
  result.num_restarts_hit_best = 1;
  result.seed = 0;

  double best = std::numeric_limits<double>::infinity();
  std::vector<std::uint64_t> ground;
  const std::uint64_t total = nf == 0 ? 1 : std::uint64_t{1} << nf;
  for (std::uint64_t code = 0; code < total; ++code) {
    const double e = red.model.energy(state_from_code(code, nf));
    if (e < best) {
      best = e;
      ground.assign(1, code);
    } else if (e == best) {
      ground.push_back(code);
    }
  }

  std::vector<SpinVector> lifted;
  lifted.reserve(ground.size());
  for (std::uint64_t code : ground) lifted.push_back(red.lift(state_from_code(code, nf)));
  result.best_state = lifted.front();
  result.best_energy = model.energy(result.best_state);
  result.ground_states = std::move(lifted);
  return result;
}

SolveResult solve_sa(const IsingModel& model, const ClampSet& clamps,
                     const AnnealSchedule& schedule, std::size_t restarts, std::uint64_t seed) {
  schedule.validate();
  if (restarts < 1) throw ContractError("reference::solve_sa: restarts must be >= 1");
  const ReducedModel red = reduce(model, clamps);
  const std::size_t n = red.model.size();

  SolveResult result;
  result.seed = seed;

  if (n == 0) {
    result.best_state = red.lift(SpinVector{});
    result.best_energy = model.energy(result.best_state);
    result.num_restarts_hit_best = restarts;
    return result;
  }

  // Adjacency straight off the coupling map.
  std::vector<std::vector<std::pair<std::size_t, double>>> adj(n);
  for (const auto& [key, j] : red.model.couplings()) {
    adj[key.first].emplace_back(key.second, j);
    adj[key.second].emplace_back(key.first, j);
  }
  auto local_field = [&](const SpinVector& s, std::size_t i) {
    double f = red.model.bias(i);
    for (const auto& [other, j] : adj[i]) f += j * s[other].value();
    return f;
  };

  double best_energy = std::numeric_limits<double>::infinity();
  SpinVector best_state;
  std::size_t hits = 0;

  for (std::size_t r = 0; r < restarts; ++r) {
    std::mt19937_64 rng(detail::mix_seed(seed, r));
    SpinVector s;
    s.reserve(n);
    for (std::size_t i = 0; i < n; ++i) s.push_back((rng() & 1) ? spin_up : spin_down);
    SpinVector run_best = s;
    double e = red.model.energy(s);
    double run_best_e = e;

    for (std::size_t sweep = 0; sweep < schedule.sweeps; ++sweep) {
      const double beta = schedule.beta_at(sweep);
      for (std::size_t i = 0; i < n; ++i) {
        const double delta = -2.0 * s[i].value() * local_field(s, i);
        bool accept = delta <= 0.0;
        if (!accept) accept = detail::metropolis_accept(delta, beta, detail::uniform01(rng));
        if (accept) {
          s[i] = s[i].flipped();
          e += delta;
          if (e < run_best_e - 1e-12) {
            run_best_e = e;
            run_best = s;
          }
        }
      }
    }

    const double canonical = red.model.energy(run_best);
    if (canonical < best_energy) {
      best_energy = canonical;
      best_state = run_best;
      hits = 1;
    } else if (canonical == best_energy) {
      ++hits;
    }
  }

  result.num_restarts_hit_best = hits;
  result.best_state = red.lift(best_state);
  result.best_energy = model.energy(result.best_state);
  return result;
}

}  // namespace qaf::reference
