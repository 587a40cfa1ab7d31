#include "qaf/solvers.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace qaf {

void AnnealSchedule::validate() const {
  if (sweeps < 1) throw ContractError("AnnealSchedule: sweeps must be >= 1");
  if (!(beta_start > 0.0) || !(beta_end >= beta_start))
    throw ContractError("AnnealSchedule: need beta_end >= beta_start > 0");
  if (!(gamma_end >= 0.0) || !(gamma_start >= gamma_end))
    throw ContractError("AnnealSchedule: need gamma_start >= gamma_end >= 0");
  if (!(sqa_beta > 0.0)) throw ContractError("AnnealSchedule: sqa_beta must be positive");
}

double AnnealSchedule::beta_at(std::size_t sweep) const {
  const double t = sweeps > 1 ? static_cast<double>(sweep) / static_cast<double>(sweeps - 1) : 1.0;
  return beta_start + (beta_end - beta_start) * t;
}

double AnnealSchedule::gamma_at(std::size_t sweep) const {
  const double t = sweeps > 1 ? static_cast<double>(sweep) / static_cast<double>(sweeps - 1) : 1.0;
  return gamma_start + (gamma_end - gamma_start) * t;
}

namespace detail {

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream) {
  std::uint64_t z = seed + (stream + 1) * 0x9e3779b97f4a7c15ull;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

double uniform01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

bool metropolis_accept(double delta_e, double beta, double u) {
  return delta_e <= 0.0 || u < std::exp(-beta * delta_e);
}

double transverse_coupling(double beta_slice, double gamma) {
  if (gamma <= 0.0) return 0.0;
  return 0.5 * std::log(std::tanh(beta_slice * gamma));
}

}  // namespace detail

namespace {

// Flat adjacency of the reduced model for the hot loops.
struct Graph {
  std::size_t n = 0;
  std::vector<double> h;
  std::vector<std::size_t> offset;  // n + 1 entries
  std::vector<std::size_t> nbr;
  std::vector<double> w;

  static Graph build(const IsingModel& m) {
    Graph g;
    g.n = m.size();
    g.h = m.biases();
    std::vector<std::size_t> deg(g.n, 0);
    for (const auto& [key, value] : m.couplings()) {
      (void)value;
      ++deg[key.first];
      ++deg[key.second];
    }
    g.offset.assign(g.n + 1, 0);
    for (std::size_t i = 0; i < g.n; ++i) g.offset[i + 1] = g.offset[i] + deg[i];
    g.nbr.resize(g.offset[g.n]);
    g.w.resize(g.offset[g.n]);
    std::vector<std::size_t> cursor(g.offset.begin(), g.offset.end() - 1);
    for (const auto& [key, value] : m.couplings()) {
      g.nbr[cursor[key.first]] = key.second;
      g.w[cursor[key.first]++] = value;
      g.nbr[cursor[key.second]] = key.first;
      g.w[cursor[key.second]++] = value;
    }
    return g;
  }

  double local_field(const std::int8_t* s, std::size_t i) const {
    double f = h[i];
    for (std::size_t e = offset[i]; e < offset[i + 1]; ++e) f += w[e] * s[nbr[e]];
    return f;
  }

  double energy(const std::int8_t* s) const {
    double eh = 0.0, ej = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      eh += h[i] * s[i];
      for (std::size_t e = offset[i]; e < offset[i + 1]; ++e) ej += w[e] * s[i] * s[nbr[e]];
    }
    return eh + 0.5 * ej;  // every coupling visited from both ends
  }
};

SpinVector to_spin_vector(const std::vector<std::int8_t>& s) {
  SpinVector v;
  v.reserve(s.size());
  for (std::int8_t x : s) v.push_back(Spin(x));
  return v;
}

// State bits as an integer, for a stable, enumeration-independent ordering
// of degenerate ground states.
std::uint64_t state_code(const std::vector<std::int8_t>& s) {
  std::uint64_t code = 0;
  for (std::size_t i = 0; i < s.size(); ++i)
    if (s[i] > 0) code |= std::uint64_t{1} << i;
  return code;
}

std::vector<std::int8_t> from_code(std::uint64_t code, std::size_t n) {
  std::vector<std::int8_t> s(n);
  for (std::size_t i = 0; i < n; ++i) s[i] = (code >> i) & 1 ? +1 : -1;
  return s;
}

}  // namespace

SolveResult solve_exact(const IsingModel& model, const ClampSet& clamps, std::size_t max_free) {
  const ReducedModel red = reduce(model, clamps);
  const std::size_t nf = red.model.size();
  if (nf > max_free)
    throw BoundError("solve_exact: " + std::to_string(nf) +
                     " free qubits exceed the enumeration bound of " + std::to_string(max_free));

  SolveResult result;
  result.num_restarts_hit_best = 1;
  result.seed = 0;

  if (nf == 0) {
    result.best_state = red.lift(SpinVector{});
    result.best_energy = model.energy(result.best_state);
    result.ground_states = std::vector<SpinVector>{result.best_state};
    return result;
  }

  // Gray-coded enumeration in fixed blocks. Block b always covers the same
  // code range, so the candidate sets below do not depend on how blocks are
  // scheduled across threads.
  const Graph g = Graph::build(red.model);
  const std::uint64_t total = std::uint64_t{1} << nf;
  const std::uint64_t block = std::min<std::uint64_t>(total, std::uint64_t{1} << 16);
  const std::uint64_t nblocks = total / block;
  constexpr double kTieEps = 1e-6;  // capture window; exact filtering happens later

  std::vector<double> block_min(nblocks, std::numeric_limits<double>::infinity());
  std::vector<std::vector<std::uint64_t>> block_cand(nblocks);

#pragma omp parallel for schedule(dynamic)
  for (long long bi = 0; bi < static_cast<long long>(nblocks); ++bi) {
    const std::uint64_t start = static_cast<std::uint64_t>(bi) * block;
    std::vector<std::int8_t> s = from_code(start ^ (start >> 1), nf);
    double e = g.energy(s.data());
    double lo = std::numeric_limits<double>::infinity();
    auto& cand = block_cand[bi];
    auto consider = [&](std::uint64_t code, double energy) {
      if (energy < lo - kTieEps) {
        lo = energy;
        cand.clear();
        cand.push_back(code);
      } else if (energy <= lo + kTieEps) {
        cand.push_back(code);
      }
    };
    consider(start, e);
    for (std::uint64_t k = 1; k < block; ++k) {
      const std::uint64_t code = start + k;
      const std::size_t bit = static_cast<std::size_t>(__builtin_ctzll(code));
      const double delta = -2.0 * s[bit] * g.local_field(s.data(), bit);
      s[bit] = static_cast<std::int8_t>(-s[bit]);
      e += delta;
      consider(code, e);
    }
    block_min[bi] = lo;
  }

  double prefilter_min = std::numeric_limits<double>::infinity();
  for (double m : block_min) prefilter_min = std::min(prefilter_min, m);

  // Canonical pass: re-evaluate every candidate through the model's own
  // energy() so the final comparison is exact and free of incremental
  // rounding, whatever the thread count was above.
  double exact_min = std::numeric_limits<double>::infinity();
  std::vector<std::pair<std::uint64_t, double>> scored;  // (state code, energy)
  for (std::uint64_t bi = 0; bi < nblocks; ++bi) {
    if (!(block_min[bi] <= prefilter_min + kTieEps)) continue;
    for (std::uint64_t code : block_cand[bi]) {
      const std::vector<std::int8_t> s = from_code(code ^ (code >> 1), nf);
      const double e = red.model.energy(to_spin_vector(s));
      exact_min = std::min(exact_min, e);
      scored.emplace_back(state_code(s), e);
    }
  }
  std::vector<std::uint64_t> ground;
  for (const auto& [code, e] : scored)
    if (e == exact_min) ground.push_back(code);
  std::sort(ground.begin(), ground.end());

  std::vector<SpinVector> lifted;
  lifted.reserve(ground.size());
  for (std::uint64_t code : ground) lifted.push_back(red.lift(to_spin_vector(from_code(code, nf))));
  result.best_state = lifted.front();
  result.best_energy = model.energy(result.best_state);
  result.ground_states = std::move(lifted);
  return result;
}

namespace {

struct RestartOutcome {
  double canonical_energy = 0.0;
  std::vector<std::int8_t> spins;
};

RestartOutcome run_sa_restart(const Graph& g, const IsingModel& reduced,
                              const AnnealSchedule& schedule, std::uint64_t rng_seed) {
  std::mt19937_64 rng(rng_seed);
  const std::size_t n = g.n;
  std::vector<std::int8_t> s(n);
  for (std::size_t i = 0; i < n; ++i) s[i] = (rng() & 1) ? +1 : -1;
  std::vector<std::int8_t> best = s;
  double e = g.energy(s.data());
  double best_e = e;

  for (std::size_t sweep = 0; sweep < schedule.sweeps; ++sweep) {
    const double beta = schedule.beta_at(sweep);
    for (std::size_t i = 0; i < n; ++i) {
      const double delta = -2.0 * s[i] * g.local_field(s.data(), i);
      bool accept = delta <= 0.0;
      if (!accept) accept = detail::metropolis_accept(delta, beta, detail::uniform01(rng));
      if (accept) {
        s[i] = static_cast<std::int8_t>(-s[i]);
        e += delta;
        if (e < best_e - 1e-12) {
          best_e = e;
          best = s;
        }
      }
    }
  }
  return {reduced.energy(to_spin_vector(best)), std::move(best)};
}

}  // namespace

SolveResult solve_sa(const IsingModel& model, const ClampSet& clamps,
                     const AnnealSchedule& schedule, std::size_t restarts, std::uint64_t seed) {
  schedule.validate();
  if (restarts < 1) throw ContractError("solve_sa: restarts must be >= 1");
  const ReducedModel red = reduce(model, clamps);

  SolveResult result;
  result.seed = seed;

  if (red.model.size() == 0) {
    result.best_state = red.lift(SpinVector{});
    result.best_energy = model.energy(result.best_state);
    result.num_restarts_hit_best = restarts;
    return result;
  }

  const Graph g = Graph::build(red.model);
  std::vector<double> energies(restarts);
  std::vector<std::vector<std::int8_t>> states(restarts);

  // Restart r's stream depends only on (seed, r): identical results no
  // matter how the loop is scheduled.
#pragma omp parallel for schedule(dynamic)
  for (long long r = 0; r < static_cast<long long>(restarts); ++r) {
    RestartOutcome out =
        run_sa_restart(g, red.model, schedule, detail::mix_seed(seed, static_cast<std::uint64_t>(r)));
    energies[r] = out.canonical_energy;
    states[r] = std::move(out.spins);
  }

  std::size_t best_r = 0;
  for (std::size_t r = 1; r < restarts; ++r)
    if (energies[r] < energies[best_r]) best_r = r;  // ties keep the lowest index
  result.num_restarts_hit_best = 0;
  for (std::size_t r = 0; r < restarts; ++r)
    if (energies[r] == energies[best_r]) ++result.num_restarts_hit_best;

  result.best_state = red.lift(to_spin_vector(states[best_r]));
  result.best_energy = model.energy(result.best_state);
  return result;
}

SolveResult solve_sqa(const IsingModel& model, const ClampSet& clamps,
                      const AnnealSchedule& schedule, std::size_t trotter_slices,
                      std::uint64_t seed) {
  schedule.validate();
  if (trotter_slices < 2) throw ContractError("solve_sqa: trotter_slices must be >= 2");
  const ReducedModel red = reduce(model, clamps);
  const std::size_t n = red.model.size();
  const std::size_t T = trotter_slices;

  SolveResult result;
  result.seed = seed;
  result.num_restarts_hit_best = 1;

  if (n == 0) {
    result.best_state = red.lift(SpinVector{});
    result.best_energy = model.energy(result.best_state);
    return result;
  }

  const Graph g = Graph::build(red.model);
  std::mt19937_64 rng(detail::mix_seed(seed, 0));
  std::vector<std::int8_t> s(T * n);
  for (auto& x : s) x = (rng() & 1) ? +1 : -1;

  std::vector<double> e(T);  // classical energy per replica, tracked incrementally
  for (std::size_t t = 0; t < T; ++t) e[t] = g.energy(&s[t * n]);

  double best_e = std::numeric_limits<double>::infinity();
  std::vector<std::int8_t> best(n);
  auto note = [&](std::size_t t) {
    if (e[t] < best_e - 1e-12) {
      best_e = e[t];
      std::copy(&s[t * n], &s[t * n] + n, best.begin());
    }
  };
  for (std::size_t t = 0; t < T; ++t) note(t);

  const double beta_s = schedule.sqa_beta;
  std::vector<double> dlocal(T);
  for (std::size_t sweep = 0; sweep < schedule.sweeps; ++sweep) {
    const double jring = detail::transverse_coupling(beta_s, schedule.gamma_at(sweep));

    // Local moves: single spin in a single replica; the ring term sees the
    // two neighbouring replicas.
    for (std::size_t t = 0; t < T; ++t) {
      const std::int8_t* prev = &s[((t + T - 1) % T) * n];
      const std::int8_t* next = &s[((t + 1) % T) * n];
      std::int8_t* cur = &s[t * n];
      for (std::size_t i = 0; i < n; ++i) {
        const double delta = -2.0 * cur[i] * g.local_field(cur, i);
        const double daction =
            beta_s * delta - 2.0 * jring * static_cast<double>(cur[i]) *
                                 static_cast<double>(prev[i] + next[i]);
        bool accept = daction <= 0.0;
        if (!accept) accept = detail::metropolis_accept(daction, 1.0, detail::uniform01(rng));
        if (accept) {
          cur[i] = static_cast<std::int8_t>(-cur[i]);
          e[t] += delta;
          note(t);
        }
      }
    }

    // Global moves: flip one qubit across every replica; ring bonds are
    // unchanged, so only the classical action moves.
    for (std::size_t i = 0; i < n; ++i) {
      double daction = 0.0;
      for (std::size_t t = 0; t < T; ++t) {
        dlocal[t] = -2.0 * s[t * n + i] * g.local_field(&s[t * n], i);
        daction += dlocal[t];
      }
      daction *= beta_s;
      bool accept = daction <= 0.0;
      if (!accept) accept = detail::metropolis_accept(daction, 1.0, detail::uniform01(rng));
      if (accept) {
        for (std::size_t t = 0; t < T; ++t) {
          s[t * n + i] = static_cast<std::int8_t>(-s[t * n + i]);
          e[t] += dlocal[t];
          note(t);
        }
      }
    }
  }

  result.best_state = red.lift(to_spin_vector(best));
  result.best_energy = model.energy(result.best_state);
  return result;
}

}  // namespace qaf
