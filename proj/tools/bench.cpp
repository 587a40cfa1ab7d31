#include <omp.h>

#include <chrono>
#include <cstdio>
#include <string>

#include "CLI11.hpp"
#include "qaf/compiler.hpp"
#include "qaf/netlist.hpp"
#include "qaf/reference.hpp"
#include "qaf/solvers.hpp"

// Times the OpenMP kernels against the serial reference implementations on
// the same compiled models and checks that they return identical results.

namespace {

using namespace qaf;
using clock_type = std::chrono::steady_clock;

template <typename F>
double timed(F&& f) {
  const auto t0 = clock_type::now();
  f();
  return std::chrono::duration<double>(clock_type::now() - t0).count();
}

bool same_result(const SolveResult& a, const SolveResult& b) {
  if (a.best_energy != b.best_energy) return false;
  if (!(a.best_state == b.best_state)) return false;
  if (a.ground_states.has_value() != b.ground_states.has_value()) return false;
  if (a.ground_states && !(*a.ground_states == *b.ground_states)) return false;
  return true;
}

int report(const char* name, double t_ref, double t_par, bool equal) {
  std::printf("%-28s reference %8.3fs   parallel %8.3fs   speedup %5.2fx   results %s\n", name,
              t_ref, t_par, t_par > 0 ? t_ref / t_par : 0.0, equal ? "identical" : "DIFFER");
  return equal ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  std::size_t sweeps = 1000;
  std::size_t restarts = 64;
  std::uint64_t seed = 1;

  CLI::App app{"Benchmark: parallel solver kernels vs serial references"};
  app.add_option("--sweeps", sweeps, "SA sweeps per restart")->capture_default_str();
  app.add_option("--restarts", restarts, "SA restarts")->capture_default_str();
  app.add_option("--seed", seed, "RNG seed")->capture_default_str();
  CLI11_PARSE(app, argc, argv);

  std::printf("OpenMP threads: %d\n\n", omp_get_max_threads());
  int failures = 0;

  {
    // 2^23 states, enough work for the block-parallel enumeration to matter.
    const CompiledModel fa = compile(full_adder());
    SolveResult ref, par;
    const double t_ref = timed([&] { ref = reference::solve_exact(fa.model); });
    const double t_par = timed([&] { par = solve_exact(fa.model); });
    failures += report("exact full-adder (23 free)", t_ref, t_par, same_result(ref, par));
  }

  {
    AnnealSchedule sched;
    sched.sweeps = sweeps;
    const CompiledModel mult = compile(multiplier(3, 3));
    SolveResult ref, par;
    const double t_ref =
        timed([&] { ref = reference::solve_sa(mult.model, {}, sched, restarts, seed); });
    const double t_par = timed([&] { par = solve_sa(mult.model, {}, sched, restarts, seed); });
    failures += report("sa multiplier 3x3", t_ref, t_par, same_result(ref, par));
  }

  {
    AnnealSchedule sched;
    sched.sweeps = sweeps;
    const CompiledModel mult = compile(multiplier(4, 4));
    SolveResult ref, par;
    const double t_ref =
        timed([&] { ref = reference::solve_sa(mult.model, {}, sched, restarts, seed); });
    const double t_par = timed([&] { par = solve_sa(mult.model, {}, sched, restarts, seed); });
    failures += report("sa multiplier 4x4", t_ref, t_par, same_result(ref, par));
  }

  if (failures > 0) {
    std::printf("\n%d kernel(s) disagree with the reference\n", failures);
    return 1;
  }
  return 0;
}
