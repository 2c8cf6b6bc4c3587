#ifndef ERGOPT_EXPERIMENTS_HPP
#define ERGOPT_EXPERIMENTS_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "ergopt/optimize.hpp"

namespace ergopt {

/// Shared experiment knobs. A fixed seed makes every report byte-identical
/// across runs and thread counts: trial randomness is counter-based on
/// (seed, trial index).
struct ExperimentConfig {
  std::string map_descriptor = "doubling";
  std::vector<std::string> phi_sources;
  int max_period = 10;
  int n_cells = 4096;
  int grid_n = 10000;
  int depth = 30;
  double eps = 0.1;     // locking strength
  double delta = 0.0;   // perturbation Lipschitz budget
  int trials = 200;
  std::uint64_t seed = 1;
  int threads = 1;
  int fourier_modes = 5;
};

/// Constant C of the orbit-domination inequality
///   sum_k dist(T^k x, T^k y) <= C sum_k dist(T^k x, O),
/// from the recipe Delta = half the minimal orbit gap, delta = Delta /
/// Lambda^(p-1) with Lambda = sup|T'|, D the orbit diameter, C = 1 + pD/delta.
/// A fixed point gives C = 1.
double domination_constant(const MapSpec& map, const PeriodicOrbit& orbit);

/// Substitute orbit points into "dist(x,[...])" with full double precision.
std::string orbit_dist_source(const PeriodicOrbit& orbit);

struct LockingTrial {
  int trial = 0;
  double lip_psi = 0.0;
  bool qualifying = false;  // lip_psi < eps / C
  bool kept = false;        // argmax orbit of the perturbed observable is O
  double margin = 0.0;      // best other orbit average minus O's average
  std::string argmax_itinerary;
  int argmax_period = 0;
};

struct LockingReport {
  std::string base_phi;
  PeriodicOrbit orbit;
  double c_domination = 0.0;
  double eps = 0.0;
  double delta = 0.0;
  std::vector<LockingTrial> trials;
  double pass_fraction = 0.0;  // kept fraction among qualifying trials
  bool pass = false;           // every qualifying trial kept the orbit
};

/// Perturbation stability of phi - eps dist(.,O): each trial adds a random
/// trigonometric polynomial whose certified Lipschitz bound is drawn from
/// [0, delta], then re-runs the orbit route. Throws BaseNotMaximized when
/// the base observable is not maximized by the given orbit.
LockingReport locking_experiment(const MapSpec& map, const Observable& base_phi,
                                 const PeriodicOrbit& orbit, const ExperimentConfig& cfg);

struct SweepRow {
  double a = 0.0;
  int phi_index = 0;
  std::string phi;
  double beta = 0.0;
  int argmax_period = 0;
  std::string argmax_itinerary;
  double locked_beta = 0.0;  // after subtracting eps dist(.,O*)
  double gap = 0.0;          // argmax average minus runner-up, locked observable
  bool locked = false;
  std::string error;
};

struct SweepResult {
  std::vector<SweepRow> rows;
  double locked_fraction = 0.0;
  std::string csv() const;
};

/// Parameter sweep over a map family: for each (a, phi) find the argmax
/// orbit O*, lock with eps dist(.,O*), and report the runner-up gap. The
/// "locked" flag compares the gap against eps times the smallest positive
/// grid distance to O*.
SweepResult tpo_sweep(MapKind family, const std::vector<double>& a_values,
                      const std::vector<std::string>& phi_bank, double eps,
                      int max_period, int threads = 1, int lock_grid = 1000);

struct GammaScalingRow {
  double t = 0.0;
  double gamma = 0.0;
  double lip = 0.0;
};

struct GammaScalingResult {
  std::vector<std::vector<GammaScalingRow>> per_phi;  // [phi index][t index]
  bool homogeneous = false;      // gamma(t phi) = t gamma(phi) to 1%
  double max_gamma_lip_ratio = 0.0;
};

/// gamma(t phi) rows across a scale bank, with the homogeneity check and
/// the gamma/lip ratio envelope.
GammaScalingResult gamma_scaling(const MapSpec& map,
                                 const std::vector<std::string>& phi_bank,
                                 const std::vector<double>& t_values, int depth,
                                 int grid_n, int max_period);

/// Deterministic per-trial RNG stream: SplitMix64 over (seed, counter).
class TrialRng {
 public:
  TrialRng(std::uint64_t seed, std::uint64_t trial)
      : state_(seed ^ (trial * 0x9E3779B97F4A7C15ULL) ^ 0xD1B54A32D192ED03ULL) {}

  std::uint64_t next_u64() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  double uniform() { return double(next_u64() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

 private:
  std::uint64_t state_;
};

}  // namespace ergopt

#endif
