#ifndef ERGOPT_OPTIMIZE_HPP
#define ERGOPT_OPTIMIZE_HPP

#include <vector>

#include "ergopt/orbits.hpp"
#include "ergopt/ulam.hpp"

namespace ergopt {

/// Orbit averages of phi over an enumerated orbit family, sorted so that
/// the best entry comes first; ties resolve to smaller period, then
/// lexicographic itinerary.
struct OrbitScore {
  PeriodicOrbit orbit;
  double average = 0.0;
};

std::vector<OrbitScore> orbit_scores(const MapSpec& map, const Observable& phi,
                                     int max_period);

struct BetaPeriodic {
  double beta = 0.0;
  PeriodicOrbit orbit;
};

/// Best periodic-orbit average up to max_period (a certified lower bound
/// for beta up to orbit-closure tolerance) and one argmax orbit.
BetaPeriodic beta_periodic(const MapSpec& map, const Observable& phi, int max_period);

/// Both routes to beta: the orbit maximum and the Ulam max mean cycle.
struct BetaReport {
  double beta_orbit = 0.0;
  PeriodicOrbit argmax_orbit;
  double beta_cycle = 0.0;
  std::vector<int> cycle_cells;
  double gap = 0.0;
  int max_period = 0;
  int n_cells = 0;
};

BetaReport beta_report(const MapSpec& map, const Observable& phi, int max_period,
                       int n_cells);

/// Lower bound for gamma = sup over n>=1, x of S_n phi(x) - n beta, scanned
/// over a grid of cell midpoints and 1 <= n <= depth. Nondecreasing in both
/// depth and grid_n.
double gamma_estimate(const MapSpec& map, const Observable& phi, double beta, int depth,
                      int grid_n);

/// Truncation of the set where |S_k phi(T^l x) - k beta| <= C_* for all
/// 1 <= k <= k_max, 0 <= l <= l_max, flagged over a midpoint grid.
struct SupportCandidate {
  std::vector<double> grid;
  std::vector<bool> member;
  double c_star = 0.0;
  int k_max = 0;
  int l_max = 0;

  int member_count() const {
    int n = 0;
    for (bool b : member) n += b;
    return n;
  }
};

SupportCandidate support_candidate(const MapSpec& map, const Observable& phi, double beta,
                                   double c_star, int k_max, int l_max, int grid_n);

/// min over the supplied points and 1 <= n <= depth of S_n phi(x) - n beta;
/// passes iff the minimum is >= -gamma - tol.
struct SubordinationReport {
  double min_value = 0.0;
  int argmin_n = 0;
  double argmin_point = 0.0;
  double gamma = 0.0;
  double tol = 0.0;
  bool pass = false;
};

SubordinationReport subordination_check(const MapSpec& map, const Observable& phi,
                                        double beta, double gamma,
                                        const std::vector<Real>& points, int depth,
                                        double tol = 1e-9);

}  // namespace ergopt

#endif
