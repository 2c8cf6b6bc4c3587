#include "ergopt/optimize.hpp"

#include <algorithm>
#include <cmath>

#include "ergopt/errors.hpp"

namespace ergopt {

std::vector<OrbitScore> orbit_scores(const MapSpec& map, const Observable& phi,
                                     int max_period) {
  std::vector<PeriodicOrbit> orbits = enumerate_periodic_orbits(map, max_period);
  std::vector<OrbitScore> scores;
  scores.reserve(orbits.size());
  for (auto& o : orbits) {
    OrbitScore s;
    s.average = orbit_average(o, phi);
    s.orbit = std::move(o);
    scores.push_back(std::move(s));
  }
  // enumeration is (period, itinerary)-sorted, so a stable sort on the
  // average keeps the tie-break deterministic
  std::stable_sort(scores.begin(), scores.end(),
                   [](const OrbitScore& a, const OrbitScore& b) {
                     return a.average > b.average;
                   });
  return scores;
}

BetaPeriodic beta_periodic(const MapSpec& map, const Observable& phi, int max_period) {
  std::vector<OrbitScore> scores = orbit_scores(map, phi, max_period);
  if (scores.empty()) throw NotFound("no periodic orbit found up to the given period");
  BetaPeriodic out;
  out.beta = scores.front().average;
  out.orbit = scores.front().orbit;
  return out;
}

BetaReport beta_report(const MapSpec& map, const Observable& phi, int max_period,
                       int n_cells) {
  BetaReport rep;
  rep.max_period = max_period;
  rep.n_cells = n_cells;
  BetaPeriodic bp = beta_periodic(map, phi, max_period);
  rep.beta_orbit = bp.beta;
  rep.argmax_orbit = std::move(bp.orbit);
  UlamGraph g = build_ulam(map, phi, n_cells);
  MeanCycle mc = max_mean_cycle(g);
  rep.beta_cycle = mc.value;
  rep.cycle_cells = std::move(mc.cells);
  rep.gap = std::fabs(rep.beta_orbit - rep.beta_cycle);
  return rep;
}

namespace {

double grid_point(const MapSpec& map, int grid_n, int i) {
  double w = map.domain_hi().to_double() - map.domain_lo().to_double();
  return map.domain_lo().to_double() + (double(i) + 0.5) * w / double(grid_n);
}

}  // namespace

double gamma_estimate(const MapSpec& map, const Observable& phi, double beta, int depth,
                      int grid_n) {
  if (depth < 1) throw DomainError("gamma_estimate needs depth >= 1");
  // gamma is never negative: deviations vanish in the mean on the support
  // of a maximizing measure, so 0 is always a valid lower bound even when
  // the grid misses that support.
  double best = 0.0;
  for (int i = 0; i < grid_n; ++i) {
    Real x(grid_point(map, grid_n, i));
    double sum = 0.0;
    for (int n = 1; n <= depth; ++n) {
      sum += phi.eval(x);
      best = std::max(best, sum - double(n) * beta);
      x = eval_map(map, x);
    }
  }
  return best;
}

SupportCandidate support_candidate(const MapSpec& map, const Observable& phi, double beta,
                                   double c_star, int k_max, int l_max, int grid_n) {
  if (c_star < 0.0) throw DomainError("support_candidate needs C_* >= 0");
  SupportCandidate sc;
  sc.c_star = c_star;
  sc.k_max = k_max;
  sc.l_max = l_max;
  sc.grid.resize(grid_n);
  sc.member.assign(grid_n, false);
  std::vector<double> prefix(l_max + k_max + 1);
  for (int i = 0; i < grid_n; ++i) {
    double x0 = grid_point(map, grid_n, i);
    sc.grid[i] = x0;
    Real x(x0);
    prefix[0] = 0.0;
    for (int j = 0; j < l_max + k_max; ++j) {
      prefix[j + 1] = prefix[j] + phi.eval(x);
      x = eval_map(map, x);
    }
    bool ok = true;
    for (int l = 0; l <= l_max && ok; ++l)
      for (int k = 1; k <= k_max; ++k) {
        if (std::fabs(prefix[l + k] - prefix[l] - double(k) * beta) > c_star) {
          ok = false;
          break;
        }
      }
    sc.member[i] = ok;
  }
  return sc;
}

SubordinationReport subordination_check(const MapSpec& map, const Observable& phi,
                                        double beta, double gamma,
                                        const std::vector<Real>& points, int depth,
                                        double tol) {
  SubordinationReport rep;
  rep.gamma = gamma;
  rep.tol = tol;
  rep.min_value = std::numeric_limits<double>::infinity();
  for (const Real& p : points) {
    Real x = p;
    double sum = 0.0;
    for (int n = 1; n <= depth; ++n) {
      sum += phi.eval(x);
      double dev = sum - double(n) * beta;
      if (dev < rep.min_value) {
        rep.min_value = dev;
        rep.argmin_n = n;
        rep.argmin_point = p.to_double();
      }
      x = eval_map(map, x);
    }
  }
  rep.pass = rep.min_value >= -gamma - tol;
  return rep;
}

}  // namespace ergopt
