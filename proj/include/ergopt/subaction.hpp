#ifndef ERGOPT_SUBACTION_HPP
#define ERGOPT_SUBACTION_HPP

#include <optional>
#include <vector>

#include "ergopt/maps.hpp"

namespace ergopt {

/// Grid table of the truncated sub-action candidate
///   psi_N(x) = max over 1 <= n <= N, y in T^{-n} x of S_n phi(y) - n beta,
/// computed by depth-first search of the preimage tree with
/// branch-and-bound pruning.
struct SubActionTable {
  std::vector<double> grid;
  std::vector<double> psi;
  std::vector<int> achieved_depth;  // n attaining each sup
  int depth = 0;                    // truncation depth N
  double beta = 0.0;
  double lip_observed = 0.0;     // max adjacent difference quotient
  double sup_psi = 0.0;
  double last_increment = 0.0;   // max_x psi_N - psi_{N-1}
  bool stabilized = false;       // last_increment <= stabilization threshold
  bool marker_value_below_beta = false;  // phi(c) < beta at build time
  /// Fraction of steps outside the protective neighborhood of the fixed
  /// point along the achieving preimage path, minimized over the grid.
  /// Only tracked for sticky covers (alpha > 0).
  std::optional<double> min_excursion_freq;
  Space space = Space::Circle;
  double lo = 0.0;
  double hi = 1.0;
};

SubActionTable subaction_candidate(const MapSpec& map, const Observable& phi, double beta,
                                   int depth, int grid_n, long node_cap = 10'000'000,
                                   double stab_tol = 1e-3);

/// Pointwise slack phi(x) - beta - psi(Tx) + psi(x); a valid sub-action has
/// slack <= 0 everywhere. psi(Tx) is linearly interpolated on the grid.
struct ViolationReport {
  struct Entry {
    double x;
    double slack;
  };
  std::vector<Entry> entries;       // sorted by slack, descending
  std::vector<bool> contact;        // |slack| <= tol per grid index (Z_phi)
  double max_slack = 0.0;
  double tol = 0.0;
  bool pass = false;
  bool marker_excluded = false;     // c not in the contact set
  bool contact_avoids_vm = false;   // no contact point inside V_m
  double vm_lo = 0.0, vm_hi = 0.0;  // the protective arc around c (wraps)
};

ViolationReport verify_subaction(const MapSpec& map, const Observable& phi, double beta,
                                 const SubActionTable& table, double tol,
                                 int vm_depth = 6);

/// Observed Lipschitz constant of the table against the a-priori bound
/// L_*(t + 1/(1-lambda_s^eta)) with t = eta = 1 and lambda_s = 1/min|T'|
/// for uniformly expanding covers. The bound is unavailable when
/// min|T'| = 1 (sticky covers).
struct LipschitzProfile {
  double lip_observed = 0.0;
  std::optional<double> claim_bound;
  bool pass = false;  // lip_observed <= claim_bound when available
};

LipschitzProfile lipschitz_profile(const MapSpec& map, const Observable& phi,
                                   const SubActionTable& table);

/// The open arc between the two n-th preimages of the marker point adjacent
/// to it; membership wraps around the circle.
struct VInterval {
  double a = 0.0;  // counter-clockwise endpoint
  double b = 0.0;  // clockwise endpoint
  bool contains(double x) const {
    if (a < b) return x > a && x < b;
    return x > a || x < b;  // arc through the wrap point
  }
};

VInterval v_interval(const MapSpec& map, int n);

}  // namespace ergopt

#endif
