#ifndef ERGOPT_MARKOV_HPP
#define ERGOPT_MARKOV_HPP

#include <utility>
#include <vector>

#include "ergopt/orbits.hpp"

namespace ergopt {

/// Open interval with exact endpoints when the map kind is exact.
struct OpenInterval {
  Real lo, hi;
  double length() const { return hi.to_double() - lo.to_double(); }
};

/// Finite family of open intervals with endpoints drawn from
/// E_m = union of T^{-k} z over 0 <= k < m, avoiding the turning point,
/// together with the verified transition relation TI >= J.
struct MarkovCover {
  std::vector<OpenInterval> intervals;
  PeriodicOrbit z;
  int depth_m = 0;
  std::vector<std::pair<int, int>> transitions;
  bool verified = false;
};

/// Components of the domain minus E_m and the protective component around
/// the turning point that meet the given sample points. Endpoint images
/// stay outside the cover by construction, so every admissible cover
/// verifies. Throws MarginTooSmall when a sample point shares a component
/// with the turning point, CoverageGap when it falls on a cut point.
MarkovCover admissible_cover(const MapSpec& map, const std::vector<Real>& k_points,
                             const PeriodicOrbit& z, int m);

struct MarkovCheck {
  bool ok = false;
  std::vector<std::pair<int, int>> violations;            // TI meets J, TI !>= J
  std::vector<std::pair<int, int>> transitions;           // TI meets J
};

/// Exact interval-image check of the Markov property: for every pair with
/// T(I) meeting J, T(I) must contain J.
MarkovCheck verify_markov(const MapSpec& map, const MarkovCover& cover);

struct InvariantSetDepth {
  std::vector<OpenInterval> components;     // at the final depth
  std::vector<double> max_component_length; // index = depth 0..depth
  std::vector<std::size_t> component_count;
  bool surjective = false;                  // T(union) contains union
};

/// Finite-depth truncation of the inverse-limit set: components of the
/// intersection of T^{-n}(union of cover) for 0 <= n <= depth.
InvariantSetDepth invariant_set_depth(const MapSpec& map, const MarkovCover& cover,
                                      int depth);

}  // namespace ergopt

#endif
