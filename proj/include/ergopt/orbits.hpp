#ifndef ERGOPT_ORBITS_HPP
#define ERGOPT_ORBITS_HPP

#include <string>
#include <vector>

#include "ergopt/maps.hpp"

namespace ergopt {

/// A finite cycle points[k+1] = T(points[k]) of minimal period `period`.
/// The itinerary is the branch coding (L/R for unimodal kinds, digits for
/// circle kinds) in canonical form: the lexicographically least rotation.
struct PeriodicOrbit {
  int period = 1;
  std::vector<Real> points;
  std::string itinerary;
  bool exact = false;

  std::vector<double> points_double() const {
    std::vector<double> out;
    out.reserve(points.size());
    for (const Real& p : points) out.push_back(p.to_double());
    return out;
  }
};

/// Lexicographically least rotation of a branch word.
std::string canonical_rotation(const std::string& word);

/// All periodic orbits of minimal period <= max_period inside the
/// renormalization core (whole space for circle kinds). Each admissible
/// branch word is solved by composing inverse branches: exactly (affine
/// fixed point) for Tent/Doubling with rational data, by contraction
/// iteration plus Newton polishing otherwise. Orbits through the turning
/// point are rejected. Sorted by (period, itinerary).
std::vector<PeriodicOrbit> enumerate_periodic_orbits(const MapSpec& map,
                                                     int max_period,
                                                     int period_cap = 20);

/// (1/p) sum_k phi(points[k]).
double orbit_average(const PeriodicOrbit& orbit, const Observable& phi);

/// min over orbit points of the space metric.
double dist_to_orbit(const Real& x, const PeriodicOrbit& orbit, Space space);

}  // namespace ergopt

#endif
