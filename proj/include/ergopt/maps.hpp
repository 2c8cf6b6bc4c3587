#ifndef ERGOPT_MAPS_HPP
#define ERGOPT_MAPS_HPP

#include <optional>
#include <string>
#include <vector>

#include "ergopt/observable.hpp"
#include "ergopt/real.hpp"

namespace ergopt {

enum class MapKind { Tent, Quadratic, Doubling, CircleCover };

/// One-dimensional dynamical system with explicit branch structure.
///
///   Tent        T_a(x) = a(1-|x-1|) on [0,2], turning point c = 1
///   Quadratic   Q_a(x) = a x(1-x) on [0,1], turning point c = 1/2
///   Doubling    x -> 2x mod 1 on the circle
///   CircleCover x -> x + (d-1) x^(1+alpha) mod 1, degree d, indifferent
///               fixed point 0 when alpha > 0 (alpha = 0 gives x -> dx)
///
/// Tent with a rational slope and Doubling evaluate in exact rational
/// arithmetic; the other kinds are floating point.
struct MapSpec {
  MapKind kind = MapKind::Doubling;
  Real tent_slope = Real(2);  // Tent
  double quad_a = 4.0;        // Quadratic
  int degree = 2;             // CircleCover
  double alpha = 0.0;         // CircleCover stickiness exponent

  static MapSpec tent(Real a);
  static MapSpec quadratic(double a);
  static MapSpec doubling();
  static MapSpec cover(int d, double alpha);

  /// Parse a descriptor: "tent:a=2", "quad:a=3.9", "doubling",
  /// "cover:d=2,alpha=0.5".
  static MapSpec parse(const std::string& descriptor);
  std::string descriptor() const;

  Space space() const {
    return (kind == MapKind::Tent || kind == MapKind::Quadratic) ? Space::Interval
                                                                 : Space::Circle;
  }
  bool unimodal() const { return space() == Space::Interval; }

  /// Orbit arithmetic is exact for this kind and rational inputs.
  bool exact_kind() const {
    return kind == MapKind::Doubling ||
           (kind == MapKind::Tent && tent_slope.exact());
  }

  Real domain_lo() const { return Real(0); }
  Real domain_hi() const;

  /// Turning point for unimodal kinds; the distinguished fixed point for
  /// circle kinds.
  Real marker() const;

  int branch_count() const;
  double sup_derivative() const;
  double min_derivative() const;
};

/// T(x). Throws DomainError outside the domain. Circle results are
/// normalized into [0,1).
Real eval_map(const MapSpec& map, const Real& x);

/// |T'(x)| where defined; throws NotDifferentiable at the tent turning point.
double derivative_abs(const MapSpec& map, const Real& x);

/// All solutions of T(x) = y, ascending. Empty when y has no preimage
/// (e.g. y > a for a tent map). Exact for exact kinds.
std::vector<Real> preimages(const MapSpec& map, const Real& y);

/// Branch index of x: 0 (left) / 1 (right) for unimodal kinds, the lift
/// branch 0..d-1 for circle kinds. Returns -1 exactly at the turning point.
int branch_index(const MapSpec& map, const Real& x);

/// Inverse of the given monotone branch at y, if y is in that branch's image.
std::optional<Real> inverse_branch(const MapSpec& map, int branch, const Real& y);

/// Inverse of the lift F: [0,1] -> [0,deg] of a circle kind at `target`,
/// without any mod-1 reduction of the result.
Real lift_inverse(const MapSpec& map, const Real& target);

/// S_n phi(x) = sum_{0<=k<n} phi(T^k x).
double birkhoff_sum(const MapSpec& map, const Observable& phi, Real x, int n);

/// Interval hull of T([lo,hi]) (splits at the turning point as needed).
/// For circle kinds the image is returned in lift coordinates, i.e. an
/// interval of length |F(hi)-F(lo)| that may exceed 1.
void interval_image(const MapSpec& map, const Real& lo, const Real& hi, Real& out_lo,
                    Real& out_hi);

struct RenormCore {
  int r = 1;
  Real lo, hi;
};

/// Minimal r with c strictly between T^r c and T^{2r} c, T^r-invariant
/// core Y = [T^r c, T^{2r} c], and no deeper period-doubling inside Y
/// (so T^r restricted to Y is not renormalizable again). Throws NotFound
/// past r_max.
RenormCore renorm_core(const MapSpec& map, int r_max = 8);

}  // namespace ergopt

#endif
