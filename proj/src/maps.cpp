#include "ergopt/maps.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "ergopt/errors.hpp"

namespace ergopt {

namespace {

// Lift of a circle cover: F(x) = x + (d-1) x^(1+alpha), F: [0,1] -> [0,d].
double cover_lift(const MapSpec& m, double x) {
  return x + (m.degree - 1) * std::pow(x, 1.0 + m.alpha);
}

double cover_lift_deriv(const MapSpec& m, double x) {
  if (x == 0.0) return m.alpha > 0.0 ? 1.0 : double(m.degree);
  return 1.0 + (1.0 + m.alpha) * (m.degree - 1) * std::pow(x, m.alpha);
}

// Solve F(x) = target on [lo,hi] (F strictly increasing): bisection bracket
// with Newton refinement, at most 80 iterations.
double cover_invert(const MapSpec& m, double target, double lo, double hi) {
  double a = lo, b = hi;
  double x = 0.5 * (a + b);
  for (int it = 0; it < 80; ++it) {
    double fx = cover_lift(m, x) - target;
    if (std::fabs(fx) < kRootTol * 0.01) break;
    if (fx > 0)
      b = x;
    else
      a = x;
    double d = cover_lift_deriv(m, x);
    double xn = x - fx / d;
    if (!(xn > a && xn < b)) xn = 0.5 * (a + b);  // Newton left the bracket
    if (std::fabs(xn - x) < 1e-17) {
      x = xn;
      break;
    }
    x = xn;
  }
  return std::min(std::max(x, lo), hi);
}

void check_domain(const MapSpec& m, const Real& x) {
  if (m.space() == Space::Circle) return;  // circle points are reduced mod 1
  if (x < m.domain_lo() || x > m.domain_hi())
    throw DomainError("point " + x.str() + " outside domain of " + m.descriptor());
}

}  // namespace

MapSpec MapSpec::tent(Real a) {
  if (!(a.to_double() > 1.0) || a.to_double() > 2.0)
    throw DomainError("tent slope must lie in (1,2]");
  MapSpec m;
  m.kind = MapKind::Tent;
  m.tent_slope = std::move(a);
  return m;
}

MapSpec MapSpec::quadratic(double a) {
  if (!(a > 0.0) || a > 4.0) throw DomainError("quadratic parameter must lie in (0,4]");
  MapSpec m;
  m.kind = MapKind::Quadratic;
  m.quad_a = a;
  return m;
}

MapSpec MapSpec::doubling() {
  MapSpec m;
  m.kind = MapKind::Doubling;
  return m;
}

MapSpec MapSpec::cover(int d, double alpha) {
  if (d < 2) throw DomainError("cover degree must be >= 2");
  if (d > 10) throw DomainError("cover degree capped at 10");
  if (alpha < 0.0) throw DomainError("cover stickiness exponent must be >= 0");
  MapSpec m;
  m.kind = MapKind::CircleCover;
  m.degree = d;
  m.alpha = alpha;
  return m;
}

MapSpec MapSpec::parse(const std::string& descriptor) {
  std::string head = descriptor, args;
  if (auto colon = descriptor.find(':'); colon != std::string::npos) {
    head = descriptor.substr(0, colon);
    args = descriptor.substr(colon + 1);
  }
  auto get = [&args](const std::string& key) -> std::optional<std::string> {
    std::stringstream ss(args);
    std::string item;
    while (std::getline(ss, item, ',')) {
      auto eq = item.find('=');
      if (eq != std::string::npos && item.substr(0, eq) == key)
        return item.substr(eq + 1);
    }
    return std::nullopt;
  };
  if (head == "doubling") return doubling();
  if (head == "tent") {
    auto a = get("a");
    if (!a) throw DomainError("tent descriptor needs a=<slope>");
    return tent(Real(rational_from_decimal(*a)));
  }
  if (head == "quad") {
    auto a = get("a");
    if (!a) throw DomainError("quad descriptor needs a=<parameter>");
    return quadratic(std::stod(*a));
  }
  if (head == "cover") {
    auto d = get("d");
    if (!d) throw DomainError("cover descriptor needs d=<degree>");
    double alpha = 0.0;
    if (auto al = get("alpha")) alpha = std::stod(*al);
    return cover(std::stoi(*d), alpha);
  }
  throw DomainError("unknown map descriptor: " + descriptor);
}

std::string MapSpec::descriptor() const {
  switch (kind) {
    case MapKind::Tent: {
      char buf[48];
      std::snprintf(buf, sizeof buf, "tent:a=%.17g", tent_slope.to_double());
      return buf;
    }
    case MapKind::Quadratic: {
      char buf[48];
      std::snprintf(buf, sizeof buf, "quad:a=%.17g", quad_a);
      return buf;
    }
    case MapKind::Doubling: return "doubling";
    case MapKind::CircleCover: {
      char buf[64];
      std::snprintf(buf, sizeof buf, "cover:d=%d,alpha=%.17g", degree, alpha);
      return buf;
    }
  }
  return "";
}

Real MapSpec::domain_hi() const {
  switch (kind) {
    case MapKind::Tent: return Real(2);
    case MapKind::Quadratic: return Real(1);
    default: return Real(1);  // circle, represented as [0,1)
  }
}

Real MapSpec::marker() const {
  switch (kind) {
    case MapKind::Tent: return Real(1);
    case MapKind::Quadratic: return Real(Rational(1, 2));
    default: return Real(0);
  }
}

int MapSpec::branch_count() const {
  switch (kind) {
    case MapKind::Tent:
    case MapKind::Quadratic: return 2;
    case MapKind::Doubling: return 2;
    case MapKind::CircleCover: return degree;
  }
  return 2;
}

double MapSpec::sup_derivative() const {
  switch (kind) {
    case MapKind::Tent: return tent_slope.to_double();
    case MapKind::Quadratic: return quad_a;
    case MapKind::Doubling: return 2.0;
    case MapKind::CircleCover: return cover_lift_deriv(*this, 1.0);
  }
  return 0.0;
}

double MapSpec::min_derivative() const {
  switch (kind) {
    case MapKind::Tent: return tent_slope.to_double();
    case MapKind::Quadratic: return 0.0;
    case MapKind::Doubling: return 2.0;
    case MapKind::CircleCover: return alpha > 0.0 ? 1.0 : double(degree);
  }
  return 0.0;
}

Real eval_map(const MapSpec& map, const Real& x) {
  check_domain(map, x);
  switch (map.kind) {
    case MapKind::Tent: {
      if (map.tent_slope.exact() && x.exact()) {
        Rational xr = x.rat();
        Rational d = xr - 1;
        if (d < 0) d = -d;
        return Real(Rational(map.tent_slope.rat() * (1 - d)));
      }
      double xd = x.to_double();
      return Real(map.tent_slope.to_double() * (1.0 - std::fabs(xd - 1.0)));
    }
    case MapKind::Quadratic: {
      double xd = x.to_double();
      return Real(map.quad_a * xd * (1.0 - xd));
    }
    case MapKind::Doubling: {
      if (x.exact()) return (Real(2) * x.mod1()).mod1();
      double xd = x.mod1().to_double() * 2.0;
      return Real(xd >= 1.0 ? xd - 1.0 : xd);
    }
    case MapKind::CircleCover: {
      double xd = x.mod1().to_double();
      double y = cover_lift(map, xd);
      return Real(y - std::floor(y)).mod1();
    }
  }
  return Real(0);
}

double derivative_abs(const MapSpec& map, const Real& x) {
  check_domain(map, x);
  switch (map.kind) {
    case MapKind::Tent:
      if (x == map.marker())
        throw NotDifferentiable("tent map has no derivative at the turning point");
      return map.tent_slope.to_double();
    case MapKind::Quadratic:
      return std::fabs(map.quad_a * (1.0 - 2.0 * x.to_double()));
    case MapKind::Doubling:
      return 2.0;
    case MapKind::CircleCover:
      return cover_lift_deriv(map, x.mod1().to_double());
  }
  return 0.0;
}

int branch_index(const MapSpec& map, const Real& x) {
  if (map.unimodal()) {
    int c = cmp(x, map.marker());
    return c < 0 ? 0 : (c > 0 ? 1 : -1);
  }
  if (map.kind == MapKind::Doubling)
    return x.mod1() < Real(Rational(1, 2)) ? 0 : 1;
  // circle cover: branch i covers lift values [i, i+1]
  double y = cover_lift(map, x.mod1().to_double());
  int b = int(std::floor(y));
  return std::min(std::max(b, 0), map.degree - 1);
}

std::optional<Real> inverse_branch(const MapSpec& map, int branch, const Real& y) {
  switch (map.kind) {
    case MapKind::Tent: {
      // L: x = y/a on [0,1]; R: x = 2 - y/a on [1,2]; both need 0 <= y <= a
      if (y < Real(0) || y > map.tent_slope) return std::nullopt;
      Real q = y / map.tent_slope;
      return branch == 0 ? q : Real(2) - q;
    }
    case MapKind::Quadratic: {
      double yd = y.to_double();
      if (yd < 0.0 || yd > map.quad_a * 0.25) return std::nullopt;
      double s = std::sqrt(std::max(0.25 - yd / map.quad_a, 0.0));
      return Real(branch == 0 ? 0.5 - s : 0.5 + s);
    }
    case MapKind::Doubling: {
      Real q = y.mod1() / Real(2);
      return branch == 0 ? q : q + Real(Rational(1, 2));
    }
    case MapKind::CircleCover: {
      double target = y.mod1().to_double() + branch;
      if (branch < 0 || branch >= map.degree) return std::nullopt;
      double lo = branch == 0 ? 0.0 : cover_invert(map, double(branch), 0.0, 1.0);
      double hi =
          branch == map.degree - 1 ? 1.0 : cover_invert(map, double(branch + 1), 0.0, 1.0);
      return Real(cover_invert(map, target, lo, hi)).mod1();
    }
  }
  return std::nullopt;
}

Real lift_inverse(const MapSpec& map, const Real& target) {
  if (map.kind == MapKind::Doubling) return target / Real(2);
  if (map.kind != MapKind::CircleCover)
    throw DomainError("lift_inverse is defined for circle kinds");
  return Real(cover_invert(map, target.to_double(), 0.0, 1.0));
}

std::vector<Real> preimages(const MapSpec& map, const Real& y) {
  check_domain(map, y);
  std::vector<Real> out;
  for (int b = 0; b < map.branch_count(); ++b) {
    if (auto p = inverse_branch(map, b, y)) out.push_back(*p);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

double birkhoff_sum(const MapSpec& map, const Observable& phi, Real x, int n) {
  if (n < 1) throw DomainError("birkhoff_sum needs n >= 1");
  check_domain(map, x);
  double s = 0.0;
  for (int k = 0; k < n; ++k) {
    s += phi.eval(x);
    x = eval_map(map, x);
  }
  return s;
}

void interval_image(const MapSpec& map, const Real& lo, const Real& hi, Real& out_lo,
                    Real& out_hi) {
  if (map.unimodal()) {
    Real a = eval_map(map, lo), b = eval_map(map, hi);
    out_lo = min(a, b);
    out_hi = max(a, b);
    Real c = map.marker();
    if (lo < c && c < hi) {
      Real tc = eval_map(map, c);
      out_lo = min(out_lo, tc);
      out_hi = max(out_hi, tc);
    }
    return;
  }
  // circle kinds in lift coordinates; lo,hi are taken in [0,1]
  if (map.kind == MapKind::Doubling) {
    out_lo = Real(2) * lo;
    out_hi = Real(2) * hi;
  } else {
    out_lo = Real(cover_lift(map, lo.to_double()));
    out_hi = Real(cover_lift(map, hi.to_double()));
  }
}

namespace {

// T^n of a point with the map's native arithmetic.
Real iterate(const MapSpec& map, Real x, int n) {
  for (int k = 0; k < n; ++k) x = eval_map(map, x);
  return x;
}

// Interval hull of T^n([lo,hi]).
void iterate_interval(const MapSpec& map, Real lo, Real hi, int n, Real& out_lo,
                      Real& out_hi) {
  for (int k = 0; k < n; ++k) {
    Real a, b;
    interval_image(map, lo, hi, a, b);
    lo = a;
    hi = b;
  }
  out_lo = lo;
  out_hi = hi;
}

// c strictly inside [T^r c, T^{2r} c] and T^r-invariance of that interval.
bool core_candidate(const MapSpec& map, int r, Real& lo, Real& hi, double tol) {
  Real c = map.marker();
  Real u = iterate(map, c, r);
  Real v = iterate(map, u, r);
  lo = min(u, v);
  hi = max(u, v);
  if (!(lo < c && c < hi)) return false;
  Real img_lo, img_hi;
  iterate_interval(map, lo, hi, r, img_lo, img_hi);
  if (map.exact_kind()) return img_lo == lo && img_hi == hi;
  return std::fabs(img_lo.to_double() - lo.to_double()) <= tol &&
         std::fabs(img_hi.to_double() - hi.to_double()) <= tol;
}

}  // namespace

RenormCore renorm_core(const MapSpec& map, int r_max) {
  if (!map.unimodal())
    throw DomainError("renormalization core is defined for unimodal kinds only");
  const double tol = kEqTol;
  for (int r = 1; r <= r_max; ++r) {
    Real lo, hi;
    if (!core_candidate(map, r, lo, hi, tol)) continue;
    // Reject r when the doubled period yields a strictly smaller invariant
    // core: then T^r on Y is itself renormalizable and r is not final.
    Real lo2, hi2;
    if (core_candidate(map, 2 * r, lo2, hi2, tol)) {
      double shrink = (hi.to_double() - lo.to_double()) -
                      (hi2.to_double() - lo2.to_double());
      if (shrink > tol) continue;
    }
    RenormCore out;
    out.r = r;
    out.lo = lo;
    out.hi = hi;
    return out;
  }
  throw NotFound("no renormalization core found with r <= " + std::to_string(r_max));
}

}  // namespace ergopt
