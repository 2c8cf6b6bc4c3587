#include "ergopt/orbits.hpp"

#include <algorithm>
#include <cmath>

#include "ergopt/errors.hpp"

namespace ergopt {

std::string canonical_rotation(const std::string& word) {
  std::string best = word;
  std::string rot = word;
  for (std::size_t k = 1; k < word.size(); ++k) {
    std::rotate(rot.begin(), rot.begin() + 1, rot.end());
    if (rot < best) best = rot;
  }
  return best;
}

namespace {

bool is_power_of_shorter(const std::string& w) {
  int p = int(w.size());
  for (int q = 1; q < p; ++q) {
    if (p % q != 0) continue;
    bool rep = true;
    for (int i = q; i < p && rep; ++i) rep = w[i] == w[i - q];
    if (rep) return true;
  }
  return false;
}

char symbol_char(const MapSpec& map, int branch) {
  if (map.unimodal()) return branch == 0 ? 'L' : 'R';
  return char('0' + branch);
}

// Affine inverse branch y -> m*y + b for the exact kinds.
struct AffineR {
  Rational m, b;
};

AffineR exact_branch(const MapSpec& map, int symbol) {
  if (map.kind == MapKind::Doubling)
    return {Rational(1, 2), Rational(symbol, 2)};
  // tent: L: y/a, R: 2 - y/a
  Rational inv_a = Rational(1) / map.tent_slope.rat();
  if (symbol == 0) return {inv_a, Rational(0)};
  return {-inv_a, Rational(2)};
}

// Fixed point of B_{w0} o B_{w1} o ... o B_{w(p-1)} for exact kinds.
Real exact_word_fixed_point(const MapSpec& map, const std::vector<int>& word) {
  Rational m(1), b(0);
  for (int k = int(word.size()) - 1; k >= 0; --k) {
    AffineR br = exact_branch(map, word[k]);
    // B o cur: y -> br.m*(m*y + b) + br.b
    b = br.m * b + br.b;
    m = br.m * m;
  }
  return Real(Rational(b / (1 - m)));
}

// Numeric backend: contract with the composed inverse branches, then polish
// with Newton on T^p(x) - x.
double numeric_word_fixed_point(const MapSpec& map, const std::vector<int>& word) {
  const int p = int(word.size());
  double lo = map.domain_lo().to_double(), hi = map.domain_hi().to_double();
  double z = 0.5 * (lo + hi);
  for (int it = 0; it < 200; ++it) {
    double cur = z;
    for (int k = p - 1; k >= 0; --k) {
      Real y(cur);
      auto inv = inverse_branch(map, word[k], y);
      if (!inv) {
        // transiently outside the branch image: clamp and continue
        double cap = map.kind == MapKind::Quadratic ? map.quad_a * 0.25
                                                    : map.tent_slope.to_double();
        cur = std::min(std::max(cur, 0.0), cap);
        inv = inverse_branch(map, word[k], Real(cur));
        if (!inv) return std::numeric_limits<double>::quiet_NaN();
      }
      cur = inv->to_double();
    }
    double delta = map.space() == Space::Circle
                       ? space_dist(Space::Circle, cur, z)
                       : std::fabs(cur - z);
    z = cur;
    if (delta < 1e-13) break;
  }
  // Newton on f(x) = T^p(x) - x with derivative prod |T'| - 1
  for (int it = 0; it < 6; ++it) {
    double x = z, deriv = 1.0;
    bool ok = true;
    for (int k = 0; k < p; ++k) {
      Real xr(x);
      try {
        deriv *= derivative_abs(map, xr) *
                 (map.unimodal() && branch_index(map, xr) == 1 ? -1.0 : 1.0);
      } catch (const NotDifferentiable&) {
        ok = false;
        break;
      }
      x = eval_map(map, xr).to_double();
    }
    if (!ok) break;
    double f = x - z;
    if (map.space() == Space::Circle) f = f - std::round(f);
    double fp = deriv - 1.0;
    if (std::fabs(fp) < 1e-12) break;
    double step = f / fp;
    z -= step;
    if (map.space() == Space::Circle)
      z -= std::floor(z);
    else
      z = std::min(std::max(z, lo), hi);  // cancellation can leave tiny residue
    if (std::fabs(step) < 1e-14) break;
  }
  return z;
}

struct CoreBox {
  bool restrict_core = false;
  Real lo, hi;
};

bool point_in_core(const MapSpec& map, const CoreBox& core, const Real& x) {
  if (!core.restrict_core) return true;
  if (map.exact_kind()) return core.lo <= x && x <= core.hi;
  double xd = x.to_double();
  return xd >= core.lo.to_double() - kEqTol && xd <= core.hi.to_double() + kEqTol;
}

// Forward-validate a candidate fixed point against its branch word; returns
// the orbit on success.
std::optional<PeriodicOrbit> validate_candidate(const MapSpec& map,
                                                const std::vector<int>& word,
                                                const Real& x0, const CoreBox& core) {
  const int p = int(word.size());
  std::vector<Real> pts;
  pts.reserve(p);
  Real x = map.space() == Space::Circle ? x0.mod1() : x0;
  for (int k = 0; k < p; ++k) {
    if (map.unimodal() && (x < map.domain_lo() || x > map.domain_hi()))
      return std::nullopt;
    if (!point_in_core(map, core, x)) return std::nullopt;
    int b = branch_index(map, x);
    if (b != word[k]) return std::nullopt;  // also rejects b == -1 (turning point)
    pts.push_back(x);
    x = eval_map(map, x);
  }
  // closure
  if (map.exact_kind()) {
    if (!(x == pts[0])) return std::nullopt;
  } else {
    double d = map.space() == Space::Circle
                   ? space_dist(Space::Circle, x.to_double(), pts[0].to_double())
                   : std::fabs(x.to_double() - pts[0].to_double());
    if (d > kEqTol) return std::nullopt;
  }
  // minimal period; the word is aperiodic, so this only guards numeric merges
  if (!map.exact_kind()) {
    for (int q = 1; q < p; ++q) {
      if (p % q != 0) continue;
      double d = space_dist(map.space() == Space::Circle ? Space::Circle : Space::Interval,
                            pts[q].to_double(), pts[0].to_double());
      if (d <= kEqTol) return std::nullopt;
    }
  }
  PeriodicOrbit orbit;
  orbit.period = p;
  orbit.points = std::move(pts);
  orbit.exact = map.exact_kind();
  std::string w;
  for (int s : word) w += symbol_char(map, s);
  orbit.itinerary = w;
  return orbit;
}

}  // namespace

std::vector<PeriodicOrbit> enumerate_periodic_orbits(const MapSpec& map, int max_period,
                                                     int period_cap) {
  if (max_period < 1) throw DomainError("max_period must be >= 1");
  if (max_period > period_cap)
    throw CapExceeded("max_period " + std::to_string(max_period) + " exceeds cap " +
                      std::to_string(period_cap));
  const int nb = map.branch_count();
  if (std::pow(double(nb), max_period) > double(1 << 22))
    throw CapExceeded("branch words exceed enumeration budget");

  CoreBox core;
  if (map.unimodal()) {
    RenormCore rc = renorm_core(map);
    core.restrict_core = true;
    core.lo = rc.lo;
    core.hi = rc.hi;
  }

  std::vector<PeriodicOrbit> out;
  std::vector<int> word;
  std::string wstr;
  for (int p = 1; p <= max_period; ++p) {
    long total = 1;
    for (int k = 0; k < p; ++k) total *= nb;
    word.assign(p, 0);
    wstr.assign(p, '0');
    for (long code = 0; code < total; ++code) {
      long c = code;
      for (int k = p - 1; k >= 0; --k) {
        word[k] = int(c % nb);
        wstr[k] = char('0' + word[k]);
        c /= nb;
      }
      if (is_power_of_shorter(wstr)) continue;
      if (canonical_rotation(wstr) != wstr) continue;
      Real x0 = map.exact_kind() ? exact_word_fixed_point(map, word)
                                 : Real(numeric_word_fixed_point(map, word));
      if (!map.exact_kind() && !std::isfinite(x0.to_double())) continue;
      if (map.kind == MapKind::Doubling) x0 = x0.mod1();
      if (auto orbit = validate_candidate(map, word, x0, core))
        out.push_back(std::move(*orbit));
    }
  }
  std::sort(out.begin(), out.end(), [](const PeriodicOrbit& a, const PeriodicOrbit& b) {
    if (a.period != b.period) return a.period < b.period;
    return a.itinerary < b.itinerary;
  });
  return out;
}

double orbit_average(const PeriodicOrbit& orbit, const Observable& phi) {
  double s = 0.0;
  for (const Real& p : orbit.points) s += phi.eval(p);
  return s / double(orbit.period);
}

double dist_to_orbit(const Real& x, const PeriodicOrbit& orbit, Space space) {
  double best = std::numeric_limits<double>::infinity();
  double xd = x.to_double();
  for (const Real& p : orbit.points)
    best = std::min(best, space_dist(space, xd, p.to_double()));
  return best;
}

}  // namespace ergopt
