#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "ergopt/errors.hpp"
#include "ergopt/optimize.hpp"
#include "ergopt/subaction.hpp"

using namespace ergopt;

namespace {

Observable circ(const std::string& src) { return parse_observable(src, Space::Circle); }

// Exhaustive oracle: max over 1 <= n <= N, y in T^{-n} x of S_n(phi - beta)(y),
// expanding the full preimage tree through the library preimage sets.
double exhaustive_psi(const MapSpec& map, const Observable& phi, double beta, double x,
                      int depth) {
  std::vector<std::pair<Real, double>> level{{Real(x), 0.0}};
  double best = -1e300;
  for (int n = 1; n <= depth; ++n) {
    std::vector<std::pair<Real, double>> next;
    for (const auto& [pt, sum] : level) {
      for (const Real& y : preimages(map, pt)) {
        double s = sum + phi.eval(y) - beta;
        best = std::max(best, s);
        next.emplace_back(y, s);
      }
    }
    level = std::move(next);
  }
  return best;
}

}  // namespace

TEST_CASE("constant observable gives the zero sub-action") {
  MapSpec dbl = MapSpec::doubling();
  Observable c = circ("0.8");
  for (int depth : {1, 3, 7}) {
    SubActionTable t = subaction_candidate(dbl, c, 0.8, depth, 64);
    for (double v : t.psi) CHECK(v == doctest::Approx(0.0));
    CHECK(t.lip_observed == doctest::Approx(0.0));
    // zero slack everywhere: the whole grid is the contact set
    ViolationReport rep = verify_subaction(dbl, c, 0.8, t, 1e-9);
    CHECK(rep.pass);
    CHECK(rep.max_slack == doctest::Approx(0.0));
    for (bool flag : rep.contact) CHECK(flag);
  }
}

TEST_CASE("coboundary input is recovered up to a constant") {
  MapSpec dbl = MapSpec::doubling();
  Observable cob = circ("0.3*sin(2*pi*2*x) - 0.3*sin(2*pi*x)");
  SubActionTable t = subaction_candidate(dbl, cob, 0.0, 12, 1024);
  double lo = 1e300, hi = -1e300;
  for (std::size_t i = 0; i < t.grid.size(); ++i) {
    double diff = t.psi[i] - 0.3 * std::sin(2 * M_PI * t.grid[i]);
    lo = std::min(lo, diff);
    hi = std::max(hi, diff);
  }
  // psi - psi0 converges to -min psi0 = 0.3 as the preimages fill in
  CHECK(hi - lo <= 1e-2);
  CHECK(lo == doctest::Approx(0.3).epsilon(1e-4));

  ViolationReport v = verify_subaction(dbl, cob, 0.0, t, 1e-2);
  CHECK(v.pass);

  // psi inherits roughly the generator's regularity: lip < 2 lip(psi0)
  LipschitzProfile lp = lipschitz_profile(dbl, cob, t);
  CHECK(lp.lip_observed <= 2 * 0.3 * 2 * M_PI + 0.1);
}

TEST_CASE("depth-14 certificate for -cos on the doubling map") {
  MapSpec dbl = MapSpec::doubling();
  Observable phi = circ("-cos(2*pi*x)");
  SubActionTable t = subaction_candidate(dbl, phi, 0.5, 14, 1024);
  CHECK(t.marker_value_below_beta);  // phi(0) = -1 < 1/2
  ViolationReport v = verify_subaction(dbl, phi, 0.5, t, 1e-3);
  CHECK(v.pass);
  CHECK(v.marker_excluded);
  CHECK(v.contact_avoids_vm);
  LipschitzProfile lp = lipschitz_profile(dbl, phi, t);
  REQUIRE(lp.claim_bound);
  CHECK(*lp.claim_bound == doctest::Approx(6 * M_PI));
  CHECK(lp.lip_observed <= *lp.claim_bound);
  CHECK(lp.pass);
}

TEST_CASE("monotone in depth, pointwise") {
  MapSpec dbl = MapSpec::doubling();
  Observable phi = circ("-cos(2*pi*x) + 0.2*sin(2*pi*x)");
  double beta = beta_periodic(dbl, phi, 10).beta;
  SubActionTable prev = subaction_candidate(dbl, phi, beta, 1, 128);
  for (int depth = 2; depth <= 9; ++depth) {
    SubActionTable cur = subaction_candidate(dbl, phi, beta, depth, 128);
    for (std::size_t i = 0; i < cur.psi.size(); ++i)
      CHECK(cur.psi[i] >= prev.psi[i] - 1e-12);
    prev = std::move(cur);
  }
}

TEST_CASE("pruning returns exactly the exhaustive values") {
  MapSpec dbl = MapSpec::doubling();
  Observable phi = circ("-cos(2*pi*x) + 0.1*sin(2*pi*3*x)");
  double beta = beta_periodic(dbl, phi, 10).beta;
  for (int depth : {4, 8}) {
    SubActionTable t = subaction_candidate(dbl, phi, beta, depth, 64);
    for (int i = 0; i < 64; ++i) {
      double oracle = exhaustive_psi(dbl, phi, beta, t.grid[i], depth);
      CHECK(t.psi[i] == doctest::Approx(oracle).epsilon(1e-12));
    }
  }
}

TEST_CASE("sticky cover with marker value at beta does not stabilize") {
  MapSpec cover = MapSpec::cover(2, 1.0);
  // phi(0) = 0 = beta (the fixed point carries the maximum) and phi > 0 on a
  // punctured neighborhood, so lingering preimage paths keep improving
  Observable phi = circ("dist(x,[0])*(1 - 6*dist(x,[0]))");
  SubActionTable shallow = subaction_candidate(cover, phi, 0.0, 8, 128, 10'000'000, 5e-3);
  SubActionTable deep = subaction_candidate(cover, phi, 0.0, 14, 128, 10'000'000, 5e-3);
  CHECK_FALSE(deep.stabilized);
  CHECK(deep.sup_psi > shallow.sup_psi + 0.1);  // still climbing
  REQUIRE(deep.min_excursion_freq);
  CHECK(*deep.min_excursion_freq == doctest::Approx(0.0));  // paths hug the fixed point

  // with phi(c) < beta the same cover stabilizes and the achieving paths
  // spend their time away from the fixed point
  Observable good = circ("-cos(2*pi*x)");
  double beta = beta_periodic(cover, good, 10).beta;
  SubActionTable g = subaction_candidate(cover, good, beta, 12, 128, 10'000'000, 5e-3);
  CHECK(g.stabilized);
  CHECK(g.marker_value_below_beta);
  REQUIRE(g.min_excursion_freq);
  CHECK(*g.min_excursion_freq > 0.5);
}

TEST_CASE("sup bound from the recorded constants") {
  // sup psi_N <= s C_* + L with s = 6, C_* = sup|phi - beta|, L the
  // uniformly-expanding bound
  MapSpec dbl = MapSpec::doubling();
  Observable phi = circ("-cos(2*pi*x)");
  SubActionTable t = subaction_candidate(dbl, phi, 0.5, 14, 512);
  LipschitzProfile lp = lipschitz_profile(dbl, phi, t);
  double c_star = sup_abs_bound(phi) + 0.5;
  CHECK(t.sup_psi <= 6 * c_star + *lp.claim_bound);
}

TEST_CASE("protective arcs around the fixed point") {
  MapSpec dbl = MapSpec::doubling();
  VInterval v2 = v_interval(dbl, 2);
  CHECK(v2.a == doctest::Approx(0.75));
  CHECK(v2.b == doctest::Approx(0.25));
  CHECK(v2.contains(0.9));
  CHECK(v2.contains(0.1));
  CHECK_FALSE(v2.contains(0.5));

  // arcs shrink with depth
  VInterval v6 = v_interval(dbl, 6);
  CHECK(v6.a == doctest::Approx(1.0 - 1.0 / 64));
  CHECK(v6.b == doctest::Approx(1.0 / 64));
}

TEST_CASE("sub-action preconditions") {
  Observable phi = parse_observable("x", Space::Interval, 0.0, 2.0);
  CHECK_THROWS_AS(subaction_candidate(MapSpec::tent(Real(2)), phi, 1.0, 4, 32),
                  DomainError);
  Observable c = circ("0");
  CHECK_THROWS_AS(subaction_candidate(MapSpec::doubling(), c, 0.0, 0, 32), DomainError);
  // tiny node cap trips the overflow guard (beta = 0 leaves positive slack,
  // so nothing prunes)
  CHECK_THROWS_AS(subaction_candidate(MapSpec::doubling(), circ("cos(2*pi*x)"), 0.0, 12,
                                      64, 100),
                  DepthOverflow);
}
