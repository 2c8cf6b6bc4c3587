#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "ergopt/errors.hpp"
#include "ergopt/experiments.hpp"
#include "ergopt/serialize.hpp"

using namespace ergopt;

namespace {

Observable circ(const std::string& src) { return parse_observable(src, Space::Circle); }

PeriodicOrbit orbit_with_itinerary(const MapSpec& map, int max_period,
                                   const std::string& itin) {
  for (auto& o : enumerate_periodic_orbits(map, max_period))
    if (o.itinerary == itin) return o;
  REQUIRE(false);
  return {};
}

}  // namespace

TEST_CASE("domination constants from the orbit geometry") {
  MapSpec dbl = MapSpec::doubling();
  PeriodicOrbit fixed = orbit_with_itinerary(dbl, 1, "0");
  CHECK(domination_constant(dbl, fixed) == 1.0);

  // {1/3, 2/3}: half-gap 1/6, contraction budget 1/12, diameter 1/3 -> C = 9
  PeriodicOrbit two = orbit_with_itinerary(dbl, 2, "01");
  CHECK(domination_constant(dbl, two) == doctest::Approx(9.0).epsilon(1e-12));

  // {1/7, 2/7, 4/7}: half-gap 1/14, budget 1/56, diameter 3/7 -> C = 73
  PeriodicOrbit three = orbit_with_itinerary(dbl, 3, "001");
  REQUIRE(three.points[0] == Real::ratio(1, 7));
  CHECK(domination_constant(dbl, three) == doctest::Approx(73.0).epsilon(1e-12));
}

TEST_CASE("domination inequality spot-check at random points") {
  MapSpec dbl = MapSpec::doubling();
  PeriodicOrbit two = orbit_with_itinerary(dbl, 2, "01");
  double c_const = domination_constant(dbl, two);
  TrialRng rng(7, 0);
  for (int i = 0; i < 1000; ++i) {
    double x0 = rng.uniform();
    // lhs: min over y in O of sum dist(T^k x, T^k y); rhs: C sum dist(T^k x, O)
    double sum_orbit = 0.0;
    std::vector<double> sums_pointwise(two.period, 0.0);
    Real x(x0);
    for (int k = 0; k < two.period; ++k) {
      sum_orbit += dist_to_orbit(x, two, Space::Circle);
      for (int j = 0; j < two.period; ++j) {
        double y = two.points[(j + k) % two.period].to_double();
        sums_pointwise[j] += space_dist(Space::Circle, x.to_double(), y);
      }
      x = eval_map(dbl, x);
    }
    double lhs = *std::min_element(sums_pointwise.begin(), sums_pointwise.end());
    CHECK(lhs <= c_const * sum_orbit + 1e-12);
  }
}

TEST_CASE("locking holds under certified small perturbations") {
  MapSpec dbl = MapSpec::doubling();
  Observable base = circ("-dist(x,[0.33333333333333331,0.66666666666666663])");
  PeriodicOrbit two = orbit_with_itinerary(dbl, 2, "01");

  ExperimentConfig cfg;
  cfg.eps = 0.1;
  cfg.trials = 40;
  cfg.max_period = 8;
  cfg.seed = 42;
  double c_const = domination_constant(dbl, two);
  cfg.delta = cfg.eps / (2 * c_const);
  LockingReport rep = locking_experiment(dbl, base, two, cfg);
  CHECK(rep.c_domination == doctest::Approx(9.0));
  CHECK(rep.pass);
  CHECK(rep.pass_fraction == 1.0);
  for (const auto& t : rep.trials) {
    CHECK(t.qualifying);
    CHECK(t.kept);
    CHECK(t.margin < 0.0);
  }

  // delta = 0 leaves the locked base observable alone
  cfg.delta = 0.0;
  cfg.trials = 3;
  LockingReport none = locking_experiment(dbl, base, two, cfg);
  CHECK(none.pass);

  // the wrong base orbit is rejected up front
  PeriodicOrbit fixed = orbit_with_itinerary(dbl, 1, "0");
  CHECK_THROWS_AS(locking_experiment(dbl, base, fixed, cfg), BaseNotMaximized);
}

TEST_CASE("oversized perturbations are recorded, not asserted") {
  MapSpec dbl = MapSpec::doubling();
  Observable base = circ("-dist(x,[0.33333333333333331,0.66666666666666663])");
  PeriodicOrbit two = orbit_with_itinerary(dbl, 2, "01");
  ExperimentConfig cfg;
  cfg.eps = 0.01;
  cfg.delta = 10 * cfg.eps;  // far beyond eps / C
  cfg.trials = 30;
  cfg.max_period = 6;
  cfg.seed = 5;
  LockingReport rep = locking_experiment(dbl, base, two, cfg);
  // qualifying trials (if any) must keep the orbit; others merely get recorded
  for (const auto& t : rep.trials)
    if (t.qualifying) CHECK(t.kept);
  CHECK(rep.trials.size() == 30);
}

TEST_CASE("tpo sweep rows") {
  SweepResult res = tpo_sweep(MapKind::Tent, {2.0},
                              {"-dist(x,[0.80000000000000004,1.6000000000000001])"},
                              0.05, 8);
  REQUIRE(res.rows.size() == 1);
  const SweepRow& row = res.rows[0];
  CHECK(row.error.empty());
  CHECK(row.argmax_period == 2);
  CHECK(row.beta == doctest::Approx(0.0));
  CHECK(row.gap > 0.0);
  CHECK(row.locked);

  // the quadratic family at a=4 with the identity observable locks on 3/4
  SweepResult quad = tpo_sweep(MapKind::Quadratic, {4.0}, {"x"}, 0.05, 12);
  REQUIRE(quad.rows.size() == 1);
  CHECK(quad.rows[0].argmax_period == 1);
  CHECK(quad.rows[0].beta == doctest::Approx(0.75).epsilon(1e-9));

  // csv has the fixed schema and one line per row
  std::string csv = res.csv();
  CHECK(csv.find("a,phi_index,phi,beta,") == 0);
}

TEST_CASE("sweep output is byte-identical across thread counts") {
  std::vector<double> a_values{1.6, 1.7, 1.8, 1.9, 2.0};
  std::vector<std::string> bank{"cos(pi*x)", "x", "-dist(x,[1.25])"};
  SweepResult one = tpo_sweep(MapKind::Tent, a_values, bank, 0.05, 8, 1);
  SweepResult four = tpo_sweep(MapKind::Tent, a_values, bank, 0.05, 8, 4);
  CHECK(one.csv() == four.csv());
  CHECK(one.locked_fraction == four.locked_fraction);
}

TEST_CASE("locking trials are deterministic across thread counts") {
  MapSpec dbl = MapSpec::doubling();
  Observable base = circ("-dist(x,[0.33333333333333331,0.66666666666666663])");
  PeriodicOrbit two = orbit_with_itinerary(dbl, 2, "01");
  ExperimentConfig cfg;
  cfg.eps = 0.1;
  cfg.delta = cfg.eps / 18.0;
  cfg.trials = 16;
  cfg.max_period = 6;
  cfg.seed = 99;
  cfg.threads = 1;
  LockingReport a = locking_experiment(dbl, base, two, cfg);
  cfg.threads = 4;
  LockingReport b = locking_experiment(dbl, base, two, cfg);
  CHECK(locking_report_csv(a) == locking_report_csv(b));
}

TEST_CASE("gamma scaling: homogeneity and ratio envelope") {
  MapSpec dbl = MapSpec::doubling();
  std::vector<std::string> bank{
      "-cos(2*pi*x)",
      "-dist(x,[0.33333333333333331,0.66666666666666663])",
      "cos(2*pi*(x-0.5)) + 0.1*sin(2*pi*x)",
  };
  GammaScalingResult res = gamma_scaling(dbl, bank, {0.5, 1.0, 2.0, 4.0}, 25, 2000, 10);
  CHECK(res.homogeneous);
  CHECK(res.max_gamma_lip_ratio > 0.0);
  CHECK(res.max_gamma_lip_ratio <= 2.0);
  for (const auto& rows : res.per_phi) {
    REQUIRE(rows.size() == 4);
    double base = 0.0;
    for (const auto& r : rows)
      if (r.t == 1.0) base = r.gamma;
    for (const auto& r : rows) {
      if (base > 1e-12) CHECK(r.gamma / (r.t * base) == doctest::Approx(1.0).epsilon(0.01));
    }
  }

  // a constant observable has vanishing gamma at every scale
  GammaScalingResult flat = gamma_scaling(dbl, {"0.25"}, {1.0, 2.0}, 10, 100, 4);
  for (const auto& rows : flat.per_phi)
    for (const auto& r : rows) CHECK(r.gamma == doctest::Approx(0.0));
}
