// Acceptance suite: one line per criterion, nonzero exit on any failure.
//
// Every tolerance is pinned here. The suite is self-contained and runs the
// public library surface only.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "ergopt/experiments.hpp"
#include "ergopt/markov.hpp"
#include "ergopt/serialize.hpp"
#include "ergopt/subaction.hpp"

using namespace ergopt;

namespace {

struct Checker {
  std::vector<std::string> failures;

  void require(bool ok, const std::string& what) {
    if (!ok) failures.push_back(what);
  }
  void within(double value, double target, double tol, const std::string& what) {
    if (!(std::fabs(value - target) <= tol)) {
      char buf[160];
      std::snprintf(buf, sizeof buf, "%s (value %.12g, target %.12g, tol %.3g)",
                    what.c_str(), value, target, tol);
      failures.push_back(buf);
    }
  }
};

int g_failed = 0;

void run(int id, const std::string& name, double time_budget_s,
         const std::function<void(Checker&)>& body) {
  Checker c;
  auto t0 = std::chrono::steady_clock::now();
  try {
    body(c);
  } catch (const std::exception& e) {
    c.failures.push_back(std::string("exception: ") + e.what());
  }
  double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (time_budget_s > 0 && secs > time_budget_s) {
    char buf[96];
    std::snprintf(buf, sizeof buf, "runtime %.1fs exceeded budget %.0fs", secs,
                  time_budget_s);
    c.failures.push_back(buf);
  }
  if (c.failures.empty()) {
    std::printf("[PASS] %2d. %s (%.2fs)\n", id, name.c_str(), secs);
  } else {
    ++g_failed;
    std::printf("[FAIL] %2d. %s (%.2fs)\n", id, name.c_str(), secs);
    for (const auto& f : c.failures) std::printf("       - %s\n", f.c_str());
  }
  std::fflush(stdout);
}

Observable load_phi(const MapSpec& map, const std::string& src) {
  return parse_observable(src, map.space(), map.domain_lo().to_double(),
                          map.domain_hi().to_double());
}

const char* kDistTwoThirds = "-dist(x,[0.33333333333333331,0.66666666666666663])";

struct MatrixPair {
  std::string map;
  std::string phi;
};

std::vector<MatrixPair> matrix() {
  return {
      {"doubling", "cos(2*pi*x)"},
      {"doubling", "-cos(2*pi*x)"},
      {"doubling", kDistTwoThirds},
      {"doubling", "sin(2*pi*x)"},
      {"doubling", "cos(2*pi*(x-0.5)) + 0.1*sin(2*pi*x)"},
      {"tent:a=2", "x"},
      {"tent:a=2", "cos(pi*x)"},
      {"tent:a=1.6", "x"},
      {"quad:a=4", "x"},
      {"quad:a=3.9", "x"},
  };
}

void criterion_counts(Checker& c) {
  MapSpec dbl = MapSpec::doubling();
  MapSpec tent2 = MapSpec::tent(Real(2));
  auto d_orbits = enumerate_periodic_orbits(dbl, 10);
  auto t_orbits = enumerate_periodic_orbits(tent2, 10);
  std::map<int, long> d_pts, t_pts;
  for (const auto& o : d_orbits) d_pts[o.period] += o.period;
  for (const auto& o : t_orbits) t_pts[o.period] += o.period;
  for (int p = 1; p <= 10; ++p) {
    long d_total = 0, t_total = 0;
    for (int q = 1; q <= p; ++q) {
      if (p % q) continue;
      d_total += d_pts[q];
      t_total += t_pts[q];
    }
    c.require(d_total == (1L << p) - 1,
              "doubling fixed-point count at period " + std::to_string(p));
    c.require(t_total == (1L << p),
              "tent a=2 fixed-point count at period " + std::to_string(p));
  }
}

void criterion_two_route(Checker& c) {
  for (const auto& pair : matrix()) {
    MapSpec map = MapSpec::parse(pair.map);
    Observable phi = load_phi(map, pair.phi);
    BetaReport coarse = beta_report(map, phi, 12, 4096);
    BetaReport fine = beta_report(map, phi, 14, 8192);
    c.require(coarse.gap <= 0.02, pair.map + " / " + pair.phi + ": coarse gap " +
                                      std::to_string(coarse.gap) + " > 0.02");
    c.require(fine.gap <= coarse.gap + 1e-12,
              pair.map + " / " + pair.phi + ": gap grew on refinement");
  }
}

void criterion_known_maximizers(Checker& c) {
  MapSpec dbl = MapSpec::doubling();
  BetaPeriodic cosmax = beta_periodic(dbl, load_phi(dbl, "cos(2*pi*x)"), 12);
  c.require(cosmax.beta == 1.0, "beta(cos) must equal 1 exactly");
  c.require(cosmax.orbit.period == 1 && cosmax.orbit.points[0] == Real(0),
            "argmax of cos must be the fixed point 0");

  BetaPeriodic distmax = beta_periodic(dbl, load_phi(dbl, kDistTwoThirds), 12);
  c.require(distmax.beta == 0.0, "beta(-dist) must equal 0 exactly");
  c.require(distmax.orbit.period == 2 &&
                distmax.orbit.points[0] == Real::ratio(1, 3) &&
                distmax.orbit.points[1] == Real::ratio(2, 3),
            "argmax of -dist must be the exact 2-cycle {1/3, 2/3}");

  MapSpec q4 = MapSpec::quadratic(4.0);
  BetaPeriodic idmax = beta_periodic(q4, load_phi(q4, "x"), 12);
  c.within(idmax.beta, 0.75, 1e-9, "beta(Q_4, x)");
  c.require(idmax.orbit.period == 1, "argmax of (Q_4, x) must be the fixed point");
  c.within(idmax.orbit.points[0].to_double(), 0.75, 1e-9, "fixed point of (Q_4, x)");
}

void criterion_subaction(Checker& c) {
  MapSpec dbl = MapSpec::doubling();
  Observable phi = load_phi(dbl, "-cos(2*pi*x)");
  double beta = beta_periodic(dbl, phi, 12).beta;
  SubActionTable table = subaction_candidate(dbl, phi, beta, 14, 4096);
  ViolationReport rep = verify_subaction(dbl, phi, beta, table, 1e-3);
  c.require(rep.pass, "depth-14 table must satisfy the sub-action inequality at 1e-3");
  c.require(rep.marker_excluded, "the fixed point 0 must stay out of the contact set");
  LipschitzProfile prof = lipschitz_profile(dbl, phi, table);
  c.require(prof.claim_bound.has_value(), "claim bound must be available");
  c.within(*prof.claim_bound, 6 * M_PI, 1e-12, "claim bound value");
  c.require(table.lip_observed <= 6 * M_PI, "observed Lipschitz constant exceeds 6 pi");
}

void criterion_coboundaries(Checker& c) {
  MapSpec dbl = MapSpec::doubling();
  struct Gen {
    std::string psi0;  // generator
    std::string cob;   // psi0 o T - psi0, written by frequency doubling
  };
  std::vector<Gen> gens = {
      {"0.3*sin(2*pi*x)", "0.3*sin(2*pi*2*x) - 0.3*sin(2*pi*x)"},
      {"0.25*cos(2*pi*x)", "0.25*cos(2*pi*2*x) - 0.25*cos(2*pi*x)"},
      {"0.2*sin(2*pi*x) + 0.1*cos(2*pi*x)",
       "0.2*sin(2*pi*2*x) + 0.1*cos(2*pi*2*x) - 0.2*sin(2*pi*x) - 0.1*cos(2*pi*x)"},
      {"0.15*cos(2*pi*2*x)", "0.15*cos(2*pi*4*x) - 0.15*cos(2*pi*2*x)"},
      {"0.05*sin(2*pi*3*x) - 0.2*cos(2*pi*x)",
       "0.05*sin(2*pi*6*x) - 0.2*cos(2*pi*2*x) - 0.05*sin(2*pi*3*x) + 0.2*cos(2*pi*x)"},
  };
  for (const auto& g : gens) {
    Observable psi0 = load_phi(dbl, g.psi0);
    Observable cob = load_phi(dbl, g.cob);
    double beta = beta_periodic(dbl, cob, 10).beta;
    c.within(beta, 0.0, 1e-6, g.psi0 + ": coboundary beta");

    double sup_psi0 = 0.0;
    for (int i = 0; i < 200001; ++i)
      sup_psi0 = std::max(sup_psi0, std::fabs(psi0.eval(i / 200001.0)));
    double gamma = gamma_estimate(dbl, cob, 0.0, 40, 10000);
    c.require(gamma <= 2 * sup_psi0 + 1e-6,
              g.psi0 + ": gamma " + std::to_string(gamma) + " above 2 sup|psi0| = " +
                  std::to_string(2 * sup_psi0));

    SubActionTable t = subaction_candidate(dbl, cob, 0.0, 12, 2048);
    double lo = 1e300, hi = -1e300;
    for (std::size_t i = 0; i < t.grid.size(); ++i) {
      double diff = t.psi[i] - psi0.eval(t.grid[i]);
      lo = std::min(lo, diff);
      hi = std::max(hi, diff);
    }
    c.require(hi - lo <= 1e-2,
              g.psi0 + ": recovered sub-action spread " + std::to_string(hi - lo));
  }
}

void criterion_gamma_scaling(Checker& c) {
  MapSpec dbl = MapSpec::doubling();
  std::vector<std::string> bank{
      "-cos(2*pi*x)",
      kDistTwoThirds,
      "cos(2*pi*(x-0.5)) + 0.1*sin(2*pi*x)",
      "min(cos(2*pi*x), sin(2*pi*x))",
  };
  GammaScalingResult res = gamma_scaling(dbl, bank, {0.5, 1.0, 2.0, 4.0}, 30, 10000, 12);
  c.require(res.homogeneous, "gamma(t phi) must equal t gamma(phi) to 1%");
  c.require(res.max_gamma_lip_ratio <= 2.0,
            "gamma/lip ratio " + std::to_string(res.max_gamma_lip_ratio) +
                " exceeds the pinned envelope 2.0");
}

void criterion_locking(Checker& c) {
  MapSpec dbl = MapSpec::doubling();
  Observable base = load_phi(dbl, kDistTwoThirds);
  PeriodicOrbit two;
  for (auto& o : enumerate_periodic_orbits(dbl, 2))
    if (o.itinerary == "01") two = o;
  double c_const = domination_constant(dbl, two);
  c.within(c_const, 9.0, 1e-9, "domination constant of {1/3, 2/3}");

  ExperimentConfig cfg;
  cfg.eps = 0.1;
  cfg.delta = cfg.eps / (2 * c_const);
  cfg.trials = 200;
  cfg.max_period = 10;
  cfg.seed = 20240817;
  LockingReport rep = locking_experiment(dbl, base, two, cfg);
  c.require(rep.pass_fraction == 1.0, "locking pass fraction below 1.0");
  c.require(rep.pass, "a qualifying trial dislodged the orbit");

  // orbit-domination inequality at 1e3 random points
  TrialRng rng(7, 1);
  int p = two.period;
  int bad = 0;
  for (int i = 0; i < 1000; ++i) {
    double x0 = rng.uniform();
    double rhs = 0.0;
    std::vector<double> lhs(p, 0.0);
    Real x(x0);
    for (int k = 0; k < p; ++k) {
      rhs += dist_to_orbit(x, two, Space::Circle);
      for (int j = 0; j < p; ++j)
        lhs[j] += space_dist(Space::Circle, x.to_double(),
                             two.points[(j + k) % p].to_double());
      x = eval_map(dbl, x);
    }
    double best = *std::min_element(lhs.begin(), lhs.end());
    if (!(best <= c_const * rhs + 1e-12)) ++bad;
  }
  c.require(bad == 0, std::to_string(bad) + " of 1000 domination spot-checks failed");
}

void criterion_markov(Checker& c) {
  for (const char* desc : {"tent:a=1.6", "tent:a=1.9", "tent:a=2"}) {
    MapSpec tent = MapSpec::parse(desc);
    PeriodicOrbit z;
    for (auto& o : enumerate_periodic_orbits(tent, 2))
      if (o.period == 2) z = o;
    Real a = tent.tent_slope;
    Real fixed = Real(2) * a / (Real(1) + a);
    for (int m : {3, 4, 5}) {
      try {
        MarkovCover cover = admissible_cover(tent, {fixed}, z, m);
        c.require(cover.verified && verify_markov(tent, cover).ok,
                  std::string(desc) + " m=" + std::to_string(m) +
                      ": cover not verified");
      } catch (const std::exception& e) {
        c.failures.push_back(std::string(desc) + " m=" + std::to_string(m) + ": " +
                             e.what());
      }
    }
  }

  // the planted counterexample is rejected with the exact violating pair
  MapSpec dbl = MapSpec::doubling();
  MarkovCover bad;
  bad.intervals = {{Real(0.1), Real(0.4)}, {Real(0.6), Real(0.9)}};
  MarkovCheck check = verify_markov(dbl, bad);
  bool has_pair = false;
  for (auto [i, j] : check.violations) has_pair = has_pair || (i == 0 && j == 1);
  c.require(!check.ok && has_pair,
            "counterexample cover must fail with the pair (0 -> 1)");

  // geometric component decay with ratio at most 1/a
  MapSpec tent2 = MapSpec::tent(Real(2));
  PeriodicOrbit zf;
  for (auto& o : enumerate_periodic_orbits(tent2, 1))
    if (o.itinerary == "R") zf = o;
  MarkovCover cover =
      admissible_cover(tent2, {Real::ratio(4, 5), Real::ratio(8, 5)}, zf, 4);
  InvariantSetDepth inv = invariant_set_depth(tent2, cover, 12);
  c.require(inv.surjective, "surjectivity witness failed");
  for (std::size_t d = 1; d < inv.max_component_length.size(); ++d) {
    c.require(inv.max_component_length[d] <=
                  inv.max_component_length[d - 1] / 2.0 + 1e-15,
              "component decay ratio above 1/a at depth " + std::to_string(d));
  }
}

void criterion_subordination(Checker& c) {
  for (const auto& pair : matrix()) {
    MapSpec map = MapSpec::parse(pair.map);
    Observable phi = load_phi(map, pair.phi);
    BetaPeriodic bp = beta_periodic(map, phi, 12);
    double gamma = gamma_estimate(map, phi, bp.beta, 40, 20000);
    SubordinationReport rep =
        subordination_check(map, phi, bp.beta, gamma, bp.orbit.points, 40, 1e-6);
    c.require(rep.pass, pair.map + " / " + pair.phi + ": subordination failed (min " +
                            std::to_string(rep.min_value) + " vs -gamma " +
                            std::to_string(-gamma) + ")");
  }
  // planted non-support witness
  MapSpec dbl = MapSpec::doubling();
  Observable cosphi = load_phi(dbl, "cos(2*pi*x)");
  double gamma = gamma_estimate(dbl, cosphi, 1.0, 40, 20000);
  SubordinationReport bad =
      subordination_check(dbl, cosphi, 1.0, gamma, {Real::ratio(1, 4)}, 40, 1e-6);
  c.require(!bad.pass, "x = 1/4 must fail the subordination check for cos");
}

void criterion_determinism(Checker& c) {
  std::vector<double> a_values{1.6, 1.7, 1.8, 1.9, 2.0};
  std::vector<std::string> bank{"cos(pi*x)", "x", "-dist(x,[1.25])"};
  SweepResult t1 = tpo_sweep(MapKind::Tent, a_values, bank, 0.05, 10, 1);
  SweepResult t4 = tpo_sweep(MapKind::Tent, a_values, bank, 0.05, 10, 4);
  c.require(t1.csv() == t4.csv(), "sweep output differs across thread counts");

  MapSpec dbl = MapSpec::doubling();
  Observable base = load_phi(dbl, kDistTwoThirds);
  PeriodicOrbit two;
  for (auto& o : enumerate_periodic_orbits(dbl, 2))
    if (o.itinerary == "01") two = o;
  ExperimentConfig cfg;
  cfg.eps = 0.1;
  cfg.delta = cfg.eps / 18.0;
  cfg.trials = 64;
  cfg.max_period = 8;
  cfg.seed = 3;
  cfg.threads = 1;
  LockingReport l1 = locking_experiment(dbl, base, two, cfg);
  cfg.threads = 4;
  LockingReport l4 = locking_experiment(dbl, base, two, cfg);
  c.require(locking_report_csv(l1) == locking_report_csv(l4),
            "locking trials differ across thread counts");
}

}  // namespace

int main(int argc, char** argv) {
  int only = argc > 1 ? std::atoi(argv[1]) : 0;
  auto want = [only](int id) { return only == 0 || only == id; };

  if (want(1))
    run(1, "orbit-count oracles (doubling 2^p - 1, tent 2^p)", 5, criterion_counts);
  if (want(2))
    run(2, "two-route beta agreement across the matrix", 60, criterion_two_route);
  if (want(3))
    run(3, "known maximizers (cos, -dist, Q_4 identity)", 0, criterion_known_maximizers);
  if (want(4))
    run(4, "sub-action certificate for -cos at depth 14", 120, criterion_subaction);
  if (want(5))
    run(5, "coboundary identities for five generators", 0, criterion_coboundaries);
  if (want(6))
    run(6, "gamma homogeneity and gamma/lip envelope", 0, criterion_gamma_scaling);
  if (want(7))
    run(7, "locking at C = 9 with 200 certified trials", 0, criterion_locking);
  if (want(8))
    run(8, "Markov covers: construction, rejection, decay", 0, criterion_markov);
  if (want(9))
    run(9, "subordination on argmax orbits and the planted witness", 0,
        criterion_subordination);
  if (want(10))
    run(10, "byte-identical outputs across seeds and thread counts", 0,
        criterion_determinism);

  if (g_failed) std::printf("%d criterion(s) failed\n", g_failed);
  return g_failed;
}
