#include "ergopt/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <limits>
#include <thread>

#include "ergopt/errors.hpp"

namespace ergopt {

namespace {

std::string fmt12(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

// Deterministic parallel-for: results land by index regardless of schedule.
template <typename Fn>
void parallel_indexed(int count, int threads, Fn&& fn) {
  if (threads <= 1 || count <= 1) {
    for (int i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<int> next{0};
  auto worker = [&] {
    for (;;) {
      int i = next.fetch_add(1);
      if (i >= count) return;
      fn(i);
    }
  };
  std::vector<std::thread> pool;
  int n_threads = std::min(threads, count);
  pool.reserve(n_threads);
  for (int t = 0; t < n_threads; ++t) pool.emplace_back(worker);
  for (auto& th : pool) th.join();
}

}  // namespace

double domination_constant(const MapSpec& map, const PeriodicOrbit& orbit) {
  const int p = orbit.period;
  if (p == 1) return 1.0;
  const Space sp = map.space();
  std::vector<double> pts = orbit.points_double();
  double min_gap = std::numeric_limits<double>::infinity();
  double diameter = 0.0;
  for (int i = 0; i < p; ++i) {
    for (int j = i + 1; j < p; ++j) {
      double d = space_dist(sp, pts[i], pts[j]);
      min_gap = std::min(min_gap, d);
      diameter = std::max(diameter, d);
    }
  }
  double half_gap = 0.5 * min_gap;
  double lambda = map.sup_derivative();
  double delta = half_gap / std::pow(lambda, p - 1);
  return 1.0 + double(p) * diameter / delta;
}

std::string orbit_dist_source(const PeriodicOrbit& orbit) {
  std::string src = "dist(x,[";
  std::vector<double> pts = orbit.points_double();
  std::sort(pts.begin(), pts.end());
  for (std::size_t i = 0; i < pts.size(); ++i) {
    if (i) src += ',';
    src += fmt17(pts[i]);
  }
  src += "])";
  return src;
}

namespace {

// Random trigonometric polynomial with its coefficients scaled so the
// analytic Lipschitz bound sum_k 2 pi k (|c_k| + |s_k|) equals `target_lip`.
std::string trig_perturbation(TrialRng& rng, int modes, double target_lip) {
  std::vector<double> c(modes), s(modes);
  double bound = 0.0;
  for (int k = 1; k <= modes; ++k) {
    c[k - 1] = rng.uniform(-1.0, 1.0);
    s[k - 1] = rng.uniform(-1.0, 1.0);
    bound += 2.0 * M_PI * k * (std::fabs(c[k - 1]) + std::fabs(s[k - 1]));
  }
  double scale = bound > 0 ? target_lip / bound : 0.0;
  std::string src;
  for (int k = 1; k <= modes; ++k) {
    double ck = c[k - 1] * scale, sk = s[k - 1] * scale;
    src += (ck < 0 ? " - " : " + ") + fmt17(std::fabs(ck)) + "*cos(2*pi*" +
           std::to_string(k) + "*x)";
    src += (sk < 0 ? " - " : " + ") + fmt17(std::fabs(sk)) + "*sin(2*pi*" +
           std::to_string(k) + "*x)";
  }
  return src;
}

}  // namespace

LockingReport locking_experiment(const MapSpec& map, const Observable& base_phi,
                                 const PeriodicOrbit& orbit,
                                 const ExperimentConfig& cfg) {
  LockingReport rep;
  rep.base_phi = to_string(base_phi.expr);
  rep.orbit = orbit;
  rep.eps = cfg.eps;
  rep.delta = cfg.delta;
  if (cfg.eps <= 0) throw DomainError("locking strength eps must be positive");

  BetaPeriodic base = beta_periodic(map, base_phi, cfg.max_period);
  if (base.orbit.itinerary != orbit.itinerary || base.orbit.period != orbit.period)
    throw BaseNotMaximized("base observable is maximized by " + base.orbit.itinerary +
                           ", not by " + orbit.itinerary);
  rep.c_domination = domination_constant(map, orbit);

  const std::string locked_src =
      to_string(base_phi.expr) + " - " + fmt17(cfg.eps) + "*" + orbit_dist_source(orbit);

  rep.trials.resize(cfg.trials);
  parallel_indexed(cfg.trials, cfg.threads, [&](int t) {
    TrialRng rng(cfg.seed, std::uint64_t(t));
    double lip_target = rng.uniform(0.0, cfg.delta);
    std::string psi_src = trig_perturbation(rng, cfg.fourier_modes, lip_target);
    Observable phi2 = parse_observable(locked_src + psi_src, map.space(),
                                       map.domain_lo().to_double(),
                                       map.domain_hi().to_double());
    std::vector<OrbitScore> scores = orbit_scores(map, phi2, cfg.max_period);
    LockingTrial& rec = rep.trials[t];
    rec.trial = t;
    rec.lip_psi = lip_target;
    rec.qualifying = lip_target < cfg.eps / rep.c_domination;
    double orbit_avg = 0.0, best_other = -std::numeric_limits<double>::infinity();
    for (const auto& sobj : scores) {
      bool is_orbit = sobj.orbit.period == orbit.period &&
                      sobj.orbit.itinerary == orbit.itinerary;
      if (is_orbit)
        orbit_avg = sobj.average;
      else
        best_other = std::max(best_other, sobj.average);
    }
    rec.margin = best_other - orbit_avg;
    rec.argmax_itinerary = scores.front().orbit.itinerary;
    rec.argmax_period = scores.front().orbit.period;
    rec.kept = rec.argmax_period == orbit.period &&
               rec.argmax_itinerary == orbit.itinerary && rec.margin < 0.0;
  });

  int qualifying = 0, kept = 0;
  for (const auto& t : rep.trials) {
    if (!t.qualifying) continue;
    ++qualifying;
    kept += t.kept;
  }
  rep.pass_fraction = qualifying ? double(kept) / qualifying : 1.0;
  rep.pass = kept == qualifying;
  return rep;
}

std::string SweepResult::csv() const {
  std::string out = "a,phi_index,phi,beta,argmax_period,argmax_itinerary,locked_beta,gap,locked,error\n";
  for (const auto& r : rows) {
    out += fmt12(r.a);
    out += ',' + std::to_string(r.phi_index);
    out += ",\"" + r.phi + "\"";
    out += ',' + fmt12(r.beta);
    out += ',' + std::to_string(r.argmax_period);
    out += ',' + r.argmax_itinerary;
    out += ',' + fmt12(r.locked_beta);
    out += ',' + fmt12(r.gap);
    out += r.locked ? ",1" : ",0";
    out += ",\"" + r.error + "\"\n";
  }
  return out;
}

SweepResult tpo_sweep(MapKind family, const std::vector<double>& a_values,
                      const std::vector<std::string>& phi_bank, double eps,
                      int max_period, int threads, int lock_grid) {
  if (family != MapKind::Tent && family != MapKind::Quadratic)
    throw DomainError("tpo_sweep supports the tent and quadratic families");
  SweepResult res;
  const int count = int(a_values.size() * phi_bank.size());
  res.rows.resize(count);
  parallel_indexed(count, threads, [&](int idx) {
    int ai = idx / int(phi_bank.size());
    int pi = idx % int(phi_bank.size());
    SweepRow& row = res.rows[idx];
    row.a = a_values[ai];
    row.phi_index = pi;
    row.phi = phi_bank[pi];
    try {
      MapSpec map = family == MapKind::Tent ? MapSpec::tent(Real(Rational(row.a)))
                                            : MapSpec::quadratic(row.a);
      Observable phi = parse_observable(phi_bank[pi], map.space(),
                                        map.domain_lo().to_double(),
                                        map.domain_hi().to_double());
      BetaPeriodic bp = beta_periodic(map, phi, max_period);
      row.beta = bp.beta;
      row.argmax_period = bp.orbit.period;
      row.argmax_itinerary = bp.orbit.itinerary;
      // lock onto the argmax orbit and measure the runner-up gap
      std::string locked_src = phi_bank[pi] + " - " + fmt17(eps) + "*" +
                               orbit_dist_source(bp.orbit);
      Observable locked = parse_observable(locked_src, map.space(),
                                           map.domain_lo().to_double(),
                                           map.domain_hi().to_double());
      std::vector<OrbitScore> scores = orbit_scores(map, locked, max_period);
      row.locked_beta = scores.front().average;
      double runner_up = -std::numeric_limits<double>::infinity();
      for (const auto& s : scores) {
        if (s.orbit.period == bp.orbit.period && s.orbit.itinerary == bp.orbit.itinerary)
          continue;
        runner_up = std::max(runner_up, s.average);
      }
      row.gap = scores.front().average - runner_up;
      // smallest positive grid distance to the orbit sets the locked scale
      double min_pos = std::numeric_limits<double>::infinity();
      double lo = map.domain_lo().to_double(), hi = map.domain_hi().to_double();
      for (int g = 0; g < lock_grid; ++g) {
        double x = lo + (g + 0.5) * (hi - lo) / lock_grid;
        double d = dist_to_orbit(Real(x), bp.orbit, map.space());
        if (d > 0) min_pos = std::min(min_pos, d);
      }
      row.locked = row.gap > eps * min_pos;
    } catch (const std::exception& e) {
      row.error = e.what();
    }
  });
  int locked = 0, valid = 0;
  for (const auto& r : res.rows) {
    if (!r.error.empty()) continue;
    ++valid;
    locked += r.locked;
  }
  res.locked_fraction = valid ? double(locked) / valid : 0.0;
  return res;
}

GammaScalingResult gamma_scaling(const MapSpec& map,
                                 const std::vector<std::string>& phi_bank,
                                 const std::vector<double>& t_values, int depth,
                                 int grid_n, int max_period) {
  GammaScalingResult res;
  res.per_phi.resize(phi_bank.size());
  res.homogeneous = true;
  for (std::size_t pi = 0; pi < phi_bank.size(); ++pi) {
    Observable phi = parse_observable(phi_bank[pi], map.space(),
                                      map.domain_lo().to_double(),
                                      map.domain_hi().to_double());
    double beta1 = beta_periodic(map, phi, max_period).beta;
    double gamma1 = 0.0;
    for (std::size_t ti = 0; ti < t_values.size(); ++ti) {
      double t = t_values[ti];
      if (!(t > 0)) throw DomainError("gamma_scaling needs positive scale factors");
      // t*phi via an AST wrapper; beta scales exactly with it
      Observable scaled = phi;
      Expr mul;
      mul.kind = Expr::Kind::Mul;
      Expr num;
      num.kind = Expr::Kind::Num;
      num.num = t;
      mul.kids = {num, phi.expr};
      scaled.expr = std::move(mul);
      scaled.lip_estimate = std::fabs(t) * phi.lip_estimate;
      GammaScalingRow row;
      row.t = t;
      row.gamma = gamma_estimate(map, scaled, t * beta1, depth, grid_n);
      row.lip = lip_constant(scaled, LipMode::Analytic);
      res.per_phi[pi].push_back(row);
      if (t == 1.0) gamma1 = row.gamma;
    }
    for (const auto& row : res.per_phi[pi]) {
      if (gamma1 > 1e-12) {
        double ratio = row.gamma / (row.t * gamma1);
        if (std::fabs(ratio - 1.0) > 0.01) res.homogeneous = false;
      }
      if (row.lip > 1e-12)
        res.max_gamma_lip_ratio = std::max(res.max_gamma_lip_ratio, row.gamma / row.lip);
    }
  }
  return res;
}

}  // namespace ergopt
