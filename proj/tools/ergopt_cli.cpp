// Command-line driver: maximal ergodic averages, sub-action certificates,
// support truncations, Markov covers, and the perturbation experiments.
//
// Exit codes: 0 on success/PASS, 2 when a checked property fails, 1 on error.

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "ergopt/errors.hpp"
#include "ergopt/serialize.hpp"

using namespace ergopt;

namespace {

void emit(const std::string& payload, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << payload;
    if (!payload.empty() && payload.back() != '\n') std::cout << '\n';
    return;
  }
  std::ofstream f(out_path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open output file " + out_path);
  f << payload;
}

Observable load_phi(const MapSpec& map, const std::string& src) {
  return parse_observable(src, map.space(), map.domain_lo().to_double(),
                          map.domain_hi().to_double());
}

std::vector<double> split_doubles(const std::string& csv) {
  std::vector<double> out;
  std::stringstream ss(csv);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(std::stod(item));
  return out;
}

struct CommonOpts {
  std::string map_desc = "doubling";
  std::string phi;
  int max_period = 12;
  int cells = 4096;
  int depth = 30;
  int grid = 10000;
  double eps = 0.1;
  double delta = 0.0;
  int trials = 200;
  std::uint64_t seed = 1;
  int threads = 1;
  std::string out_path;
  std::string format = "json";
};

void add_common(CLI::App& app, CommonOpts& o) {
  app.add_option("--map", o.map_desc,
                 "map descriptor (tent:a=..., quad:a=..., doubling, cover:d=...,alpha=...)")
      ->capture_default_str();
  app.add_option("--phi", o.phi, "observable source text");
  app.add_option("--max-period", o.max_period, "orbit enumeration period bound")
      ->capture_default_str();
  app.add_option("--cells", o.cells, "Ulam partition size")->capture_default_str();
  app.add_option("--depth", o.depth, "iteration / truncation depth")
      ->capture_default_str();
  app.add_option("--grid", o.grid, "grid resolution")->capture_default_str();
  app.add_option("--eps", o.eps, "locking strength")->capture_default_str();
  app.add_option("--delta", o.delta, "perturbation Lipschitz budget")
      ->capture_default_str();
  app.add_option("--trials", o.trials, "number of random trials")->capture_default_str();
  app.add_option("--seed", o.seed, "RNG seed")->capture_default_str();
  app.add_option("--threads", o.threads, "worker threads for sweeps")
      ->capture_default_str();
  app.add_option("--out", o.out_path, "output path (stdout if omitted)");
  app.add_option("--format", o.format, "json or csv")
      ->check(CLI::IsMember({"json", "csv"}))
      ->capture_default_str();
}

std::string require_phi(const CommonOpts& o) {
  if (o.phi.empty()) throw DomainError("this subcommand needs --phi");
  return o.phi;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"numerical ergodic optimization on one-dimensional maps"};
  app.set_config("--config", "", "key=value config file; flags override");
  app.fallthrough();  // shared flags may follow the subcommand name
  app.require_subcommand(1);

  CommonOpts o;
  add_common(app, o);
  double tol = 1e-3;
  double beta_in = std::numeric_limits<double>::quiet_NaN();
  double c_star = std::numeric_limits<double>::quiet_NaN();
  std::string family = "tent";
  std::string a_values_csv = "1.6,1.7,1.8,1.9,2.0";
  std::string k_points_csv;
  std::string z_itinerary = "LR";
  std::string scales_csv = "0.5,1,2,4";
  std::vector<std::string> phi_bank;
  int markov_m = 4;

  auto* beta_cmd = app.add_subcommand("beta", "two-route maximal ergodic average");

  auto* sub_cmd = app.add_subcommand("subaction", "sub-action table and certificate");
  sub_cmd->add_option("--beta", beta_in, "beta to use (default: orbit route)");
  sub_cmd->add_option("--tol", tol, "verification tolerance");

  auto* gamma_cmd = app.add_subcommand("gamma", "gamma estimates and scaling");
  gamma_cmd->add_option("--scales", scales_csv, "comma list of scale factors");
  gamma_cmd->add_option("--phi-bank", phi_bank, "additional observables");

  auto* support_cmd = app.add_subcommand("support", "maximizing-support truncation");
  support_cmd->add_option("--beta", beta_in, "beta to use (default: orbit route)");
  support_cmd->add_option("--cstar", c_star,
                          "deviation budget (default: gamma estimate + 10%)");

  auto* markov_cmd = app.add_subcommand("markov", "admissible Markov cover");
  markov_cmd->add_option("--points", k_points_csv, "sample points to cover")->required();
  markov_cmd->add_option("--z", z_itinerary, "generator orbit itinerary");
  markov_cmd->add_option("--m", markov_m, "preimage depth for endpoints");

  auto* lock_cmd = app.add_subcommand("lock", "orbit locking under perturbations");

  auto* sweep_cmd = app.add_subcommand("sweep", "parameter sweep over a map family");
  sweep_cmd->add_option("--family", family, "tent or quad");
  sweep_cmd->add_option("--a-values", a_values_csv, "comma list of parameters");
  sweep_cmd->add_option("--phi-bank", phi_bank, "observables for the sweep");

  CLI11_PARSE(app, argc, argv);

  try {
    if (beta_cmd->parsed()) {
      MapSpec map = MapSpec::parse(o.map_desc);
      BetaReport rep = beta_report(map, load_phi(map, require_phi(o)), o.max_period, o.cells);
      emit(beta_report_json(rep), o.out_path);
      return 0;
    }

    if (sub_cmd->parsed()) {
      MapSpec map = MapSpec::parse(o.map_desc);
      Observable phi = load_phi(map, require_phi(o));
      double beta = std::isnan(beta_in) ? beta_periodic(map, phi, o.max_period).beta
                                        : beta_in;
      SubActionTable table = subaction_candidate(map, phi, beta, o.depth, o.grid);
      ViolationReport rep = verify_subaction(map, phi, beta, table, tol);
      if (o.format == "csv")
        emit(subaction_csv(table), o.out_path);
      else
        emit(subaction_json(table), o.out_path);
      std::cerr << violation_report_json(rep) << "\n";
      return rep.pass ? 0 : 2;
    }

    if (gamma_cmd->parsed()) {
      MapSpec map = MapSpec::parse(o.map_desc);
      std::vector<std::string> bank{require_phi(o)};
      bank.insert(bank.end(), phi_bank.begin(), phi_bank.end());
      GammaScalingResult res = gamma_scaling(map, bank, split_doubles(scales_csv),
                                             o.depth, o.grid, o.max_period);
      emit(o.format == "csv" ? gamma_scaling_csv(res) : gamma_scaling_json(res),
           o.out_path);
      return res.homogeneous ? 0 : 2;
    }

    if (support_cmd->parsed()) {
      MapSpec map = MapSpec::parse(o.map_desc);
      Observable phi = load_phi(map, require_phi(o));
      double beta = std::isnan(beta_in) ? beta_periodic(map, phi, o.max_period).beta
                                        : beta_in;
      double budget = c_star;
      if (std::isnan(budget))
        budget = 1.1 * gamma_estimate(map, phi, beta, o.depth, o.grid);
      SupportCandidate sc =
          support_candidate(map, phi, beta, budget, o.depth, o.depth, o.grid);
      emit(o.format == "csv" ? support_csv(sc) : support_json(sc), o.out_path);
      return 0;
    }

    if (markov_cmd->parsed()) {
      MapSpec map = MapSpec::parse(o.map_desc);
      PeriodicOrbit z;
      bool found = false;
      for (auto& orb : enumerate_periodic_orbits(map, int(z_itinerary.size()))) {
        if (orb.itinerary == z_itinerary) {
          z = orb;
          found = true;
          break;
        }
      }
      if (!found) throw NotFound("no orbit with itinerary " + z_itinerary);
      std::vector<Real> pts;
      for (double x : split_doubles(k_points_csv)) pts.emplace_back(x);
      MarkovCover cover = admissible_cover(map, pts, z, markov_m);
      emit(markov_cover_json(cover), o.out_path);
      return cover.verified ? 0 : 2;
    }

    if (lock_cmd->parsed()) {
      MapSpec map = MapSpec::parse(o.map_desc);
      Observable phi = load_phi(map, require_phi(o));
      BetaPeriodic bp = beta_periodic(map, phi, o.max_period);
      ExperimentConfig cfg;
      cfg.map_descriptor = o.map_desc;
      cfg.max_period = o.max_period;
      cfg.eps = o.eps;
      cfg.trials = o.trials;
      cfg.seed = o.seed;
      cfg.threads = o.threads;
      cfg.delta = o.delta > 0 ? o.delta
                              : o.eps / (2 * domination_constant(map, bp.orbit));
      LockingReport rep = locking_experiment(map, phi, bp.orbit, cfg);
      emit(o.format == "csv" ? locking_report_csv(rep) : locking_report_json(rep),
           o.out_path);
      return rep.pass ? 0 : 2;
    }

    if (sweep_cmd->parsed()) {
      if (phi_bank.empty() && !o.phi.empty()) phi_bank.push_back(o.phi);
      if (phi_bank.empty()) throw DomainError("sweep needs --phi or --phi-bank");
      MapKind kind = family == "quad" ? MapKind::Quadratic : MapKind::Tent;
      SweepResult res = tpo_sweep(kind, split_doubles(a_values_csv), phi_bank, o.eps,
                                  o.max_period, o.threads);
      emit(res.csv(), o.out_path);
      return 0;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
