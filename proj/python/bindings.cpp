#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "ergopt/errors.hpp"
#include "ergopt/serialize.hpp"

namespace py = pybind11;
using namespace ergopt;

namespace {

py::dict orbit_dict(const PeriodicOrbit& o) {
  py::dict d;
  d["period"] = o.period;
  d["points"] = o.points_double();
  d["itinerary"] = o.itinerary;
  d["exact"] = o.exact;
  return d;
}

std::vector<Real> to_reals(const std::vector<double>& xs) {
  return std::vector<Real>(xs.begin(), xs.end());
}

Observable make_phi(const MapSpec& map, const std::string& src) {
  return parse_observable(src, map.space(), map.domain_lo().to_double(),
                          map.domain_hi().to_double());
}

PeriodicOrbit find_orbit(const MapSpec& map, const std::string& itinerary) {
  for (auto& o : enumerate_periodic_orbits(map, int(itinerary.size())))
    if (o.itinerary == itinerary) return o;
  throw NotFound("no orbit with itinerary " + itinerary);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "numerical ergodic optimization on one-dimensional maps";

  py::class_<MapSpec>(m, "Map")
      .def(py::init(&MapSpec::parse), py::arg("descriptor"))
      .def_property_readonly("descriptor", &MapSpec::descriptor)
      .def_property_readonly("exact", &MapSpec::exact_kind)
      .def_property_readonly(
          "is_circle", [](const MapSpec& m_) { return m_.space() == Space::Circle; })
      .def("__call__",
           [](const MapSpec& m_, double x) { return eval_map(m_, Real(x)).to_double(); })
      .def("derivative_abs",
           [](const MapSpec& m_, double x) { return derivative_abs(m_, Real(x)); })
      .def("preimages",
           [](const MapSpec& m_, double y) {
             std::vector<double> out;
             for (const Real& p : preimages(m_, Real(y))) out.push_back(p.to_double());
             return out;
           })
      .def(
          "renorm_core",
          [](const MapSpec& m_, int r_max) {
            RenormCore rc = renorm_core(m_, r_max);
            return py::make_tuple(rc.r, rc.lo.to_double(), rc.hi.to_double());
          },
          py::arg("r_max") = 8)
      .def("__repr__", [](const MapSpec& m_) { return "Map('" + m_.descriptor() + "')"; });

  py::class_<Observable>(m, "Observable")
      .def_property_readonly("source",
                             [](const Observable& o) { return to_string(o.expr); })
      .def_property_readonly("lip", [](const Observable& o) { return o.lip_estimate; })
      .def("__call__", [](const Observable& o, double x) { return o.eval(x); });

  m.def("parse_observable", &make_phi, py::arg("map"), py::arg("source"));
  m.def(
      "lip_constant",
      [](const Observable& phi, const std::string& mode, int grid_n) {
        return lip_constant(phi, mode == "grid" ? LipMode::Grid : LipMode::Analytic,
                            grid_n);
      },
      py::arg("phi"), py::arg("mode") = "analytic", py::arg("grid_n") = 1000);

  m.def("birkhoff_sum", [](const MapSpec& map, const Observable& phi, double x, int n) {
    return birkhoff_sum(map, phi, Real(x), n);
  });

  m.def(
      "periodic_orbits",
      [](const MapSpec& map, int max_period) {
        py::list out;
        for (const auto& o : enumerate_periodic_orbits(map, max_period))
          out.append(orbit_dict(o));
        return out;
      },
      py::arg("map"), py::arg("max_period"));

  m.def("beta_periodic",
        [](const MapSpec& map, const Observable& phi, int max_period) {
          BetaPeriodic bp = beta_periodic(map, phi, max_period);
          return py::make_tuple(bp.beta, orbit_dict(bp.orbit));
        });

  m.def(
      "beta_report",
      [](const MapSpec& map, const Observable& phi, int max_period, int n_cells) {
        BetaReport rep = beta_report(map, phi, max_period, n_cells);
        py::dict d;
        d["beta_orbit"] = rep.beta_orbit;
        d["argmax_orbit"] = orbit_dict(rep.argmax_orbit);
        d["beta_cycle"] = rep.beta_cycle;
        d["cycle_cells"] = rep.cycle_cells;
        d["gap"] = rep.gap;
        return d;
      },
      py::arg("map"), py::arg("phi"), py::arg("max_period") = 12,
      py::arg("n_cells") = 4096);

  m.def(
      "gamma_estimate",
      [](const MapSpec& map, const Observable& phi, double beta, int depth, int grid_n) {
        return gamma_estimate(map, phi, beta, depth, grid_n);
      },
      py::arg("map"), py::arg("phi"), py::arg("beta"), py::arg("depth") = 30,
      py::arg("grid_n") = 10000);

  m.def("support_candidate",
        [](const MapSpec& map, const Observable& phi, double beta, double c_star,
           int k_max, int l_max, int grid_n) {
          SupportCandidate sc =
              support_candidate(map, phi, beta, c_star, k_max, l_max, grid_n);
          py::dict d;
          d["grid"] = sc.grid;
          d["member"] = std::vector<bool>(sc.member.begin(), sc.member.end());
          d["member_count"] = sc.member_count();
          return d;
        });

  m.def(
      "subordination_check",
      [](const MapSpec& map, const Observable& phi, double beta, double gamma,
         const std::vector<double>& points, int depth, double tol) {
        SubordinationReport rep =
            subordination_check(map, phi, beta, gamma, to_reals(points), depth, tol);
        py::dict d;
        d["min_value"] = rep.min_value;
        d["argmin_n"] = rep.argmin_n;
        d["pass"] = rep.pass;
        return d;
      },
      py::arg("map"), py::arg("phi"), py::arg("beta"), py::arg("gamma"),
      py::arg("points"), py::arg("depth") = 40, py::arg("tol") = 1e-9);

  m.def(
      "subaction",
      [](const MapSpec& map, const Observable& phi, double beta, int depth, int grid_n) {
        SubActionTable t = subaction_candidate(map, phi, beta, depth, grid_n);
        py::dict d;
        d["grid"] = t.grid;
        d["psi"] = t.psi;
        d["achieved_depth"] = t.achieved_depth;
        d["lip_observed"] = t.lip_observed;
        d["sup_psi"] = t.sup_psi;
        d["stabilized"] = t.stabilized;
        d["last_increment"] = t.last_increment;
        return d;
      },
      py::arg("map"), py::arg("phi"), py::arg("beta"), py::arg("depth") = 12,
      py::arg("grid_n") = 1024);

  m.def(
      "verify_subaction",
      [](const MapSpec& map, const Observable& phi, double beta, int depth, int grid_n,
         double tol) {
        SubActionTable t = subaction_candidate(map, phi, beta, depth, grid_n);
        ViolationReport rep = verify_subaction(map, phi, beta, t, tol);
        py::dict d;
        d["pass"] = rep.pass;
        d["max_slack"] = rep.max_slack;
        d["marker_excluded"] = rep.marker_excluded;
        d["lip_observed"] = t.lip_observed;
        return d;
      },
      py::arg("map"), py::arg("phi"), py::arg("beta"), py::arg("depth") = 12,
      py::arg("grid_n") = 1024, py::arg("tol") = 1e-3);

  m.def(
      "admissible_cover",
      [](const MapSpec& map, const std::vector<double>& k_points,
         const std::string& z_itinerary, int depth_m) {
        MarkovCover cover = admissible_cover(map, to_reals(k_points),
                                             find_orbit(map, z_itinerary), depth_m);
        py::dict d;
        py::list ivs;
        for (const auto& iv : cover.intervals)
          ivs.append(py::make_tuple(iv.lo.to_double(), iv.hi.to_double()));
        d["intervals"] = ivs;
        d["transitions"] = cover.transitions;
        d["verified"] = cover.verified;
        return d;
      },
      py::arg("map"), py::arg("k_points"), py::arg("z_itinerary"), py::arg("m") = 4);

  m.def("verify_markov",
        [](const MapSpec& map, const std::vector<std::pair<double, double>>& intervals) {
          MarkovCover cover;
          for (const auto& [lo, hi] : intervals)
            cover.intervals.push_back({Real(lo), Real(hi)});
          MarkovCheck check = verify_markov(map, cover);
          py::dict d;
          d["ok"] = check.ok;
          d["violations"] = check.violations;
          d["transitions"] = check.transitions;
          return d;
        });

  m.def("domination_constant",
        [](const MapSpec& map, const std::string& orbit_itinerary) {
          return domination_constant(map, find_orbit(map, orbit_itinerary));
        });

  m.def(
      "locking_experiment",
      [](const MapSpec& map, const std::string& phi_src, double eps, double delta,
         int trials, int max_period, std::uint64_t seed) {
        Observable phi = make_phi(map, phi_src);
        BetaPeriodic bp = beta_periodic(map, phi, max_period);
        ExperimentConfig cfg;
        cfg.eps = eps;
        cfg.trials = trials;
        cfg.max_period = max_period;
        cfg.seed = seed;
        cfg.delta = delta > 0 ? delta : eps / (2 * domination_constant(map, bp.orbit));
        LockingReport rep = locking_experiment(map, phi, bp.orbit, cfg);
        py::dict d;
        d["C"] = rep.c_domination;
        d["pass"] = rep.pass;
        d["pass_fraction"] = rep.pass_fraction;
        d["orbit"] = orbit_dict(rep.orbit);
        return d;
      },
      py::arg("map"), py::arg("phi"), py::arg("eps") = 0.1, py::arg("delta") = 0.0,
      py::arg("trials") = 100, py::arg("max_period") = 10, py::arg("seed") = 1);

  m.def(
      "tpo_sweep_csv",
      [](const std::string& family, const std::vector<double>& a_values,
         const std::vector<std::string>& phi_bank, double eps, int max_period,
         int threads) {
        MapKind kind = family == "quad" ? MapKind::Quadratic : MapKind::Tent;
        return tpo_sweep(kind, a_values, phi_bank, eps, max_period, threads).csv();
      },
      py::arg("family"), py::arg("a_values"), py::arg("phi_bank"), py::arg("eps") = 0.05,
      py::arg("max_period") = 10, py::arg("threads") = 1);

  py::register_exception<DomainError>(m, "MapDomainError");
  py::register_exception<ParseError>(m, "ObservableParseError");
  py::register_exception<NotFound>(m, "NotFoundError");
}
