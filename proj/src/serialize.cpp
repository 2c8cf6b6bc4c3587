#include "ergopt/serialize.hpp"

#include <cstdio>

#include <json.hpp>

namespace ergopt {

namespace {

using nlohmann::json;

std::string fmt12(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

json orbit_obj(const PeriodicOrbit& orbit) {
  json j;
  j["period"] = orbit.period;
  j["points"] = orbit.points_double();
  j["itinerary"] = orbit.itinerary;
  return j;
}

}  // namespace

std::string orbit_json(const PeriodicOrbit& orbit) { return orbit_obj(orbit).dump(); }

std::string beta_report_json(const BetaReport& report) {
  json j;
  j["beta_orbit"] = report.beta_orbit;
  j["argmax_orbit"] = orbit_obj(report.argmax_orbit);
  j["beta_cycle"] = report.beta_cycle;
  j["cycle_cells"] = report.cycle_cells;
  j["gap"] = report.gap;
  j["max_period"] = report.max_period;
  j["n_cells"] = report.n_cells;
  return j.dump();
}

std::string support_json(const SupportCandidate& sc) {
  json j;
  j["c_star"] = sc.c_star;
  j["k_max"] = sc.k_max;
  j["l_max"] = sc.l_max;
  j["grid"] = sc.grid;
  std::vector<int> flags(sc.member.begin(), sc.member.end());
  j["member"] = flags;
  j["member_count"] = sc.member_count();
  return j.dump();
}

std::string support_csv(const SupportCandidate& sc) {
  std::string out = "x,member\n";
  for (std::size_t i = 0; i < sc.grid.size(); ++i) {
    out += fmt12(sc.grid[i]);
    out += sc.member[i] ? ",1\n" : ",0\n";
  }
  return out;
}

std::string subaction_csv(const SubActionTable& table) {
  std::string out = "x,psi,achieved_depth\n";
  for (std::size_t i = 0; i < table.grid.size(); ++i) {
    out += fmt12(table.grid[i]);
    out += ',';
    out += fmt12(table.psi[i]);
    out += ',' + std::to_string(table.achieved_depth[i]) + '\n';
  }
  return out;
}

std::string subaction_json(const SubActionTable& table) {
  json j;
  j["depth"] = table.depth;
  j["beta"] = table.beta;
  j["grid"] = table.grid;
  j["psi"] = table.psi;
  j["achieved_depth"] = table.achieved_depth;
  j["lip_observed"] = table.lip_observed;
  j["sup_psi"] = table.sup_psi;
  j["last_increment"] = table.last_increment;
  j["stabilized"] = table.stabilized;
  j["marker_value_below_beta"] = table.marker_value_below_beta;
  if (table.min_excursion_freq) j["min_excursion_freq"] = *table.min_excursion_freq;
  return j.dump();
}

std::string violation_report_json(const ViolationReport& report) {
  json j;
  j["max_slack"] = report.max_slack;
  j["tol"] = report.tol;
  j["pass"] = report.pass;
  j["marker_excluded"] = report.marker_excluded;
  j["contact_avoids_vm"] = report.contact_avoids_vm;
  j["vm"] = {report.vm_lo, report.vm_hi};
  json worst = json::array();
  for (std::size_t i = 0; i < report.entries.size() && i < 16; ++i)
    worst.push_back({report.entries[i].x, report.entries[i].slack});
  j["worst_slacks"] = worst;
  int contacts = 0;
  for (bool b : report.contact) contacts += b;
  j["contact_count"] = contacts;
  return j.dump();
}

std::string markov_cover_json(const MarkovCover& cover) {
  json j;
  json intervals = json::array();
  for (const auto& iv : cover.intervals)
    intervals.push_back({iv.lo.to_double(), iv.hi.to_double()});
  j["intervals"] = intervals;
  json transitions = json::array();
  for (const auto& [a, b] : cover.transitions) transitions.push_back({a, b});
  j["transitions"] = transitions;
  j["z"] = orbit_obj(cover.z);
  j["m"] = cover.depth_m;
  j["verified"] = cover.verified;
  return j.dump();
}

std::string locking_report_json(const LockingReport& report) {
  json j;
  j["base_phi"] = report.base_phi;
  j["orbit"] = orbit_obj(report.orbit);
  j["C"] = report.c_domination;
  j["eps"] = report.eps;
  j["delta"] = report.delta;
  j["pass_fraction"] = report.pass_fraction;
  j["pass"] = report.pass;
  j["trials"] = report.trials.size();
  return j.dump();
}

std::string locking_report_csv(const LockingReport& report) {
  std::string out = "trial,lip_psi,qualifying,kept,margin,argmax_period,argmax_itinerary\n";
  for (const auto& t : report.trials) {
    out += std::to_string(t.trial);
    out += ',';
    out += fmt12(t.lip_psi);
    out += t.qualifying ? ",1" : ",0";
    out += t.kept ? ",1" : ",0";
    out += ',';
    out += fmt12(t.margin);
    out += ',' + std::to_string(t.argmax_period);
    out += ',' + t.argmax_itinerary + '\n';
  }
  return out;
}

std::string gamma_scaling_json(const GammaScalingResult& result) {
  json j;
  json rows = json::array();
  for (std::size_t pi = 0; pi < result.per_phi.size(); ++pi) {
    for (const auto& r : result.per_phi[pi])
      rows.push_back({{"phi_index", pi}, {"t", r.t}, {"gamma", r.gamma}, {"lip", r.lip}});
  }
  j["rows"] = rows;
  j["homogeneous"] = result.homogeneous;
  j["max_gamma_lip_ratio"] = result.max_gamma_lip_ratio;
  return j.dump();
}

std::string gamma_scaling_csv(const GammaScalingResult& result) {
  std::string out = "phi_index,t,gamma,lip\n";
  for (std::size_t pi = 0; pi < result.per_phi.size(); ++pi) {
    for (const auto& r : result.per_phi[pi]) {
      out += std::to_string(pi);
      out += ',';
      out += fmt12(r.t);
      out += ',';
      out += fmt12(r.gamma);
      out += ',';
      out += fmt12(r.lip);
      out += '\n';
    }
  }
  return out;
}

std::string subordination_json(const SubordinationReport& report) {
  json j;
  j["min_value"] = report.min_value;
  j["argmin_n"] = report.argmin_n;
  j["argmin_point"] = report.argmin_point;
  j["gamma"] = report.gamma;
  j["tol"] = report.tol;
  j["pass"] = report.pass;
  return j.dump();
}

}  // namespace ergopt
