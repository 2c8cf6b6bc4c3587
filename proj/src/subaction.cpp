#include "ergopt/subaction.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include "ergopt/errors.hpp"

namespace ergopt {

namespace {

// Fast double-valued preimage expansion. Doubling preimages of dyadic
// doubles are exact; covers invert each monotone lift branch numerically.
struct PreimageFn {
  const MapSpec& map;
  std::vector<double> branch_lo, branch_hi;  // lift branch cuts for covers

  explicit PreimageFn(const MapSpec& m) : map(m) {
    if (map.kind == MapKind::CircleCover) {
      branch_lo.assign(map.degree, 0.0);
      branch_hi.assign(map.degree, 1.0);
      for (int b = 1; b < map.degree; ++b) {
        // the cut between branches b-1 and b solves F(x) = b
        double cut = inverse_branch(map, b, Real(0.0))->to_double();
        branch_lo[b] = cut;
        branch_hi[b - 1] = cut;
      }
    }
  }

  void operator()(double y, std::vector<double>& out) const {
    out.clear();
    if (map.kind == MapKind::Doubling) {
      double h = 0.5 * y;
      out.push_back(h);
      out.push_back(h + 0.5);
      return;
    }
    for (int b = 0; b < map.degree; ++b) {
      // solve F(x) = y + b on [branch_lo[b], branch_hi[b]]
      double target = y + b;
      double lo = branch_lo[b], hi = branch_hi[b];
      double x = 0.5 * (lo + hi);
      for (int it = 0; it < 80; ++it) {
        double fx = x + (map.degree - 1) * std::pow(x, 1.0 + map.alpha) - target;
        if (fx > 0)
          hi = x;
        else
          lo = x;
        double d = 1.0 + (1.0 + map.alpha) * (map.degree - 1) *
                             (x > 0 ? std::pow(x, map.alpha) : (map.alpha > 0 ? 0.0 : 1.0));
        double xn = x - fx / d;
        if (!(xn > lo && xn < hi)) xn = 0.5 * (lo + hi);
        if (std::fabs(xn - x) < 1e-16) {
          x = xn;
          break;
        }
        x = xn;
      }
      out.push_back(x >= 1.0 ? x - 1.0 : x);
    }
  }
};

struct DfsNode {
  double point;
  int depth;
  double sum;       // S_depth (phi - beta) along the path to the root
  int outside;      // steps outside the protective arc (sticky covers only)
  std::size_t next_child;
  double children[10];
  int n_children;
};

}  // namespace

SubActionTable subaction_candidate(const MapSpec& map, const Observable& phi, double beta,
                                   int depth, int grid_n, long node_cap,
                                   double stab_tol) {
  if (map.space() != Space::Circle)
    throw DomainError("sub-action candidate requires a circle kind");
  if (depth < 1) throw DomainError("sub-action depth must be >= 1");

  SubActionTable table;
  table.depth = depth;
  table.beta = beta;
  table.space = Space::Circle;
  table.lo = 0.0;
  table.hi = 1.0;
  table.grid.resize(grid_n);
  table.psi.resize(grid_n);
  table.achieved_depth.assign(grid_n, 0);
  table.marker_value_below_beta = phi.eval(map.marker()) < beta;

  const bool sticky = map.kind == MapKind::CircleCover && map.alpha > 0.0;
  VInterval vs;
  if (sticky) vs = v_interval(map, 6);
  double min_freq = 1.0;

  // branch-and-bound slack: no step can add more than sup(phi) - beta
  const double step_slack = std::max(0.0, sup_abs_bound(phi) - beta);
  PreimageFn pre(map);

  std::vector<DfsNode> stack;
  stack.reserve(depth + 2);
  std::vector<double> kids;
  for (int i = 0; i < grid_n; ++i) {
    double x = double(i) / grid_n;
    table.grid[i] = x;
    double best = -std::numeric_limits<double>::infinity();
    double best_shallow = best;  // depth <= N-1, for the increment record
    int best_n = 0;
    double best_freq = 1.0;
    long nodes = 0;

    stack.clear();
    pre(x, kids);
    DfsNode root{x, 0, 0.0, 0, 0, {}, int(kids.size())};
    std::copy(kids.begin(), kids.end(), root.children);
    stack.push_back(root);
    while (!stack.empty()) {
      DfsNode& top = stack.back();
      if (top.next_child >= std::size_t(top.n_children)) {
        stack.pop_back();
        continue;
      }
      double y = top.children[top.next_child++];
      int n = top.depth + 1;
      double s = top.sum + (phi.eval(y) - beta);
      int outside = top.outside + (sticky && !vs.contains(y) ? 1 : 0);
      if (++nodes > node_cap)
        throw DepthOverflow("preimage tree exceeded the node cap");
      if (s > best) {
        best = s;
        best_n = n;
        if (sticky) best_freq = double(outside) / double(n);
      }
      if (n <= depth - 1 && s > best_shallow) best_shallow = s;
      if (n == depth) continue;
      // prune when the branch can improve neither record
      double remain = double(depth - n) * step_slack;
      double remain_shallow = double(depth - 1 - n) * step_slack;
      if (s + remain <= best && s + remain_shallow <= best_shallow) continue;
      pre(y, kids);
      DfsNode child{y, n, s, outside, 0, {}, int(kids.size())};
      std::copy(kids.begin(), kids.end(), child.children);
      stack.push_back(child);
    }
    table.psi[i] = best;
    table.achieved_depth[i] = best_n;
    if (depth == 1) best_shallow = best;
    table.last_increment = std::max(table.last_increment, best - best_shallow);
    if (sticky) min_freq = std::min(min_freq, best_freq);
  }

  table.sup_psi = *std::max_element(table.psi.begin(), table.psi.end());
  double h = 1.0 / grid_n;
  for (int i = 0; i < grid_n; ++i) {
    double dq = std::fabs(table.psi[(i + 1) % grid_n] - table.psi[i]) / h;
    table.lip_observed = std::max(table.lip_observed, dq);
  }
  table.stabilized = table.last_increment <= stab_tol;
  if (sticky) table.min_excursion_freq = min_freq;
  return table;
}

namespace {

// Linear interpolation of a circle-grid table.
double interp_circle(const std::vector<double>& grid_psi, double x) {
  int n = int(grid_psi.size());
  double pos = (x - std::floor(x)) * n;
  int idx = int(pos);
  if (idx >= n) idx = 0;
  double frac = pos - idx;
  return grid_psi[idx] * (1.0 - frac) + grid_psi[(idx + 1) % n] * frac;
}

}  // namespace

ViolationReport verify_subaction(const MapSpec& map, const Observable& phi, double beta,
                                 const SubActionTable& table, double tol, int vm_depth) {
  ViolationReport rep;
  rep.tol = tol;
  int n = int(table.grid.size());
  rep.entries.reserve(n);
  rep.contact.assign(n, false);
  rep.max_slack = -std::numeric_limits<double>::infinity();
  for (int i = 0; i < n; ++i) {
    double x = table.grid[i];
    double tx = eval_map(map, Real(x)).to_double();
    double slack = phi.eval(x) - beta + table.psi[i] - interp_circle(table.psi, tx);
    rep.entries.push_back({x, slack});
    rep.max_slack = std::max(rep.max_slack, slack);
    rep.contact[i] = std::fabs(slack) <= tol;
  }
  std::sort(rep.entries.begin(), rep.entries.end(),
            [](const ViolationReport::Entry& a, const ViolationReport::Entry& b) {
              return a.slack > b.slack;
            });
  rep.pass = rep.max_slack <= tol;

  // contact set vs the marker point and its protective arc
  double c = map.marker().to_double();
  double slack_c = phi.eval(c) - beta + interp_circle(table.psi, c) -
                   interp_circle(table.psi, eval_map(map, map.marker()).to_double());
  rep.marker_excluded = std::fabs(slack_c) > tol;
  VInterval vm = v_interval(map, vm_depth);
  rep.vm_lo = vm.a;
  rep.vm_hi = vm.b;
  rep.contact_avoids_vm = true;
  for (int i = 0; i < n; ++i) {
    if (rep.contact[i] && vm.contains(table.grid[i])) {
      rep.contact_avoids_vm = false;
      break;
    }
  }
  return rep;
}

LipschitzProfile lipschitz_profile(const MapSpec& map, const Observable& phi,
                                   const SubActionTable& table) {
  LipschitzProfile prof;
  prof.lip_observed = table.lip_observed;
  double min_d = map.min_derivative();
  if (min_d > 1.0) {
    double lambda = 1.0 / min_d;
    double l_star = phi.lip_estimate;
    prof.claim_bound = l_star * (1.0 + 1.0 / (1.0 - lambda));
    prof.pass = prof.lip_observed <= *prof.claim_bound;
  } else {
    prof.claim_bound = std::nullopt;  // sticky cover: constants unavailable
    prof.pass = true;
  }
  return prof;
}

VInterval v_interval(const MapSpec& map, int n) {
  if (map.space() != Space::Circle)
    throw DomainError("v_interval is defined for circle kinds");
  Real c = map.marker();
  std::vector<Real> level{c};
  for (int k = 0; k < n; ++k) {
    std::vector<Real> next;
    for (const Real& y : level) {
      for (const Real& p : preimages(map, y)) next.push_back(p);
    }
    std::sort(next.begin(), next.end());
    next.erase(std::unique(next.begin(), next.end()), next.end());
    level = std::move(next);
  }
  // cyclic neighbors of c among its n-th preimages, excluding c itself
  double cd = c.to_double();
  std::vector<double> pts;
  for (const Real& p : level) {
    double pd = p.to_double();
    if (std::fabs(pd - cd) > 1e-15) pts.push_back(pd);
  }
  if (pts.empty()) throw NotFound("preimage set too small for a protective arc");
  std::sort(pts.begin(), pts.end());
  auto it = std::upper_bound(pts.begin(), pts.end(), cd);
  VInterval v;
  v.b = it == pts.end() ? pts.front() : *it;        // first point clockwise of c
  v.a = it == pts.begin() ? pts.back() : *(it - 1); // first point counter-clockwise
  return v;
}

}  // namespace ergopt
