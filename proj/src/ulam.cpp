#include "ergopt/ulam.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "ergopt/errors.hpp"

namespace ergopt {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

// Cell boundary i/n scaled to [lo,hi], exact when the map is exact.
Real cell_bound(const MapSpec& map, int n, long i) {
  if (map.exact_kind())
    return Real(Rational(i, n) * (map.domain_hi().rat() - map.domain_lo().rat()));
  double w = map.domain_hi().to_double() - map.domain_lo().to_double();
  return Real(map.domain_lo().to_double() + double(i) * w / double(n));
}

// Add edges src -> every cell met by the closed lift-interval [img_lo, img_hi].
void add_edges_from_image(const MapSpec& map, int n, int src, const Real& img_lo,
                          const Real& img_hi, std::vector<std::vector<int>>& succ) {
  double width = (map.domain_hi().to_double() - map.domain_lo().to_double()) / n;
  long j_lo = long(std::floor(img_lo.to_double() / width)) - 1;
  long j_hi = long(std::floor(img_hi.to_double() / width)) + 1;
  if (map.space() == Space::Interval) {
    j_lo = std::max(j_lo, 0L);
    j_hi = std::min(j_hi, long(n) - 1);
  }
  for (long j = j_lo; j <= j_hi; ++j) {
    // closed-interval overlap test, exact for exact kinds
    if (cell_bound(map, n, j) > img_hi || cell_bound(map, n, j + 1) < img_lo) continue;
    int cell = int(((j % n) + n) % n);
    succ[src].push_back(cell);
  }
}

}  // namespace

UlamGraph build_ulam(const MapSpec& map, const Observable& phi, int n_cells) {
  if (n_cells < 2) throw DomainError("build_ulam needs n_cells >= 2");
  UlamGraph g;
  g.n_cells = n_cells;
  g.space = map.space();
  g.lo = map.domain_lo().to_double();
  g.hi = map.domain_hi().to_double();
  g.weight.resize(n_cells);
  g.succ.assign(n_cells, {});

  const Real c = map.marker();
  for (int i = 0; i < n_cells; ++i) {
    Real a = cell_bound(map, n_cells, i);
    Real b = cell_bound(map, n_cells, i + 1);
    g.weight[i] = phi.eval(0.5 * (a.to_double() + b.to_double()));
    if (map.unimodal() && a < c && c < b) {
      // split at the turning point so each piece is monotone
      Real l1, h1, l2, h2;
      interval_image(map, a, c, l1, h1);
      interval_image(map, c, b, l2, h2);
      add_edges_from_image(map, n_cells, i, l1, h1, g.succ);
      add_edges_from_image(map, n_cells, i, l2, h2, g.succ);
    } else {
      Real l, h;
      interval_image(map, a, b, l, h);
      add_edges_from_image(map, n_cells, i, l, h, g.succ);
    }
    auto& s = g.succ[i];
    std::sort(s.begin(), s.end());
    s.erase(std::unique(s.begin(), s.end()), s.end());
  }
  return g;
}

// ---------------------------------------------------------------------------
// Max mean cycle.
// ---------------------------------------------------------------------------

namespace {

// Iterative Tarjan SCC; returns component id per node.
std::vector<int> tarjan_scc(const std::vector<std::vector<int>>& succ, int& n_comp) {
  const int n = int(succ.size());
  std::vector<int> index(n, -1), low(n, 0), comp(n, -1), on_stack(n, 0);
  std::vector<int> stack;
  struct Frame {
    int v;
    std::size_t child;
  };
  std::vector<Frame> call;
  int next_index = 0;
  n_comp = 0;
  for (int root = 0; root < n; ++root) {
    if (index[root] != -1) continue;
    call.push_back({root, 0});
    index[root] = low[root] = next_index++;
    stack.push_back(root);
    on_stack[root] = 1;
    while (!call.empty()) {
      Frame& f = call.back();
      if (f.child < succ[f.v].size()) {
        int w = succ[f.v][f.child++];
        if (index[w] == -1) {
          index[w] = low[w] = next_index++;
          stack.push_back(w);
          on_stack[w] = 1;
          call.push_back({w, 0});
        } else if (on_stack[w]) {
          low[f.v] = std::min(low[f.v], index[w]);
        }
      } else {
        int v = f.v;
        call.pop_back();
        if (!call.empty()) low[call.back().v] = std::min(low[call.back().v], low[v]);
        if (low[v] == index[v]) {
          for (;;) {
            int w = stack.back();
            stack.pop_back();
            on_stack[w] = 0;
            comp[w] = n_comp;
            if (w == v) break;
          }
          ++n_comp;
        }
      }
    }
  }
  return comp;
}

struct SccResult {
  double value = kNegInf;
  std::vector<int> cycle;
};

// Karp per component. Nodes/edges are given in local indexing; the edge
// weight of u->v is node_weight[u].
SccResult karp_component(const std::vector<std::vector<int>>& succ,
                         const std::vector<double>& node_weight) {
  const int n = int(succ.size());
  std::vector<double> prev(n, kNegInf), cur(n);
  prev[0] = 0.0;

  // pass 1: D_n
  std::vector<double> d_n;
  for (int k = 1; k <= n; ++k) {
    std::fill(cur.begin(), cur.end(), kNegInf);
    for (int u = 0; u < n; ++u) {
      if (prev[u] == kNegInf) continue;
      double base = prev[u] + node_weight[u];
      for (int v : succ[u]) cur[v] = std::max(cur[v], base);
    }
    std::swap(prev, cur);
  }
  d_n = prev;

  // pass 2: lambda* = max_v min_k (D_n(v) - D_k(v)) / (n - k)
  std::fill(prev.begin(), prev.end(), kNegInf);
  prev[0] = 0.0;
  std::vector<double> ratio(n, std::numeric_limits<double>::infinity());
  for (int k = 0; k < n; ++k) {
    for (int v = 0; v < n; ++v) {
      if (d_n[v] == kNegInf || prev[v] == kNegInf) continue;
      ratio[v] = std::min(ratio[v], (d_n[v] - prev[v]) / double(n - k));
    }
    std::fill(cur.begin(), cur.end(), kNegInf);
    for (int u = 0; u < n; ++u) {
      if (prev[u] == kNegInf) continue;
      double base = prev[u] + node_weight[u];
      for (int v : succ[u]) cur[v] = std::max(cur[v], base);
    }
    std::swap(prev, cur);
  }
  SccResult res;
  for (int v = 0; v < n; ++v) {
    if (d_n[v] == kNegInf || std::isinf(ratio[v])) continue;
    res.value = std::max(res.value, ratio[v]);
  }
  if (res.value == kNegInf) return res;

  // witness: longest-walk potentials for the reduced weights w' = w - lambda*;
  // every cycle of the optimal mean is tight, so a cycle inside the tight
  // subgraph realizes lambda*.
  std::vector<double> h(n, 0.0);
  for (int it = 0; it < n; ++it) {
    bool changed = false;
    for (int u = 0; u < n; ++u) {
      double base = h[u] + node_weight[u] - res.value;
      for (int v : succ[u]) {
        if (base > h[v] + 1e-15) {
          h[v] = base;
          changed = true;
        }
      }
    }
    if (!changed) break;
  }
  const double tight_tol = 1e-9;
  std::vector<int> color(n, 0), parent(n, -1);
  std::vector<int> cyc;
  for (int start = 0; start < n && cyc.empty(); ++start) {
    if (color[start]) continue;
    // iterative DFS over tight edges
    std::vector<std::pair<int, std::size_t>> st{{start, 0}};
    color[start] = 1;
    while (!st.empty() && cyc.empty()) {
      auto& [u, ci] = st.back();
      bool advanced = false;
      while (ci < succ[u].size()) {
        int v = succ[u][ci++];
        if (std::fabs(h[u] + node_weight[u] - res.value - h[v]) > tight_tol) continue;
        if (color[v] == 1) {
          // found a cycle v -> ... -> u -> v
          cyc.push_back(u);
          for (int w = u; w != v;) {
            w = parent[w];
            cyc.push_back(w);
          }
          std::reverse(cyc.begin(), cyc.end());
          break;
        }
        if (color[v] == 0) {
          color[v] = 1;
          parent[v] = u;
          st.push_back({v, 0});
          advanced = true;
          break;
        }
      }
      if (!advanced && cyc.empty()) {
        color[u] = 2;
        st.pop_back();
      }
    }
  }
  res.cycle = std::move(cyc);
  return res;
}

}  // namespace

MeanCycle max_mean_cycle(const UlamGraph& g) {
  const int n = g.n_cells;
  int n_comp = 0;
  std::vector<int> comp = tarjan_scc(g.succ, n_comp);
  std::vector<std::vector<int>> members(n_comp);
  for (int v = 0; v < n; ++v) members[comp[v]].push_back(v);

  MeanCycle best;
  best.value = kNegInf;
  std::vector<int> local(n, -1);
  for (int cidx = 0; cidx < n_comp; ++cidx) {
    const auto& verts = members[cidx];
    bool has_edge = false;
    for (int v : verts) {
      for (int w : g.succ[v])
        if (comp[w] == cidx) {
          has_edge = true;
          break;
        }
      if (has_edge) break;
    }
    if (!has_edge) continue;  // singleton without self-loop has no cycle
    for (std::size_t i = 0; i < verts.size(); ++i) local[verts[i]] = int(i);
    std::vector<std::vector<int>> lsucc(verts.size());
    std::vector<double> lw(verts.size());
    for (std::size_t i = 0; i < verts.size(); ++i) {
      lw[i] = g.weight[verts[i]];
      for (int w : g.succ[verts[i]])
        if (comp[w] == cidx) lsucc[i].push_back(local[w]);
    }
    SccResult r = karp_component(lsucc, lw);
    if (r.value > best.value) {
      best.value = r.value;
      best.cells.clear();
      for (int v : r.cycle) best.cells.push_back(verts[v]);
    }
  }
  if (best.value == kNegInf) throw NoCycle("graph has no directed cycle");
  return best;
}

}  // namespace ergopt
