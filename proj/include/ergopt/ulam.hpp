#ifndef ERGOPT_ULAM_HPP
#define ERGOPT_ULAM_HPP

#include <vector>

#include "ergopt/maps.hpp"

namespace ergopt {

/// Interval-cell transition graph with per-cell observable weights:
/// cells are a uniform partition of the domain, i -> j iff T(cell_i)
/// meets cell_j (computed from monotone-piece images, exactly for exact
/// kinds), and w_i = phi(midpoint of cell_i).
struct UlamGraph {
  int n_cells = 0;
  Space space = Space::Circle;
  double lo = 0.0;
  double hi = 1.0;
  std::vector<double> weight;          // per cell
  std::vector<std::vector<int>> succ;  // sorted successor lists

  std::size_t edge_count() const {
    std::size_t m = 0;
    for (const auto& s : succ) m += s.size();
    return m;
  }
};

UlamGraph build_ulam(const MapSpec& map, const Observable& phi, int n_cells);

struct MeanCycle {
  double value = 0.0;
  std::vector<int> cells;  // one witnessing cycle, in traversal order
};

/// Maximum over directed cycles of (sum of cell weights) / length, via
/// Karp's dynamic program per strongly connected component (rolling
/// layers, O(V) memory). The witness cycle is recovered from the critical
/// graph of the reduced weights. Throws NoCycle when the graph is acyclic.
MeanCycle max_mean_cycle(const UlamGraph& g);

}  // namespace ergopt

#endif
