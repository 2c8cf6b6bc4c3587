#include "ergopt/markov.hpp"

#include <algorithm>
#include <cmath>

#include "ergopt/errors.hpp"

namespace ergopt {

namespace {

// E_m = union of T^{-k} z over 0 <= k < m, sorted and deduplicated.
std::vector<Real> preimage_set(const MapSpec& map, const Real& z, int m) {
  std::vector<Real> all{z};
  std::vector<Real> level{z};
  for (int k = 1; k < m; ++k) {
    std::vector<Real> next;
    for (const Real& y : level)
      for (const Real& p : preimages(map, y)) next.push_back(p);
    std::sort(next.begin(), next.end());
    next.erase(std::unique(next.begin(), next.end()), next.end());
    all.insert(all.end(), next.begin(), next.end());
    level = std::move(next);
  }
  std::sort(all.begin(), all.end());
  all.erase(std::unique(all.begin(), all.end()), all.end());
  return all;
}

// Image of an open interval as an open hull; circle results are reported as
// (start, length) in lift coordinates.
struct ArcImage {
  Real lo, hi;     // interval kinds: plain hull
  double length;   // circle kinds: arc length in the lift
};

ArcImage image_of(const MapSpec& map, const OpenInterval& iv) {
  ArcImage img{Real(0), Real(0), 0.0};
  if (map.unimodal()) {
    interval_image(map, iv.lo, iv.hi, img.lo, img.hi);
    return img;
  }
  Real l, h;
  interval_image(map, iv.lo, iv.hi, l, h);  // lift coordinates
  img.length = h.to_double() - l.to_double();
  img.lo = l.mod1();
  img.hi = img.lo + (h - l);
  return img;
}

// Open-interval meet / contain tests. Circle arcs are compared against both
// unit translates of J.
bool arc_meets(const MapSpec& map, const ArcImage& img, const OpenInterval& j) {
  if (map.unimodal()) return img.lo < j.hi && j.lo < img.hi;
  if (img.length >= 1.0) return true;
  for (int t = 0; t <= 1; ++t) {
    Real jl = j.lo + Real(t), jh = j.hi + Real(t);
    if (img.lo < jh && jl < img.hi) return true;
  }
  return false;
}

bool arc_contains(const MapSpec& map, const ArcImage& img, const OpenInterval& j) {
  if (map.unimodal()) return img.lo <= j.lo && j.hi <= img.hi;
  if (img.length >= 1.0) return true;
  for (int t = 0; t <= 1; ++t) {
    Real jl = j.lo + Real(t), jh = j.hi + Real(t);
    if (img.lo <= jl && jh <= img.hi) return true;
  }
  return false;
}

}  // namespace

MarkovCover admissible_cover(const MapSpec& map, const std::vector<Real>& k_points,
                             const PeriodicOrbit& z, int m) {
  if (!map.unimodal())
    throw DomainError("admissible_cover is defined for unimodal kinds");
  if (m < z.period)
    throw DomainError("depth m must be at least the generator period for T E_m in E_m");

  MarkovCover cover;
  cover.z = z;
  cover.depth_m = m;
  if (k_points.empty()) {
    cover.verified = true;
    return cover;
  }

  std::vector<Real> cuts = preimage_set(map, z.points[0], m);
  if (cuts.empty() || cuts.front() != map.domain_lo()) cuts.insert(cuts.begin(), map.domain_lo());
  if (cuts.back() != map.domain_hi()) cuts.push_back(map.domain_hi());

  // component of the complement holding the turning point is off limits
  const Real c = map.marker();
  int banned = -1;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    if (cuts[i] < c && c < cuts[i + 1]) {
      banned = int(i);
      break;
    }
  }

  std::vector<char> selected(cuts.size() - 1, 0);
  for (const Real& p : k_points) {
    auto it = std::upper_bound(cuts.begin(), cuts.end(), p);
    if (it == cuts.begin() || it == cuts.end())
      throw CoverageGap(p.to_double(), "sample point outside the domain interior");
    std::size_t comp = std::size_t(it - cuts.begin()) - 1;
    if (cuts[comp] == p)
      throw CoverageGap(p.to_double(), "sample point lies on an endpoint cut");
    if (int(comp) == banned)
      throw MarginTooSmall("sample point shares a component with the turning point");
    selected[comp] = 1;
  }
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    if (selected[i]) cover.intervals.push_back({cuts[i], cuts[i + 1]});
  }
  MarkovCheck check = verify_markov(map, cover);
  cover.transitions = std::move(check.transitions);
  cover.verified = check.ok;
  return cover;
}

MarkovCheck verify_markov(const MapSpec& map, const MarkovCover& cover) {
  MarkovCheck out;
  const int n = int(cover.intervals.size());
  for (int i = 0; i < n; ++i) {
    ArcImage img = image_of(map, cover.intervals[i]);
    for (int j = 0; j < n; ++j) {
      if (!arc_meets(map, img, cover.intervals[j])) continue;
      out.transitions.emplace_back(i, j);
      if (!arc_contains(map, img, cover.intervals[j])) out.violations.emplace_back(i, j);
    }
  }
  out.ok = out.violations.empty();
  return out;
}

namespace {

// Preimage intervals of the open interval (a,b) under one monotone branch.
void branch_preimage(const MapSpec& map, int branch, const Real& a, const Real& b,
                     std::vector<OpenInterval>& out) {
  if (map.unimodal()) {
    // branch image hull
    Real c = map.marker();
    Real e0 = branch == 0 ? map.domain_lo() : c;
    Real e1 = branch == 0 ? c : map.domain_hi();
    Real img_lo, img_hi;
    interval_image(map, e0, e1, img_lo, img_hi);
    Real ca = max(a, img_lo), cb = min(b, img_hi);
    if (!(ca < cb)) return;
    auto xa = inverse_branch(map, branch, ca);
    auto xb = inverse_branch(map, branch, cb);
    if (!xa || !xb) return;
    // left branch increases, right branch decreases
    if (branch == 0)
      out.push_back({*xa, *xb});
    else
      out.push_back({*xb, *xa});
    return;
  }
  // circle kinds: invert the lift so an endpoint at 1 stays distinct from 0
  Real lo = lift_inverse(map, a + Real(branch));
  Real hi = lift_inverse(map, b + Real(branch));
  if (lo < hi) out.push_back({lo, hi});
}

}  // namespace

InvariantSetDepth invariant_set_depth(const MapSpec& map, const MarkovCover& cover,
                                      int depth) {
  InvariantSetDepth out;
  std::vector<OpenInterval> cur = cover.intervals;
  std::sort(cur.begin(), cur.end(),
            [](const OpenInterval& x, const OpenInterval& y) { return x.lo < y.lo; });

  auto record = [&out](const std::vector<OpenInterval>& comps) {
    double mx = 0.0;
    for (const auto& c : comps) mx = std::max(mx, c.length());
    out.max_component_length.push_back(mx);
    out.component_count.push_back(comps.size());
  };
  record(cur);

  for (int step = 0; step < depth; ++step) {
    // T^{-1}(cur) intersected with the cover union
    std::vector<OpenInterval> pre;
    for (const auto& iv : cur) {
      for (int b = 0; b < map.branch_count(); ++b)
        branch_preimage(map, b, iv.lo, iv.hi, pre);
    }
    std::vector<OpenInterval> next;
    for (const auto& p : pre) {
      for (const auto& w : cover.intervals) {
        Real lo = max(p.lo, w.lo), hi = min(p.hi, w.hi);
        if (lo < hi) next.push_back({lo, hi});
      }
    }
    std::sort(next.begin(), next.end(),
              [](const OpenInterval& x, const OpenInterval& y) { return x.lo < y.lo; });
    cur = std::move(next);
    record(cur);
    if (cur.empty()) break;
  }
  out.components = cur;

  // surjectivity witness: every cover interval is contained in the image of
  // some cover interval
  out.surjective = true;
  for (const auto& j : cover.intervals) {
    bool covered = false;
    for (const auto& i : cover.intervals) {
      if (arc_contains(map, image_of(map, i), j)) {
        covered = true;
        break;
      }
    }
    if (!covered) {
      out.surjective = false;
      break;
    }
  }
  return out;
}

}  // namespace ergopt
