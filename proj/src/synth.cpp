#include "graphflow/synth.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>
#include <vector>

namespace graphflow {

SynthFamily synth_family_from_string(const std::string& name) {
  if (name == "tree") return SynthFamily::kTree;
  if (name == "planar") return SynthFamily::kPlanar;
  if (name == "sbm-like") return SynthFamily::kSbmLike;
  if (name == "toy-enumerable") return SynthFamily::kToyEnumerable;
  throw std::invalid_argument("unknown dataset family: " + name);
}

std::string to_string(SynthFamily family) {
  switch (family) {
    case SynthFamily::kTree: return "tree";
    case SynthFamily::kPlanar: return "planar";
    case SynthFamily::kSbmLike: return "sbm-like";
    case SynthFamily::kToyEnumerable: return "toy-enumerable";
  }
  return "?";
}

GraphDataset toy_enumerable_dataset() {
  GraphDataset ds;
  ds.x_card = 2;
  ds.e_card = 2;
  CategoricalGraph a(2, 2, 2);
  a.set_node(0, 0);
  a.set_node(1, 0);
  a.set_edge(0, 1, 1);
  CategoricalGraph b(2, 2, 2);
  b.set_node(0, 1);
  b.set_node(1, 1);
  b.set_edge(0, 1, 0);
  ds.graphs = {a, b};
  return ds;
}

namespace {

CategoricalGraph random_tree(int n, Rng& rng) {
  CategoricalGraph g(n, 1, 2);
  for (int k = 1; k < n; ++k) g.set_edge(k, rng.uniform_int(k), 1);
  return g;
}

CategoricalGraph sbm_like(int n, Rng& rng) {
  CategoricalGraph g(n, 1, 2);
  const int half = n / 2;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      const bool same_block = (i < half) == (j < half);
      const double p = same_block ? 0.6 : 0.1;
      if (rng.uniform() < p) g.set_edge(i, j, 1);
    }
  return g;
}

struct Point {
  double x, y;
};

// Orientation and in-circumcircle predicates in long double; random point
// sets with the deterministic jitter below stay far from the degenerate
// locus at desk scale.
long double orient2d(const Point& a, const Point& b, const Point& c) {
  return (static_cast<long double>(b.x) - a.x) * (static_cast<long double>(c.y) - a.y) -
         (static_cast<long double>(b.y) - a.y) * (static_cast<long double>(c.x) - a.x);
}

bool in_circumcircle(const Point& a, const Point& b, const Point& c,
                     const Point& d) {
  const long double adx = a.x - d.x, ady = a.y - d.y;
  const long double bdx = b.x - d.x, bdy = b.y - d.y;
  const long double cdx = c.x - d.x, cdy = c.y - d.y;
  const long double ad = adx * adx + ady * ady;
  const long double bd = bdx * bdx + bdy * bdy;
  const long double cd = cdx * cdx + cdy * cdy;
  const long double det = adx * (bdy * cd - bd * cdy) -
                          ady * (bdx * cd - bd * cdx) +
                          ad * (bdx * cdy - bdy * cdx);
  return det > 0.0L;
}

// Bowyer-Watson incremental Delaunay triangulation.
CategoricalGraph delaunay_graph(int n, Rng& rng) {
  std::vector<Point> pts(n);
  for (int k = 0; k < n; ++k) {
    pts[k].x = rng.uniform();
    pts[k].y = rng.uniform();
    // Deterministic 1e-9 jitter resolves cocircular degeneracies.
    pts[k].x += 1e-9 * ((k * 7919) % 101);
    pts[k].y += 1e-9 * ((k * 104729) % 103);
  }
  // Super-triangle well outside the unit square; indices n, n+1, n+2.
  std::vector<Point> all = pts;
  all.push_back({-50.0, -50.0});
  all.push_back({50.0, -50.0});
  all.push_back({0.5, 100.0});

  struct Tri {
    int a, b, c;
  };
  auto ccw = [&all](Tri t) {
    if (orient2d(all[t.a], all[t.b], all[t.c]) < 0.0L) std::swap(t.b, t.c);
    return t;
  };
  std::vector<Tri> tris{ccw({n, n + 1, n + 2})};
  for (int p = 0; p < n; ++p) {
    std::vector<Tri> bad, keep;
    for (const Tri& t : tris)
      (in_circumcircle(all[t.a], all[t.b], all[t.c], all[p]) ? bad : keep)
          .push_back(t);
    // Boundary of the cavity: edges of bad triangles seen exactly once.
    std::vector<std::pair<int, int>> edges;
    for (const Tri& t : bad) {
      edges.emplace_back(t.a, t.b);
      edges.emplace_back(t.b, t.c);
      edges.emplace_back(t.c, t.a);
    }
    auto canon = [](std::pair<int, int> e) {
      if (e.first > e.second) std::swap(e.first, e.second);
      return e;
    };
    std::vector<std::pair<int, int>> boundary;
    for (const auto& e : edges) {
      int count = 0;
      for (const auto& f : edges)
        if (canon(e) == canon(f)) ++count;
      if (count == 1) boundary.push_back(e);
    }
    tris = std::move(keep);
    for (const auto& [a, b] : boundary) tris.push_back(ccw({a, b, p}));
  }

  CategoricalGraph g(n, 1, 2);
  for (const Tri& t : tris) {
    if (t.a >= n || t.b >= n || t.c >= n) continue;  // touches the super-triangle
    g.set_edge(t.a, t.b, 1);
    g.set_edge(t.b, t.c, 1);
    g.set_edge(t.c, t.a, 1);
  }
  return g;
}

}  // namespace

GraphDataset generate(const SynthSpec& spec, Rng& rng) {
  if (spec.n_min > spec.n_max)
    throw std::invalid_argument("generate: n_min > n_max");
  if (spec.family == SynthFamily::kToyEnumerable) return toy_enumerable_dataset();
  if (spec.family == SynthFamily::kPlanar && spec.n_min < 3)
    throw std::invalid_argument("generate: planar family needs n >= 3");
  if (spec.n_min < 1) throw std::invalid_argument("generate: n_min >= 1");

  GraphDataset ds;
  ds.x_card = 1;
  ds.e_card = 2;
  for (int i = 0; i < spec.n_graphs; ++i) {
    const int n = spec.n_min + rng.uniform_int(spec.n_max - spec.n_min + 1);
    switch (spec.family) {
      case SynthFamily::kTree: ds.graphs.push_back(random_tree(n, rng)); break;
      case SynthFamily::kPlanar: ds.graphs.push_back(delaunay_graph(n, rng)); break;
      case SynthFamily::kSbmLike: ds.graphs.push_back(sbm_like(n, rng)); break;
      case SynthFamily::kToyEnumerable: break;
    }
  }
  if (spec.with_labels) {
    // Label 1 above the family's lower-median edge density.
    std::vector<double> density;
    for (const auto& g : ds.graphs) {
      int edges = 0;
      for (int s : g.edge_states()) edges += s != 0;
      density.push_back(g.n_edge_slots() > 0
                            ? static_cast<double>(edges) / g.n_edge_slots()
                            : 0.0);
    }
    std::vector<double> sorted = density;
    std::sort(sorted.begin(), sorted.end());
    const double median = sorted[(sorted.size() - 1) / 2];
    std::vector<int> labels;
    for (double d : density) labels.push_back(d > median ? 1 : 0);
    ds.labels = std::move(labels);
  }
  return ds;
}

}  // namespace graphflow
