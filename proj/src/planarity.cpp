#include "graphflow/planarity.hpp"

#include <algorithm>
#include <vector>

namespace graphflow {

namespace {

constexpr int kNone = -1;

// One oriented edge per undirected skeleton edge, fixed during the first
// DFS. Identified by the undirected edge index.
struct LrState {
  int n = 0;
  std::vector<int> src, dst;                 // orientation, kNone = unset
  std::vector<std::vector<int>> incident;    // vertex -> undirected edge ids
  std::vector<int> other;                    // flattened endpoint pairs
  std::vector<int> height;                   // kNone = unvisited
  std::vector<int> parent_edge;              // per vertex, kNone at roots
  std::vector<int> lowpt, lowpt2, nesting;   // per edge
  std::vector<int> ref, lowpt_edge;          // per edge
  std::vector<int> stack_bottom;             // per edge: stack size marker

  struct Interval {
    int low = kNone;
    int high = kNone;
    bool empty() const { return low == kNone && high == kNone; }
  };
  struct ConflictPair {
    Interval left, right;
  };
  std::vector<ConflictPair> stack;

  int endpoint(int e, int v) const {
    return other[2 * e] == v ? other[2 * e + 1] : other[2 * e];
  }

  bool conflicting(const Interval& i, int b) const {
    return !i.empty() && lowpt[i.high] > lowpt[b];
  }

  int lowest(const ConflictPair& p) const {
    if (p.left.empty() && p.right.empty()) return kNone;
    if (p.left.empty()) return lowpt[p.right.low];
    if (p.right.empty()) return lowpt[p.left.low];
    return std::min(lowpt[p.left.low], lowpt[p.right.low]);
  }

  void dfs_orient(int v) {
    const int e = parent_edge[v];
    for (int ei : incident[v]) {
      if (src[ei] != kNone) continue;  // already oriented
      const int w = endpoint(ei, v);
      src[ei] = v;
      dst[ei] = w;
      lowpt[ei] = height[v];
      lowpt2[ei] = height[v];
      if (height[w] == kNone) {  // tree edge
        parent_edge[w] = ei;
        height[w] = height[v] + 1;
        dfs_orient(w);
      } else {  // back edge
        lowpt[ei] = height[w];
      }
      nesting[ei] = 2 * lowpt[ei] + (lowpt2[ei] < height[v] ? 1 : 0);
      if (e != kNone) {
        if (lowpt[ei] < lowpt[e]) {
          lowpt2[e] = std::min(lowpt[e], lowpt2[ei]);
          lowpt[e] = lowpt[ei];
        } else if (lowpt[ei] > lowpt[e]) {
          lowpt2[e] = std::min(lowpt2[e], lowpt[ei]);
        } else {
          lowpt2[e] = std::min(lowpt2[e], lowpt2[ei]);
        }
      }
    }
  }

  bool add_constraints(int ei, int e) {
    ConflictPair p;
    // Merge return edges of ei into p.right.
    do {
      ConflictPair q = stack.back();
      stack.pop_back();
      if (!q.left.empty()) std::swap(q.left, q.right);
      if (!q.left.empty()) return false;
      if (lowpt[q.right.low] > lowpt[e]) {
        if (p.right.empty())
          p.right.high = q.right.high;
        else
          ref[p.right.low] = q.right.high;
        p.right.low = q.right.low;
      } else {
        ref[q.right.low] = lowpt_edge[e];
      }
    } while (static_cast<int>(stack.size()) > stack_bottom[ei]);
    // Merge conflicting return edges of earlier siblings into p.left.
    while (!stack.empty() && (conflicting(stack.back().left, ei) ||
                              conflicting(stack.back().right, ei))) {
      ConflictPair q = stack.back();
      stack.pop_back();
      if (conflicting(q.right, ei)) std::swap(q.left, q.right);
      if (conflicting(q.right, ei)) return false;
      ref[p.right.low] = q.right.high;
      if (q.right.low != kNone) p.right.low = q.right.low;
      if (p.left.empty())
        p.left.high = q.left.high;
      else
        ref[p.left.low] = q.left.high;
      p.left.low = q.left.low;
    }
    if (!p.left.empty() || !p.right.empty()) stack.push_back(p);
    return true;
  }

  void trim_back_edges(int u) {
    // Drop entire conflict pairs that end at the parent.
    while (!stack.empty() && lowest(stack.back()) == height[u])
      stack.pop_back();
    if (stack.empty()) return;
    ConflictPair p = stack.back();
    stack.pop_back();
    while (p.left.high != kNone && dst[p.left.high] == u)
      p.left.high = ref[p.left.high];
    if (p.left.high == kNone && p.left.low != kNone) {
      ref[p.left.low] = p.right.low;
      p.left.low = kNone;
    }
    while (p.right.high != kNone && dst[p.right.high] == u)
      p.right.high = ref[p.right.high];
    if (p.right.high == kNone && p.right.low != kNone) {
      ref[p.right.low] = p.left.low;
      p.right.low = kNone;
    }
    stack.push_back(p);
  }

  bool dfs_test(int v, const std::vector<std::vector<int>>& out) {
    const int e = parent_edge[v];
    bool first = true;
    for (int ei : out[v]) {
      stack_bottom[ei] = static_cast<int>(stack.size());
      if (ei == parent_edge[dst[ei]]) {  // tree edge
        if (!dfs_test(dst[ei], out)) return false;
      } else {  // back edge
        lowpt_edge[ei] = ei;
        ConflictPair p;
        p.right = {ei, ei};
        stack.push_back(p);
      }
      if (lowpt[ei] < height[v]) {  // ei has a return edge
        if (first) {
          lowpt_edge[e] = lowpt_edge[ei];
        } else {
          if (!add_constraints(ei, e)) return false;
        }
      }
      first = false;
    }
    if (e != kNone) {
      const int u = src[e];
      trim_back_edges(u);
      if (lowpt[e] < height[u] && !stack.empty()) {  // e has a return edge
        const int hl = stack.back().left.high;
        const int hr = stack.back().right.high;
        if (hl != kNone && (hr == kNone || lowpt[hl] > lowpt[hr]))
          ref[e] = hl;
        else
          ref[e] = hr;
      }
    }
    return true;
  }
};

}  // namespace

bool is_planar(const CategoricalGraph& g) {
  const int n = g.n_nodes();
  LrState s;
  s.n = n;
  s.incident.assign(n, {});
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (g.edge(i, j) != 0) {
        const int e = static_cast<int>(s.other.size()) / 2;
        s.other.push_back(i);
        s.other.push_back(j);
        s.incident[i].push_back(e);
        s.incident[j].push_back(e);
      }
  const int m = static_cast<int>(s.other.size()) / 2;
  if (n > 2 && m > 3 * n - 6) return false;

  s.src.assign(m, kNone);
  s.dst.assign(m, kNone);
  s.height.assign(n, kNone);
  s.parent_edge.assign(n, kNone);
  s.lowpt.assign(m, 0);
  s.lowpt2.assign(m, 0);
  s.nesting.assign(m, 0);
  s.ref.assign(m, kNone);
  s.lowpt_edge.assign(m, kNone);
  s.stack_bottom.assign(m, 0);

  std::vector<int> roots;
  for (int v = 0; v < n; ++v)
    if (s.height[v] == kNone) {
      s.height[v] = 0;
      roots.push_back(v);
      s.dfs_orient(v);
    }

  // Outgoing oriented edges per vertex, sorted by nesting depth.
  std::vector<std::vector<int>> out(n);
  for (int e = 0; e < m; ++e) out[s.src[e]].push_back(e);
  for (auto& edges : out)
    std::sort(edges.begin(), edges.end(),
              [&s](int a, int b) { return s.nesting[a] < s.nesting[b]; });

  for (int r : roots)
    if (!s.dfs_test(r, out)) return false;
  return true;
}

}  // namespace graphflow
