#pragma once

#include <algorithm>
#include <stdexcept>
#include <vector>

#include "graphflow/graph.hpp"

namespace graphflow::testsupport {

// Brute-force Kuratowski-subdivision planarity oracle for N <= 8, fully
// independent of the left-right implementation. A graph is nonplanar iff it
// contains a subdivision of K5 or K3,3; with at most 8 vertices the
// subdivision has at most 3 interior vertices, so every assignment of the
// spare vertices to subdivided paths can be enumerated directly.
class KuratowskiOracle {
 public:
  explicit KuratowskiOracle(const CategoricalGraph& g) : n_(g.n_nodes()) {
    if (n_ > 8) throw std::invalid_argument("kuratowski oracle: N > 8");
    adj_.assign(n_, std::vector<bool>(n_, false));
    for (int i = 0; i < n_; ++i)
      for (int j = i + 1; j < n_; ++j)
        if (g.edge(i, j) != 0) adj_[i][j] = adj_[j][i] = true;
  }

  bool planar() const { return !has_k5() && !has_k33(); }

 private:
  int n_;
  std::vector<std::vector<bool>> adj_;

  // Can the pair (u, v) be joined by a path whose interior is exactly
  // `spares` in some order?
  bool path_exists(int u, int v, std::vector<int> spares) const {
    std::sort(spares.begin(), spares.end());
    do {
      int prev = u;
      bool ok = true;
      for (int s : spares) {
        if (!adj_[prev][s]) {
          ok = false;
          break;
        }
        prev = s;
      }
      if (ok && adj_[prev][v]) return true;
    } while (std::next_permutation(spares.begin(), spares.end()));
    return false;
  }

  bool pairs_satisfiable(const std::vector<std::pair<int, int>>& pairs,
                         const std::vector<int>& spares) const {
    // Assign each spare vertex to one of the pairs (or leave it unused),
    // then require every pair to be a path through its assigned spares.
    std::vector<int> assign(spares.size(), -1);
    return assign_rec(pairs, spares, assign, 0);
  }

  bool assign_rec(const std::vector<std::pair<int, int>>& pairs,
                  const std::vector<int>& spares, std::vector<int>& assign,
                  std::size_t k) const {
    if (k == spares.size()) {
      for (std::size_t p = 0; p < pairs.size(); ++p) {
        std::vector<int> interior;
        for (std::size_t s = 0; s < spares.size(); ++s)
          if (assign[s] == static_cast<int>(p)) interior.push_back(spares[s]);
        if (!path_exists(pairs[p].first, pairs[p].second, interior))
          return false;
      }
      return true;
    }
    for (int choice = -1; choice < static_cast<int>(pairs.size()); ++choice) {
      assign[k] = choice;
      if (assign_rec(pairs, spares, assign, k + 1)) return true;
    }
    return false;
  }

  bool has_k5() const {
    if (n_ < 5) return false;
    std::vector<int> pick;
    return choose_rec(pick, 0, 5, [this](const std::vector<int>& branch) {
      std::vector<std::pair<int, int>> pairs;
      for (int a = 0; a < 5; ++a)
        for (int b = a + 1; b < 5; ++b)
          pairs.emplace_back(branch[a], branch[b]);
      return pairs_satisfiable(pairs, complement(branch));
    });
  }

  bool has_k33() const {
    if (n_ < 6) return false;
    std::vector<int> pick;
    return choose_rec(pick, 0, 6, [this](const std::vector<int>& six) {
      // split the six branch vertices into two sides of three
      for (int mask = 0; mask < 64; ++mask) {
        if (__builtin_popcount(mask) != 3 || !(mask & 1)) continue;
        std::vector<int> left, right;
        for (int b = 0; b < 6; ++b)
          (mask >> b & 1 ? left : right).push_back(six[b]);
        std::vector<std::pair<int, int>> pairs;
        for (int l : left)
          for (int r : right) pairs.emplace_back(l, r);
        if (pairs_satisfiable(pairs, complement(six))) return true;
      }
      return false;
    });
  }

  std::vector<int> complement(const std::vector<int>& used) const {
    std::vector<int> out;
    for (int v = 0; v < n_; ++v)
      if (std::find(used.begin(), used.end(), v) == used.end())
        out.push_back(v);
    return out;
  }

  template <typename Fn>
  bool choose_rec(std::vector<int>& pick, int from, int want,
                  const Fn& fn) const {
    if (static_cast<int>(pick.size()) == want) return fn(pick);
    for (int v = from; v <= n_ - (want - static_cast<int>(pick.size())); ++v) {
      pick.push_back(v);
      if (choose_rec(pick, v + 1, want, fn)) return true;
      pick.pop_back();
    }
    return false;
  }
};

inline bool planar_by_kuratowski(const CategoricalGraph& g) {
  return KuratowskiOracle(g).planar();
}

}  // namespace graphflow::testsupport
