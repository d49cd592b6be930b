#include <doctest.h>

#include <cmath>

#include "graphflow/eval.hpp"
#include "graphflow/planarity.hpp"
#include "graphflow/synth.hpp"
#include "support/kuratowski.hpp"

using namespace graphflow;

namespace {

CategoricalGraph complete(int n) {
  CategoricalGraph g(n, 1, 2);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) g.set_edge(i, j, 1);
  return g;
}

CategoricalGraph k33() {
  CategoricalGraph g(6, 1, 2);
  for (int l = 0; l < 3; ++l)
    for (int r = 3; r < 6; ++r) g.set_edge(l, r, 1);
  return g;
}

CategoricalGraph path(int n) {
  CategoricalGraph g(n, 1, 2);
  for (int i = 0; i + 1 < n; ++i) g.set_edge(i, i + 1, 1);
  return g;
}

CategoricalGraph random_skeleton(int n, double p, Rng& rng) {
  CategoricalGraph g(n, 1, 2);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (rng.uniform() < p) g.set_edge(i, j, 1);
  return g;
}

}  // namespace

TEST_CASE("is_tree definitions") {
  CHECK(is_tree(path(4)));
  CHECK_FALSE(is_tree(complete(3)));
  CategoricalGraph two_edges(4, 1, 2);  // two disjoint edges: disconnected
  two_edges.set_edge(0, 1, 1);
  two_edges.set_edge(2, 3, 1);
  CHECK_FALSE(is_tree(two_edges));
}

TEST_CASE("planarity landmarks") {
  CHECK(is_planar(complete(4)));
  CHECK_FALSE(is_planar(complete(5)));
  CHECK_FALSE(is_planar(k33()));
  CHECK(is_planar(path(7)));
  CategoricalGraph empty(5, 1, 2);
  CHECK(is_planar(empty));
  // K5 minus one edge is planar
  auto k5e = complete(5);
  k5e.set_edge(0, 1, 0);
  CHECK(is_planar(k5e));
  // two disjoint K4s stay planar; adding a K5 component breaks it
  CategoricalGraph two(10, 1, 2);
  for (int base : {0, 4})
    for (int i = 0; i < 4; ++i)
      for (int j = i + 1; j < 4; ++j) two.set_edge(base + i, base + j, 1);
  CHECK(is_planar(two));
  CategoricalGraph with_k5(9, 1, 2);
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j) with_k5.set_edge(i, j, 1);
  for (int i = 4; i < 9; ++i)
    for (int j = i + 1; j < 9; ++j) with_k5.set_edge(i, j, 1);
  CHECK_FALSE(is_planar(with_k5));
}

TEST_CASE("kuratowski oracle landmarks") {
  using graphflow::testsupport::planar_by_kuratowski;
  CHECK(planar_by_kuratowski(complete(4)));
  CHECK_FALSE(planar_by_kuratowski(complete(5)));
  CHECK_FALSE(planar_by_kuratowski(k33()));
  // subdivided K5 on 8 vertices stays nonplanar
  CategoricalGraph sub(8, 1, 2);
  int extra = 5;
  for (int i = 0; i < 5; ++i)
    for (int j = i + 1; j < 5; ++j) {
      if (extra < 8 && ((i + j) % 3 == 0)) {
        sub.set_edge(i, extra, 1);
        sub.set_edge(extra, j, 1);
        ++extra;
      } else {
        sub.set_edge(i, j, 1);
      }
    }
  CHECK_FALSE(planar_by_kuratowski(sub));
  CHECK_FALSE(is_planar(sub));
}

TEST_CASE("left-right test agrees with the kuratowski oracle") {
  Rng rng(407);
  int nonplanar_seen = 0;
  for (int trial = 0; trial < 800; ++trial) {
    const int n = 1 + rng.uniform_int(8);
    const double p = rng.uniform(0.15, 0.95);
    const auto g = random_skeleton(n, p, rng);
    const bool lr = is_planar(g);
    const bool oracle = graphflow::testsupport::planar_by_kuratowski(g);
    CHECK(lr == oracle);
    nonplanar_seen += !oracle;
  }
  CHECK(nonplanar_seen > 50);  // the sweep actually exercises both answers
}

TEST_CASE("vun counts classes, novelty, and the conjunction") {
  GraphDataset train;
  train.x_card = 1;
  train.e_card = 2;
  train.graphs = {path(4)};
  auto valid = [](const CategoricalGraph& g) { return is_tree(g); };

  // copies of a train graph: valid, one class, novelty 0
  std::vector<CategoricalGraph> copies(4, path(4));
  const auto r1 = vun(copies, train, valid);
  CHECK(r1.valid_frac == doctest::Approx(1.0));
  CHECK(r1.unique_frac == doctest::Approx(0.25));
  CHECK(r1.novel_frac == doctest::Approx(0.0));
  CHECK(r1.vun_frac == doctest::Approx(0.0));

  // all-distinct valid graphs disjoint from train
  std::vector<CategoricalGraph> fresh{path(5), path(6), complete(3)};
  auto anything = [](const CategoricalGraph&) { return true; };
  const auto r2 = vun(fresh, train, anything);
  CHECK(r2.vun_frac == doctest::Approx(1.0));
  CHECK(r2.vun_frac <= std::min({r2.valid_frac, r2.unique_frac, r2.novel_frac}));
}

TEST_CASE("graph statistics on landmarks") {
  const auto triangle_stats = graph_stats(complete(3));
  for (double c : triangle_stats.clustering) CHECK(c == doctest::Approx(1.0));
  const auto path_stats = graph_stats(path(3));
  CHECK(path_stats.degrees == std::vector<int>{1, 2, 1});
  const auto k2 = graph_stats(complete(2));
  REQUIRE(k2.laplacian_eigs.size() == 2);
  CHECK(k2.laplacian_eigs[0] == doctest::Approx(0.0).epsilon(1e-9));
  CHECK(k2.laplacian_eigs[1] == doctest::Approx(2.0).epsilon(1e-9));
}

TEST_CASE("jacobi eigenvalues match a hand 2x2 and the trace") {
  // [[2, 1], [1, 2]] -> {1, 3}
  const auto eig = symmetric_eigenvalues({2, 1, 1, 2}, 2);
  CHECK(eig[0] == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(eig[1] == doctest::Approx(3.0).epsilon(1e-10));
  Rng rng(19);
  for (int trial = 0; trial < 20; ++trial) {
    const int n = 2 + rng.uniform_int(6);
    std::vector<double> a(n * n, 0.0);
    double trace = 0.0;
    for (int i = 0; i < n; ++i)
      for (int j = i; j < n; ++j) {
        const double v = rng.uniform(-1.0, 1.0);
        a[i * n + j] = a[j * n + i] = v;
        if (i == j) trace += v;
      }
    const auto eigs = symmetric_eigenvalues(a, n);
    double sum = 0.0;
    for (double e : eigs) sum += e;
    CHECK(sum == doctest::Approx(trace).epsilon(1e-8));
  }
}

TEST_CASE("mmd2 identities") {
  std::vector<std::vector<double>> a{{0.0, 1.0}, {0.5, 0.5}, {1.0, 0.0}};
  CHECK(std::abs(mmd2(a, a, 1.0, /*biased=*/true)) < 1e-12);
  CHECK(mmd2(a, a, 1.0) == doctest::Approx(mmd2(a, a, 1.0)));

  // singleton sets far apart: kernel self 1, cross 0 -> MMD^2 -> 2
  std::vector<std::vector<double>> x{{0.0}}, y{{1e9}};
  CHECK(mmd2(x, y, 1.0) == doctest::Approx(2.0));

  // symmetry
  std::vector<std::vector<double>> b{{0.2, 0.8}, {0.9, 0.1}};
  CHECK(mmd2(a, b, 0.7) == doctest::Approx(mmd2(b, a, 0.7)));
  CHECK_THROWS(mmd2({}, b, 1.0));
}

TEST_CASE("ratio metric is 1 on gen = train and drops zero-base statistics") {
  Rng rng(71);
  std::vector<CategoricalGraph> train, test;
  for (int i = 0; i < 8; ++i) {
    train.push_back(random_skeleton(6, 0.4, rng));
    test.push_back(random_skeleton(6, 0.6, rng));
  }
  CHECK(ratio_metric(train, test, train) == doctest::Approx(1.0).epsilon(1e-9));

  // identical train and test: every base distance is zero -> all excluded
  CHECK_THROWS(ratio_metric(train, train, train));
}

TEST_CASE("metric reports are permutation invariant") {
  Rng rng(90);
  std::vector<CategoricalGraph> gen, test, train;
  for (int i = 0; i < 6; ++i) {
    gen.push_back(random_skeleton(5, 0.5, rng));
    test.push_back(random_skeleton(5, 0.5, rng));
    train.push_back(random_skeleton(5, 0.3, rng));
  }
  const auto base = mmd_report(gen, test, train);
  std::vector<CategoricalGraph> relabeled;
  for (const auto& g : gen)
    relabeled.push_back(permute(g, Permutation::random(5, rng)));
  const auto moved = mmd_report(relabeled, test, train);
  CHECK(base.degree_mmd2 == doctest::Approx(moved.degree_mmd2).epsilon(1e-12));
  CHECK(base.clustering_mmd2 ==
        doctest::Approx(moved.clustering_mmd2).epsilon(1e-12));
  CHECK(base.spectral_mmd2 ==
        doctest::Approx(moved.spectral_mmd2).epsilon(1e-9));
  CHECK(base.ratio == doctest::Approx(moved.ratio).epsilon(1e-9));
}
