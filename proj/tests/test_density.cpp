#include <doctest.h>

#include "ldbw/density.hpp"
#include "oracles.hpp"

using namespace ldbw;

namespace {

DenseGraph complete(int n) { return make_named(NamedKind::complete, {n}); }

DenseGraph two_cliques(int half) {
  GraphBuilder b(2 * half);
  for (int s = 0; s < 2; ++s)
    for (int u = 0; u < half; ++u)
      for (int v = u + 1; v < half; ++v) b.add_edge(s * half + u, s * half + v);
  return b.build();
}

DenseGraph complete_bipartite(int a, int b) {
  GraphBuilder g(a + b);
  for (int u = 0; u < a; ++u)
    for (int v = 0; v < b; ++v) g.add_edge(u, a + v);
  return g.build();
}

}  // namespace

TEST_CASE("exact local density examples") {
  CHECK(is_locally_dense_exact(complete(8), {0, 1}).ok);

  auto v = is_locally_dense_exact(DenseGraph(8), {0.01, 0.5});
  CHECK_FALSE(v.ok);
  CHECK(v.certified);
  // Minimum witness: the smallest s with 0.5 C(s,2) > 0.01 * 64, so s = 3.
  CHECK(v.x.size() == 3);
  CHECK(v.slack < 0);

  CHECK(is_locally_dense_exact(two_cliques(4), {0.2, 0.5}).ok);
  CHECK_THROWS_AS(is_locally_dense_exact(complete(23), {0, 1}), Error);
  CHECK_THROWS_AS(check_density_params({-1, 0.5}), Error);
  CHECK_THROWS_AS(check_density_params({0, 0}), Error);
}

TEST_CASE("exact checker agrees with a per-subset recount") {
  Rng rng(17);
  for (int t = 0; t < 40; ++t) {
    int n = rng.uniform_int(4, 12);
    double p = rng.uniform01();
    oracle::Adj ref = oracle::random_graph(n, p, 500 + t);
    double rho = rng.uniform01() * 0.05, d = 0.2 + 0.8 * rng.uniform01();
    auto v = is_locally_dense_exact(ref.graph(), {rho, d});
    CHECK(v.ok == oracle::locally_dense(ref, rho, d));
    if (!v.ok) {
      uint64_t mask = 0;
      for (int x : v.x) mask |= uint64_t{1} << x;
      int s = v.x.size();
      CHECK(oracle::edges_in_mask(ref, mask) < d * s * (s - 1) / 2.0 - rho * n * n);
    }
  }
}

TEST_CASE("monotonicity in rho and d") {
  Rng rng(23);
  for (int t = 0; t < 30; ++t) {
    DenseGraph g = oracle::random_graph(10, 0.6, 900 + t).graph();
    double rho = rng.uniform01() * 0.03, d = 0.3 + 0.6 * rng.uniform01();
    if (is_locally_dense_exact(g, {rho, d}).ok) {
      CHECK(is_locally_dense_exact(g, {rho + 0.01, d}).ok);
      CHECK(is_locally_dense_exact(g, {rho, d * 0.9}).ok);
    }
  }
}

TEST_CASE("induced subgraphs inherit density with rho / alpha^2") {
  Rng rng(31);
  for (int t = 0; t < 15; ++t) {
    oracle::Adj ref = oracle::random_graph(14, 0.7, 1300 + t);
    DenseGraph g = ref.graph();
    double rho = 0.01, d = 0.5;
    if (!is_locally_dense_exact(g, {rho, d}).ok) continue;
    std::vector<int> u = rng.sample(14, 7);
    double alpha = 7.0 / 14;
    CHECK(is_locally_dense_exact(g.induced(u), {rho / (alpha * alpha), d}).ok);
  }
}

TEST_CASE("sampled checker") {
  CHECK(is_locally_dense_sampled(complete(100), {0, 1}, 1000, 1).ok);
  auto v = is_locally_dense_sampled(DenseGraph(100), {0.001, 0.5}, 1000, 1);
  CHECK_FALSE(v.ok);
  CHECK_FALSE(v.certified);
  CHECK(v.x.size() == 100);

  DenseGraph g = oracle::random_graph(100, 0.5, 7).graph();
  CHECK(is_locally_dense_sampled(g, {0.05, 0.3}, 1000, 7).ok);

  // Sampled never contradicts exact on small hosts.
  for (int t = 0; t < 20; ++t) {
    DenseGraph s = oracle::random_graph(12, 0.5, 70 + t).graph();
    DensityParams p{0.02, 0.6};
    auto ex = is_locally_dense_exact(s, p);
    auto sm = is_locally_dense_sampled(s, p, 300, t);
    if (ex.ok) CHECK(sm.ok);
  }
}

TEST_CASE("uniform density") {
  // No loops, so e(X, X) = |X|^2 - |X| and K_6 needs rho >= |X| / 36 at d = 1.
  CHECK_FALSE(is_uniformly_dense(complete(6), {0, 1}, CheckMode::exact).ok);
  CHECK(is_uniformly_dense(complete(6), {1.0 / 6, 1}, CheckMode::exact).ok);
  CHECK_FALSE(is_uniformly_dense(complete(6), {0.16, 1}, CheckMode::exact).ok);
  auto v = is_uniformly_dense(complete_bipartite(4, 4), {0, 0.6}, CheckMode::exact);
  CHECK_FALSE(v.ok);
  // A witness with X = Y inside one side has e(X, Y) = 0.
  CHECK(v.slack < 0);
  CHECK(is_uniformly_dense(oracle::random_graph(80, 0.7, 3).graph(), {0.1, 0.5}, CheckMode::sampled).ok);
  CHECK_THROWS_AS(is_uniformly_dense(complete(19), {0, 1}, CheckMode::exact), Error);
}

TEST_CASE("high-degree vertices") {
  CHECK(high_degree_vertices(complete(9), 1.0).count() == 9);
  GraphBuilder star(10);
  for (int v = 1; v < 10; ++v) star.add_edge(0, v);
  CHECK(high_degree_vertices(star.build(), 0.5).items() == std::vector<int>{0});
  CHECK(high_degree_vertices(DenseGraph(10), 0.1).none());
}

TEST_CASE("extendable cliques") {
  auto k10 = enumerate_extendable_cliques(complete(10), {.r = 3, .s = 7});
  CHECK(k10.size() == 120);
  for (const auto& c : k10) CHECK(c.joint_degree == 7);
  CHECK(std::is_sorted(k10.begin(), k10.end(), [](auto& a, auto& b) { return a.vertices < b.vertices; }));

  CHECK(enumerate_extendable_cliques(make_named(NamedKind::cycle_power, {1, 6}), {.r = 3, .s = 0}).empty());

  DenseGraph tk = two_cliques(5);
  auto edges = enumerate_extendable_cliques(tk, {.r = 2, .s = 3});
  CHECK(edges.size() == 20);
  for (const auto& c : edges) CHECK(c.joint_degree == 3);

  auto capped = enumerate_extendable_cliques(complete(10), {.r = 3, .s = 0, .cap = 5});
  CHECK(capped.size() == 5);

  // Each clique re-validates from scratch.
  oracle::Adj ref = oracle::random_graph(25, 0.6, 77);
  DenseGraph g = ref.graph();
  for (const auto& c : enumerate_extendable_cliques(g, {.r = 3, .s = 4})) {
    for (size_t i = 0; i < c.vertices.size(); ++i)
      for (size_t j = i + 1; j < c.vertices.size(); ++j) CHECK(ref(c.vertices[i], c.vertices[j]));
    int joint = 0;
    for (int v = 0; v < 25; ++v) {
      bool all = true;
      for (int x : c.vertices) all = all && ref(v, x);
      joint += all;
    }
    CHECK(joint == c.joint_degree);
    CHECK(joint >= 4);
  }
}

TEST_CASE("clique search and independence number") {
  DenseGraph g = oracle::random_graph(30, 0.5, 5).graph();
  auto c = find_clique(g, Bits::full(30), 4);
  REQUIRE(c);
  CHECK(g.is_clique(*c));
  CHECK_FALSE(find_clique(make_named(NamedKind::cycle_power, {1, 8}), Bits::full(8), 3));
  CHECK(independence_number_exact(make_named(NamedKind::cycle_power, {1, 8})) == 4);
  CHECK(independence_number_exact(complete(6)) == 1);
  CHECK(independence_number_exact(complete_bipartite(3, 5)) == 5);
}
