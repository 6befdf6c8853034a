#include <doctest.h>

#include <sstream>

#include "ldbw/graph.hpp"
#include "oracles.hpp"

using namespace ldbw;

namespace {

VertexLabelling identity(int n) { return VertexLabelling::identity(n); }

Status status_of(auto&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.status();
  }
  return Status::ok;
}

}  // namespace

TEST_CASE("DenseGraph basics") {
  DenseGraph g(5, {{0, 1}, {1, 2}, {1, 0}, {3, 4}});
  CHECK(g.edge_count() == 3);
  CHECK(g.adj(1, 0));
  CHECK_FALSE(g.adj(0, 0));
  CHECK(g.degree(1) == 2);
  CHECK(g.min_degree() == 1);
  CHECK(g.max_degree() == 2);
  CHECK(status_of([] { DenseGraph(3, {{0, 0}}); }) == Status::invalid_input);
  CHECK(status_of([] { DenseGraph(3, {{0, 3}}); }) == Status::invalid_input);

  // Symmetry and popcount invariants.
  oracle::Adj ref = oracle::random_graph(30, 0.4, 11);
  DenseGraph r = ref.graph();
  long long pop = 0;
  for (int v = 0; v < r.n(); ++v) {
    pop += r.row(v).count();
    CHECK_FALSE(r.adj(v, v));
    for (int u = 0; u < r.n(); ++u) CHECK(r.adj(u, v) == r.adj(v, u));
  }
  CHECK(pop == 2 * r.edge_count());
  CHECK(r.edge_count() == ref.edges());
}

TEST_CASE("ordered incidences count internal edges twice") {
  DenseGraph k4 = make_named(NamedKind::complete, {4});
  Bits all = Bits::full(4);
  CHECK(k4.edges_within(all) == 6);
  CHECK(k4.e_between(all, all) == 12);
}

TEST_CASE("make_named matches the definitions") {
  DenseGraph z = make_named(NamedKind::zgraph, {2, 3});
  CHECK(z.n() == 6);
  CHECK(z.edge_count() == 9);
  CHECK(oracle::same_edges(oracle::z_graph(2, 3), z));

  DenseGraph c = make_named(NamedKind::cycle_power, {2, 6});
  CHECK(c.n() == 6);
  CHECK(c.edge_count() == 12);

  DenseGraph p = make_named(NamedKind::path_power, {1, 2});
  CHECK(p.edge_count() == 1);

  for (int r = 1; r <= 4; ++r)
    for (int l = 3; l <= 6; ++l) CHECK(oracle::same_edges(oracle::z_graph(r, l), make_named(NamedKind::zgraph, {r, l})));
  for (int r = 1; r <= 4; ++r)
    for (int k = 2 * r + 1; k <= 14; ++k)
      CHECK(oracle::same_edges(oracle::cycle_power(r, k), make_named(NamedKind::cycle_power, {r, k})));
  for (int r = 1; r <= 4; ++r)
    for (int k = 1; k <= 10; ++k)
      CHECK(oracle::same_edges(oracle::path_power(r, k), make_named(NamedKind::path_power, {r, k})));

  CHECK(status_of([] { make_named(NamedKind::zgraph, {2, 2}); }) == Status::invalid_input);
  CHECK(status_of([] { make_named(NamedKind::cycle_power, {2, 4}); }) == Status::invalid_input);
  CHECK(grid_id(1, 1, 3) == 0);
  CHECK(grid_id(2, 3, 3) == 5);
}

TEST_CASE("Z contains a clique factor on its blocks") {
  for (int r = 1; r <= 5; ++r)
    for (int l = 3; l <= 6; ++l) {
      DenseGraph z = make_named(NamedKind::zgraph, {r, l});
      for (int i = 1; i <= l; ++i) {
        std::vector<int> block;
        for (int j = 1; j <= r; ++j) block.push_back(grid_id(i, j, r));
        CHECK(z.is_clique(block));
      }
    }
}

TEST_CASE("bandwidth") {
  for (int n = 4; n <= 40; n += 2) {
    DenseGraph c = make_named(NamedKind::cycle_power, {1, n});
    CHECK(bandwidth_of(c, zigzag_labelling(n)) == 2);
  }
  DenseGraph k7 = make_named(NamedKind::complete, {7});
  CHECK(bandwidth_of(k7, identity(7)) == 6);
  VertexLabelling rev{{6, 5, 4, 3, 2, 1, 0}};
  CHECK(bandwidth_of(k7, rev) == 6);
  DenseGraph c2 = make_named(NamedKind::cycle_power, {2, 12});
  CHECK(bandwidth_of(c2, identity(12)) == 11);
  CHECK(bandwidth_of(c2, zigzag_labelling(12)) <= 4);
  CHECK(bandwidth_of(DenseGraph(5), identity(5)) == 0);

  // Against a direct recount on random graphs and random labellings.
  Rng rng(3);
  for (int t = 0; t < 30; ++t) {
    oracle::Adj ref = oracle::random_graph(15, 0.2, 100 + t);
    VertexLabelling l{rng.permutation(15)};
    CHECK(bandwidth_of(ref.graph(), l) == oracle::bandwidth(ref, l.order));
    CHECK((bandwidth_of(ref.graph(), l) == 0) == (ref.edges() == 0));
  }
  CHECK(status_of([&] { bandwidth_of(k7, VertexLabelling{{0, 0, 1, 2, 3, 4, 5}}); }) == Status::invalid_input);
}

TEST_CASE("validate_witness") {
  DenseGraph k5 = make_named(NamedKind::complete, {5});
  CHECK(validate_witness(k5, {WitnessKind::cycle, 2, {3, 1, 4, 0, 2}}).ok);

  DenseGraph c6 = make_named(NamedKind::cycle_power, {1, 6});
  auto chk = validate_witness(c6, {WitnessKind::cycle, 2, {0, 1, 2, 3, 4, 5}});
  CHECK_FALSE(chk.ok);
  CHECK(chk.u == 0);
  CHECK(chk.v == 2);

  // Z^2_3 is bipartite, so its revisiting trails are 1-trails; the 2-trail lives in Z^3_3.
  DenseGraph z2 = make_named(NamedKind::zgraph, {2, 3});
  CHECK(validate_witness(z2, {WitnessKind::trail, 1, {0, 3, 4, 1, 2, 5, 0, 3}}).ok);
  CHECK_FALSE(validate_witness(z2, {WitnessKind::trail, 2, {0, 3, 4}}).ok);
  DenseGraph z = make_named(NamedKind::zgraph, {3, 3});
  WitnessSequence trail{WitnessKind::trail, 2, {0, 4, 8, 0, 4}};
  CHECK(validate_witness(z, trail).ok);
  WitnessSequence as_path = trail;
  as_path.kind = WitnessKind::path;
  CHECK_FALSE(validate_witness(z, as_path).ok);

  CHECK(validate_witness(c6, {WitnessKind::path, 1, {0, 1, 2, 3}}).ok);
  CHECK_FALSE(validate_witness(c6, {WitnessKind::path, 1, {0, 2}}).ok);
}

TEST_CASE("graph_power") {
  DenseGraph c6 = make_named(NamedKind::cycle_power, {1, 6});
  CHECK(graph_power(c6, 2) == make_named(NamedKind::cycle_power, {2, 6}));
  DenseGraph p4 = make_named(NamedKind::path_power, {1, 4});
  CHECK(graph_power(p4, 3) == make_named(NamedKind::complete, {4}));
  DenseGraph two_k2(4, {{0, 1}, {2, 3}});
  CHECK(graph_power(two_k2, 5) == two_k2);

  for (int t = 0; t < 10; ++t) {
    DenseGraph g = oracle::random_graph(20, 0.12, 40 + t).graph();
    for (int r = 1; r < 5; ++r) {
      DenseGraph a = graph_power(g, r), b = graph_power(g, r + 1);
      for (auto [u, v] : a.edges()) CHECK(b.adj(u, v));
    }
  }
  CHECK(status_of([&] { graph_power(c6, 0); }) == Status::invalid_input);
}

TEST_CASE("labelled subgraph and the CZ chain") {
  DenseGraph k3 = make_named(NamedKind::complete, {3});
  CHECK(is_labelled_subgraph(k3, k3, {0, 1, 2}));
  CHECK(is_labelled_subgraph(make_named(NamedKind::cycle_power, {1, 8}), make_named(NamedKind::zgraph, {2, 4}),
                             {0, 1, 2, 3, 4, 5, 6, 7}));

  for (int r = 2; r <= 4; ++r)
    for (int l = 2; l <= 5; ++l) {
      const int n = 2 * r * l;
      std::vector<int> id(n);
      for (int k = 0; k < n; ++k) id[k] = k;
      DenseGraph tiling = oracle::clique_tiling(r, 2 * l).graph();
      DenseGraph c_low = make_named(NamedKind::cycle_power, {r - 1, n});
      DenseGraph z_fine = make_named(NamedKind::zgraph, {r, 2 * l});
      DenseGraph c_high = make_named(NamedKind::cycle_power, {2 * r - 1, n});
      CHECK(is_labelled_subgraph(tiling, c_low, id));
      CHECK(is_labelled_subgraph(c_low, z_fine, id));
      CHECK(is_labelled_subgraph(z_fine, c_high, id));
      if (l >= 3) {
        CHECK(is_labelled_subgraph(c_high, make_named(NamedKind::zgraph, {2 * r, l}), id));
      }
    }
}

TEST_CASE("edge-list round trip") {
  DenseGraph g = oracle::random_graph(12, 0.5, 9).graph();
  std::stringstream ss;
  write_edgelist(ss, g);
  CHECK(read_edgelist(ss) == g);
  std::istringstream bad("p 3 2\ne 0 1\n");
  CHECK(status_of([&] { read_edgelist(bad); }) == Status::invalid_input);
  std::istringstream noheader("e 0 1\n");
  CHECK(status_of([&] { read_edgelist(noheader); }) == Status::invalid_input);
}

TEST_CASE("components") {
  CHECK(component_count(DenseGraph(4, {{0, 1}, {2, 3}})) == 2);
  CHECK(component_count(make_named(NamedKind::complete, {5})) == 1);
  CHECK(component_count(DenseGraph(3)) == 3);
}
