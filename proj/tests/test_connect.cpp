#include <doctest.h>

#include "ldbw/connect.hpp"
#include "ldbw/density.hpp"
#include "oracles.hpp"

using namespace ldbw;

namespace {

// Every pair at distance <= r along seq is adjacent and seq has no repeats.
bool is_power_path(const oracle::Adj& g, const std::vector<int>& seq, int r) {
  std::set<int> seen(seq.begin(), seq.end());
  if (seen.size() != seq.size()) return false;
  for (size_t i = 0; i < seq.size(); ++i)
    for (size_t j = i + 1; j < seq.size() && j <= i + r; ++j)
      if (!g(seq[i], seq[j])) return false;
  return true;
}

// Last extendable r-clique inside `within` avoiding x.
std::vector<int> disjoint_from(const DenseGraph& g, Bits within, const std::vector<int>& x, int r) {
  for (int v : x) within.reset(v);
  auto cl = enumerate_extendable_cliques(g, {.r = r, .s = 0, .cap = 50, .within = within});
  return cl.empty() ? std::vector<int>{} : cl.back().vertices;
}

std::vector<int> concat(std::vector<int> a, const std::vector<int>& b) {
  a.insert(a.end(), b.begin(), b.end());
  return a;
}

void check_connection(const oracle::Adj& g, const std::vector<int>& x, const std::vector<int>& y, const Bits& w,
                      const ConnectResult& res, int r) {
  const auto& p = res.path.vertices;
  CHECK(static_cast<int>(p.size()) == 3 * r);
  CHECK(is_power_path(g, p, r));
  CHECK(is_power_path(g, concat(x, p), r));
  CHECK(is_power_path(g, concat(p, y), r));
  for (int v : p) {
    CHECK_FALSE(w.test(v));
    CHECK(std::find(x.begin(), x.end(), v) == x.end());
    CHECK(std::find(y.begin(), y.end(), v) == y.end());
  }
}

}  // namespace

TEST_CASE("bridging clique in a complete host") {
  DenseGraph k60 = make_named(NamedKind::complete, {60});
  std::vector<int> x{0, 1, 2, 3, 4, 5, 6, 7}, y{8, 9, 10, 11, 12, 13, 14, 15};
  auto b = find_bridging_clique(k60, Bits::full(60) - Bits::of(60, concat(x, y)), x, y, Bits(60), 2, 0.4);
  CHECK(b.z.size() == 2);
  CHECK(b.x_sub.size() == 2);
  CHECK(b.y_sub.size() == 2);
  for (int v : b.z) CHECK(v >= 16);
  CHECK(k60.is_clique(b.z));
  CHECK_FALSE(b.relaxed);
}

TEST_CASE("bridging clique fails inside an independent bucket") {
  GraphBuilder kb(60);
  for (int u = 0; u < 30; ++u)
    for (int v = 30; v < 60; ++v) kb.add_edge(u, v);
  DenseGraph g = kb.build();
  std::vector<int> x{0, 1, 2, 3, 4, 5, 6, 7}, y{8, 9, 10, 11, 12, 13, 14, 15};
  Bits u(60);
  for (int v = 30; v < 60; ++v) u.set(v);
  try {
    find_bridging_clique(g, u, x, y, Bits(60), 2, 0.5, false);
    FAIL("expected no-clique-in-bucket");
  } catch (const Error& e) {
    CHECK(e.code() == "no-clique-in-bucket");
  }
}

TEST_CASE("bridging clique in a random host") {
  oracle::Adj ref = oracle::random_graph(120, 0.8, 2);
  DenseGraph g = ref.graph();
  std::vector<int> x{0, 1, 2, 3, 4, 5}, y{6, 7, 8, 9, 10, 11};
  Bits u = Bits::full(120) - Bits::of(120, concat(x, y));
  auto b = find_bridging_clique(g, u, x, y, Bits(120), 3, 0.2, false);
  REQUIRE(b.z.size() == 3);
  for (int a : b.z) {
    CHECK(u.test(a));
    for (int c : b.z)
      if (a != c) CHECK(ref(a, c));
    for (int s : concat(b.x_sub, b.y_sub)) CHECK(ref(a, s));
  }
  CHECK(b.x_sub.size() == 3);
  CHECK(b.y_sub.size() == 3);
}

TEST_CASE("bridging clique input validation") {
  DenseGraph k10 = make_named(NamedKind::complete, {10});
  CHECK_THROWS_AS(find_bridging_clique(k10, Bits::full(10), {0, 1}, {1, 2}, Bits(10), 2, 0.5), Error);
  CHECK_THROWS_AS(find_bridging_clique(k10, Bits::full(10), {0, 1}, {2}, Bits(10), 2, 0.5), Error);
}

TEST_CASE("connect in a complete host") {
  oracle::Adj ref(80);
  for (int u = 0; u < 80; ++u)
    for (int v = u + 1; v < 80; ++v) ref.add(u, v);
  DenseGraph g = ref.graph();
  std::vector<int> x{0, 1}, y{2, 3};
  auto res = connect_cliques(g, x, y, Bits(80), {.r = 2, .eta = 0.4});
  check_connection(ref, x, y, Bits(80), res, 2);
  CHECK(res.x_branch == "extendable");
}

TEST_CASE("connect through the shared core of two overlapping cliques") {
  oracle::Adj ref(60);
  for (int lo : {0, 20})
    for (int u = lo; u < lo + 40; ++u)
      for (int v = u + 1; v < lo + 40; ++v) ref.add(u, v);
  DenseGraph g = ref.graph();
  std::vector<int> x{0, 1}, y{58, 59};
  auto res = connect_cliques(g, x, y, Bits(60), {.r = 2, .eta = 0.3, .strict = false});
  check_connection(ref, x, y, Bits(60), res, 2);
  for (int v : res.bridge.z) CHECK((v >= 20 && v < 40));
}

TEST_CASE("connect in a random host avoiding W") {
  oracle::Adj ref = oracle::random_graph(150, 0.85, 9);
  DenseGraph g = ref.graph();
  Rng rng(9);
  Bits w(150);
  for (int v : rng.sample(150, 10)) w.set(v);
  CliqueQuery q{.r = 3, .s = 0, .cap = 200, .within = Bits::full(150) - w};
  auto cl = enumerate_extendable_cliques(g, q);
  REQUIRE(cl.size() >= 2);
  std::vector<int> x = cl.front().vertices, y = disjoint_from(g, *q.within, x, 3);
  REQUIRE(y.size() == 3);
  auto res = connect_cliques(g, x, y, w, {.r = 3, .eta = 0.3, .strict = false});
  check_connection(ref, x, y, w, res, 3);
}

TEST_CASE("connect is deterministic") {
  DenseGraph g = oracle::random_graph(100, 0.8, 4).graph();
  auto cl = enumerate_extendable_cliques(g, {.r = 2, .s = 0, .cap = 50});
  REQUIRE(cl.size() > 10);
  std::vector<int> x = cl[0].vertices, y = disjoint_from(g, Bits::full(100), x, 2);
  REQUIRE(y.size() == 2);
  auto a = connect_cliques(g, x, y, Bits(100), {.r = 2, .eta = 0.3, .strict = false});
  auto b = connect_cliques(g, x, y, Bits(100), {.r = 2, .eta = 0.3, .strict = false});
  CHECK(a.path.vertices == b.path.vertices);
}

TEST_CASE("connect rejects malformed input") {
  DenseGraph c6 = make_named(NamedKind::cycle_power, {1, 6});
  CHECK_THROWS_AS(connect_cliques(c6, {0, 2}, {3, 4}, Bits(6), {.r = 2}), Error);
  CHECK_THROWS_AS(connect_cliques(c6, {0, 1}, {1, 2}, Bits(6), {.r = 2}), Error);
}
