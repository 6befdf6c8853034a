#pragma once
// Independent reference computations for the tests. Nothing here calls into the
// library beyond reading edges, so agreement is evidence rather than tautology.

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <random>
#include <set>
#include <vector>

#include "ldbw/graph.hpp"

namespace oracle {

struct Adj {
  int n = 0;
  std::vector<std::vector<char>> a;

  explicit Adj(int n_) : n(n_), a(n_, std::vector<char>(n_, 0)) {}
  explicit Adj(const ldbw::DenseGraph& g) : Adj(g.n()) {
    for (auto [u, v] : g.edges()) add(u, v);
  }
  void add(int u, int v) {
    if (u == v) return;
    a[u][v] = a[v][u] = 1;
  }
  bool operator()(int u, int v) const { return a[u][v]; }
  long long edges() const {
    long long m = 0;
    for (int u = 0; u < n; ++u)
      for (int v = u + 1; v < n; ++v) m += a[u][v];
    return m;
  }
  ldbw::DenseGraph graph() const {
    std::vector<ldbw::Edge> e;
    for (int u = 0; u < n; ++u)
      for (int v = u + 1; v < n; ++v)
        if (a[u][v]) e.push_back({u, v});
    return ldbw::DenseGraph(n, e);
  }
};

inline bool same_edges(const Adj& x, const ldbw::DenseGraph& g) {
  if (x.n != g.n()) return false;
  for (int u = 0; u < x.n; ++u)
    for (int v = 0; v < x.n; ++v)
      if (static_cast<bool>(x(u, v)) != g.adj(u, v)) return false;
  return true;
}

// Named graphs straight from their definitions, 0-based, (i,j) -> i*r + j.
inline Adj z_graph(int r, int l) {
  Adj z(r * l);
  for (int i = 0; i < l; ++i)
    for (int j = 0; j < r; ++j)
      for (int i2 = 0; i2 < l; ++i2)
        for (int j2 = 0; j2 < r; ++j2) {
          if (j == j2) continue;
          bool near = std::abs(i - i2) <= 1 || (i == l - 1 && i2 == 0) || (i2 == l - 1 && i == 0);
          if (near) z.add(i * r + j, i2 * r + j2);
        }
  return z;
}

inline Adj cycle_power(int r, int k) {
  Adj c(k);
  for (int i = 0; i < k; ++i)
    for (int j = 1; j <= r; ++j) c.add(i, (i + j) % k);
  return c;
}

inline Adj path_power(int r, int k) {
  Adj p(k);
  for (int i = 0; i < k; ++i)
    for (int j = 1; j <= r && i + j < k; ++j) p.add(i, i + j);
  return p;
}

inline Adj clique_tiling(int r, int count) {
  Adj t(r * count);
  for (int b = 0; b < count; ++b)
    for (int x = 0; x < r; ++x)
      for (int y = x + 1; y < r; ++y) t.add(b * r + x, b * r + y);
  return t;
}

inline bool contains(const Adj& small, const Adj& big) {
  for (int u = 0; u < small.n; ++u)
    for (int v = u + 1; v < small.n; ++v)
      if (small(u, v) && !big(u, v)) return false;
  return true;
}

inline int bandwidth(const Adj& g, const std::vector<int>& order) {
  std::vector<int> pos(g.n);
  for (int k = 0; k < g.n; ++k) pos[order[k]] = k;
  int b = 0;
  for (int u = 0; u < g.n; ++u)
    for (int v = u + 1; v < g.n; ++v)
      if (g(u, v)) b = std::max(b, std::abs(pos[u] - pos[v]));
  return b;
}

inline long long edges_in_mask(const Adj& g, uint64_t mask) {
  long long e = 0;
  for (int u = 0; u < g.n; ++u)
    if (mask >> u & 1)
      for (int v = u + 1; v < g.n; ++v)
        if ((mask >> v & 1) && g(u, v)) ++e;
  return e;
}

// Per-subset recount of e(G[X]) >= d C(|X|,2) - rho n^2.
inline bool locally_dense(const Adj& g, double rho, double d) {
  const double slack = rho * g.n * g.n;
  for (uint64_t mask = 0; mask < (uint64_t{1} << g.n); ++mask) {
    int s = std::popcount(mask);
    if (edges_in_mask(g, mask) < d * s * (s - 1) / 2.0 - slack - 1e-9) return false;
  }
  return true;
}

inline double density(const Adj& g, const std::vector<int>& a, const std::vector<int>& b) {
  long long e = 0;
  for (int x : a)
    for (int y : b) e += g(x, y);
  return static_cast<double>(e) / (a.size() * b.size());
}

// All X, Y with |X| >= eps|A|, |Y| >= eps|B|.
inline bool eps_regular(const Adj& g, const std::vector<int>& a, const std::vector<int>& b, double eps) {
  const double dab = density(g, a, b);
  const int na = a.size(), nb = b.size();
  for (uint32_t mx = 1; mx < (1u << na); ++mx) {
    if (std::popcount(mx) < eps * na - 1e-9) continue;
    std::vector<int> x;
    for (int i = 0; i < na; ++i)
      if (mx >> i & 1) x.push_back(a[i]);
    for (uint32_t my = 1; my < (1u << nb); ++my) {
      if (std::popcount(my) < eps * nb - 1e-9) continue;
      std::vector<int> y;
      for (int i = 0; i < nb; ++i)
        if (my >> i & 1) y.push_back(b[i]);
      if (std::abs(density(g, x, y) - dab) > eps + 1e-9) return false;
    }
  }
  return true;
}

inline bool is_embedding(const Adj& h, const Adj& g, const std::vector<int>& map) {
  if (static_cast<int>(map.size()) != h.n) return false;
  std::set<int> seen;
  for (int v : map) {
    if (v < 0 || v >= g.n || !seen.insert(v).second) return false;
  }
  for (int u = 0; u < h.n; ++u)
    for (int v = u + 1; v < h.n; ++v)
      if (h(u, v) && !g(map[u], map[v])) return false;
  return true;
}

// Plain permutation search, no pruning beyond edge checks; for |H| <= 10.
inline bool contains_subgraph(const Adj& h, const Adj& g) {
  std::vector<int> map(h.n, -1);
  std::vector<char> used(g.n, 0);
  auto rec = [&](auto&& self, int x) -> bool {
    if (x == h.n) return true;
    for (int v = 0; v < g.n; ++v) {
      if (used[v]) continue;
      bool ok = true;
      for (int y = 0; y < x && ok; ++y)
        if (h(x, y) && !g(v, map[y])) ok = false;
      if (!ok) continue;
      used[v] = 1;
      map[x] = v;
      if (self(self, x + 1)) return true;
      used[v] = 0;
    }
    map[x] = -1;
    return false;
  };
  return h.n <= g.n && rec(rec, 0);
}

inline Adj random_graph(int n, double p, uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::bernoulli_distribution coin(p);
  Adj g(n);
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v)
      if (coin(rng)) g.add(u, v);
  return g;
}

}  // namespace oracle
