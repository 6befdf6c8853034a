#include "ldbw/graph.hpp"

#include <algorithm>
#include <deque>
#include <istream>
#include <ostream>
#include <sstream>

namespace ldbw {

DenseGraph::DenseGraph(int n) : n_(n), rows_(n, Bits(n)), deg_(n, 0) {}

DenseGraph::DenseGraph(int n, const std::vector<Edge>& edges) : DenseGraph(n) {
  for (auto [u, v] : edges) {
    if (u < 0 || v < 0 || u >= n || v >= n)
      fail(Status::invalid_input, "graph", "vertex-out-of-range",
           std::to_string(u) + "," + std::to_string(v));
    if (u == v) fail(Status::invalid_input, "graph", "self-loop", std::to_string(u));
    if (rows_[u].test(v)) continue;
    rows_[u].set(v);
    rows_[v].set(u);
    ++deg_[u];
    ++deg_[v];
    ++m_;
  }
}

int DenseGraph::min_degree() const {
  return n_ == 0 ? 0 : *std::min_element(deg_.begin(), deg_.end());
}

int DenseGraph::max_degree() const {
  return n_ == 0 ? 0 : *std::max_element(deg_.begin(), deg_.end());
}

Bits DenseGraph::common_neighbourhood(const std::vector<int>& s) const {
  Bits b = Bits::full(n_);
  for (int v : s) b &= rows_[v];
  return b;
}

bool DenseGraph::is_clique(const std::vector<int>& s) const {
  for (size_t i = 0; i < s.size(); ++i)
    for (size_t j = i + 1; j < s.size(); ++j)
      if (!adj(s[i], s[j])) return false;
  return true;
}

long long DenseGraph::edges_within(const Bits& x) const {
  long long c = 0;
  x.for_each([&](int v) { c += rows_[v].and_count(x); });
  return c / 2;
}

long long DenseGraph::e_between(const Bits& x, const Bits& y) const {
  long long c = 0;
  x.for_each([&](int v) { c += rows_[v].and_count(y); });
  return c;
}

DenseGraph DenseGraph::induced(const std::vector<int>& verts) const {
  std::vector<Edge> es;
  for (size_t i = 0; i < verts.size(); ++i)
    for (size_t j = i + 1; j < verts.size(); ++j)
      if (adj(verts[i], verts[j])) es.emplace_back(static_cast<int>(i), static_cast<int>(j));
  return DenseGraph(static_cast<int>(verts.size()), es);
}

std::vector<Edge> DenseGraph::edges() const {
  std::vector<Edge> out;
  out.reserve(m_);
  for (int u = 0; u < n_; ++u)
    rows_[u].for_each([&](int v) {
      if (u < v) out.emplace_back(u, v);
    });
  return out;
}

bool DenseGraph::operator==(const DenseGraph& o) const { return n_ == o.n_ && rows_ == o.rows_; }

void GraphBuilder::add_edge(int u, int v) { edges_.emplace_back(u, v); }

VertexLabelling VertexLabelling::identity(int n) {
  VertexLabelling l;
  l.order.resize(n);
  for (int i = 0; i < n; ++i) l.order[i] = i;
  return l;
}

std::vector<int> VertexLabelling::positions() const {
  std::vector<int> pos(order.size(), -1);
  for (size_t k = 0; k < order.size(); ++k) pos[order[k]] = static_cast<int>(k);
  return pos;
}

bool VertexLabelling::is_permutation_of(int n) const {
  if (static_cast<int>(order.size()) != n) return false;
  std::vector<char> seen(n, 0);
  for (int v : order) {
    if (v < 0 || v >= n || seen[v]) return false;
    seen[v] = 1;
  }
  return true;
}

NamedKind named_kind_from_string(const std::string& s) {
  if (s == "P" || s == "path") return NamedKind::path_power;
  if (s == "C" || s == "cycle") return NamedKind::cycle_power;
  if (s == "Z") return NamedKind::zgraph;
  if (s == "K" || s == "complete") return NamedKind::complete;
  if (s == "E" || s == "empty") return NamedKind::empty;
  fail(Status::invalid_input, "make_named", "unknown-kind", s);
}

namespace {

void need(bool ok, const std::string& what) {
  if (!ok) fail(Status::invalid_input, "make_named", "invalid-parameters", what);
}

}  // namespace

DenseGraph make_named(NamedKind kind, const std::vector<int>& p) {
  switch (kind) {
    case NamedKind::path_power: {
      need(p.size() == 2 && p[0] >= 1 && p[1] >= 1, "P needs r>=1, k>=1");
      int r = p[0], k = p[1];
      GraphBuilder b(k);
      for (int i = 0; i < k; ++i)
        for (int j = 1; j <= r && i + j < k; ++j) b.add_edge(i, i + j);
      return b.build();
    }
    case NamedKind::cycle_power: {
      need(p.size() == 2 && p[0] >= 1, "C needs r>=1, k");
      int r = p[0], k = p[1];
      need(k >= 2 * r + 1, "C^r_k needs k >= 2r+1");
      GraphBuilder b(k);
      for (int i = 0; i < k; ++i)
        for (int j = 1; j <= r; ++j) b.add_edge(i, (i + j) % k);
      return b.build();
    }
    case NamedKind::zgraph: {
      need(p.size() == 2 && p[0] >= 1, "Z needs r>=1, l");
      int r = p[0], l = p[1];
      need(l >= 3, "Z^r_l needs l >= 3");
      GraphBuilder b(r * l);
      for (int i = 1; i <= l; ++i)
        for (int j = 1; j <= r; ++j) {
          for (int j2 = j + 1; j2 <= r; ++j2) b.add_edge(grid_id(i, j, r), grid_id(i, j2, r));
          int inext = i == l ? 1 : i + 1;
          for (int j2 = 1; j2 <= r; ++j2)
            if (j2 != j) b.add_edge(grid_id(i, j, r), grid_id(inext, j2, r));
        }
      return b.build();
    }
    case NamedKind::complete: {
      need(p.size() == 1 && p[0] >= 0, "K needs n>=0");
      GraphBuilder b(p[0]);
      for (int u = 0; u < p[0]; ++u)
        for (int v = u + 1; v < p[0]; ++v) b.add_edge(u, v);
      return b.build();
    }
    case NamedKind::empty:
      need(p.size() == 1 && p[0] >= 0, "E needs n>=0");
      return DenseGraph(p[0]);
  }
  need(false, "unknown kind");
  return {};
}

int bandwidth_of(const DenseGraph& g, const VertexLabelling& l) {
  if (!l.is_permutation_of(g.n()))
    fail(Status::invalid_input, "bandwidth", "not-a-permutation", "");
  std::vector<int> pos = l.positions();
  int bw = 0;
  for (auto [u, v] : g.edges()) bw = std::max(bw, std::abs(pos[u] - pos[v]));
  return bw;
}

VertexLabelling zigzag_labelling(int n) {
  // Cycle vertex c gets label 2c+1 on the way out and the even labels on the way back.
  VertexLabelling l;
  l.order.assign(n, 0);
  std::vector<int> label(n);
  int half = (n + 1) / 2;
  for (int c = 0; c < half; ++c) label[c] = 2 * c;
  for (int c = half; c < n; ++c) label[c] = 2 * (n - 1 - c) + 1;
  for (int c = 0; c < n; ++c) l.order[label[c]] = c;
  return l;
}

const char* witness_kind_name(WitnessKind k) {
  switch (k) {
    case WitnessKind::path: return "r-path";
    case WitnessKind::trail: return "r-trail";
    case WitnessKind::cycle: return "r-cycle";
  }
  return "?";
}

WitnessKind witness_kind_from_string(const std::string& s) {
  if (s == "r-path" || s == "path") return WitnessKind::path;
  if (s == "r-trail" || s == "trail") return WitnessKind::trail;
  if (s == "r-cycle" || s == "cycle") return WitnessKind::cycle;
  fail(Status::invalid_input, "witness", "unknown-kind", s);
}

WitnessCheck validate_witness(const DenseGraph& g, const WitnessSequence& w) {
  WitnessCheck res;
  const auto& vs = w.vertices;
  const int k = static_cast<int>(vs.size());
  auto bad = [&](std::string msg, int u, int v) {
    res.ok = false;
    res.violation = std::move(msg);
    res.u = u;
    res.v = v;
    return res;
  };
  for (int x : vs)
    if (x < 0 || x >= g.n()) return bad("vertex out of range", x, x);
  if (w.kind != WitnessKind::trail) {
    std::vector<char> seen(g.n(), 0);
    for (int x : vs) {
      if (seen[x]) return bad("duplicate vertex " + std::to_string(x), x, x);
      seen[x] = 1;
    }
  }
  const bool cyc = w.kind == WitnessKind::cycle;
  for (int i = 0; i < k; ++i)
    for (int j = 1; j <= w.r; ++j) {
      int t = i + j;
      if (t >= k) {
        if (!cyc || j >= k) break;
        t %= k;
      }
      int a = vs[i], b = vs[t];
      if (a == b) return bad("repeated vertex inside a window", a, b);
      if (!g.adj(a, b))
        return bad("missing edge (" + std::to_string(a) + "," + std::to_string(b) + ")", a, b);
    }
  return res;
}

std::vector<int> bfs_distances(const DenseGraph& g, int src) {
  std::vector<int> d(g.n(), -1);
  std::deque<int> q{src};
  d[src] = 0;
  Bits unseen = Bits::full(g.n());
  unseen.reset(src);
  while (!q.empty()) {
    int u = q.front();
    q.pop_front();
    Bits nb = g.row(u) & unseen;
    nb.for_each([&](int v) {
      d[v] = d[u] + 1;
      unseen.reset(v);
      q.push_back(v);
    });
  }
  return d;
}

int component_count(const DenseGraph& g) {
  std::vector<int> comp(g.n(), -1);
  int c = 0;
  for (int s = 0; s < g.n(); ++s) {
    if (comp[s] >= 0) continue;
    std::vector<int> d = bfs_distances(g, s);
    for (int v = 0; v < g.n(); ++v)
      if (d[v] >= 0) comp[v] = c;
    ++c;
  }
  return c;
}

DenseGraph graph_power(const DenseGraph& g, int r) {
  if (r < 1) fail(Status::invalid_input, "graph_power", "invalid-parameters", "r >= 1");
  GraphBuilder b(g.n());
  for (int u = 0; u < g.n(); ++u) {
    std::vector<int> d = bfs_distances(g, u);
    for (int v = u + 1; v < g.n(); ++v)
      if (d[v] >= 1 && d[v] <= r) b.add_edge(u, v);
  }
  return b.build();
}

bool is_labelled_subgraph(const DenseGraph& a, const DenseGraph& b, const std::vector<int>& map) {
  if (static_cast<int>(map.size()) != a.n())
    fail(Status::invalid_input, "is_labelled_subgraph", "bad-map", "size mismatch");
  std::vector<char> used(b.n(), 0);
  for (int x : map) {
    if (x < 0 || x >= b.n() || used[x])
      fail(Status::invalid_input, "is_labelled_subgraph", "bad-map", "not injective");
    used[x] = 1;
  }
  for (auto [u, v] : a.edges())
    if (!b.adj(map[u], map[v])) return false;
  return true;
}

void write_edgelist(std::ostream& os, const DenseGraph& g) {
  os << "p " << g.n() << ' ' << g.edge_count() << '\n';
  for (auto [u, v] : g.edges()) os << "e " << u << ' ' << v << '\n';
}

DenseGraph read_edgelist(std::istream& is) {
  std::string line;
  int n = -1;
  long long m = -1;
  std::vector<Edge> es;
  while (std::getline(is, line)) {
    if (line.empty() || line[0] == 'c' || line[0] == '#') continue;
    std::istringstream ls(line);
    char tag;
    ls >> tag;
    if (tag == 'p') {
      ls >> n >> m;
    } else if (tag == 'e') {
      int u, v;
      if (!(ls >> u >> v)) fail(Status::invalid_input, "edgelist", "bad-line", line);
      es.emplace_back(u, v);
    } else {
      fail(Status::invalid_input, "edgelist", "bad-line", line);
    }
  }
  if (n < 0) fail(Status::invalid_input, "edgelist", "missing-header", "");
  DenseGraph g(n, es);
  if (m >= 0 && g.edge_count() != m)
    fail(Status::invalid_input, "edgelist", "edge-count-mismatch",
         std::to_string(m) + " declared, " + std::to_string(g.edge_count()) + " read");
  return g;
}

}  // namespace ldbw
