#pragma once

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "ldbw/common.hpp"

namespace ldbw {

using Edge = std::pair<int, int>;

// Immutable undirected simple graph on 0..n-1, one adjacency bit-row per vertex.
class DenseGraph {
 public:
  DenseGraph() = default;
  explicit DenseGraph(int n);  // edgeless
  DenseGraph(int n, const std::vector<Edge>& edges);

  int n() const { return n_; }
  long long edge_count() const { return m_; }
  bool adj(int u, int v) const { return rows_[u].test(v); }
  const Bits& row(int v) const { return rows_[v]; }
  int degree(int v) const { return deg_[v]; }
  int min_degree() const;
  int max_degree() const;

  int degree_into(int v, const Bits& s) const { return rows_[v].and_count(s); }
  // Joint neighbourhood of s; the full vertex set when s is empty.
  Bits common_neighbourhood(const std::vector<int>& s) const;
  int joint_degree(const std::vector<int>& s) const { return common_neighbourhood(s).count(); }
  bool is_clique(const std::vector<int>& s) const;

  long long edges_within(const Bits& x) const;
  // Ordered incidences: number of (x, y) with x in X, y in Y, xy an edge.
  long long e_between(const Bits& x, const Bits& y) const;

  DenseGraph induced(const std::vector<int>& verts) const;
  std::vector<Edge> edges() const;  // sorted, u < v
  bool operator==(const DenseGraph& o) const;

 private:
  int n_ = 0;
  long long m_ = 0;
  std::vector<Bits> rows_;
  std::vector<int> deg_;
};

class GraphBuilder {
 public:
  explicit GraphBuilder(int n) : n_(n) {}
  void add_edge(int u, int v);
  int n() const { return n_; }
  DenseGraph build() const { return DenseGraph(n_, edges_); }

 private:
  int n_;
  std::vector<Edge> edges_;
};

// order[k] is the vertex carrying label k+1.
struct VertexLabelling {
  std::vector<int> order;

  static VertexLabelling identity(int n);
  std::vector<int> positions() const;
  bool is_permutation_of(int n) const;
};

enum class NamedKind { path_power, cycle_power, zgraph, complete, empty };

NamedKind named_kind_from_string(const std::string& s);
DenseGraph make_named(NamedKind kind, const std::vector<int>& params);
inline int grid_id(int i, int j, int r) { return (i - 1) * r + (j - 1); }  // (i,j) 1-based

int bandwidth_of(const DenseGraph& g, const VertexLabelling& l);
VertexLabelling zigzag_labelling(int n);  // 1,3,5,...,6,4,2 over cycle order 0..n-1

enum class WitnessKind { path, trail, cycle };
const char* witness_kind_name(WitnessKind k);
WitnessKind witness_kind_from_string(const std::string& s);

struct WitnessSequence {
  WitnessKind kind = WitnessKind::path;
  int r = 1;
  std::vector<int> vertices;
};

struct WitnessCheck {
  bool ok = true;
  std::string violation;
  int u = -1, v = -1;  // offending pair; u == v marks a duplicate
};

WitnessCheck validate_witness(const DenseGraph& g, const WitnessSequence& w);

DenseGraph graph_power(const DenseGraph& g, int r);
bool is_labelled_subgraph(const DenseGraph& a, const DenseGraph& b, const std::vector<int>& map);
std::vector<int> bfs_distances(const DenseGraph& g, int src);
int component_count(const DenseGraph& g);

void write_edgelist(std::ostream& os, const DenseGraph& g);
DenseGraph read_edgelist(std::istream& is);

}  // namespace ldbw
