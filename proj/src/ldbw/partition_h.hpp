#pragma once

#include <string>
#include <vector>

#include "ldbw/graph.hpp"

namespace ldbw {

// H with a bandwidth ordering and a proper colouring chi: V(H) -> [r] (values 1..r).
struct BandwidthedH {
  DenseGraph h;
  VertexLabelling order;
  std::vector<int> chi;
  int r = 1;
};

// Interval width for a bandwidth fraction: floor(beta n), at least 1.
int beta_width(double beta, int n);
// Empty on success, otherwise the first violated hypothesis.
std::string check_bandwidthed(const BandwidthedH& hb, int width);

struct Balanced2rColouring {
  std::vector<int> chi2;  // per vertex, 1..2r
  int width = 0;          // |A_t|
  int intervals = 0;      // 2N
  bool proper = false;
  bool parity_ok = false;       // odd intervals in [r], even in [2r]\[r]
  int max_prefix_gap = 0;       // max |d^j(s) - d^j'(s)| over s and same-side pairs
};

Balanced2rColouring balanced_2r_colouring(const BandwidthedH& hb, double beta);

// f(x) is a cell id, or -1 with exceptional[x] naming the V0 vertex.
// Basic lemma cells are grid ids (i-1)*2r + (j-1); special lemma cells are R vertices.
struct Assignment {
  std::vector<int> f;
  std::vector<int> exceptional;
  std::vector<int> special;  // B, sorted
  std::vector<int> tallies;  // per cell
};

struct BasicReport {
  bool b1 = false, b2 = false, b3 = false, b4 = false, homomorphism = false;
  int max_deviation = 0;  // max | |f^-1(i,j)| - m_{i,j} |
  std::vector<std::string> failures;
  bool ok() const { return b1 && b2 && b3 && b4 && homomorphism; }
};

struct BasicResult {
  Assignment a;
  Balanced2rColouring colouring;
  std::vector<int> block_end;  // n_i
  BasicReport report;
  std::vector<std::string> violations;  // size hypotheses recorded in non-strict mode
};

// targets[i][j] for i in [l], j in [2r] (0-based containers).
// Non-strict mode records m_{i,j} >= 10 beta n instead of rejecting; B1-B4 are still enforced.
BasicResult basic_assignment(const BandwidthedH& hb, const std::vector<std::vector<int>>& targets, double beta,
                             bool strict = true);
// Recomputes B1-B4 and the Z^{2r}_l homomorphism from (f, B) only.
BasicReport check_basic_assignment(const BandwidthedH& hb, const std::vector<std::vector<int>>& targets,
                                   double beta, const Assignment& a);

// Vertices pairwise at distance >= 3, taken greedily in order from positions
// [lo + shrink, hi - shrink) of the ordering.
std::vector<int> find_2_independent(const DenseGraph& h, const VertexLabelling& order, int lo, int hi, int k,
                                    int shrink = 0);

struct FrameworkParams {
  int r = 2;
  double eta = 0.1;
  double d = 0.5;
  double eps = 0.01;
  int m = 1;           // cluster size
  int block_cap = 0;   // max |V0^k|; 0: max(1, floor(sqrt(eps) m / L^{2r-1}))
  bool strict = false;
  long long clique_budget = 200'000;
};

struct FrameworkTrail {
  std::vector<int> seq;                    // a_1..a_t
  int K = 0;
  std::vector<std::vector<int>> cliques;   // T_1..T_K, sorted
  std::vector<std::vector<int>> v0_parts;  // indices into the N_v list, per T_k
  std::vector<int> block_of;               // per V0 vertex index
  std::vector<int> multiplicity;           // per R vertex
  std::vector<int> b;
  int block_cap = 0;
  std::vector<std::string> violations;
};

FrameworkTrail build_framework(const DenseGraph& r_graph, const std::vector<Bits>& n_v,
                               const std::vector<int>& b, const FrameworkParams& p);
// (F1)-(F3) plus the multiplicity cap; empty when all hold.
std::string check_framework(const DenseGraph& r_graph, const std::vector<Bits>& n_v, const FrameworkTrail& f,
                            int r);

struct SpecialParams {
  int width = 1;      // beta n, also |Y|
  int b = 0;          // interval width |B_i^j|
  double eps = 0.01;  // for the reported load bound
  int m = 1;
  int L = 1;
  int max_degree = 0;  // 0: measured
};

struct SpecialResult {
  Assignment a;  // cells are R vertices; exceptional ids index the V0 list
  int s = 0;
  std::vector<int> independent;          // I
  std::vector<std::vector<int>> w_sets;  // W_v per V0 index
  std::vector<int> phi;                  // per vertex, R vertex before the V0 override
  int max_load = 0;
  double load_bound = 0;  // eps^{1/4} m
  std::vector<std::string> violations;
};

// hb covers exactly s + width vertices where s = 8 K b.
SpecialResult special_assignment(const BandwidthedH& hb, const DenseGraph& r_graph, const FrameworkTrail& f,
                                 const std::vector<Bits>& n_v, const SpecialParams& p);
// D1, D2, D4, D5 from (f, I) alone; empty when all hold.
std::string check_special_assignment(const BandwidthedH& hb, const DenseGraph& r_graph, const FrameworkTrail& f,
                                     const std::vector<Bits>& n_v, int width, const SpecialResult& res);

}  // namespace ldbw
