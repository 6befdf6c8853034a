#pragma once

#include <string>
#include <vector>

#include "ldbw/graph.hpp"

namespace ldbw {

struct BridgeResult {
  std::vector<int> z;       // spans K_r
  std::vector<int> x_sub;   // r vertices of X inside N(Z)
  std::vector<int> y_sub;   // r vertices of Y inside N(Z)
  int high_attachment = 0;  // |U''|
  int bucket_size = 0;      // |U*|
  bool relaxed = false;     // found through a core bucket rather than an exact pattern bucket
  std::vector<std::string> violations;  // hypotheses that failed but were not fatal
};

// U'' = vertices of U \ (X u Y u W) with >= |X| + r neighbours in X u Y, bucketed by
// attachment pattern; buckets are tried by size, ties by smallest pattern.
BridgeResult find_bridging_clique(const DenseGraph& g, const Bits& u, const std::vector<int>& x,
                                  const std::vector<int>& y, const Bits& w, int r, double eta,
                                  bool strict = true);

struct ConnectParams {
  int r = 1;
  double eta = 0.1;
  int c_cap = 0;  // 0: 2r
  bool strict = true;
  long long clique_budget = 200'000;
};

struct ConnectResult {
  WitnessSequence path;  // r-path x_1..x_3r = X'' Z Y''
  std::string x_branch, y_branch;  // "extendable", "clique" or "none"
  int c = 0;                       // envelope size used
  int c_paper = 0, C_paper = 0;    // ceil(4r/eta), ceil(9r/eta)
  BridgeResult bridge;
  std::vector<std::string> violations;
};

// X, Y are r-cliques; the result avoids W and both X·P and P·Y validate as P^r_4r.
ConnectResult connect_cliques(const DenseGraph& g, const std::vector<int>& x, const std::vector<int>& y,
                              const Bits& w, const ConnectParams& p);

}  // namespace ldbw
