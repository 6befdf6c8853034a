#pragma once

#include <string>
#include <utility>
#include <vector>

#include "ldbw/density.hpp"
#include "ldbw/graph.hpp"

namespace ldbw {

inline constexpr int kExactRegularSide = 12;

// d_G(A,B) = e_G(A,B) / (|A||B|) for disjoint nonempty A, B.
double pair_density(const DenseGraph& g, const std::vector<int>& a, const std::vector<int>& b);

struct RegularityVerdict {
  bool regular = true;
  bool certified = false;  // exact mode only
  double density = 0;
  std::vector<int> x, y;   // witness subsets on failure
  double witness_density = 0;
  long long checked = 0;
};

RegularityVerdict is_eps_regular(const DenseGraph& g, const std::vector<int>& a,
                                 const std::vector<int>& b, double eps, CheckMode mode,
                                 uint64_t seed = 1, int random_orders = 16);

struct SuperregularVerdict {
  bool ok = true;
  std::string reason;  // "irregular", "sparse", "low-degree"
  int low_vertex = -1;
  RegularityVerdict reg;
};

SuperregularVerdict is_superregular(const DenseGraph& g, const std::vector<int>& a,
                                    const std::vector<int>& b, double eps, double delta,
                                    CheckMode mode, uint64_t seed = 1);

// (eps + 6 sqrt(alpha), delta - 4 alpha).
std::pair<double, double> slice_robustness_expected(double eps, double delta, double alpha);

struct ClusterPartition {
  std::vector<int> exceptional;
  std::vector<std::vector<int>> clusters;

  int cluster_size() const { return clusters.empty() ? 0 : static_cast<int>(clusters.front().size()); }
  int n() const;
  // -1 for exceptional vertices.
  std::vector<int> cluster_of(int n) const;
  // Disjoint, covering 0..n-1, equal cluster sizes.
  bool well_formed(int n, std::string* why = nullptr) const;
};

struct ReducedGraph {
  DenseGraph base;            // on cluster indices
  DenseGraph superregular;    // subgraph of base
  double eps = 0, delta = 0;
};

struct RefineResult {
  std::vector<std::vector<int>> clusters;  // V_i', each of size ceil((1 - sqrt(eps)) m)
  std::vector<std::vector<int>> discarded;
  std::vector<std::pair<Edge, SuperregularVerdict>> checks;  // at (4 sqrt(eps), delta/2)
  bool verified = true;
};

// Removes vertices of degree < (delta - eps)|V_j| into some R-neighbour V_j, then trims
// the lowest-degree vertices down to the target size.
RefineResult refine_to_superregular(const DenseGraph& g, const std::vector<std::vector<int>>& clusters,
                                    const DenseGraph& r, double eps, double delta,
                                    bool verify = true, uint64_t seed = 1);

struct InheritanceReport {
  double rho_star = 0;
  bool dense_ok = false;
  bool dense_certified = false;
  std::vector<int> dense_witness;
  int min_degree = 0;
  double min_degree_needed = 0;
  bool degree_ok = false;
  bool ok() const { return dense_ok && degree_ok; }
};

InheritanceReport inheritance_check(const DenseGraph& g, const ClusterPartition& part,
                                    const DenseGraph& r, double rho, double d, double delta,
                                    double eta);

struct PartitionOptions {
  int L_target = 0;         // 0: start at L_min
  int max_rounds = 40;
  int restarts = 8;          // independent Lloyd starts, best objective kept
  double exceptional_cap = -1;  // |V0| bound as a fraction of n; -1 means eps
  uint64_t seed = 1;
};

struct PartitionResult {
  ClusterPartition partition;
  DenseGraph pure;
  ReducedGraph reduced;
  int rounds = 0;
  bool stable = false;
  // Measured conclusions of the degree form: |V0| <= eps n and d_G'(x) >= d_G(x) - (delta+eps) n.
  bool exceptional_ok = false;
  int degree_loss_violations = 0;
  std::vector<int> degree_loss_histogram;  // bucket k counts losses in [k, k+1) * n/10
  int regular_pairs = 0, dense_pairs = 0, irregular_pairs = 0;
};

// Random equitable starts, each refined by balanced Lloyd rounds on adjacency rows.
PartitionResult heuristic_degree_form_partition(const DenseGraph& g, double eps, double delta,
                                                int L_min, const PartitionOptions& opt = {});

// Pure graph and reduced graph for a given partition.
PartitionResult reduce_with_partition(const DenseGraph& g, const ClusterPartition& part, double eps,
                                      double delta, uint64_t seed = 1);

}  // namespace ldbw
