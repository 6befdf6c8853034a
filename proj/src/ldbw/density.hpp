#pragma once

#include <optional>
#include <vector>

#include "ldbw/graph.hpp"

namespace ldbw {

struct DensityParams {
  double rho = 0;
  double d = 1;
};

void check_density_params(const DensityParams& p);

struct DensityVerdict {
  bool ok = true;        // exact mode: holds; sampled mode: no violation found
  bool certified = false;  // true only for exact verdicts
  std::vector<int> x;    // witness on failure
  std::vector<int> y;    // second witness set (uniform density only)
  double slack = 0;      // lhs - rhs at the witness, negative on failure
  long long subsets_checked = 0;
};

inline constexpr int kExactDenseLimit = 22;
inline constexpr int kExactUniformLimit = 18;

// e(G[X]) >= d*C(|X|,2) - rho*n^2 for every X. The witness has minimum size.
DensityVerdict is_locally_dense_exact(const DenseGraph& g, const DensityParams& p,
                                      int limit = kExactDenseLimit);

// Full set first, then greedy peeling orders and random subsets. Witnesses are rechecked.
DensityVerdict is_locally_dense_sampled(const DenseGraph& g, const DensityParams& p, int trials,
                                        uint64_t seed);

enum class CheckMode { exact, sampled, heuristic = sampled };

// e_G(X,Y) >= d|X||Y| - rho*n^2 with e_G counting ordered incidences. For fixed X the
// minimising Y is explicit, so only X is enumerated (exact) or sampled.
DensityVerdict is_uniformly_dense(const DenseGraph& g, const DensityParams& p, CheckMode mode,
                                  int trials = 2000, uint64_t seed = 1,
                                  int limit = kExactUniformLimit);

Bits high_degree_vertices(const DenseGraph& g, double d);

struct ExtendableClique {
  std::vector<int> vertices;  // sorted
  int joint_degree = 0;
};

struct CliqueQuery {
  int r = 1;
  int s = 0;                       // joint-degree lower bound
  long long cap = -1;              // max results, -1 for all
  std::optional<Bits> within;      // clique vertices restricted here
  std::optional<Bits> degree_in;   // joint degree counted inside this set (default V(G))
  long long node_budget = 50'000'000;
};

// Lexicographic over sorted vertex sets; prefixes whose joint degree already fell
// below s are pruned, since joint degree only shrinks as the tuple grows.
std::vector<ExtendableClique> enumerate_extendable_cliques(const DenseGraph& g, const CliqueQuery& q);
std::optional<ExtendableClique> first_extendable_clique(const DenseGraph& g, CliqueQuery q);

// Lower bound on the number of s-extendable r-cliques in a (rho,d)-dense graph:
// (d/2)^{C(r+1,2)} n^r / r!. Reported, asserted only in strict mode.
double clique_count_lower_bound(int n, double d, int r);

// A k-clique inside `within`, found by branch and bound with greedy colouring bounds.
std::optional<std::vector<int>> find_clique(const DenseGraph& g, const Bits& within, int k,
                                            long long node_budget = 2'000'000);
// Largest clique inside `within` up to size k_max, within the budget.
std::vector<int> max_clique_upto(const DenseGraph& g, const Bits& within, int k_max,
                                 long long node_budget = 2'000'000);

int independence_number_exact(const DenseGraph& g);  // n <= 40

}  // namespace ldbw
