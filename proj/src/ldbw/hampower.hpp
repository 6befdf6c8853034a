#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ldbw/graph.hpp"

namespace ldbw {

struct HamOptions {
  double eta = -1;     // -1: measured min degree / n - 1/2, floored at 0.05
  double eta0 = 0.8;   // absorber budget floor(eta0 n / 8r)
  double eta2 = 0.35;  // leftover cap as a fraction of n
  double eta3 = 0.15;  // reservoir fraction
  double d1 = 0.1;     // absorber blocks are d1 n-extendable
  int coverage_target = -1;  // -1: 2r + 2
  int min_path = -1;         // -1: 2r + 1; C is capped at min_path / 2
  int reservoir_retries = 50;
  int cover_restarts = 30;
  int restarts = 3;
  int small_host_factor = 24;  // exact search when n <= factor * r
  long long exact_budget = 20'000'000;
  long long clique_budget = 200'000;
  bool strict = false;
};

struct AbsorberSystem {
  std::vector<std::vector<int>> blocks;    // disjoint K_2r vertex sets
  std::vector<std::vector<int>> coverage;  // coverage[v] = blocks inside N(v)
  int budget = 0;
  bool target_reached = false;
};

struct AbsorbingPath {
  WitnessSequence path;  // 2r-path
  std::vector<int> S, E_end;
  std::vector<std::vector<int>> blocks;
  std::vector<int> slot;  // slot[j] = position of block j's first vertex
  std::vector<std::string> violations;
};

struct ReservoirResult {
  Bits reservoir;
  int attempts = 0;
  double min_relative_degree = 0;
};

struct CoverResult {
  std::vector<WitnessSequence> paths;
  std::vector<int> leftover;
  int attempts = 0;
};

struct HamReport {
  std::string route;  // "exact" or "absorbing"
  int attempts = 0;
  int blocks = 0;
  int C = 0;
  int flank_size = 0;
  int reservoir = 0, reservoir_used = 0;
  int cover_paths = 0;
  int leftover = 0;
  int matched_insertions = 0;
  int window_insertions = 0;
  std::vector<int> deleted;  // vertices removed to reach n_target
  std::vector<std::string> violations;
  std::vector<std::string> failures;  // stage-labelled, one per failed attempt
};

struct HamResult {
  WitnessSequence cycle;  // r-cycle on exactly n_target vertices
  HamReport report;
};

// Greedy replacement for the random sparsification: the least-covered vertex receives a
// fresh d1 n-extendable K_2r inside its neighbourhood, until every vertex reaches the
// coverage target or the budget is spent.
AbsorberSystem build_absorber(const DenseGraph& g, int r, const HamOptions& opt);

// K^1 P_1 K^2 ... P_{t-1} K^t with P^{2r}_{6r} connectors.
AbsorbingPath build_absorbing_path(const DenseGraph& g, const AbsorberSystem& abs, int r,
                                   const HamOptions& opt, const Bits& avoid);

// Inserts each z as y_1..y_r z y_{r+1}..y_2r inside a distinct middle block it fully sees.
WitnessSequence absorb(const DenseGraph& g, const AbsorbingPath& pabs, const std::vector<int>& z, int r);

// Random draws, each repaired by swaps and fully verified: d_G(x,V') >= (1/2+eta/2)|V'| for all x.
ReservoirResult select_reservoir(const DenseGraph& g, double eta3, double eta, uint64_t seed,
                                 const Bits& candidates, int retries = 50);

// Vertex-disjoint r_cover-paths of length >= min_path inside `allowed`.
CoverResult cover_with_paths(const DenseGraph& g, const Bits& allowed, int r_cover, int min_path,
                             uint64_t seed, int restarts = 30);

// Backtracking search for an r-cycle through all vertices.
std::optional<WitnessSequence> exact_power_cycle(const DenseGraph& g, int r, long long budget,
                                                 bool* exhausted = nullptr);

HamResult find_hamilton_power(const DenseGraph& g, int r, int n_target, const HamOptions& opt,
                              uint64_t seed);

}  // namespace ldbw
