#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ldbw/balance_g.hpp"
#include "ldbw/constants.hpp"
#include "ldbw/graph.hpp"
#include "ldbw/hampower.hpp"
#include "ldbw/partition_h.hpp"

namespace ldbw {

// Independent embedding check: total, injective, in range, every H-edge lands on a G-edge.
// Empty on success, otherwise the first violation.
std::string check_embedding(const DenseGraph& h, const DenseGraph& g, const std::vector<int>& map);

// ---- Embedding with target sets -------------------------------------------------------

struct TargetEmbedInput {
  const DenseGraph* g = nullptr;          // host
  std::vector<std::vector<int>> parts;    // V_a per R vertex
  const DenseGraph* r = nullptr;          // reduced graph on the parts
  const DenseGraph* h = nullptr;
  std::vector<int> phi;                   // per H vertex: part index, -1 outside X and Y
  std::vector<int> x;                     // embedding order (bandwidth order)
  std::vector<int> y;                     // vertices receiving candidate sets
  std::map<int, std::vector<int>> s;      // S_w for w in W
  std::vector<int> fixed;                 // per H vertex: preassigned image, -1 if none
  double c = 0.1;                         // |C_y| >= c m and |S_w| >= c m
  double eps = 0.01;                      // load bound 2 eps m
  long long budget = 10'000'000;
  bool strict = false;                    // make the load and |S_w| bounds fatal
};

struct TargetEmbedResult {
  std::vector<int> f;                     // per H vertex, -1 if not in X
  std::map<int, std::vector<int>> c_y;
  long long nodes = 0;
  long long backtracks = 0;
  int min_candidates = 0;                 // min |C_y|
  int threshold = 0;                      // ceil(c m)
  std::vector<std::string> violations;    // recorded hypotheses
};

TargetEmbedResult embed_with_targets(const TargetEmbedInput& in);
// (i)-(iii) from the inputs and the result alone. Empty when all hold.
std::string check_target_embedding(const TargetEmbedInput& in, const TargetEmbedResult& res);

// ---- Spanning embedding into one block ------------------------------------------------

struct BlowupInput {
  const DenseGraph* g = nullptr;
  std::vector<std::vector<int>> parts;    // U_i
  const DenseGraph* h = nullptr;
  std::vector<int> verts;                 // H vertices to place, in bandwidth order
  std::vector<int> phi;                   // per H vertex: index into parts
  std::map<int, std::vector<int>> special;  // S_y
  std::vector<int> anchored;              // per H vertex: image already fixed outside the block, else -1
  double alpha = 1.0;                     // max special fraction per part
  long long budget = 10'000'000;
  int restarts = 4;
  uint64_t seed = 1;
};

struct BlowupResult {
  std::vector<int> f;  // per H vertex, -1 outside verts
  long long nodes = 0;
  int attempts = 0;
};

BlowupResult blowup_embed(const BlowupInput& in);

// ---- Exact oracle ---------------------------------------------------------------------

enum class BruteOutcome { found, exhausted_no_embedding, budget_exceeded };
const char* brute_outcome_name(BruteOutcome o);

struct BruteResult {
  BruteOutcome outcome = BruteOutcome::budget_exceeded;
  std::vector<int> map;
  long long nodes = 0;
};

BruteResult brute_force_embed(const DenseGraph& h, const DenseGraph& g, long long budget = 50'000'000);

// ---- Generators -----------------------------------------------------------------------

struct GeneratedInstance {
  std::string kind;  // "graph", "h", "structure"
  DenseGraph g;
  std::optional<BandwidthedH> h;
  std::optional<CycleStructure> structure;
};

DenseGraph gen_gnp(int n, double p, uint64_t seed);
DenseGraph gen_two_clique(int n);
// A independent of size n/r + 1, complete elsewhere.
DenseGraph gen_kr_factor_extremal(int r, int n);
// k clusters of size m on a cycle: pairs within cyclic distance `reach` complete, farther
// pairs density p_far, inside a cluster p_in. Labels are shuffled when requested.
DenseGraph gen_planted_z(int k, int m, int reach, double p_in, double p_far, uint64_t seed, bool shuffle = true);
// Cells [l]x[width] of size m; within-block pairs and consecutive-block pairs (j != j')
// random bipartite of density p with every vertex topped up to min_frac m into each partner.
GeneratedInstance gen_planted_structure(int l, int width, int m, double p, double min_frac, double eps,
                                        double delta, uint64_t seed);

// Greedy colouring along the ordering; r is the number of colours used.
BandwidthedH with_greedy_colouring(DenseGraph h, VertexLabelling order);
BandwidthedH gen_cycle_power(int n, int k);   // zigzag order, bandwidth <= 2k
BandwidthedH gen_path_power(int n, int k);    // identity order
BandwidthedH gen_kr_tiling(int r, int count);
// Each pair within window k kept with probability p, degrees capped at max_deg.
BandwidthedH gen_random_bandwidth(int n, int k, double p, int max_deg, uint64_t seed);

// id in {gnp, two-clique, kr-factor-extremal, planted-z, planted-structure, cycle-power,
// path-power, kr-tiling, random-bandwidth}; params as a JSON object text.
GeneratedInstance gen_instance(const std::string& id, const std::string& params_json, uint64_t seed);

// ---- Pipeline -------------------------------------------------------------------------

struct PipelineOptions {
  double eps = 0.01;
  double delta = 0.3;
  double d = 0.5;
  double rho = 0.01;
  double eta = 0.1;
  double c = 0.2;
  int L_target = 0;        // 0: a multiple of 4r chosen to minimise n mod L
  int rstar_cap = 0;       // cap on r* - 1; 0 means 4r - 1
  long long budget = 10'000'000;
  bool strict = false;
  HamOptions ham;

  static PipelineOptions from_constants(const ConstantsHierarchy& k);
};

struct AuditEntry {
  std::string name;
  bool pass = false;
  std::string detail;
};

struct EmbeddingResult {
  bool ok = false;
  std::vector<int> g;  // per H vertex
  Status status = Status::ok;
  std::string stage;       // failing stage
  std::string inequality;  // named violated inequality
  std::vector<AuditEntry> audit;
  std::map<int, std::vector<int>> candidate_sets;
  int L = 0, l = 0, m = 0, v0 = 0, K = 0, s = 0;
};

EmbeddingResult run_main_pipeline(const DenseGraph& g, const BandwidthedH& hb, const PipelineOptions& opt,
                                  uint64_t seed);

}  // namespace ldbw
