#pragma once

#include <string>
#include <utility>
#include <vector>

#include "ldbw/density.hpp"
#include "ldbw/graph.hpp"

namespace ldbw {

struct Cell {
  int i = 1, j = 1;  // 1-based
  bool operator==(const Cell&) const = default;
};

// (i,j) in [l]x[2r] -> (2(i-1) + ceil(j/r), ((j-1) mod r) + 1) in [2l]x[r].
Cell phi_bijection(Cell c, int r, int l);
Cell phi_inverse(Cell c, int r, int l);

// Cells are stored at grid_id(i, j, width): a partition on [l]x[width].
struct CycleStructure {
  int l = 0, width = 0;
  std::vector<std::vector<int>> cells;
  std::vector<int> v0;
  DenseGraph reduced;  // on l * width cell ids
  double eps = 0, delta = 0;
};

struct PairCheck {
  Cell a, b;
  std::string kind;  // "regular" or "superregular"
  bool ok = true;
  std::string reason;
};

struct CycleStructureReport {
  bool c1 = false, contains_z = false, c2 = false, c3 = false;
  std::string c1_reason;
  std::vector<PairCheck> pairs;
  bool ok() const { return c1 && contains_z && c2 && c3; }
};

CycleStructureReport check_cycle_structure(const DenseGraph& g, const CycleStructure& cs, CheckMode mode,
                                           uint64_t seed = 1);

// Y-sets on [l]x[2r], indexed by grid_id(i, j, 2r).
bool is_valid_move(const DenseGraph& g, int v, Cell target, const std::vector<std::vector<int>>& y, int r,
                   double delta, double eps, int m);

struct Move {
  int v = -1;
  Cell from, to;
  int chain = -1;  // -1 for within-block balancing moves
};

struct MoveLedger {
  std::vector<Move> moves;
  std::vector<std::vector<Cell>> chains;
};

// Applies the ledger to an initial partition; throws if a move does not match the current state.
std::vector<std::vector<int>> replay_ledger(const std::vector<std::vector<int>>& initial, const MoveLedger& ledger,
                                           int width);

struct WithinBlockResult {
  std::vector<std::vector<int>> u;  // U_{i,j}
  std::vector<int> s_per_block;     // S for each block
  MoveLedger ledger;
  bool u1 = false, u2 = false, u3 = false;
};

// Balancing from Y-sets on [l]x[2r]. Movers are the smallest-id vertex of the largest
// upper cell, preferring one whose move is valid.
WithinBlockResult balance_within_blocks(const DenseGraph& g, const std::vector<std::vector<int>>& y, int l, int r,
                                        double delta, double eps, int m);

struct ReallocateResult {
  std::vector<std::vector<int>> w;
  MoveLedger ledger;
  int iterations = 0;
  int max_sym_diff = 0;  // max |W_{i,j} sym-diff U_{i,j}|
  bool w1 = false, w2 = false, w3 = false;
  std::vector<std::string> violations;  // non-strict mode only
};

ReallocateResult reallocate_by_chains(const DenseGraph& g, const std::vector<std::vector<int>>& y,
                                      const std::vector<std::vector<int>>& u, const std::vector<int>& targets,
                                      int l, int r, int xi_n, double delta, double eps, int m,
                                      bool strict = true);

struct LemmaGOptions {
  int xi_n = 0;                  // xi n as a vertex count
  bool check_output = true;      // cycle structure at (eps^{1/3}, delta/2)
  CheckMode mode = CheckMode::heuristic;
  uint64_t seed = 1;
  // Non-strict: the xi n window and K <= eps m / 2 are recorded, and the iteration
  // budget grows to the total deficit when K is smaller.
  bool strict = true;
};

struct LemmaGResult {
  std::vector<int> m_ab;                 // phase 1, on [2l]x[r]
  std::vector<std::vector<int>> a_sets;  // A_{i,j} on [l]x[2r]
  std::vector<std::vector<int>> y_sets;
  WithinBlockResult phase1;
  bool l1 = false;
  bool has_phase2 = false;
  ReallocateResult phase2;
  CycleStructure x;  // on [2l]x[r]
  int max_sym_diff = 0;  // max |X_{a,b} sym-diff V_{phi^-1(a,b)}|
  CycleStructureReport x_report;
  std::vector<std::string> audit;
};

// cs: spanning structure on [l]x[2r] with equal cells of size m. tau and targets are on [2l]x[r].
LemmaGResult lemma_g(const DenseGraph& g, const CycleStructure& cs, const std::vector<int>& tau,
                     const std::vector<int>* targets, const LemmaGOptions& opt);

}  // namespace ldbw
