#include "ldbw/balance_g.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <map>

#include "ldbw/regularity.hpp"

namespace ldbw {

Cell phi_bijection(Cell c, int r, int l) {
  if (r < 1 || l < 1 || c.i < 1 || c.i > l || c.j < 1 || c.j > 2 * r)
    fail(Status::invalid_input, "phi_bijection", "out-of-range", "(i,j) must lie in [l]x[2r]");
  return {2 * (c.i - 1) + (c.j + r - 1) / r, (c.j - 1) % r + 1};
}

Cell phi_inverse(Cell c, int r, int l) {
  if (r < 1 || l < 1 || c.i < 1 || c.i > 2 * l || c.j < 1 || c.j > r)
    fail(Status::invalid_input, "phi_inverse", "out-of-range", "(a,b) must lie in [2l]x[r]");
  return {(c.i + 1) / 2, (c.i % 2 == 1 ? 0 : r) + c.j};
}

namespace {

std::string cell_name(Cell c) { return "(" + std::to_string(c.i) + "," + std::to_string(c.j) + ")"; }
Cell cell_at(int id, int width) { return {id / width + 1, id % width + 1}; }

// Y-sets as bitsets for repeated degree queries.
struct YIndex {
  std::vector<Bits> bits;
  int r;
  double need;
  YIndex(int n, const std::vector<std::vector<int>>& y, int r_, double delta, double eps, int m)
      : r(r_), need((delta - 2 * eps) * m) {
    for (const auto& c : y) bits.push_back(Bits::of(n, c));
  }
  bool valid(const DenseGraph& g, int v, int cell) const {
    const int w = 2 * r, base = cell / w * w, j = cell % w;
    const int lo = j < r ? 0 : r;
    for (int j2 = lo; j2 < lo + r; ++j2)
      if (j2 != j && g.degree_into(v, bits[base + j2]) < need - 1e-9) return false;
    return true;
  }
};

int sym_diff(const std::vector<int>& a, const std::vector<int>& b) {
  std::vector<int> x = a, y = b, out;
  std::sort(x.begin(), x.end());
  std::sort(y.begin(), y.end());
  std::set_symmetric_difference(x.begin(), x.end(), y.begin(), y.end(), std::back_inserter(out));
  return static_cast<int>(out.size());
}

void move_vertex(std::vector<std::vector<int>>& cells, int v, int from, int to) {
  auto& src = cells[from];
  auto it = std::find(src.begin(), src.end(), v);
  if (it == src.end())
    fail(Status::invalid_input, "ledger", "replay-mismatch", "vertex " + std::to_string(v) + " not in source cell");
  src.erase(it);
  auto& dst = cells[to];
  dst.insert(std::lower_bound(dst.begin(), dst.end(), v), v);
}

}  // namespace

CycleStructureReport check_cycle_structure(const DenseGraph& g, const CycleStructure& cs, CheckMode mode,
                                           uint64_t seed) {
  CycleStructureReport rep;
  const int n = g.n(), cells = cs.l * cs.width;
  rep.c1 = true;
  if (static_cast<int>(cs.cells.size()) != cells || cs.reduced.n() != cells) {
    rep.c1 = false;
    rep.c1_reason = "cell count does not match l x width";
    return rep;
  }
  std::vector<int> seen(n, 0);
  for (const auto& c : cs.cells)
    for (int v : c)
      if (v < 0 || v >= n) rep.c1 = false;
      else ++seen[v];
  for (int v : cs.v0)
    if (v < 0 || v >= n) rep.c1 = false;
    else ++seen[v];
  if (!rep.c1) rep.c1_reason = "vertex id out of range";
  for (int v = 0; v < n && rep.c1; ++v)
    if (seen[v] != 1) {
      rep.c1 = false;
      rep.c1_reason = "vertex " + std::to_string(v) + (seen[v] ? " in two parts" : " uncovered");
    }
  if (rep.c1 && cs.v0.size() > cs.eps * n + 1e-9) {
    rep.c1 = false;
    rep.c1_reason = "|V0| <= eps n fails";
  }

  // Z^width_l edges; for l < 3 only the non-wrapping part exists.
  rep.contains_z = true;
  for (int i = 1; i <= cs.l; ++i)
    for (int j = 1; j <= cs.width; ++j) {
      const int u = grid_id(i, j, cs.width);
      for (int j2 = j + 1; j2 <= cs.width; ++j2)
        if (!cs.reduced.adj(u, grid_id(i, j2, cs.width))) rep.contains_z = false;
      if (cs.l >= 2 && (i < cs.l || cs.l >= 3)) {
        int inext = i == cs.l ? 1 : i + 1;
        for (int j2 = 1; j2 <= cs.width; ++j2)
          if (j2 != j && !cs.reduced.adj(u, grid_id(inext, j2, cs.width))) rep.contains_z = false;
      }
    }

  // Pair checks need disjoint in-range cells.
  if (!rep.c1) return rep;
  rep.c2 = rep.c3 = true;
  uint64_t s = seed;
  for (auto [a, b] : cs.reduced.edges()) {
    PairCheck pc{cell_at(a, cs.width), cell_at(b, cs.width), "regular", true, ""};
    const auto &xa = cs.cells[a], &xb = cs.cells[b];
    if (xa.empty() || xb.empty()) {
      pc.ok = false;
      pc.reason = "empty cell";
    } else {
      auto v = is_eps_regular(g, xa, xb, cs.eps, mode, ++s);
      if (!v.regular) pc.ok = false, pc.reason = "irregular";
      else if (v.density < cs.delta - 1e-12) pc.ok = false, pc.reason = "sparse";
    }
    if (!pc.ok) rep.c2 = false;
    rep.pairs.push_back(pc);
  }
  for (int i = 1; i <= cs.l; ++i)
    for (int j = 1; j <= cs.width; ++j)
      for (int j2 = j + 1; j2 <= cs.width; ++j2) {
        PairCheck pc{{i, j}, {i, j2}, "superregular", true, ""};
        const auto &xa = cs.cells[grid_id(i, j, cs.width)], &xb = cs.cells[grid_id(i, j2, cs.width)];
        if (xa.empty() || xb.empty()) {
          pc.ok = false;
          pc.reason = "empty cell";
        } else {
          auto v = is_superregular(g, xa, xb, cs.eps, cs.delta, mode, ++s);
          if (!v.ok) {
            pc.ok = false;
            pc.reason = v.reason + (v.low_vertex >= 0 ? " at vertex " + std::to_string(v.low_vertex) : "");
          }
        }
        if (!pc.ok) rep.c3 = false;
        rep.pairs.push_back(pc);
      }
  return rep;
}

bool is_valid_move(const DenseGraph& g, int v, Cell target, const std::vector<std::vector<int>>& y, int r,
                   double delta, double eps, int m) {
  YIndex idx(g.n(), y, r, delta, eps, m);
  return idx.valid(g, v, grid_id(target.i, target.j, 2 * r));
}

std::vector<std::vector<int>> replay_ledger(const std::vector<std::vector<int>>& initial, const MoveLedger& ledger,
                                           int width) {
  auto cells = initial;
  for (auto& c : cells) std::sort(c.begin(), c.end());
  for (const auto& mv : ledger.moves)
    move_vertex(cells, mv.v, grid_id(mv.from.i, mv.from.j, width), grid_id(mv.to.i, mv.to.j, width));
  return cells;
}

WithinBlockResult balance_within_blocks(const DenseGraph& g, const std::vector<std::vector<int>>& y, int l, int r,
                                        double delta, double eps, int m) {
  const int w = 2 * r;
  if (static_cast<int>(y.size()) != l * w)
    fail(Status::invalid_input, "balance_within_blocks", "invalid-parameters", "need l x 2r cells");
  YIndex idx(g.n(), y, r, delta, eps, m);
  WithinBlockResult res;
  res.u = y;
  for (auto& c : res.u) std::sort(c.begin(), c.end());
  for (int i = 0; i < l; ++i) {
    auto size = [&](int j) { return static_cast<int>(res.u[i * w + j].size()); };
    int amax = 0, bmin = size(r);
    for (int j = 0; j < r; ++j) amax = std::max(amax, size(j)), bmin = std::min(bmin, size(r + j));
    int s1 = 0, s2 = 0;
    for (int j = 0; j < r; ++j) s1 += amax - size(j), s2 += size(r + j) - bmin;
    const int S = std::max(s1, s2);
    res.s_per_block.push_back(S);
    for (int s = 0; s < S; ++s) {
      int tm = 0, tp = r;
      for (int j = 1; j < r; ++j) {
        if (size(j) < size(tm)) tm = j;
        if (size(r + j) > size(tp)) tp = r + j;
      }
      const auto& src = res.u[i * w + tp];
      if (src.empty()) break;
      int x = src.front();
      for (int v : src)
        if (idx.valid(g, v, i * w + tm)) {
          x = v;
          break;
        }
      res.ledger.moves.push_back({x, {i + 1, tp + 1}, {i + 1, tm + 1}, -1});
      move_vertex(res.u, x, i * w + tp, i * w + tm);
    }
  }
  res.u1 = res.u2 = res.u3 = true;
  for (int i = 0; i < l; ++i) {
    for (int side = 0; side < 2; ++side) {
      int lo = 1 << 30, hi = 0;
      for (int j = side * r; j < side * r + r; ++j) {
        int sz = static_cast<int>(res.u[i * w + j].size());
        lo = std::min(lo, sz);
        hi = std::max(hi, sz);
      }
      if (hi - lo > 1) res.u1 = false;
    }
    Bits upper(g.n());
    for (int j = r; j < w; ++j) upper |= Bits::of(g.n(), y[i * w + j]);
    for (int j = 0; j < w; ++j) {
      const auto& uc = res.u[i * w + j];
      if (sym_diff(uc, y[i * w + j]) > r * eps * m + 1e-9) res.u2 = false;
      Bits ys = Bits::of(g.n(), y[i * w + j]);
      for (int v : uc) {
        if (j >= r && !ys.test(v)) res.u3 = false;
        if (j < r && !ys.test(v) && !upper.test(v)) res.u3 = false;
      }
    }
  }
  return res;
}

ReallocateResult reallocate_by_chains(const DenseGraph& g, const std::vector<std::vector<int>>& y,
                                      const std::vector<std::vector<int>>& u, const std::vector<int>& targets,
                                      int l, int r, int xi_n, double delta, double eps, int m,
                                      bool strict) {
  const char* stage = "reallocate_by_chains";
  std::vector<std::string> recorded;
  auto hypothesis = [&](const char* code, const std::string& what) {
    if (strict) fail(Status::invalid_input, stage, code, what);
    recorded.push_back(what);
  };
  const int w = 2 * r, cells = l * w;
  if (static_cast<int>(u.size()) != cells || static_cast<int>(targets.size()) != cells ||
      static_cast<int>(y.size()) != cells)
    fail(Status::invalid_input, stage, "invalid-parameters", "need l x 2r cells");
  long long su = 0, st = 0, surplus = 0;
  for (int c = 0; c < cells; ++c) {
    su += static_cast<long long>(u[c].size());
    st += targets[c];
    const int dev = static_cast<int>(u[c].size()) - targets[c];
    if (dev > 0) surplus += dev;
    if (std::abs(dev) > xi_n)
      hypothesis("targets-out-of-range", "| |U| - n' | <= xi n fails at cell " + cell_name(cell_at(c, w)));
  }
  if (su != st) fail(Status::invalid_input, stage, "targets-sum", "sum n' must equal sum |U|");
  long long K = 2LL * r * l * xi_n;
  if (K > eps * m / 2 + 1e-9)
    hypothesis("xi-too-large",
               "K = 2 r l xi n = " + std::to_string(K) + " > eps m / 2 = " + std::to_string(eps * m / 2));
  if (!strict) K = std::max(K, surplus);

  YIndex idx(g.n(), y, r, delta, eps, m);
  ReallocateResult res;
  res.violations = std::move(recorded);
  res.w = u;
  for (auto& c : res.w) std::sort(c.begin(), c.end());
  auto mover = [&](int from, int to) {
    for (int v : res.w[from])
      if (idx.valid(g, v, to)) return v;
    return -1;
  };
  // Transitions guaranteed by the goodvx claim: opposite side in the same block, or
  // either side in the next block (cyclically).
  auto transitions = [&](int c) {
    const int i = c / w, j = c % w, nxt = (i + 1) % l;
    std::vector<int> out;
    const int lo = j < r ? r : 0;
    for (int t = lo; t < lo + r; ++t) out.push_back(i * w + t);
    out.push_back(nxt * w + j);
    for (int t = lo; t < lo + r; ++t) out.push_back(nxt * w + t);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    out.erase(std::remove(out.begin(), out.end(), c), out.end());
    return out;
  };
  auto bfs = [&](int from, int to, bool need_mover) {
    std::vector<int> prev(cells, -2);
    std::deque<int> q{from};
    prev[from] = -1;
    while (!q.empty()) {
      int c = q.front();
      q.pop_front();
      if (c == to) break;
      for (int d : transitions(c)) {
        if (prev[d] != -2) continue;
        if (need_mover && mover(c, d) < 0) continue;
        prev[d] = c;
        q.push_back(d);
      }
    }
    std::vector<int> chain;
    if (prev[to] == -2) return chain;
    for (int c = to; c != -1; c = prev[c]) chain.push_back(c);
    std::reverse(chain.begin(), chain.end());
    return chain;
  };

  while (true) {
    int plus = -1, minus = -1, pv = 0, mv = 0;
    for (int c = 0; c < cells; ++c) {
      int d = static_cast<int>(res.w[c].size()) - targets[c];
      if (d > pv) pv = d, plus = c;
      if (-d > mv) mv = -d, minus = c;
    }
    if (plus < 0 && minus < 0) break;
    if (plus < 0 || minus < 0) fail(Status::invalid_input, stage, "targets-sum", "unbalanced deficits");
    if (++res.iterations > K)
      fail(Status::budget_exhausted, stage, "budget-exceeded", "more than K = " + std::to_string(K) + " iterations");
    auto chain = bfs(plus, minus, true);
    if (chain.empty()) {
      auto claimed = bfs(plus, minus, false);
      std::string where = "no chain";
      for (size_t s = 0; s + 1 < claimed.size(); ++s)
        if (mover(claimed[s], claimed[s + 1]) < 0) {
          where = "chain position " + std::to_string(s + 1) + ": " + cell_name(cell_at(claimed[s], w)) + " -> " +
                  cell_name(cell_at(claimed[s + 1], w));
          break;
        }
      fail(Status::hypothesis_violation, stage, "no-valid-mover",
           where + "; superregularity too weak for a valid move");
    }
    std::vector<int> xs;
    for (size_t s = 0; s + 1 < chain.size(); ++s) xs.push_back(mover(chain[s], chain[s + 1]));
    const int ci = static_cast<int>(res.ledger.chains.size());
    std::vector<Cell> trace;
    for (int c : chain) trace.push_back(cell_at(c, w));
    res.ledger.chains.push_back(trace);
    for (size_t s = 0; s < xs.size(); ++s) {
      res.ledger.moves.push_back({xs[s], cell_at(chain[s], w), cell_at(chain[s + 1], w), ci});
      move_vertex(res.w, xs[s], chain[s], chain[s + 1]);
    }
  }
  res.w1 = res.w2 = res.w3 = true;
  for (int c = 0; c < cells; ++c) {
    if (static_cast<int>(res.w[c].size()) != targets[c]) res.w1 = false;
    int sd = sym_diff(res.w[c], u[c]);
    res.max_sym_diff = std::max(res.max_sym_diff, sd);
    if (sd > eps * m + 1e-9) res.w2 = false;
    for (int v : res.w[c])
      if (!idx.valid(g, v, c)) res.w3 = false;
  }
  return res;
}

LemmaGResult lemma_g(const DenseGraph& g, const CycleStructure& cs, const std::vector<int>& tau,
                     const std::vector<int>* targets, const LemmaGOptions& opt) {
  const char* stage = "lemma_g";
  const int n = g.n(), l = cs.l, w = cs.width, r = w / 2, cells = l * w;
  if (w < 2 || w % 2 || static_cast<int>(cs.cells.size()) != cells)
    fail(Status::invalid_input, stage, "invalid-parameters", "structure must live on [l]x[2r]");
  if (!cs.v0.empty()) fail(Status::invalid_input, stage, "not-spanning", "cycle structure must be spanning");
  const int m = static_cast<int>(cs.cells[0].size());
  for (int c = 0; c < cells; ++c)
    if (static_cast<int>(cs.cells[c].size()) != m)
      fail(Status::invalid_input, stage, "unequal-cells", "|V_{i,j}| = m fails at " + cell_name(cell_at(c, w)));
  if (static_cast<int>(tau.size()) != cells) fail(Status::invalid_input, stage, "invalid-parameters", "tau needs 2l x r entries");
  for (int c = 0; c < cells; ++c)
    if (tau[c] < 0 || tau[c] > cs.eps * m + 1e-9)
      fail(Status::invalid_input, stage, "tau-out-of-range",
           "0 <= tau <= eps m fails at " + cell_name(cell_at(c, r)));
  const double eps = cs.eps, delta = cs.delta;

  auto phi_id = [&](int c) {
    Cell ab = phi_bijection(cell_at(c, w), r, l);
    return grid_id(ab.i, ab.j, r);
  };
  auto phi_inv_id = [&](int c) {
    Cell ij = phi_inverse(cell_at(c, r), r, l);
    return grid_id(ij.i, ij.j, w);
  };

  LemmaGResult res;
  res.a_sets.resize(cells);
  res.y_sets.resize(cells);
  for (int c = 0; c < cells; ++c) {
    auto v = cs.cells[c];
    std::sort(v.begin(), v.end());
    const int t = tau[phi_id(c)];
    res.a_sets[c].assign(v.begin(), v.begin() + t);
    res.y_sets[c].assign(v.begin() + t, v.end());
  }
  res.phase1 = balance_within_blocks(g, res.y_sets, l, r, delta, eps, m);
  if (!(res.phase1.u1 && res.phase1.u2 && res.phase1.u3))
    fail(Status::hypothesis_violation, stage, "postcondition", "U1-U3 recount failed");
  res.m_ab.assign(cells, 0);
  for (int c = 0; c < cells; ++c) res.m_ab[phi_id(c)] = static_cast<int>(res.phase1.u[c].size());

  long long total = 0;
  res.l1 = true;
  for (int c = 0; c < cells; ++c) {
    total += res.m_ab[c] + tau[c];
    if (res.m_ab[c] < (1 - std::sqrt(eps)) * m - 1e-9) res.l1 = false;
  }
  for (int a = 0; a < 2 * l; ++a) {
    auto [lo, hi] = std::minmax_element(res.m_ab.begin() + a * r, res.m_ab.begin() + (a + 1) * r);
    if (*hi - *lo > 1) res.l1 = false;
  }
  if (total != n) res.l1 = false;
  res.audit.push_back(std::string("L1: ") + (res.l1 ? "pass" : "fail"));

  std::vector<std::vector<int>> wsets = res.phase1.u;
  if (targets) {
    if (static_cast<int>(targets->size()) != cells)
      fail(Status::invalid_input, stage, "invalid-parameters", "targets need 2l x r entries");
    long long tt = 0;
    for (int c = 0; c < cells; ++c) {
      tt += (*targets)[c] + tau[c];
      if (std::abs(res.m_ab[c] - (*targets)[c]) > opt.xi_n) {
        std::string what = "|m_{a,b} - n_{a,b}| <= xi n fails at " + cell_name(cell_at(c, r));
        if (opt.strict) fail(Status::invalid_input, stage, "targets-out-of-range", what);
        res.audit.push_back("recorded: " + what);
      }
    }
    if (tt != n) fail(Status::invalid_input, stage, "targets-sum", "sum (n_{a,b} + tau_{a,b}) must equal n");
    std::vector<int> nprime(cells);
    for (int c = 0; c < cells; ++c) nprime[c] = (*targets)[phi_id(c)];
    res.has_phase2 = true;
    res.phase2 = reallocate_by_chains(g, res.y_sets, res.phase1.u, nprime, l, r, opt.xi_n, delta, eps, m, opt.strict);
    const bool w2 = res.phase2.w2 || !opt.strict;
    if (!(res.phase2.w1 && w2 && res.phase2.w3))
      fail(Status::hypothesis_violation, stage, "postcondition",
           std::string("W") + (!res.phase2.w1 ? "1" : !w2 ? "2" : "3") + " recount failed");
    if (!res.phase2.w2) res.audit.push_back("recorded: W2 |W sym-diff U| <= eps m fails");
    for (const auto& v : res.phase2.violations) res.audit.push_back("recorded: " + v);
    wsets = res.phase2.w;
  }

  res.x.l = 2 * l;
  res.x.width = r;
  res.x.eps = std::cbrt(eps);
  res.x.delta = delta / 2;
  res.x.cells.assign(cells, {});
  for (int ab = 0; ab < cells; ++ab) {
    int ij = phi_inv_id(ab);
    auto& x = res.x.cells[ab];
    x = wsets[ij];
    x.insert(x.end(), res.a_sets[ij].begin(), res.a_sets[ij].end());
    std::sort(x.begin(), x.end());
    res.max_sym_diff = std::max(res.max_sym_diff, sym_diff(x, cs.cells[ij]));
  }
  {
    GraphBuilder rb(cells);
    for (auto [a, b] : cs.reduced.edges()) rb.add_edge(phi_id(a), phi_id(b));
    res.x.reduced = rb.build();
  }
  const double alpha = 3 * r * eps;
  res.audit.push_back("sym-diff: max " + std::to_string(res.max_sym_diff) + " vs sqrt(eps) m = " +
                      std::to_string(std::sqrt(eps) * m) +
                      (res.max_sym_diff <= std::sqrt(eps) * m + 1e-9 ? " pass" : " fail"));
  res.audit.push_back(std::string("slicing: eps^{1/3} >= eps + 6 sqrt(3 r eps) ") +
                      (res.x.eps >= eps + 6 * std::sqrt(alpha) ? "pass" : "fail (desk scale)"));
  if (targets)
    for (int c = 0; c < cells; ++c)
      if (static_cast<int>(res.x.cells[c].size()) != (*targets)[c] + tau[c])
        fail(Status::hypothesis_violation, stage, "postcondition", "|X_{a,b}| = n_{a,b} + tau_{a,b} fails");
  if (opt.check_output) {
    res.x_report = check_cycle_structure(g, res.x, opt.mode, opt.seed);
    res.audit.push_back(std::string("output cycle structure at (eps^{1/3}, delta/2): ") +
                        (res.x_report.ok() ? "pass" : "fail"));
  }
  return res;
}

}  // namespace ldbw
