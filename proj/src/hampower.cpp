#include "ldbw/hampower.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <functional>

#include "ldbw/connect.hpp"
#include "ldbw/density.hpp"

namespace ldbw {

namespace {

double measured_eta(const DenseGraph& g, const HamOptions& opt) {
  if (opt.eta > 0) return opt.eta;
  if (g.n() == 0) return 0.05;
  return std::max(0.05, static_cast<double>(g.min_degree()) / g.n() - 0.5);
}

void note(bool strict, const std::string& stage, const std::string& inequality,
          std::vector<std::string>& out) {
  if (strict) fail(Status::hypothesis_violation, stage, "hypothesis", inequality);
  out.push_back(stage + ": " + inequality);
}

[[noreturn]] void relabel(const Error& e, const std::string& stage, const std::string& context) {
  throw Error(e.status(), stage, e.code(), context + ": " + e.what());
}

// Kuhn's augmenting paths; match[z] = block index or -1.
std::vector<int> match_to_blocks(const DenseGraph& g, const std::vector<int>& z,
                                 const std::vector<std::vector<int>>& blocks, int first, int last) {
  const int nz = static_cast<int>(z.size());
  std::vector<std::vector<int>> opts(nz);
  for (int i = 0; i < nz; ++i)
    for (int j = first; j <= last; ++j) {
      bool ok = true;
      for (int y : blocks[j])
        if (!g.adj(z[i], y)) {
          ok = false;
          break;
        }
      if (ok) opts[i].push_back(j);
    }
  std::vector<int> owner(blocks.size(), -1), match(nz, -1);
  for (int i = 0; i < nz; ++i) {
    std::vector<char> seen(blocks.size(), 0);
    std::function<bool(int)> aug = [&](int a) {
      for (int j : opts[a]) {
        if (seen[j]) continue;
        seen[j] = 1;
        if (owner[j] < 0 || aug(owner[j])) {
          owner[j] = a;
          match[a] = j;
          return true;
        }
      }
      return false;
    };
    aug(i);
  }
  return match;
}

std::vector<int> insert_into_blocks(const AbsorbingPath& pabs, int r,
                                    const std::vector<std::pair<int, int>>& z_block) {
  std::vector<int> at_slot(pabs.blocks.size(), -1);
  for (auto [z, j] : z_block) at_slot[j] = z;
  std::vector<int> out;
  const auto& p = pabs.path.vertices;
  size_t next_block = 0;
  for (size_t pos = 0; pos < p.size(); ++pos) {
    out.push_back(p[pos]);
    while (next_block < pabs.slot.size() && pabs.slot[next_block] + r - 1 < static_cast<int>(pos)) ++next_block;
    if (next_block < pabs.slot.size() && static_cast<int>(pos) == pabs.slot[next_block] + r - 1 &&
        at_slot[next_block] >= 0)
      out.push_back(at_slot[next_block]);
  }
  return out;
}

// Position i such that z sees the r vertices before and the r vertices after the gap.
int window_slot(const DenseGraph& g, const std::vector<int>& cyc, int z, int r) {
  const int k = static_cast<int>(cyc.size());
  if (k < 2 * r) return -1;
  for (int i = 0; i < k; ++i) {
    bool ok = true;
    for (int j = 1; j <= r && ok; ++j)
      ok = g.adj(z, cyc[(i - j + k) % k]) && g.adj(z, cyc[(i + j - 1) % k]);
    if (ok) return i;
  }
  return -1;
}

}  // namespace

AbsorberSystem build_absorber(const DenseGraph& g, int r, const HamOptions& opt) {
  return [&] {
    const int n = g.n();
    AbsorberSystem a;
    const int target = opt.coverage_target > 0 ? opt.coverage_target : 2 * r + 2;
    a.budget = std::max(1, static_cast<int>(std::floor(opt.eta0 * n / (8.0 * r))));
    std::vector<int> cov(n, 0);
    Bits used(n);
    const int s = static_cast<int>(std::ceil(opt.d1 * n - 1e-9));
    while (static_cast<int>(a.blocks.size()) < a.budget) {
      int v = 0;
      for (int x = 1; x < n; ++x)
        if (cov[x] < cov[v]) v = x;
      if (n == 0 || cov[v] >= target) {
        a.target_reached = true;
        break;
      }
      CliqueQuery q;
      q.r = 2 * r;
      q.s = s;
      q.within = g.row(v) - used;
      auto k = first_extendable_clique(g, q);
      if (!k)
        fail(Status::hypothesis_violation, "absorber", "coverage-unreachable",
             "vertex " + std::to_string(v) + " (coverage " + std::to_string(cov[v]) +
                 ") has no unused d1 n-extendable K_" + std::to_string(2 * r) + " in its neighbourhood");
      a.blocks.push_back(k->vertices);
      for (int x : k->vertices) used.set(x);
      g.common_neighbourhood(k->vertices).for_each([&](int x) { ++cov[x]; });
    }
    if (!a.target_reached) {
      int lo = n ? *std::min_element(cov.begin(), cov.end()) : 0;
      a.target_reached = lo >= target;
    }
    a.coverage.assign(n, {});
    for (size_t j = 0; j < a.blocks.size(); ++j)
      g.common_neighbourhood(a.blocks[j]).for_each([&](int x) { a.coverage[x].push_back(static_cast<int>(j)); });
    return a;
  }();
}

AbsorbingPath build_absorbing_path(const DenseGraph& g, const AbsorberSystem& abs, int r,
                                   const HamOptions& opt, const Bits& avoid) {
  const int n = g.n();
  AbsorbingPath p;
  p.blocks = abs.blocks;
  const int t = static_cast<int>(abs.blocks.size());
  if (t == 0) fail(Status::invalid_input, "absorbing-path", "no-blocks", "absorber is empty");
  Bits w = avoid;
  for (const auto& b : abs.blocks)
    for (int v : b) w.set(v);
  p.path.kind = WitnessKind::path;
  p.path.r = 2 * r;
  ConnectParams cp;
  cp.r = 2 * r;
  cp.eta = opt.d1;
  cp.strict = opt.strict;
  cp.clique_budget = opt.clique_budget;
  for (int i = 0; i < t; ++i) {
    p.slot.push_back(static_cast<int>(p.path.vertices.size()));
    for (int v : abs.blocks[i]) p.path.vertices.push_back(v);
    if (i + 1 == t) break;
    Bits wi = w - Bits::of(n, abs.blocks[i]) - Bits::of(n, abs.blocks[i + 1]);
    ConnectResult c;
    try {
      c = connect_cliques(g, abs.blocks[i], abs.blocks[i + 1], wi, cp);
    } catch (const Error& e) {
      relabel(e, "connector", "absorbing path block " + std::to_string(i) + "->" + std::to_string(i + 1));
    }
    for (auto& v : c.violations) p.violations.push_back("connector " + std::to_string(i) + ": " + v);
    for (int v : c.path.vertices) {
      p.path.vertices.push_back(v);
      w.set(v);
    }
  }
  p.S = abs.blocks.front();
  p.E_end = abs.blocks.back();
  auto chk = validate_witness(g, p.path);
  if (!chk.ok) fail(Status::hypothesis_violation, "connector", "absorbing-path-invalid", chk.violation);
  return p;
}

WitnessSequence absorb(const DenseGraph& g, const AbsorbingPath& pabs, const std::vector<int>& z, int r) {
  Bits on = Bits::of(g.n(), pabs.path.vertices);
  for (int v : z)
    if (on.test(v)) fail(Status::invalid_input, "absorb", "not-disjoint", "z=" + std::to_string(v) + " lies on P_abs");
  const int t = static_cast<int>(pabs.blocks.size());
  WitnessSequence out{WitnessKind::path, r, pabs.path.vertices};
  if (z.empty()) return out;
  auto match = match_to_blocks(g, z, pabs.blocks, 1, t - 2);
  std::vector<std::pair<int, int>> zb;
  for (size_t i = 0; i < z.size(); ++i) {
    if (match[i] < 0)
      fail(Status::hypothesis_violation, "matching-infeasible", "matching-infeasible",
           "no free middle block inside N(z) for z=" + std::to_string(z[i]));
    zb.emplace_back(z[i], match[i]);
  }
  out.vertices = insert_into_blocks(pabs, r, zb);
  auto chk = validate_witness(g, out);
  if (!chk.ok) fail(Status::hypothesis_violation, "matching-infeasible", "absorbed-path-invalid", chk.violation);
  return out;
}

ReservoirResult select_reservoir(const DenseGraph& g, double eta3, double eta, uint64_t seed,
                                 const Bits& candidates, int retries) {
  const int n = g.n();
  const int k = std::max(1, static_cast<int>(std::lround(eta3 * n)));
  std::vector<int> pool = candidates.items();
  if (static_cast<int>(pool.size()) < k)
    fail(Status::hypothesis_violation, "reservoir", "too-few-candidates",
         std::to_string(pool.size()) + " candidates for a reservoir of " + std::to_string(k));
  const double need = (0.5 + eta / 2) * k;
  Rng rng(seed, hash_tag("reservoir"));
  ReservoirResult res;
  for (int attempt = 1; attempt <= retries; ++attempt) {
    res.attempts = attempt;
    std::vector<int> pick = rng.sample(static_cast<int>(pool.size()), k);
    Bits v(n);
    for (int i : pick) v.set(pool[i]);
    // Swap repair: drop the member seen by fewest failing vertices, add the outsider seen by most.
    for (int step = 0; step <= 4 * k; ++step) {
      Bits failing(n);
      long long deficit = 0;
      for (int x = 0; x < n; ++x) {
        int dx = g.degree_into(x, v);
        if (dx < need - 1e-9) {
          failing.set(x);
          deficit += static_cast<long long>(std::ceil(need - dx - 1e-9));
        }
      }
      if (failing.none()) {
        res.reservoir = v;
        res.min_relative_degree = 1.0;
        for (int x = 0; x < n; ++x)
          res.min_relative_degree = std::min(res.min_relative_degree, static_cast<double>(g.degree_into(x, v)) / k);
        return res;
      }
      int out_v = -1, in_v = -1, out_s = n + 1, in_s = -1;
      v.for_each([&](int u) {
        int s = g.degree_into(u, failing);
        if (s < out_s) out_s = s, out_v = u;
      });
      (candidates - v).for_each([&](int u) {
        int s = g.degree_into(u, failing);
        if (s > in_s) in_s = s, in_v = u;
      });
      if (in_v < 0 || in_s <= out_s) break;
      Bits trial = v;
      trial.reset(out_v);
      trial.set(in_v);
      long long d2 = 0;
      for (int x = 0; x < n; ++x) {
        int dx = g.degree_into(x, trial);
        if (dx < need - 1e-9) d2 += static_cast<long long>(std::ceil(need - dx - 1e-9));
      }
      if (d2 >= deficit) break;
      v = trial;
    }
  }
  fail(Status::hypothesis_violation, "reservoir", "retries-exhausted",
       "no set V' of size " + std::to_string(k) + " with d_G(x,V') >= (1/2+eta/2)|V'| for all x after " +
           std::to_string(retries) + " draws");
}

CoverResult cover_with_paths(const DenseGraph& g, const Bits& allowed, int r_cover, int min_path,
                             uint64_t seed, int restarts) {
  CoverResult best;
  best.leftover = allowed.items();
  const int n = g.n();
  for (int a = 0; a < std::max(1, restarts); ++a) {
    Rng rng(seed, hash_tag("cover") + a);
    Bits remaining = allowed, dead(n);
    std::vector<WitnessSequence> paths;
    while (remaining.count() >= std::max(1, min_path)) {
      std::vector<int> starts = (remaining - dead).items();
      if (starts.empty()) break;
      int s = starts[rng.uniform_int(0, static_cast<int>(starts.size()) - 1)];
      std::deque<int> path{s};
      Bits rem = remaining;
      rem.reset(s);
      // Fewest onward options first, random among ties.
      auto choose = [&](const Bits& cand) {
        int pick = -1, score = n + 1, ties = 0;
        cand.for_each([&](int v) {
          int sc = g.degree_into(v, rem);
          if (sc < score) {
            score = sc;
            pick = v;
            ties = 1;
          } else if (sc == score && rng.uniform_int(0, ties++) == 0) {
            pick = v;
          }
        });
        return pick;
      };
      while (true) {
        const int w = std::min<int>(r_cover, static_cast<int>(path.size()));
        Bits back = rem, front = rem;
        for (int j = 0; j < w; ++j) {
          back &= g.row(path[path.size() - 1 - j]);
          front &= g.row(path[j]);
        }
        if (back.any()) {
          int v = choose(back);
          path.push_back(v);
          rem.reset(v);
        } else if (front.any()) {
          int v = choose(front);
          path.push_front(v);
          rem.reset(v);
        } else {
          break;
        }
      }
      if (static_cast<int>(path.size()) >= min_path) {
        paths.push_back({WitnessKind::path, r_cover, std::vector<int>(path.begin(), path.end())});
        remaining = rem;
      } else {
        dead.set(s);
      }
    }
    std::vector<int> left = remaining.items();
    if (a == 0 || left.size() < best.leftover.size()) {
      best.paths = std::move(paths);
      best.leftover = std::move(left);
    }
    best.attempts = a + 1;
    if (best.leftover.empty()) break;
  }
  return best;
}

std::optional<WitnessSequence> exact_power_cycle(const DenseGraph& g, int r, long long budget,
                                                 bool* exhausted) {
  const int n = g.n();
  if (exhausted) *exhausted = false;
  if (n == 0) return std::nullopt;
  std::vector<int> seq(n, -1);
  std::vector<char> used(n, 0);
  long long nodes = 0;
  bool out_of_budget = false;

  // Can u still sit at some position q > p given the vertices placed so far?
  auto placeable = [&](int u, int p) {
    for (int q = p + 1; q < n; ++q) {
      bool ok = true;
      for (int j = 1; j <= r && ok; ++j) {
        int b = q - j;
        if (b >= 0 && b <= p && seq[b] != u) ok = g.adj(u, seq[b]);
        int f = q + j - n;
        if (ok && f >= 0 && f <= p && f < q) ok = g.adj(u, seq[f]);
      }
      if (ok) return true;
    }
    return false;
  };
  auto fits = [&](int u, int p) {
    for (int j = 1; j <= r; ++j) {
      int b = p - j;
      if (b >= 0 && !g.adj(u, seq[b])) return false;
      int f = p + j - n;
      if (f >= 0 && f < p && !g.adj(u, seq[f])) return false;
    }
    return true;
  };
  std::function<bool(int)> dfs = [&](int p) {
    if (p == n) return true;
    if (++nodes > budget) {
      out_of_budget = true;
      return false;
    }
    std::vector<std::pair<int, int>> cand;
    for (int u = 0; u < n; ++u)
      if (!used[u] && fits(u, p)) {
        int onward = 0;
        for (int v = 0; v < n; ++v)
          if (!used[v] && v != u && g.adj(u, v)) ++onward;
        cand.emplace_back(onward, u);
      }
    std::sort(cand.begin(), cand.end());
    for (auto [score, u] : cand) {
      seq[p] = u;
      used[u] = 1;
      bool ok = true;
      for (int v = 0; v < n && ok; ++v)
        if (!used[v]) ok = placeable(v, p);
      if (ok && dfs(p + 1)) return true;
      used[u] = 0;
      seq[p] = -1;
      if (out_of_budget) return false;
    }
    return false;
  };
  int start = 0;
  for (int v = 1; v < n; ++v)
    if (g.degree(v) < g.degree(start)) start = v;
  seq[0] = start;
  used[start] = 1;
  bool found = dfs(1);
  if (!found) {
    if (exhausted) *exhausted = !out_of_budget;
    return std::nullopt;
  }
  WitnessSequence w{WitnessKind::cycle, r, seq};
  if (!validate_witness(g, w).ok) return std::nullopt;
  return w;
}

namespace {

HamResult absorbing_route(const DenseGraph& g, int r, const HamOptions& opt, uint64_t seed,
                          double eta, HamReport rep) {
  const int n = g.n();
  Rng rng(seed, hash_tag("hampower"));
  HamOptions o = opt;

  AbsorberSystem abs = build_absorber(g, r, o);
  rep.blocks = static_cast<int>(abs.blocks.size());
  if (!abs.target_reached)
    rep.violations.push_back("absorber: coverage target not reached within budget " + std::to_string(abs.budget));
  AbsorbingPath pabs = build_absorbing_path(g, abs, r, o, Bits(n));
  for (auto& v : pabs.violations) rep.violations.push_back(v);
  Bits on_pabs = Bits::of(n, pabs.path.vertices);

  // Flanking cliques; C shrinks with them when the full K_{2C+1} is out of reach.
  const int min_path = o.min_path > 0 ? o.min_path : 2 * r + 1;
  int C = std::clamp(static_cast<int>(std::ceil(4.0 * r / o.eta3 - 1e-9)), r, std::max(r, min_path / 2));
  auto flank = [&](const std::vector<int>& ends, const Bits& avoid, const char* which) {
    Bits room = g.common_neighbourhood(ends) - avoid;
    std::vector<int> k = max_clique_upto(g, room, 2 * C + 1, o.clique_budget);
    if (static_cast<int>(k.size()) < 2 * r + 1)
      fail(Status::hypothesis_violation, "flank-clique", "flank-too-small",
           std::string("largest clique in N(") + which + ") \\ V(P_abs) has " + std::to_string(k.size()) +
               " < 2r+1 vertices");
    return k;
  };
  std::vector<int> ks = flank(pabs.S, on_pabs, "S");
  std::vector<int> ke = flank(pabs.E_end, on_pabs | Bits::of(n, ks), "E");
  int C2 = std::min<int>({C, (static_cast<int>(ks.size()) - 1) / 2, (static_cast<int>(ke.size()) - 1) / 2});
  if (C2 < C) rep.violations.push_back("flank-clique: C shrunk from " + std::to_string(C) + " to " + std::to_string(C2));
  C = C2;
  ks.resize(2 * C + 1);
  ke.resize(2 * C + 1);
  rep.C = C;
  rep.flank_size = 2 * C + 1;

  Bits g0 = Bits::full(n) - on_pabs - Bits::of(n, ks) - Bits::of(n, ke);
  for (int x = 0; x < n; ++x)
    if (g.degree_into(x, g0) < (0.5 + 3 * eta / 4) * n - 1e-9) {
      note(o.strict, "reservoir", "d_G(x,V(G_0)) >= (1/2+3eta/4)n fails at x=" + std::to_string(x), rep.violations);
      break;
    }
  ReservoirResult rs = select_reservoir(g, o.eta3, eta, rng.split(1).next_u64(), g0, o.reservoir_retries);
  Bits vres = rs.reservoir;
  rep.reservoir = vres.count();
  Bits g2 = g0 - vres;

  CoverResult cover = cover_with_paths(g, g2, 2 * C, 2 * C + 1, rng.split(2).next_u64(), o.cover_restarts);
  rep.cover_paths = static_cast<int>(cover.paths.size());
  const int connections = rep.cover_paths + 1;
  const int projected = static_cast<int>(cover.leftover.size()) + rep.reservoir - r * connections;
  if (projected > o.eta2 * n + 1e-9)
    fail(Status::hypothesis_violation, "cover-too-lossy", "leftover",
         "leftover " + std::to_string(projected) + " > eta2 n = " + std::to_string(o.eta2 * n));

  std::vector<std::vector<int>> paths;
  paths.push_back(ke);
  for (auto& p : cover.paths) paths.push_back(p.vertices);
  paths.push_back(ks);
  const int t = static_cast<int>(paths.size());

  auto first_c = [&](const std::vector<int>& p) { return std::vector<int>(p.begin(), p.begin() + C); };
  auto last_c = [&](const std::vector<int>& p) { return std::vector<int>(p.end() - C, p.end()); };
  auto middle = [&](const std::vector<int>& p) { return std::vector<int>(p.begin() + C, p.end() - C); };

  std::vector<int> star = first_c(paths[0]);
  for (int v : middle(paths[0])) star.push_back(v);
  Bits used(n);
  for (int i = 0; i + 1 < t; ++i) {
    std::vector<int> ei = last_c(paths[i]), si = first_c(paths[i + 1]);
    BridgeResult br;
    try {
      br = find_bridging_clique(g, vres, ei, si, used, r, o.eta3, false);
    } catch (const Error& e) {
      relabel(e, "connector", "reservoir connection " + std::to_string(i) + "->" + std::to_string(i + 1));
    }
    if (i == 0)
      for (auto& v : br.violations) rep.violations.push_back("connector (reservoir): " + v);
    Bits ex = Bits::of(n, br.x_sub), sy = Bits::of(n, br.y_sub);
    for (int v : ei)
      if (!ex.test(v)) star.push_back(v);
    for (int v : br.x_sub) star.push_back(v);
    for (int v : br.z) {
      star.push_back(v);
      used.set(v);
    }
    for (int v : br.y_sub) star.push_back(v);
    for (int v : si)
      if (!sy.test(v)) star.push_back(v);
    for (int v : middle(paths[i + 1])) star.push_back(v);
  }
  for (int v : last_c(paths[t - 1])) star.push_back(v);
  rep.reservoir_used = used.count();
  {
    auto chk = validate_witness(g, {WitnessKind::path, r, star});
    if (!chk.ok) fail(Status::hypothesis_violation, "connector", "concatenation-invalid", chk.violation);
  }

  std::vector<int> z = cover.leftover;
  for (int v : (vres - used).items()) z.push_back(v);
  std::sort(z.begin(), z.end());
  rep.leftover = static_cast<int>(z.size());
  if (rep.leftover > o.eta2 * n + 1e-9)
    fail(Status::hypothesis_violation, "cover-too-lossy", "leftover",
         "leftover " + std::to_string(rep.leftover) + " > eta2 n");

  // Distinct middle blocks first, as in the absorbing claim.
  const int tb = static_cast<int>(pabs.blocks.size());
  auto match = match_to_blocks(g, z, pabs.blocks, 1, tb - 2);
  std::vector<std::pair<int, int>> zb;
  std::vector<int> rest;
  for (size_t i = 0; i < z.size(); ++i) {
    if (match[i] >= 0) zb.emplace_back(z[i], match[i]);
    else rest.push_back(z[i]);
  }
  rep.matched_insertions = static_cast<int>(zb.size());
  std::vector<int> cyc = star;
  for (int v : insert_into_blocks(pabs, r, zb)) cyc.push_back(v);
  {
    auto chk = validate_witness(g, {WitnessKind::cycle, r, cyc});
    if (!chk.ok) fail(Status::hypothesis_violation, "connector", "closure-invalid", chk.violation);
  }
  // Remaining leftovers go into any window of the closed cycle they fully see.
  while (!rest.empty()) {
    bool progress = false;
    for (size_t i = 0; i < rest.size();) {
      int pos = window_slot(g, cyc, rest[i], r);
      if (pos < 0) {
        ++i;
        continue;
      }
      cyc.insert(cyc.begin() + pos, rest[i]);
      rest.erase(rest.begin() + i);
      ++rep.window_insertions;
      progress = true;
    }
    if (!progress)
      fail(Status::hypothesis_violation, "matching-infeasible", "matching-infeasible",
           "vertex " + std::to_string(rest.front()) + " fits no free middle block and no window of the cycle");
  }
  HamResult res;
  res.cycle = {WitnessKind::cycle, r, cyc};
  res.report = rep;
  return res;
}

}  // namespace

HamResult find_hamilton_power(const DenseGraph& g, int r, int n_target, const HamOptions& opt,
                              uint64_t seed) {
  const int n = g.n();
  if (r < 1) fail(Status::invalid_input, "find_hamilton_power", "invalid-parameters", "r >= 1");
  if (n_target < 1 || n_target > n)
    fail(Status::invalid_input, "find_hamilton_power", "invalid-parameters", "1 <= n_target <= n");
  if (n_target < n) {
    std::vector<int> order(n);
    for (int v = 0; v < n; ++v) order[v] = v;
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return g.degree(a) < g.degree(b); });
    std::vector<int> drop(order.begin(), order.begin() + (n - n_target));
    Bits dropped = Bits::of(n, drop);
    std::vector<int> keep = (Bits::full(n) - dropped).items();
    HamResult sub = find_hamilton_power(g.induced(keep), r, n_target, opt, seed);
    for (int& v : sub.cycle.vertices) v = keep[v];
    std::sort(drop.begin(), drop.end());
    sub.report.deleted = drop;
    auto chk = validate_witness(g, sub.cycle);
    if (!chk.ok) fail(Status::hypothesis_violation, "find_hamilton_power", "postcondition", chk.violation);
    return sub;
  }
  HamReport rep;
  const double eta = measured_eta(g, opt);
  if (g.min_degree() < (0.5 + eta) * n - 1e-9)
    note(opt.strict, "precheck", "delta(G) >= (1/2+eta)n with eta=" + std::to_string(eta), rep.violations);

  HamResult res;
  if (n <= opt.small_host_factor * r) {
    rep.route = "exact";
    bool exhausted = false;
    auto w = exact_power_cycle(g, r, opt.exact_budget, &exhausted);
    if (!w) {
      if (exhausted)
        fail(Status::verified_negative, "exact-search", "no-power-cycle",
             "exhaustive search found no C^" + std::to_string(r) + "_" + std::to_string(n));
      fail(Status::budget_exhausted, "exact-search", "budget-exhausted", "node budget spent");
    }
    res.cycle = *w;
    res.report = rep;
  } else {
    rep.route = "absorbing";
    std::optional<Error> last;
    bool done = false;
    for (int a = 0; a < std::max(1, opt.restarts) && !done; ++a) {
      ++rep.attempts;
      try {
        res = absorbing_route(g, r, opt, splitmix64(seed + a), eta, rep);
        done = true;
      } catch (const Error& e) {
        rep.failures.push_back(e.what());
        last = e;
        // Deterministic stages fail identically on every restart.
        if (e.stage() == "absorber" || e.stage() == "flank-clique") break;
        if (e.stage() == "connector" && std::string(e.what()).find("absorbing path") != std::string::npos) break;
      }
    }
    if (!done) throw *last;
    res.report.attempts = rep.attempts;
    res.report.failures = rep.failures;
  }
  auto chk = validate_witness(g, res.cycle);
  if (!chk.ok || static_cast<int>(res.cycle.vertices.size()) != n_target)
    fail(Status::hypothesis_violation, "find_hamilton_power", "postcondition",
         chk.ok ? "wrong cycle length" : chk.violation);
  return res;
}

}  // namespace ldbw
