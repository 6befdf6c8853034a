#include "ldbw/embed.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>

namespace ldbw {

std::string check_embedding(const DenseGraph& h, const DenseGraph& g, const std::vector<int>& map) {
  if (static_cast<int>(map.size()) != h.n()) return "map size " + std::to_string(map.size()) + " != |H|";
  std::vector<int> owner(g.n(), -1);
  for (int x = 0; x < h.n(); ++x) {
    int v = map[x];
    if (v < 0 || v >= g.n()) return "vertex " + std::to_string(x) + " unmapped or out of range";
    if (owner[v] >= 0) return "vertices " + std::to_string(owner[v]) + " and " + std::to_string(x) + " share image " + std::to_string(v);
    owner[v] = x;
  }
  for (int x = 0; x < h.n(); ++x)
    for (int y = x + 1; y < h.n(); ++y)
      if (h.adj(x, y) && !g.adj(map[x], map[y]))
        return "edge (" + std::to_string(x) + "," + std::to_string(y) + ") maps to non-edge (" +
               std::to_string(map[x]) + "," + std::to_string(map[y]) + ")";
  return {};
}

// ---- Embedding with target sets -------------------------------------------------------

TargetEmbedResult embed_with_targets(const TargetEmbedInput& in) {
  const char* stage = "embed_with_targets";
  if (!in.g || !in.h || !in.r) fail(Status::invalid_input, stage, "invalid-parameters", "host, H and R are required");
  const DenseGraph& g = *in.g;
  const DenseGraph& h = *in.h;
  const int parts = static_cast<int>(in.parts.size());
  if (in.r->n() != parts) fail(Status::invalid_input, stage, "invalid-parameters", "R order != #parts");
  if (static_cast<int>(in.phi.size()) != h.n()) fail(Status::invalid_input, stage, "invalid-parameters", "phi needs one entry per H vertex");
  int m = 0;
  for (const auto& p : in.parts) m = std::max(m, static_cast<int>(p.size()));

  TargetEmbedResult res;
  res.threshold = static_cast<int>(std::ceil(in.c * m - 1e-9));
  auto record = [&](const char* code, const std::string& what) {
    if (in.strict) fail(Status::hypothesis_violation, stage, code, what);
    res.violations.push_back(what);
  };

  std::vector<char> in_x(h.n(), 0), in_y(h.n(), 0);
  for (int x : in.x) in_x[x] = 1;
  for (int y : in.y) {
    if (in_x[y]) fail(Status::invalid_input, stage, "invalid-parameters", "X and Y must be disjoint");
    in_y[y] = 1;
  }
  std::vector<int> load(parts, 0);
  for (int x = 0; x < h.n(); ++x) {
    if (!in_x[x] && !in_y[x]) continue;
    if (in.phi[x] < 0 || in.phi[x] >= parts)
      fail(Status::invalid_input, stage, "invalid-parameters", "phi undefined on vertex " + std::to_string(x));
    if (in_x[x]) ++load[in.phi[x]];
  }
  for (auto [u, v] : h.edges())
    if ((in_x[u] || in_y[u]) && (in_x[v] || in_y[v]) && !in.r->adj(in.phi[u], in.phi[v]))
      fail(Status::invalid_input, stage, "not-a-homomorphism",
           "phi(" + std::to_string(u) + ")phi(" + std::to_string(v) + ") is not an edge of R");
  for (int a = 0; a < parts; ++a)
    if (load[a] > 2 * in.eps * m + 1e-9)
      record("load", "|phi^-1(" + std::to_string(a) + ")| = " + std::to_string(load[a]) + " > 2 eps m");

  std::vector<int> fixed = in.fixed;
  fixed.resize(h.n(), -1);
  Bits used(g.n());
  for (int x = 0; x < h.n(); ++x)
    if (fixed[x] >= 0) used.set(fixed[x]);

  std::vector<Bits> base(h.n());
  for (int x = 0; x < h.n(); ++x) {
    if (!in_x[x] && !in_y[x]) continue;
    base[x] = Bits::of(g.n(), in.parts[in.phi[x]]);
  }
  for (const auto& [w, s] : in.s) {
    if (w < 0 || w >= h.n() || !in_x[w]) fail(Status::invalid_input, stage, "invalid-parameters", "S_w given for w outside X");
    Bits sb = Bits::of(g.n(), s) & base[w];
    if (sb.none())
      fail(Status::invalid_input, stage, "empty-target-set", "S_w nonempty fails for w = " + std::to_string(w));
    if (sb.count() < res.threshold)
      record("target-set-small", "|S_" + std::to_string(w) + "| = " + std::to_string(sb.count()) + " < c m");
    base[w] = sb;
  }

  std::vector<int> f(h.n(), -1);
  for (int x = 0; x < h.n(); ++x)
    if (fixed[x] >= 0) f[x] = fixed[x];
  auto domain = [&](int z) {
    Bits d = base[z] - used;
    h.row(z).for_each([&](int u) {
      if (f[u] >= 0) d &= g.row(f[u]);
    });
    return d;
  };
  auto need = [&](int z) { return in_y[z] ? res.threshold : 1; };

  // Vertices whose domain changes when x is placed: unplaced neighbours, and unplaced
  // vertices sharing x's part (they lose the image).
  std::vector<std::vector<int>> watch(h.n());
  for (int x : in.x) {
    std::set<int> w;
    h.row(x).for_each([&](int z) {
      if ((in_x[z] || in_y[z]) && fixed[z] < 0) w.insert(z);
    });
    for (int z = 0; z < h.n(); ++z)
      if (z != x && (in_x[z] || in_y[z]) && fixed[z] < 0 && in.phi[z] == in.phi[x]) w.insert(z);
    watch[x].assign(w.begin(), w.end());
  }

  const int nx = static_cast<int>(in.x.size());
  std::vector<std::vector<int>> cands(nx);
  std::vector<size_t> idx(nx, 0);
  std::vector<int> fails_at(nx, 0);
  int deepest = 0;

  auto generate = [&](int k) {
    const int x = in.x[k];
    std::vector<std::pair<double, int>> scored;
    domain(x).for_each([&](int v) {
      if (++res.nodes > in.budget) return;
      f[x] = v;
      used.set(v);
      double score = 1e18;
      for (int z : watch[x]) {
        if (f[z] >= 0) continue;
        int sz = domain(z).count();
        if (sz < need(z)) {
          score = -1;
          break;
        }
        score = std::min(score, static_cast<double>(sz) / need(z));
      }
      used.reset(v);
      f[x] = -1;
      if (score >= 0) scored.emplace_back(score, v);
    });
    std::stable_sort(scored.begin(), scored.end(), [](auto& a, auto& b) { return a.first > b.first; });
    cands[k].clear();
    for (auto& [s, v] : scored) cands[k].push_back(v);
    idx[k] = 0;
  };

  if (nx > 0) {
    for (int y : in.y)
      if (fixed[y] < 0 && domain(y).count() < res.threshold)
        fail(Status::hypothesis_violation, stage, "candidate-set-small",
             "|C_y| >= c m fails before embedding for y = " + std::to_string(y));
    generate(0);
  }
  int k = 0;
  while (k < nx) {
    if (res.nodes > in.budget) {
      int starving = in.x[std::max_element(fails_at.begin(), fails_at.end()) - fails_at.begin()];
      std::string trace;
      for (int t = 0; t <= std::min(deepest, nx - 1) && t < 12; ++t)
        trace += (t ? "," : "") + std::to_string(cands[t].size());
      fail(Status::budget_exhausted, stage, "backtrack-budget-exhausted",
           "starving vertex " + std::to_string(starving) + ", candidate counts along the order [" + trace + "]");
    }
    if (idx[k] < cands[k].size()) {
      int v = cands[k][idx[k]++];
      f[in.x[k]] = v;
      used.set(v);
      ++k;
      deepest = std::max(deepest, k);
      if (k < nx) generate(k);
    } else {
      ++fails_at[k];
      if (k == 0)
        fail(Status::hypothesis_violation, stage, "no-embedding",
             "search exhausted: no placement of X meets (i)-(iii), first vertex " + std::to_string(in.x[0]));
      --k;
      used.reset(f[in.x[k]]);
      f[in.x[k]] = -1;
      ++res.backtracks;
    }
  }

  res.f.assign(h.n(), -1);
  for (int x : in.x) res.f[x] = f[x];
  res.min_candidates = in.y.empty() ? 0 : g.n();
  for (int y : in.y) {
    if (fixed[y] >= 0) continue;
    auto c = domain(y).items();
    res.min_candidates = std::min(res.min_candidates, static_cast<int>(c.size()));
    res.c_y[y] = std::move(c);
  }
  std::string why = check_target_embedding(in, res);
  if (!why.empty()) fail(Status::hypothesis_violation, stage, "postcondition", why);
  return res;
}

std::string check_target_embedding(const TargetEmbedInput& in, const TargetEmbedResult& res) {
  const DenseGraph& g = *in.g;
  const DenseGraph& h = *in.h;
  if (static_cast<int>(res.f.size()) != h.n()) return "f has wrong size";
  auto image = [&](int x) {
    if (res.f[x] >= 0) return res.f[x];
    return x < static_cast<int>(in.fixed.size()) ? in.fixed[x] : -1;
  };
  std::set<int> seen;
  for (int x : in.x) {
    int v = res.f[x];
    const auto& part = in.parts[in.phi[x]];
    if (!std::binary_search(part.begin(), part.end(), v) && std::find(part.begin(), part.end(), v) == part.end())
      return "(i) f(" + std::to_string(x) + ") outside V_phi(x)";
    if (!seen.insert(v).second) return "f not injective at " + std::to_string(x);
    auto s = in.s.find(x);
    if (s != in.s.end() && std::find(s->second.begin(), s->second.end(), v) == s->second.end())
      return "(ii) f(" + std::to_string(x) + ") outside S_w";
    for (int u = 0; u < h.n(); ++u)
      if (h.adj(x, u) && image(u) >= 0 && !g.adj(v, image(u)))
        return "edge (" + std::to_string(x) + "," + std::to_string(u) + ") not preserved";
  }
  for (int x = 0; x < static_cast<int>(in.fixed.size()); ++x)
    if (in.fixed[x] >= 0 && seen.count(in.fixed[x])) return "f reuses a fixed image";
  for (int y : in.y) {
    auto it = res.c_y.find(y);
    if (it == res.c_y.end()) continue;
    const auto& c = it->second;
    if (static_cast<int>(c.size()) < res.threshold) return "(iii) |C_" + std::to_string(y) + "| < c m";
    const auto& part = in.parts[in.phi[y]];
    for (int v : c) {
      if (std::find(part.begin(), part.end(), v) == part.end()) return "(iii) C_y leaves V_phi(y)";
      if (seen.count(v)) return "(iii) C_y meets f(X)";
      for (int u = 0; u < h.n(); ++u)
        if (h.adj(y, u) && image(u) >= 0 && !g.adj(v, image(u)))
          return "(iii) C_" + std::to_string(y) + " not inside N(f(" + std::to_string(u) + "))";
    }
  }
  return {};
}

// ---- Spanning embedding into one block ------------------------------------------------

BlowupResult blowup_embed(const BlowupInput& in) {
  const char* stage = "blowup_embed";
  if (!in.g || !in.h) fail(Status::invalid_input, stage, "invalid-parameters", "host and H are required");
  const DenseGraph& g = *in.g;
  const DenseGraph& h = *in.h;
  const int k = static_cast<int>(in.parts.size());
  if (static_cast<int>(in.phi.size()) != h.n()) fail(Status::invalid_input, stage, "invalid-parameters", "phi needs one entry per H vertex");
  std::vector<int> demand(k, 0), specials(k, 0);
  std::vector<char> inv(h.n(), 0);
  for (int x : in.verts) {
    if (in.phi[x] < 0 || in.phi[x] >= k) fail(Status::invalid_input, stage, "invalid-parameters", "phi undefined on " + std::to_string(x));
    if (inv[x]) fail(Status::invalid_input, stage, "invalid-parameters", "duplicate vertex " + std::to_string(x));
    inv[x] = 1;
    ++demand[in.phi[x]];
    if (in.special.count(x)) ++specials[in.phi[x]];
  }
  for (int i = 0; i < k; ++i) {
    if (demand[i] > static_cast<int>(in.parts[i].size()))
      fail(Status::invalid_input, stage, "demand-exceeds-capacity",
           "|phi^-1(" + std::to_string(i) + ")| = " + std::to_string(demand[i]) + " > n_i = " + std::to_string(in.parts[i].size()));
    if (specials[i] > in.alpha * in.parts[i].size() + 1e-9)
      fail(Status::invalid_input, stage, "too-many-special", "special fraction <= alpha fails in part " + std::to_string(i));
  }
  std::vector<int> anchored = in.anchored;
  anchored.resize(h.n(), -1);

  std::vector<Bits> base(h.n());
  for (int x : in.verts) {
    base[x] = Bits::of(g.n(), in.parts[in.phi[x]]);
    auto s = in.special.find(x);
    if (s != in.special.end()) base[x] &= Bits::of(g.n(), s->second);
    h.row(x).for_each([&](int u) {
      if (!inv[u] && anchored[u] >= 0) base[x] &= g.row(anchored[u]);
    });
    if (base[x].none())
      fail(Status::hypothesis_violation, stage, "empty-candidate-set", "no admissible image for " + std::to_string(x));
  }

  const int nv = static_cast<int>(in.verts.size());
  std::vector<int> pos(h.n(), 0);
  for (int t = 0; t < nv; ++t) pos[in.verts[t]] = t;
  BlowupResult res;
  const int restarts = std::max(1, in.restarts);
  const long long per_attempt = std::max<long long>(1, in.budget / restarts);
  Rng rng(in.seed, hash_tag("blowup"));

  for (int attempt = 0; attempt < restarts; ++attempt) {
    res.attempts = attempt + 1;
    std::vector<int> f(h.n(), -1);
    Bits used(g.n());
    long long nodes = 0;
    // Ties broken by bandwidth position on the first attempt and by random keys later.
    std::vector<double> key(h.n(), 0);
    for (int x : in.verts) key[x] = attempt == 0 ? pos[x] : rng.uniform01();

    auto domain = [&](int z) {
      Bits d = base[z] - used;
      h.row(z).for_each([&](int u) {
        if (inv[u] && f[u] >= 0) d &= g.row(f[u]);
      });
      return d;
    };
    struct Frame {
      int x;
      std::vector<int> cands;
      size_t idx = 0;
    };
    std::vector<Frame> stack;
    auto choose = [&]() -> int {
      int best = -1, best_size = 0;
      for (int x : in.verts) {
        if (f[x] >= 0) continue;
        int sz = domain(x).count();
        if (best < 0 || sz < best_size || (sz == best_size && key[x] < key[best])) {
          best = x;
          best_size = sz;
        }
      }
      return best;
    };
    // Forward check after a tentative placement: all unplaced vertices keep a candidate, and
    // per part the union of candidate sets covers the remaining demand.
    auto consistent = [&](int x, int v) {
      f[x] = v;
      used.set(v);
      bool ok = true;
      std::vector<Bits> uni(k, Bits(g.n()));
      std::vector<int> left(k, 0);
      for (int z : in.verts) {
        if (f[z] >= 0) continue;
        Bits d = domain(z);
        if (d.none()) {
          ok = false;
          break;
        }
        uni[in.phi[z]] |= d;
        ++left[in.phi[z]];
      }
      for (int i = 0; ok && i < k; ++i)
        if (uni[i].count() < left[i]) ok = false;
      used.reset(v);
      f[x] = -1;
      return ok;
    };
    auto push = [&](int x) {
      Frame fr{x, {}, 0};
      std::vector<std::pair<int, int>> scored;
      domain(x).for_each([&](int v) {
        ++nodes;
        if (!consistent(x, v)) return;
        // Prefer images that leave the unplaced neighbours the most room.
        int room = 1 << 30;
        h.row(x).for_each([&](int z) {
          if (inv[z] && f[z] < 0) room = std::min(room, domain(z).and_count(g.row(v)));
        });
        scored.emplace_back(-room, v);
      });
      if (attempt > 0) rng.shuffle(scored);
      std::stable_sort(scored.begin(), scored.end(), [](auto& a, auto& b) { return a.first < b.first; });
      for (auto& [s, v] : scored) fr.cands.push_back(v);
      stack.push_back(std::move(fr));
    };

    int placed = 0;
    if (nv > 0) push(choose());
    bool exhausted = false;
    while (placed < nv) {
      if (nodes > per_attempt) break;
      Frame& fr = stack.back();
      if (fr.idx < fr.cands.size()) {
        int v = fr.cands[fr.idx++];
        f[fr.x] = v;
        used.set(v);
        ++placed;
        if (placed < nv) push(choose());
      } else {
        stack.pop_back();
        if (stack.empty()) {
          exhausted = true;
          break;
        }
        Frame& prev = stack.back();
        used.reset(f[prev.x]);
        f[prev.x] = -1;
        --placed;
      }
    }
    res.nodes += nodes;
    if (placed == nv) {
      res.f.assign(h.n(), -1);
      for (int x : in.verts) res.f[x] = f[x];
      // Revalidate edge by edge, including edges to anchored vertices.
      for (int x : in.verts) {
        const auto& part = in.parts[in.phi[x]];
        if (std::find(part.begin(), part.end(), res.f[x]) == part.end())
          fail(Status::hypothesis_violation, stage, "postcondition", "image outside its part");
        auto s = in.special.find(x);
        if (s != in.special.end() && std::find(s->second.begin(), s->second.end(), res.f[x]) == s->second.end())
          fail(Status::hypothesis_violation, stage, "postcondition", "special vertex outside S_y");
        for (int u = 0; u < h.n(); ++u) {
          if (!h.adj(x, u)) continue;
          int iu = inv[u] ? res.f[u] : anchored[u];
          if (iu >= 0 && !g.adj(res.f[x], iu))
            fail(Status::hypothesis_violation, stage, "postcondition", "edge not preserved");
        }
      }
      return res;
    }
    if (exhausted && attempt == 0)
      fail(Status::hypothesis_violation, stage, "no-embedding",
           "search exhausted: no spanning placement respects the parts and S_y");
  }
  fail(Status::budget_exhausted, stage, "backtrack-budget-exhausted",
       std::to_string(res.nodes) + " nodes over " + std::to_string(res.attempts) + " attempts");
}

// ---- Exact oracle ---------------------------------------------------------------------

const char* brute_outcome_name(BruteOutcome o) {
  switch (o) {
    case BruteOutcome::found: return "found";
    case BruteOutcome::exhausted_no_embedding: return "exhausted-no-embedding";
    case BruteOutcome::budget_exceeded: return "budget-exceeded";
  }
  return "?";
}

BruteResult brute_force_embed(const DenseGraph& h, const DenseGraph& g, long long budget) {
  BruteResult res;
  const int nh = h.n(), ng = g.n();
  if (nh > ng) {
    res.outcome = BruteOutcome::exhausted_no_embedding;
    return res;
  }
  if (nh == 0) {
    res.outcome = BruteOutcome::found;
    return res;
  }
  // Connectivity order: next is the vertex with most placed neighbours, then highest degree.
  std::vector<int> order;
  std::vector<char> taken(nh, 0);
  std::vector<int> placed_nb(nh, 0);
  for (int t = 0; t < nh; ++t) {
    int best = -1;
    for (int x = 0; x < nh; ++x) {
      if (taken[x]) continue;
      if (best < 0 || placed_nb[x] > placed_nb[best] ||
          (placed_nb[x] == placed_nb[best] && h.degree(x) > h.degree(best)))
        best = x;
    }
    taken[best] = 1;
    order.push_back(best);
    h.row(best).for_each([&](int z) { ++placed_nb[z]; });
  }
  std::vector<int> f(nh, -1);
  Bits used(ng);
  std::vector<std::vector<int>> cands(nh);
  std::vector<size_t> idx(nh, 0);
  auto generate = [&](int k) {
    const int x = order[k];
    Bits d = Bits::full(ng) - used;
    h.row(x).for_each([&](int u) {
      if (f[u] >= 0) d &= g.row(f[u]);
    });
    cands[k].clear();
    d.for_each([&](int v) {
      if (g.degree(v) >= h.degree(x)) cands[k].push_back(v);
    });
    idx[k] = 0;
  };
  generate(0);
  int k = 0;
  while (true) {
    if (res.nodes > budget) {
      res.outcome = BruteOutcome::budget_exceeded;
      return res;
    }
    if (idx[k] < cands[k].size()) {
      ++res.nodes;
      int v = cands[k][idx[k]++];
      f[order[k]] = v;
      used.set(v);
      if (k + 1 == nh) {
        res.outcome = BruteOutcome::found;
        res.map = f;
        return res;
      }
      generate(++k);
    } else {
      if (k == 0) {
        res.outcome = BruteOutcome::exhausted_no_embedding;
        return res;
      }
      --k;
      used.reset(f[order[k]]);
      f[order[k]] = -1;
    }
  }
}

}  // namespace ldbw
