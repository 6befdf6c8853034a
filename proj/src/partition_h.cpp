#include "ldbw/partition_h.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "ldbw/connect.hpp"
#include "ldbw/density.hpp"

namespace ldbw {

int beta_width(double beta, int n) {
  return std::max(1, static_cast<int>(std::floor(beta * n + 1e-9)));
}

std::string check_bandwidthed(const BandwidthedH& hb, int width) {
  const int n = hb.h.n();
  if (!hb.order.is_permutation_of(n)) return "order is not a permutation of V(H)";
  if (static_cast<int>(hb.chi.size()) != n) return "chi must colour every vertex";
  for (int x = 0; x < n; ++x)
    if (hb.chi[x] < 1 || hb.chi[x] > hb.r) return "chi(" + std::to_string(x) + ") outside [r]";
  for (auto [u, v] : hb.h.edges())
    if (hb.chi[u] == hb.chi[v]) return "chi not proper at edge (" + std::to_string(u) + "," + std::to_string(v) + ")";
  int bw = bandwidth_of(hb.h, hb.order);
  if (bw > width) return "bandwidth " + std::to_string(bw) + " > beta n = " + std::to_string(width);
  return {};
}

namespace {

void require_bandwidthed(const BandwidthedH& hb, int width, const char* stage) {
  auto why = check_bandwidthed(hb, width);
  if (!why.empty()) fail(Status::invalid_input, stage, "bad-h", why);
}

// Relabel colours so that one side's class sizes are sorted (descending or ascending),
// ties by colour index.
void sort_side(std::vector<int>& col, int lo_pos, int hi_pos, int r, bool descending) {
  std::vector<int> cnt(2 * r + 1, 0);
  for (int p = lo_pos; p < hi_pos; ++p) ++cnt[col[p]];
  std::vector<int> remap(2 * r + 1, 0);
  for (int side = 0; side < 2; ++side) {
    std::vector<int> cs(r);
    std::iota(cs.begin(), cs.end(), side * r + 1);
    std::stable_sort(cs.begin(), cs.end(), [&](int a, int b) {
      return descending ? cnt[a] > cnt[b] : cnt[a] < cnt[b];
    });
    for (int k = 0; k < r; ++k) remap[cs[k]] = side * r + k + 1;
  }
  for (int p = lo_pos; p < hi_pos; ++p) col[p] = remap[col[p]];
}

}  // namespace

Balanced2rColouring balanced_2r_colouring(const BandwidthedH& hb, double beta) {
  const int n = hb.h.n(), r = hb.r;
  Balanced2rColouring out;
  const int w = beta_width(beta, n);
  require_bandwidthed(hb, w, "balanced_2r_colouring");
  out.width = w;
  const int pieces = (n + w - 1) / w;
  const int N = std::max(1, (pieces + 1) / 2);
  out.intervals = 2 * N;
  auto chi_at = [&](int p) { return hb.chi[hb.order.order[p]]; };
  auto end_of = [&](int t) { return std::min(n, t * w); };  // A_t = [(t-1)w, tw)

  std::vector<int> col(n, 0);  // by position
  for (int p = end_of(1); p < end_of(2); ++p) col[p] = chi_at(p) + r;
  for (int i = 1; i < N; ++i) {
    sort_side(col, end_of(1), end_of(2 * i), r, true);
    for (int p = end_of(2 * i); p < end_of(2 * i + 1); ++p) col[p] = chi_at(p);
    for (int p = end_of(2 * i + 1); p < end_of(2 * i + 2); ++p) col[p] = chi_at(p) + r;
    sort_side(col, end_of(2 * i), end_of(2 * i + 2), r, false);
  }
  for (int p = 0; p < end_of(1); ++p) col[p] = chi_at(p);

  out.chi2.assign(n, 0);
  for (int p = 0; p < n; ++p) out.chi2[hb.order.order[p]] = col[p];

  out.proper = true;
  for (auto [u, v] : hb.h.edges())
    if (out.chi2[u] == out.chi2[v]) out.proper = false;
  out.parity_ok = true;
  for (int p = 0; p < n; ++p) {
    bool odd = (p / w) % 2 == 0;
    if (odd != (col[p] <= r)) out.parity_ok = false;
  }
  std::vector<int> d(2 * r + 1, 0);
  for (int s = 1; s <= 2 * N; ++s) {
    for (int p = end_of(s - 1); p < end_of(s); ++p) ++d[col[p]];
    for (int side = 0; side < 2; ++side) {
      auto lo = d.begin() + 1 + side * r;
      auto [mn, mx] = std::minmax_element(lo, lo + r);
      out.max_prefix_gap = std::max(out.max_prefix_gap, *mx - *mn);
    }
  }
  return out;
}

BasicResult basic_assignment(const BandwidthedH& hb, const std::vector<std::vector<int>>& targets,
                             double beta, bool strict) {
  const char* stage = "basic_assignment";
  const int n = hb.h.n(), r = hb.r;
  const int l = static_cast<int>(targets.size());
  if (l < 1) fail(Status::invalid_input, stage, "targets-shape", "need l >= 1 blocks");
  long long sum = 0;
  std::vector<std::string> small;
  for (int i = 0; i < l; ++i) {
    if (static_cast<int>(targets[i].size()) != 2 * r)
      fail(Status::invalid_input, stage, "targets-shape", "block " + std::to_string(i + 1) + " needs 2r entries");
    for (int j = 0; j < 2 * r; ++j) {
      sum += targets[i][j];
      if (targets[i][j] < 10 * beta * n - 1e-9) {
        std::string what = "m_{" + std::to_string(i + 1) + "," + std::to_string(j + 1) + "} = " +
                           std::to_string(targets[i][j]) + " violates m_{i,j} >= 10 beta n = " +
                           std::to_string(10 * beta * n);
        if (strict) fail(Status::invalid_input, stage, "targets-too-small", what);
        small.push_back(what);
      }
    }
    auto [mn, mx] = std::minmax_element(targets[i].begin(), targets[i].end());
    if (*mx - *mn > 1)
      fail(Status::invalid_input, stage, "targets-unbalanced",
           "|m_{i,j} - m_{i,j'}| <= 1 fails in block " + std::to_string(i + 1));
  }
  if (sum != n)
    fail(Status::invalid_input, stage, "targets-sum", "sum of m_{i,j} is " + std::to_string(sum) + ", n = " + std::to_string(n));

  BasicResult res;
  res.violations = std::move(small);
  res.colouring = balanced_2r_colouring(hb, beta);
  const int w = res.colouring.width;
  int acc = 0;
  for (int i = 0; i < l; ++i) {
    acc += std::accumulate(targets[i].begin(), targets[i].end(), 0);
    res.block_end.push_back(acc);
  }
  Assignment& a = res.a;
  a.f.assign(n, -1);
  a.exceptional.assign(n, -1);
  a.tallies.assign(l * 2 * r, 0);
  std::vector<char> in_b(n, 0);
  int start = 0;
  for (int i = 0; i < l; ++i) {
    const int end = res.block_end[i];
    for (int p = start; p < end; ++p) {
      int x = hb.order.order[p];
      a.f[x] = i * 2 * r + res.colouring.chi2[x] - 1;
      ++a.tallies[a.f[x]];
      bool head = i > 0 && p < start + w;
      bool tail = i + 1 < l && p >= end - w;
      if (head || tail) in_b[x] = 1;
    }
    start = end;
  }
  for (int x = 0; x < n; ++x)
    if (in_b[x]) a.special.push_back(x);
  res.report = check_basic_assignment(hb, targets, beta, a);
  if (!res.report.ok())
    fail(Status::hypothesis_violation, stage, "postcondition",
         res.report.failures.empty() ? "B1-B4" : res.report.failures.front());
  return res;
}

BasicReport check_basic_assignment(const BandwidthedH& hb, const std::vector<std::vector<int>>& targets,
                                   double beta, const Assignment& a) {
  BasicReport rep;
  const int n = hb.h.n(), r = hb.r, l = static_cast<int>(targets.size());
  const double bn = beta * n;
  const int w = beta_width(beta, n);
  auto block = [&](int x) { return a.f[x] / (2 * r); };
  auto colour = [&](int x) { return a.f[x] % (2 * r); };
  std::vector<char> in_b(n, 0);
  for (int x : a.special) in_b[x] = 1;
  for (int x = 0; x < n; ++x)
    if (a.f[x] < 0 || a.f[x] >= l * 2 * r) {
      rep.failures.push_back("f(" + std::to_string(x) + ") outside [l]x[2r]");
      return rep;
    }

  rep.b1 = static_cast<double>(a.special.size()) <= 2 * l * bn + 1e-9;
  for (int p = 0; p < std::min(w, n); ++p)
    if (in_b[hb.order.order[p]]) rep.b1 = false;
  if (!rep.b1) rep.failures.push_back("B1: B meets the first beta n vertices or |B| > 2 l beta n");

  std::vector<int> cnt(l * 2 * r, 0);
  for (int x = 0; x < n; ++x) ++cnt[a.f[x]];
  rep.b2 = true;
  for (int i = 0; i < l; ++i)
    for (int j = 0; j < 2 * r; ++j) {
      int dev = std::abs(cnt[i * 2 * r + j] - targets[i][j]);
      rep.max_deviation = std::max(rep.max_deviation, dev);
      if (dev > 10 * bn + 1e-9) rep.b2 = false;
    }
  if (!rep.b2) rep.failures.push_back("B2: | |f^-1(i,j)| - m_{i,j} | <= 10 beta n fails");

  rep.b3 = true;
  rep.homomorphism = true;
  DenseGraph z;
  if (l >= 3) z = make_named(NamedKind::zgraph, {2 * r, l});
  for (auto [u, v] : hb.h.edges()) {
    int i = block(u), i2 = block(v), j = colour(u), j2 = colour(v);
    bool ok = std::abs(i - i2) <= 1 && j != j2;
    if (ok && !in_b[u] && !in_b[v]) ok = i == i2;
    if (!ok && rep.b3) {
      rep.b3 = false;
      rep.failures.push_back("B3 fails at edge (" + std::to_string(u) + "," + std::to_string(v) + ")");
    }
    bool hom = l >= 3 ? z.adj(a.f[u], a.f[v]) : (j != j2);
    if (!hom && rep.homomorphism) {
      rep.homomorphism = false;
      rep.failures.push_back("edge (" + std::to_string(u) + "," + std::to_string(v) + ") not mapped to Z^{2r}_l");
    }
  }

  rep.b4 = true;
  for (int p = 0; p < std::min(w, n); ++p) {
    int x = hb.order.order[p];
    if (block(x) != 0 || colour(x) + 1 != hb.chi[x]) rep.b4 = false;
  }
  if (!rep.b4) rep.failures.push_back("B4: f(x_s) = (1, chi(x_s)) fails for some s <= beta n");
  return rep;
}

std::vector<int> find_2_independent(const DenseGraph& h, const VertexLabelling& order, int lo, int hi, int k,
                                    int shrink) {
  const char* stage = "find_2_independent";
  const int n = h.n();
  if (lo < 0 || hi > n || lo > hi || k < 0 || shrink < 0)
    fail(Status::invalid_input, stage, "bad-window", "need 0 <= lo <= hi <= n");
  std::vector<int> picked;
  if (k == 0) return picked;
  Bits excluded(n);
  for (int p = lo + shrink; p < hi - shrink && static_cast<int>(picked.size()) < k; ++p) {
    int y = order.order[p];
    if (excluded.test(y)) continue;
    picked.push_back(y);
    excluded.set(y);
    h.row(y).for_each([&](int z) {
      excluded.set(z);
      excluded |= h.row(z);
    });
  }
  if (static_cast<int>(picked.size()) < k)
    fail(Status::hypothesis_violation, stage, "infeasible",
         "only " + std::to_string(picked.size()) + " of " + std::to_string(k) +
             " pairwise distance-3 vertices fit in the shrunk window");
  for (size_t i = 0; i < picked.size(); ++i) {
    auto dist = bfs_distances(h, picked[i]);
    for (size_t j = i + 1; j < picked.size(); ++j)
      if (dist[picked[j]] >= 0 && dist[picked[j]] < 3)
        fail(Status::hypothesis_violation, stage, "postcondition", "picked vertices closer than 3");
  }
  return picked;
}

FrameworkTrail build_framework(const DenseGraph& rg, const std::vector<Bits>& n_v, const std::vector<int>& b,
                               const FrameworkParams& p) {
  const char* stage = "framework";
  const int L = rg.n(), r = p.r;
  if (r < 1 || static_cast<int>(b.size()) != r)
    fail(Status::invalid_input, stage, "invalid-parameters", "b must list r vertices");
  if (!rg.is_clique(b)) fail(Status::invalid_input, stage, "not-a-clique", "R[b] must be K_r");
  for (const auto& s : n_v)
    if (s.size() != L) fail(Status::invalid_input, stage, "invalid-parameters", "N_v must be subsets of V(R)");

  FrameworkTrail out;
  out.b = b;
  auto note = [&](const std::string& what) {
    if (p.strict) fail(Status::hypothesis_violation, stage, "hypothesis", what);
    out.violations.push_back(what);
  };
  for (size_t v = 0; v < n_v.size(); ++v)
    if (n_v[v].count() < p.eta * L - 1e-9) note("|N_v| >= eta L fails for v=" + std::to_string(v));
  if (rg.min_degree() < (0.5 + p.eta) * L - 1e-9) note("delta(R) >= (1/2+eta)L");
  {
    int want = static_cast<int>(std::ceil(18.0 * r / (p.eta * p.eta) - 1e-9));
    Bits room = rg.common_neighbourhood(b);
    int got = r + static_cast<int>(max_clique_upto(rg, room, std::min(want - r, L), p.clique_budget).size());
    if (got < want) note("b lies in K_{18r/eta^2} fails (largest found " + std::to_string(got) + ")");
  }

  const double lpow = std::pow(static_cast<double>(L), 2 * r - 1);
  out.block_cap = p.block_cap > 0 ? p.block_cap
                                  : std::max(1, static_cast<int>(std::floor(std::sqrt(p.eps) * p.m / lpow)));
  if (std::sqrt(p.eps) * p.m / lpow < 1) note("|V0^k| <= sqrt(eps) m / L^{2r-1} < 1; cap floored at " + std::to_string(out.block_cap));
  const int s_ext = static_cast<int>(std::ceil(std::pow(p.d / 2, 2 * r) * p.eta * L - 1e-9));

  Bits bset = Bits::of(L, b), used(L);
  out.block_of.assign(n_v.size(), -1);
  for (size_t v = 0; v < n_v.size(); ++v) {
    for (int k = 0; k < out.K; ++k) {
      if (static_cast<int>(out.v0_parts[k].size()) >= out.block_cap) continue;
      if (Bits::of(L, out.cliques[k]).subset_of(n_v[v])) {
        out.v0_parts[k].push_back(static_cast<int>(v));
        out.block_of[v] = k;
        break;
      }
    }
    if (out.block_of[v] >= 0) continue;
    std::optional<std::vector<int>> pick;
    for (const Bits& room : {n_v[v] - used - bset, n_v[v] - bset, n_v[v]}) {
      CliqueQuery q;
      q.r = 2 * r;
      q.s = s_ext;
      q.within = room;
      q.cap = out.K + 1;
      for (auto& c : enumerate_extendable_cliques(rg, q))
        if (std::find(out.cliques.begin(), out.cliques.end(), c.vertices) == out.cliques.end()) {
          pick = c.vertices;
          break;
        }
      if (pick) break;
    }
    if (!pick)
      fail(Status::hypothesis_violation, stage, "no-covering-clique",
           "no " + std::to_string(s_ext) + "-extendable K_" + std::to_string(2 * r) + " inside N_v for v=" +
               std::to_string(v));
    out.cliques.push_back(*pick);
    out.v0_parts.push_back({static_cast<int>(v)});
    out.block_of[v] = out.K++;
    for (int a : *pick) used.set(a);
  }

  // Connectors need consecutive cliques disjoint, and the last one disjoint from b.
  if (out.K > 1) {
    std::vector<int> order, rest(out.K);
    std::iota(rest.begin(), rest.end(), 0);
    auto disjoint = [&](int i, int j) { return !Bits::of(L, out.cliques[i]).intersects(Bits::of(L, out.cliques[j])); };
    auto last_ok = std::find_if(rest.rbegin(), rest.rend(),
                                [&](int k) { return !Bits::of(L, out.cliques[k]).intersects(bset); });
    int last = last_ok != rest.rend() ? *last_ok : rest.back();
    rest.erase(std::find(rest.begin(), rest.end(), last));
    std::vector<int> rev{last};
    while (!rest.empty()) {
      auto it = std::find_if(rest.begin(), rest.end(), [&](int k) { return disjoint(k, rev.back()); });
      if (it == rest.end()) it = rest.begin();
      rev.push_back(*it);
      rest.erase(it);
    }
    order.assign(rev.rbegin(), rev.rend());
    std::vector<std::vector<int>> c2, p2;
    for (int k : order) {
      c2.push_back(out.cliques[k]);
      p2.push_back(out.v0_parts[k]);
    }
    out.cliques = c2;
    out.v0_parts = p2;
    for (int k = 0; k < out.K; ++k)
      for (int v : out.v0_parts[k]) out.block_of[v] = k;
  }

  out.multiplicity.assign(L, 0);
  if (out.K == 0) {
    out.seq = b;
  } else {
    ConnectParams cp;
    cp.r = 2 * r;
    cp.eta = p.eta * p.eta;
    cp.strict = p.strict;
    cp.clique_budget = p.clique_budget;
    const double bad_at = std::pow(p.eps, -1.0 / 12) * lpow / 3;
    std::vector<int> in_paths(L, 0);
    for (int k = 0; k < out.K; ++k) {
      std::vector<int> x = out.cliques[k], y;
      Bits w(L);
      if (k + 1 < out.K) {
        y = out.cliques[k + 1];
        for (int a = 0; a < L; ++a)
          if (in_paths[a] >= bad_at) w.set(a);
        w -= Bits::of(L, x);
        w -= Bits::of(L, y);
      } else {
        Bits room = rg.common_neighbourhood(b) - Bits::of(L, x);
        auto extra = find_clique(rg, room, r, p.clique_budget);
        if (!extra)
          fail(Status::hypothesis_violation, stage, "b-clique-too-small",
               "no r vertices extend b to K_2r away from the last clique");
        y = b;
        y.insert(y.end(), extra->begin(), extra->end());
      }
      ConnectResult c;
      try {
        c = connect_cliques(rg, x, y, w, cp);
      } catch (const Error& e) {
        throw Error(e.status(), stage, e.code(), "connector " + std::to_string(k + 1) + ": " + e.what());
      }
      for (auto& v : c.violations) out.violations.push_back("connector " + std::to_string(k + 1) + ": " + v);
      out.seq.insert(out.seq.end(), x.begin(), x.end());
      out.seq.insert(out.seq.end(), c.path.vertices.begin(), c.path.vertices.end());
      for (int a : c.path.vertices) ++in_paths[a];
    }
    out.seq.insert(out.seq.end(), b.begin(), b.end());
  }
  for (int a : out.seq) ++out.multiplicity[a];
  const double f4 = lpow / std::pow(p.eps, 1.0 / 12);
  if (*std::max_element(out.multiplicity.begin(), out.multiplicity.end()) > f4)
    note("F4: some a appears more than L^{2r-1}/eps^{1/12} times");
  auto why = check_framework(rg, n_v, out, r);
  if (!why.empty()) fail(Status::hypothesis_violation, stage, "postcondition", why);
  return out;
}

std::string check_framework(const DenseGraph& rg, const std::vector<Bits>& n_v, const FrameworkTrail& f, int r) {
  const int t = static_cast<int>(f.seq.size());
  if (t != (8 * f.K + 1) * r) return "F1: t != (8K+1)r";
  auto chk = validate_witness(rg, {WitnessKind::trail, 2 * r, f.seq});
  if (!chk.ok) return "F1: not a 2r-trail: " + chk.violation;
  for (size_t v = 0; v < n_v.size(); ++v) {
    int k = f.block_of[v];
    if (k < 0 || k >= f.K) return "F2: V0 vertex " + std::to_string(v) + " has no block";
    for (int q = 8 * k * r; q < 8 * k * r + 2 * r; ++q)
      if (!n_v[v].test(f.seq[q])) return "F2: block " + std::to_string(k + 1) + " leaves N_v for v=" + std::to_string(v);
  }
  for (int k = 0; k < f.K; ++k)
    if (static_cast<int>(f.v0_parts[k].size()) > f.block_cap) return "F2: |V0^k| above cap";
  for (int j = 0; j < r; ++j)
    if (f.seq[t - r + j] != f.b[j]) return "F3: trail does not end in b";
  return {};
}

SpecialResult special_assignment(const BandwidthedH& hb, const DenseGraph& rg, const FrameworkTrail& f,
                                 const std::vector<Bits>& n_v, const SpecialParams& p) {
  const char* stage = "special_assignment";
  const int n = hb.h.n(), r = hb.r, w = p.width, bsz = p.b, K = f.K;
  SpecialResult res;
  res.s = 8 * K * bsz;
  if (K > 0 && bsz < 1) fail(Status::invalid_input, stage, "invalid-parameters", "interval width b >= 1");
  if (n != res.s + w)
    fail(Status::invalid_input, stage, "prefix-size",
         "H has " + std::to_string(n) + " vertices, expected s + beta n = " + std::to_string(res.s + w));
  require_bandwidthed(hb, w, stage);
  if (f.seq.size() != static_cast<size_t>((8 * K + 1) * r))
    fail(Status::invalid_input, stage, "framework-shape", "framework built for a different r");
  if (bsz <= 99 * w && K > 0)
    res.violations.push_back("b > 99 beta n fails (b=" + std::to_string(bsz) + ", beta n=" + std::to_string(w) + ")");

  const int delta = p.max_degree > 0 ? p.max_degree : hb.h.max_degree();
  const int per = std::max(2 * delta * delta, 1 + delta + delta * delta);
  res.w_sets.assign(n_v.size(), {});
  std::vector<int> g_of(n, -1);
  for (int i = 0; i < K; ++i) {
    const int u = static_cast<int>(f.v0_parts[i].size());
    if (u == 0) continue;
    if (static_cast<long long>(per) * u >= bsz - 4 * w)
      fail(Status::hypothesis_violation, stage, "interval-too-small",
           "2 Delta^2 |V0^" + std::to_string(i + 1) + "| = " + std::to_string(per * u) + " >= b - 4 beta n = " +
               std::to_string(bsz - 4 * w));
    auto ii = find_2_independent(hb.h, hb.order, i * 8 * bsz, i * 8 * bsz + bsz, u, 2 * w);
    for (int k = 0; k < u; ++k) {
      g_of[ii[k]] = f.v0_parts[i][k];
      res.independent.push_back(ii[k]);
    }
  }
  std::sort(res.independent.begin(), res.independent.end());

  res.phi.assign(n, -1);
  Assignment& a = res.a;
  a.f.assign(n, -1);
  a.exceptional.assign(n, -1);
  a.tallies.assign(rg.n(), 0);
  for (int pos = 0; pos < n; ++pos) {
    int x = hb.order.order[pos];
    int block = pos < res.s ? pos / bsz : 8 * K;  // 8(i-1) + (j-1)
    res.phi[x] = f.seq[block * r + hb.chi[x] - 1];
    if (g_of[x] >= 0) {
      a.exceptional[x] = g_of[x];
      res.w_sets[g_of[x]] = hb.h.row(x).items();
    } else {
      a.f[x] = res.phi[x];
      ++a.tallies[a.f[x]];
    }
  }
  std::vector<int> load(rg.n(), 0);
  for (int x = 0; x < n; ++x) ++load[res.phi[x]];
  res.max_load = *std::max_element(load.begin(), load.end());
  res.load_bound = std::pow(p.eps, 0.25) * p.m;
  if (res.max_load > res.load_bound)
    res.violations.push_back("D3: max |phi^-1(a)| = " + std::to_string(res.max_load) + " > eps^{1/4} m");
  auto why = check_special_assignment(hb, rg, f, n_v, w, res);
  if (!why.empty()) fail(Status::hypothesis_violation, stage, "postcondition", why);
  return res;
}

std::string check_special_assignment(const BandwidthedH& hb, const DenseGraph& rg, const FrameworkTrail& f,
                                     const std::vector<Bits>& n_v, int width, const SpecialResult& res) {
  const int n = hb.h.n();
  const auto& a = res.a;
  auto pos = hb.order.positions();
  const int s = n - width;
  std::vector<int> hit(n_v.size(), 0);
  std::vector<int> inv(n_v.size(), -1);
  for (int x = 0; x < n; ++x) {
    if (a.exceptional[x] < 0) continue;
    if (pos[x] >= s) return "D1: I meets Y";
    int v = a.exceptional[x];
    if (v >= static_cast<int>(n_v.size()) || hit[v]++) return "D1: g is not injective onto V0";
    inv[v] = x;
  }
  for (size_t v = 0; v < n_v.size(); ++v)
    if (!hit[v]) return "D1: V0 vertex " + std::to_string(v) + " has no preimage";
  for (size_t i = 0; i < n_v.size(); ++i)
    for (size_t j = i + 1; j < n_v.size(); ++j) {
      int x = inv[i], y = inv[j];
      if (hb.h.adj(x, y) || hb.h.row(x).intersects(hb.h.row(y))) return "D1: I is not 2-independent";
    }
  for (size_t v = 0; v < n_v.size(); ++v)
    for (int y : hb.h.row(inv[v]).items()) {
      if (pos[y] >= s) return "D2: W_v leaves X";
      if (a.f[y] < 0 || !n_v[v].test(a.f[y])) return "D2: f(W_v) not inside N_v";
    }
  for (auto [u, v] : hb.h.edges()) {
    if (a.f[u] < 0 || a.f[v] < 0) continue;
    if (!rg.adj(a.f[u], a.f[v]))
      return "D4: edge (" + std::to_string(u) + "," + std::to_string(v) + ") not mapped to an edge of R";
  }
  for (int x = 0; x < n; ++x)
    if (pos[x] >= s && a.f[x] != f.b[hb.chi[x] - 1]) return "D5: Y vertex not pinned to b_chi";
  return {};
}

}  // namespace ldbw
