#include "ldbw/regularity.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace ldbw {

namespace {

constexpr double kTol = 1e-12;

int min_side(double eps, int size) {
  int k = static_cast<int>(std::ceil(eps * size - 1e-9));
  return std::clamp(k, 1, size);
}

void require_pair(const DenseGraph& g, const std::vector<int>& a, const std::vector<int>& b,
                  const char* stage) {
  if (a.empty() || b.empty()) fail(Status::invalid_input, stage, "empty-side", "");
  Bits sa = Bits::of(g.n(), a);
  for (int v : b)
    if (sa.test(v)) fail(Status::invalid_input, stage, "sides-not-disjoint", std::to_string(v));
}

// For a fixed X, the extreme values of e(X,Y) over |Y| = k come from the k smallest or
// largest counts c_y = |N(y) ∩ X|, so every Y-size is decided exactly.
struct ExtremeScan {
  const std::vector<int>& b;
  double d, eps;
  int kmin;
  std::vector<int> idx;
  std::vector<long long> pre;

  bool run(const std::vector<int>& counts, int xsize, RegularityVerdict& out) {
    ++out.checked;
    const int nb = static_cast<int>(b.size());
    idx.resize(nb);
    std::iota(idx.begin(), idx.end(), 0);
    std::sort(idx.begin(), idx.end(), [&](int p, int q) {
      return counts[p] != counts[q] ? counts[p] < counts[q] : p < q;
    });
    pre.assign(nb + 1, 0);
    for (int i = 0; i < nb; ++i) pre[i + 1] = pre[i] + counts[idx[i]];
    for (int k = kmin; k <= nb; ++k) {
      double lo = static_cast<double>(pre[k]) / (static_cast<double>(xsize) * k);
      double hi = static_cast<double>(pre[nb] - pre[nb - k]) / (static_cast<double>(xsize) * k);
      if (d - lo > eps + kTol) {
        out.y.clear();
        for (int i = 0; i < k; ++i) out.y.push_back(b[idx[i]]);
        out.witness_density = lo;
        return true;
      }
      if (hi - d > eps + kTol) {
        out.y.clear();
        for (int i = nb - k; i < nb; ++i) out.y.push_back(b[idx[i]]);
        out.witness_density = hi;
        return true;
      }
    }
    return false;
  }
};

// Prefixes of `order` (indices into a) as X, with exact optimisation over Y.
bool scan_prefixes(const DenseGraph& g, const std::vector<int>& a, const std::vector<int>& b,
                   const std::vector<int>& order, int kmin_a, ExtremeScan& scan,
                   RegularityVerdict& out) {
  std::vector<int> counts(b.size(), 0);
  for (size_t p = 0; p < order.size(); ++p) {
    int x = a[order[p]];
    for (size_t j = 0; j < b.size(); ++j)
      if (g.adj(x, b[j])) ++counts[j];
    int xs = static_cast<int>(p + 1);
    if (xs < kmin_a) continue;
    if (scan.run(counts, xs, out)) {
      out.x.clear();
      for (int q = 0; q < xs; ++q) out.x.push_back(a[order[q]]);
      return true;
    }
  }
  return false;
}

bool heuristic_side(const DenseGraph& g, const std::vector<int>& a, const std::vector<int>& b,
                    double eps, double d, Rng& rng, int random_orders, RegularityVerdict& out) {
  ExtremeScan scan{b, d, eps, min_side(eps, static_cast<int>(b.size())), {}, {}};
  const int na = static_cast<int>(a.size());
  const int kmin_a = min_side(eps, na);
  Bits sb = Bits::of(g.n(), b);
  std::vector<int> deg(na);
  for (int i = 0; i < na; ++i) deg[i] = g.degree_into(a[i], sb);

  std::vector<int> order(na);
  auto sorted_by = [&](auto key) {
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int p, int q) { return key(p) < key(q); });
    return scan_prefixes(g, a, b, order, kmin_a, scan, out);
  };
  // Degree outliers on both tails.
  if (sorted_by([&](int p) { return deg[p]; })) return true;
  if (sorted_by([&](int p) { return -deg[p]; })) return true;
  // Neighbourhoods of pivots on the other side, and codegree with pivots on this side.
  const int pivots = std::min<int>(8, static_cast<int>(b.size()));
  for (int t = 0; t < pivots; ++t) {
    int pb = b[rng.uniform_int(0, static_cast<int>(b.size()) - 1)];
    if (sorted_by([&](int p) { return g.adj(a[p], pb) ? 0 : 1; })) return true;
    if (sorted_by([&](int p) { return g.adj(a[p], pb) ? 1 : 0; })) return true;
    int pa = a[rng.uniform_int(0, na - 1)];
    Bits nb = g.row(pa) & sb;
    if (sorted_by([&](int p) { return -g.degree_into(a[p], nb); })) return true;
    if (sorted_by([&](int p) { return g.degree_into(a[p], nb); })) return true;
  }
  for (int t = 0; t < random_orders; ++t) {
    order = rng.permutation(na);
    if (scan_prefixes(g, a, b, order, kmin_a, scan, out)) return true;
  }
  return false;
}

}  // namespace

double pair_density(const DenseGraph& g, const std::vector<int>& a, const std::vector<int>& b) {
  require_pair(g, a, b, "pair_density");
  Bits sb = Bits::of(g.n(), b);
  long long e = 0;
  for (int x : a) e += g.degree_into(x, sb);
  return static_cast<double>(e) / (static_cast<double>(a.size()) * b.size());
}

RegularityVerdict is_eps_regular(const DenseGraph& g, const std::vector<int>& a,
                                 const std::vector<int>& b, double eps, CheckMode mode,
                                 uint64_t seed, int random_orders) {
  require_pair(g, a, b, "is_eps_regular");
  RegularityVerdict out;
  out.density = pair_density(g, a, b);
  if (mode == CheckMode::exact) {
    if (static_cast<int>(a.size()) > kExactRegularSide || static_cast<int>(b.size()) > kExactRegularSide)
      fail(Status::invalid_input, "is_eps_regular", "size-limit-exceeded",
           "sides " + std::to_string(a.size()) + "," + std::to_string(b.size()));
    out.certified = true;
    const int na = static_cast<int>(a.size());
    ExtremeScan scan{b, out.density, eps, min_side(eps, static_cast<int>(b.size())), {}, {}};
    const int kmin_a = min_side(eps, na);
    std::vector<uint32_t> cols(b.size(), 0);  // bit i set when a[i] ~ b[j]
    for (size_t j = 0; j < b.size(); ++j)
      for (int i = 0; i < na; ++i)
        if (g.adj(a[i], b[j])) cols[j] |= 1u << i;
    std::vector<int> counts(b.size());
    for (uint32_t m = 1; m < (1u << na); ++m) {
      int xs = std::popcount(m);
      if (xs < kmin_a) continue;
      for (size_t j = 0; j < b.size(); ++j) counts[j] = std::popcount(cols[j] & m);
      if (scan.run(counts, xs, out)) {
        out.regular = false;
        out.x.clear();
        for (int i = 0; i < na; ++i)
          if (m >> i & 1) out.x.push_back(a[i]);
        return out;
      }
    }
    return out;
  }
  Rng rng(seed, hash_tag("regularity-heuristic"));
  if (heuristic_side(g, a, b, eps, out.density, rng, random_orders, out) ||
      heuristic_side(g, b, a, eps, out.density, rng, random_orders, out)) {
    if (std::find(a.begin(), a.end(), out.x.front()) == a.end()) std::swap(out.x, out.y);
    // Every reported witness is recomputed from scratch.
    double wd = pair_density(g, out.x, out.y);
    bool big = static_cast<int>(out.x.size()) >= min_side(eps, static_cast<int>(a.size())) &&
               static_cast<int>(out.y.size()) >= min_side(eps, static_cast<int>(b.size()));
    if (!big || !(std::abs(wd - out.density) > eps + kTol))
      fail(Status::invalid_input, "is_eps_regular", "witness-recheck", "heuristic witness did not verify");
    out.witness_density = wd;
    out.regular = false;
  }
  return out;
}

SuperregularVerdict is_superregular(const DenseGraph& g, const std::vector<int>& a,
                                    const std::vector<int>& b, double eps, double delta,
                                    CheckMode mode, uint64_t seed) {
  SuperregularVerdict out;
  out.reg = is_eps_regular(g, a, b, eps, mode, seed);
  if (!out.reg.regular) {
    out.ok = false;
    out.reason = "irregular";
    return out;
  }
  if (out.reg.density < delta) {
    out.ok = false;
    out.reason = "sparse";
    return out;
  }
  Bits sa = Bits::of(g.n(), a), sb = Bits::of(g.n(), b);
  for (int x : a)
    if (g.degree_into(x, sb) < delta * b.size() - 1e-9) {
      out.ok = false;
      out.reason = "low-degree";
      out.low_vertex = x;
      return out;
    }
  for (int y : b)
    if (g.degree_into(y, sa) < delta * a.size() - 1e-9) {
      out.ok = false;
      out.reason = "low-degree";
      out.low_vertex = y;
      return out;
    }
  return out;
}

std::pair<double, double> slice_robustness_expected(double eps, double delta, double alpha) {
  if (!(alpha >= 0 && alpha < 1))
    fail(Status::invalid_input, "slice_robustness_expected", "invalid-parameters", "0 <= alpha < 1");
  return {eps + 6 * std::sqrt(alpha), delta - 4 * alpha};
}

int ClusterPartition::n() const {
  size_t t = exceptional.size();
  for (const auto& c : clusters) t += c.size();
  return static_cast<int>(t);
}

std::vector<int> ClusterPartition::cluster_of(int n) const {
  std::vector<int> out(n, -1);
  for (size_t i = 0; i < clusters.size(); ++i)
    for (int v : clusters[i]) out[v] = static_cast<int>(i);
  return out;
}

bool ClusterPartition::well_formed(int n, std::string* why) const {
  auto bad = [&](const std::string& s) {
    if (why) *why = s;
    return false;
  };
  std::vector<char> seen(n, 0);
  auto take = [&](int v) {
    if (v < 0 || v >= n || seen[v]) return false;
    seen[v] = 1;
    return true;
  };
  for (int v : exceptional)
    if (!take(v)) return bad("exceptional vertex repeated or out of range: " + std::to_string(v));
  for (const auto& c : clusters) {
    if (c.size() != clusters.front().size()) return bad("clusters differ in size");
    for (int v : c)
      if (!take(v)) return bad("cluster vertex repeated or out of range: " + std::to_string(v));
  }
  for (int v = 0; v < n; ++v)
    if (!seen[v]) return bad("vertex not covered: " + std::to_string(v));
  return true;
}

RefineResult refine_to_superregular(const DenseGraph& g, const std::vector<std::vector<int>>& clusters,
                                    const DenseGraph& r, double eps, double delta, bool verify,
                                    uint64_t seed) {
  const int L = static_cast<int>(clusters.size());
  if (r.n() != L) fail(Status::invalid_input, "refine_to_superregular", "size-mismatch", "R order != #clusters");
  if (L == 0) return {};
  const int m = static_cast<int>(clusters.front().size());
  const int target = static_cast<int>(std::ceil((1 - std::sqrt(eps)) * m - 1e-9));
  std::vector<Bits> sets;
  for (const auto& c : clusters) sets.push_back(Bits::of(g.n(), c));

  RefineResult out;
  out.clusters.resize(L);
  out.discarded.resize(L);
  for (int i = 0; i < L; ++i) {
    // Worst relative degree into an R-neighbour; used both for discarding and trimming.
    std::vector<std::pair<double, int>> score;
    for (int v : clusters[i]) {
      double worst = 2;
      int worst_j = -1;
      r.row(i).for_each([&](int j) {
        double rel = static_cast<double>(g.degree_into(v, sets[j])) / clusters[j].size();
        if (rel < worst) {
          worst = rel;
          worst_j = j;
        }
      });
      if (worst < delta - eps) {
        out.discarded[i].push_back(v);
        if (static_cast<int>(out.discarded[i].size()) > m - target)
          fail(Status::hypothesis_violation, "refine_to_superregular", "insufficient-vertices",
               "cluster " + std::to_string(i) + " vs " + std::to_string(worst_j) + ": more than sqrt(eps) m low-degree vertices");
        continue;
      }
      score.emplace_back(worst, v);
    }
    std::stable_sort(score.begin(), score.end(), [](auto& p, auto& q) { return p.first > q.first; });
    for (int k = 0; k < static_cast<int>(score.size()); ++k) {
      if (k < target) out.clusters[i].push_back(score[k].second);
      else out.discarded[i].push_back(score[k].second);
    }
    std::sort(out.clusters[i].begin(), out.clusters[i].end());
  }
  if (verify) {
    double e2 = 4 * std::sqrt(eps), d2 = delta / 2;
    for (auto [i, j] : r.edges()) {
      const auto& a = out.clusters[i];
      const auto& b = out.clusters[j];
      CheckMode mode = (a.size() <= kExactRegularSide && b.size() <= kExactRegularSide) ? CheckMode::exact
                                                                                        : CheckMode::heuristic;
      auto v = is_superregular(g, a, b, e2, d2, mode, seed);
      if (!v.ok) out.verified = false;
      out.checks.push_back({{i, j}, v});
    }
  }
  return out;
}

InheritanceReport inheritance_check(const DenseGraph& g, const ClusterPartition& part,
                                    const DenseGraph& r, double rho, double d, double delta,
                                    double eta) {
  (void)g;
  InheritanceReport rep;
  const int L = static_cast<int>(part.clusters.size());
  if (r.n() != L) fail(Status::invalid_input, "inheritance_check", "size-mismatch", "R order != #clusters");
  rep.rho_star = std::max(3 * rho, 3 * delta);
  DensityParams p{rep.rho_star, d};
  DensityVerdict v = L <= kExactDenseLimit ? is_locally_dense_exact(r, p)
                                           : is_locally_dense_sampled(r, p, 2000, 1);
  rep.dense_ok = v.ok;
  rep.dense_certified = v.certified;
  rep.dense_witness = v.x;
  rep.min_degree = r.min_degree();
  rep.min_degree_needed = (0.5 + eta / 2) * L;
  rep.degree_ok = rep.min_degree >= rep.min_degree_needed - 1e-9;
  return rep;
}

PartitionResult reduce_with_partition(const DenseGraph& g, const ClusterPartition& part, double eps,
                                      double delta, uint64_t seed) {
  std::string why;
  if (!part.well_formed(g.n(), &why)) fail(Status::invalid_input, "reduce_with_partition", "bad-partition", why);
  PartitionResult res;
  res.partition = part;
  const int L = static_cast<int>(part.clusters.size());
  const int n = g.n();
  std::vector<int> cl = part.cluster_of(n);
  GraphBuilder rb(L), sb(L);
  std::vector<std::vector<char>> keep(L, std::vector<char>(L, 0));
  const int m = part.cluster_size();
  const CheckMode mode = m <= kExactRegularSide ? CheckMode::exact : CheckMode::heuristic;
  for (int i = 0; i < L; ++i)
    for (int j = i + 1; j < L; ++j) {
      const auto& a = part.clusters[i];
      const auto& b = part.clusters[j];
      double dens = pair_density(g, a, b);
      if (dens < delta) continue;
      ++res.dense_pairs;
      auto sv = is_superregular(g, a, b, eps, delta, mode, seed ^ (static_cast<uint64_t>(i) * 131 + j));
      if (!sv.reg.regular) {
        ++res.irregular_pairs;
        continue;
      }
      ++res.regular_pairs;
      keep[i][j] = keep[j][i] = 1;
      rb.add_edge(i, j);
      if (sv.ok) sb.add_edge(i, j);
    }
  std::vector<Edge> pure_edges;
  for (auto [u, v] : g.edges()) {
    int cu = cl[u], cv = cl[v];
    if (cu >= 0 && cv >= 0 && (cu == cv || !keep[cu][cv])) continue;
    pure_edges.emplace_back(u, v);
  }
  res.pure = DenseGraph(n, pure_edges);
  res.reduced.base = rb.build();
  res.reduced.superregular = sb.build();
  res.reduced.eps = eps;
  res.reduced.delta = delta;
  res.exceptional_ok = part.exceptional.size() <= eps * n + 1e-9;
  res.degree_loss_histogram.assign(11, 0);
  for (int v = 0; v < n; ++v) {
    int loss = g.degree(v) - res.pure.degree(v);
    if (loss > (delta + eps) * n + 1e-9) ++res.degree_loss_violations;
    int bucket = std::min(10, static_cast<int>(10.0 * loss / std::max(1, n)));
    ++res.degree_loss_histogram[bucket];
  }
  return res;
}

namespace {

struct LloydRun {
  std::vector<int> assign;
  std::vector<int> ex;
  int rounds = 0;
  bool stable = false;
  double objective = 0;  // sum of squared distances to the cluster centroid
};

// Balanced Lloyd rounds: centroid of a cluster is the mean adjacency row of its members;
// vertices are reassigned greedily by distance under the capacity m.
LloydRun lloyd(const DenseGraph& g, int L, int m, int max_rounds, Rng& rng) {
  const int n = g.n();
  LloydRun run;
  // Random equitable start; the remainder forms V0.
  std::vector<int> perm = rng.permutation(n);
  run.assign.assign(n, -1);
  for (int k = 0; k < m * L; ++k) run.assign[perm[k]] = k % L;
  run.ex.assign(perm.begin() + m * L, perm.end());
  std::vector<char> is_ex(n, 0);
  for (int v : run.ex) is_ex[v] = 1;

  std::vector<std::vector<double>> cen(L, std::vector<double>(n));
  std::vector<double> norm(L);
  auto centroids = [&] {
    for (auto& c : cen) std::fill(c.begin(), c.end(), 0.0);
    for (int v = 0; v < n; ++v) {
      if (run.assign[v] < 0) continue;
      auto& c = cen[run.assign[v]];
      g.row(v).for_each([&](int u) { c[u] += 1.0; });
    }
    for (int c = 0; c < L; ++c) {
      norm[c] = 0;
      for (double& x : cen[c]) {
        x /= m;
        norm[c] += x * x;
      }
    }
  };
  // |row - centroid|^2 = deg(v) - 2 <row, centroid> + |centroid|^2
  auto dist = [&](int v, int c) {
    double dot = 0;
    g.row(v).for_each([&](int u) { dot += cen[c][u]; });
    return g.degree(v) - 2 * dot + norm[c];
  };
  for (; run.rounds < max_rounds && !run.stable; ++run.rounds) {
    centroids();
    std::vector<std::tuple<double, int, int>> cand;
    cand.reserve(static_cast<size_t>(n) * L);
    for (int v = 0; v < n; ++v) {
      if (is_ex[v]) continue;
      for (int c = 0; c < L; ++c) cand.emplace_back(dist(v, c), v, c);
    }
    std::sort(cand.begin(), cand.end());
    std::vector<int> next(n, -1), load(L, 0);
    for (auto& [dd, v, c] : cand) {
      if (next[v] >= 0 || load[c] >= m) continue;
      next[v] = c;
      ++load[c];
    }
    run.stable = next == run.assign;
    run.assign = next;
  }
  centroids();
  for (int v = 0; v < n; ++v)
    if (run.assign[v] >= 0) run.objective += dist(v, run.assign[v]);
  return run;
}

}  // namespace

PartitionResult heuristic_degree_form_partition(const DenseGraph& g, double eps, double delta,
                                                int L_min, const PartitionOptions& opt) {
  const int n = g.n();
  if (L_min < 1) fail(Status::invalid_input, "heuristic_degree_form_partition", "invalid-parameters", "L_min >= 1");
  int L = opt.L_target > 0 ? opt.L_target : L_min;
  if (L < L_min || L > 8 * L_min)
    fail(Status::invalid_input, "heuristic_degree_form_partition", "invalid-parameters", "L outside [L_min, 8 L_min]");
  if (L > n) fail(Status::budget_exhausted, "heuristic_degree_form_partition", "too-few-vertices", "L > n");
  const int m = n / L;
  Rng rng(opt.seed, hash_tag("partition"));

  // Independent starts; the lowest k-means objective wins.
  LloydRun best;
  for (int t = 0; t < std::max(1, opt.restarts); ++t) {
    LloydRun run = lloyd(g, L, m, opt.max_rounds, rng);
    if (t == 0 || run.objective < best.objective - 1e-9) best = std::move(run);
  }
  ClusterPartition part;
  part.exceptional = best.ex;
  std::sort(part.exceptional.begin(), part.exceptional.end());
  part.clusters.assign(L, {});
  for (int v = 0; v < n; ++v)
    if (best.assign[v] >= 0) part.clusters[best.assign[v]].push_back(v);
  PartitionResult res = reduce_with_partition(g, part, eps, delta, opt.seed);
  res.rounds = best.rounds;
  res.stable = best.stable;
  double cap = opt.exceptional_cap >= 0 ? opt.exceptional_cap : eps;
  res.exceptional_ok = part.exceptional.size() <= cap * n + 1e-9;
  return res;
}

}  // namespace ldbw
