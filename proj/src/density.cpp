#include "ldbw/density.hpp"

#include <bit>
#include <cmath>
#include <numeric>

namespace ldbw {

namespace {

constexpr double kTol = 1e-9;

double rhs_local(const DensityParams& p, int n, int k) {
  return p.d * (static_cast<double>(k) * (k - 1) / 2.0) - p.rho * static_cast<double>(n) * n;
}

std::vector<int> mask_items(uint64_t mask) {
  std::vector<int> out;
  while (mask) {
    out.push_back(std::countr_zero(mask));
    mask &= mask - 1;
  }
  return out;
}

std::vector<uint64_t> small_rows(const DenseGraph& g) {
  std::vector<uint64_t> rows(g.n(), 0);
  for (int v = 0; v < g.n(); ++v) g.row(v).for_each([&](int u) { rows[v] |= uint64_t{1} << u; });
  return rows;
}

// Checks X and fills the verdict on violation. Returns true on violation.
bool probe_local(const DenseGraph& g, const DensityParams& p, const Bits& x, DensityVerdict& out) {
  ++out.subsets_checked;
  int k = x.count();
  double slack = static_cast<double>(g.edges_within(x)) - rhs_local(p, g.n(), k);
  if (slack < -kTol) {
    out.ok = false;
    out.x = x.items();
    out.slack = slack;
    return true;
  }
  return false;
}

// Removes the vertex of largest internal degree, probing every intermediate set.
bool peel(const DenseGraph& g, const DensityParams& p, Bits x, DensityVerdict& out) {
  std::vector<int> deg(g.n(), 0);
  x.for_each([&](int v) { deg[v] = g.degree_into(v, x); });
  while (x.count() >= 2) {
    if (probe_local(g, p, x, out)) return true;
    int best = -1;
    x.for_each([&](int v) {
      if (best < 0 || deg[v] > deg[best]) best = v;
    });
    x.reset(best);
    g.row(best).for_each([&](int u) {
      if (x.test(u)) --deg[u];
    });
  }
  return false;
}

}  // namespace

void check_density_params(const DensityParams& p) {
  if (!(p.rho >= 0) || !(p.d > 0) || p.d > 1)
    fail(Status::invalid_input, "density", "invalid-parameters", "need rho >= 0 and 0 < d <= 1");
}

DensityVerdict is_locally_dense_exact(const DenseGraph& g, const DensityParams& p, int limit) {
  check_density_params(p);
  const int n = g.n();
  if (n > limit)
    fail(Status::invalid_input, "is_locally_dense_exact", "size-limit-exceeded",
         "n=" + std::to_string(n) + " > " + std::to_string(limit));
  DensityVerdict out;
  out.certified = true;
  auto rows = small_rows(g);
  for (int k = 2; k <= n; ++k) {
    double rhs = rhs_local(p, n, k);
    if (rhs <= 0) continue;  // vacuous for this size
    uint64_t x = (uint64_t{1} << k) - 1;
    const uint64_t limit_mask = uint64_t{1} << n;
    while (x < limit_mask) {
      ++out.subsets_checked;
      long long twice = 0;
      for (uint64_t y = x; y; y &= y - 1) twice += std::popcount(rows[std::countr_zero(y)] & x);
      double slack = static_cast<double>(twice / 2) - rhs;
      if (slack < -kTol) {
        out.ok = false;
        out.x = mask_items(x);
        out.slack = slack;
        return out;
      }
      uint64_t c = x & (~x + 1), r = x + c;  // next subset of the same size
      x = (((r ^ x) >> 2) / c) | r;
    }
  }
  return out;
}

DensityVerdict is_locally_dense_sampled(const DenseGraph& g, const DensityParams& p, int trials,
                                        uint64_t seed) {
  check_density_params(p);
  if (trials < 1) fail(Status::invalid_input, "is_locally_dense_sampled", "invalid-parameters", "trials >= 1");
  DensityVerdict out;
  const int n = g.n();
  if (n < 2) return out;
  Bits all = Bits::full(n);
  if (probe_local(g, p, all, out)) return out;
  if (peel(g, p, all, out)) return out;
  Rng rng(seed, hash_tag("dense-sampled"));
  for (int t = 1; t < trials; ++t) {
    Bits x(n);
    if (t % 4 == 0) {
      // Non-neighbourhood of a random vertex, then peeled.
      int v = rng.uniform_int(0, n - 1);
      x = all - g.row(v);
      if (peel(g, p, x, out)) break;
      continue;
    }
    int k = rng.uniform_int(2, n);
    for (int v : rng.sample(n, k)) x.set(v);
    if (probe_local(g, p, x, out)) break;
  }
  if (!out.ok) {
    // Independent recheck of the witness.
    Bits w = Bits::of(n, out.x);
    double slack = static_cast<double>(g.edges_within(w)) - rhs_local(p, n, w.count());
    if (!(slack < -kTol)) fail(Status::invalid_input, "is_locally_dense_sampled", "witness-recheck", "");
  }
  return out;
}

namespace {

// min over Y of e_G(X,Y) - d|X||Y| is attained at Y = {y : d_G(y,X) < d|X|}.
double best_y(const DenseGraph& g, const Bits& x, double d, std::vector<int>* y_out) {
  double need = d * x.count(), sum = 0;
  for (int y = 0; y < g.n(); ++y) {
    double v = g.degree_into(y, x) - need;
    if (v < 0) {
      sum += v;
      if (y_out) y_out->push_back(y);
    }
  }
  return sum;
}

}  // namespace

DensityVerdict is_uniformly_dense(const DenseGraph& g, const DensityParams& p, CheckMode mode,
                                  int trials, uint64_t seed, int limit) {
  check_density_params(p);
  const int n = g.n();
  const double slack0 = p.rho * static_cast<double>(n) * n;
  DensityVerdict out;
  auto consider = [&](const Bits& x, double& best, std::vector<int>& best_x) {
    ++out.subsets_checked;
    double s = best_y(g, x, p.d, nullptr) + slack0;
    if (s < best - kTol) {
      best = s;
      best_x = x.items();
    }
  };
  double best = 0;
  std::vector<int> best_x;
  if (mode == CheckMode::exact) {
    if (n > limit)
      fail(Status::invalid_input, "is_uniformly_dense", "size-limit-exceeded",
           "n=" + std::to_string(n) + " > " + std::to_string(limit));
    out.certified = true;
    auto rows = small_rows(g);
    for (uint64_t m = 1; m < (uint64_t{1} << n); ++m) {
      ++out.subsets_checked;
      double need = p.d * std::popcount(m), s = slack0;
      for (int y = 0; y < n; ++y) {
        double v = std::popcount(rows[y] & m) - need;
        if (v < 0) s += v;
      }
      if (s < best - kTol) {
        best = s;
        best_x = mask_items(m);
      }
    }
  } else {
    Rng rng(seed, hash_tag("uniform-sampled"));
    Bits all = Bits::full(n);
    consider(all, best, best_x);
    for (int v = 0; v < n && v < trials; ++v) consider(all - g.row(v), best, best_x);
    for (int t = 0; t < trials; ++t) {
      Bits x(n);
      for (int v : rng.sample(n, rng.uniform_int(1, std::max(1, n)))) x.set(v);
      consider(x, best, best_x);
    }
  }
  if (best < -kTol) {
    out.ok = false;
    out.x = best_x;
    Bits xb = Bits::of(n, best_x);
    best_y(g, xb, p.d, &out.y);
    // Recount e_G(X,Y) directly.
    Bits yb = Bits::of(n, out.y);
    out.slack = static_cast<double>(g.e_between(xb, yb)) -
                (p.d * xb.count() * yb.count() - slack0);
  }
  return out;
}

Bits high_degree_vertices(const DenseGraph& g, double d) {
  Bits y(g.n());
  for (int v = 0; v < g.n(); ++v)
    if (g.degree(v) >= d * g.n() / 2.0) y.set(v);
  return y;
}

namespace {

struct CliqueDfs {
  const DenseGraph& g;
  const CliqueQuery& q;
  std::vector<ExtendableClique>& out;
  std::vector<int> prefix;
  long long nodes = 0;
  bool stop = false;

  void run(Bits cand, const Bits& common) {
    if (stop) return;
    if (static_cast<int>(prefix.size()) == q.r) {
      out.push_back({prefix, common.count()});
      if (q.cap >= 0 && static_cast<long long>(out.size()) >= q.cap) stop = true;
      return;
    }
    for (int v = cand.first(); v >= 0 && !stop; v = cand.next(v + 1)) {
      if (++nodes > q.node_budget) {
        stop = true;
        return;
      }
      cand.reset(v);
      Bits next_common = common & g.row(v);
      if (next_common.count() < q.s) continue;
      Bits next_cand = cand & g.row(v);
      if (static_cast<int>(prefix.size()) + 1 + next_cand.count() < q.r) continue;
      prefix.push_back(v);
      run(std::move(next_cand), next_common);
      prefix.pop_back();
    }
  }
};

}  // namespace

std::vector<ExtendableClique> enumerate_extendable_cliques(const DenseGraph& g, const CliqueQuery& q) {
  if (q.r < 1) fail(Status::invalid_input, "enumerate_extendable_cliques", "invalid-parameters", "r >= 1");
  std::vector<ExtendableClique> out;
  Bits cand = q.within ? *q.within : Bits::full(g.n());
  Bits common = q.degree_in ? *q.degree_in : Bits::full(g.n());
  CliqueDfs dfs{g, q, out, {}, 0, false};
  dfs.run(cand, common);
  return out;
}

std::optional<ExtendableClique> first_extendable_clique(const DenseGraph& g, CliqueQuery q) {
  q.cap = 1;
  auto v = enumerate_extendable_cliques(g, q);
  if (v.empty()) return std::nullopt;
  return v.front();
}

double clique_count_lower_bound(int n, double d, int r) {
  double v = std::pow(d / 2.0, r * (r + 1) / 2.0) * std::pow(static_cast<double>(n), r);
  for (int i = 2; i <= r; ++i) v /= i;
  return v;
}

namespace {

struct MaxClique {
  const DenseGraph& g;
  int k_max;
  long long budget;
  long long nodes = 0;
  std::vector<int> cur, best;

  // Greedy colouring: vertices sorted by colour class, colours non-decreasing.
  void colour(const Bits& p, std::vector<int>& order, std::vector<int>& col) {
    Bits left = p;
    int c = 0;
    while (left.any()) {
      ++c;
      Bits avail = left;
      while (avail.any()) {
        int v = avail.first();
        avail.reset(v);
        avail -= g.row(v);
        left.reset(v);
        order.push_back(v);
        col.push_back(c);
      }
    }
  }

  void expand(Bits p) {
    if (static_cast<int>(best.size()) >= k_max || ++nodes > budget) return;
    std::vector<int> order, col;
    colour(p, order, col);
    for (int i = static_cast<int>(order.size()) - 1; i >= 0; --i) {
      if (static_cast<int>(cur.size()) + col[i] <= static_cast<int>(best.size())) return;
      int v = order[i];
      cur.push_back(v);
      Bits np = p & g.row(v);
      if (static_cast<int>(cur.size()) > static_cast<int>(best.size())) best = cur;
      if (np.any() && static_cast<int>(best.size()) < k_max) expand(np);
      cur.pop_back();
      p.reset(v);
      if (static_cast<int>(best.size()) >= k_max || nodes > budget) return;
    }
  }
};

}  // namespace

std::vector<int> max_clique_upto(const DenseGraph& g, const Bits& within, int k_max, long long node_budget) {
  MaxClique mc{g, k_max, node_budget, 0, {}, {}};
  if (k_max <= 0 || within.none()) return {};
  mc.expand(within);
  std::vector<int> out = mc.best;
  if (static_cast<int>(out.size()) > k_max) out.resize(k_max);
  std::sort(out.begin(), out.end());
  return out;
}

std::optional<std::vector<int>> find_clique(const DenseGraph& g, const Bits& within, int k,
                                            long long node_budget) {
  if (k <= 0) return std::vector<int>{};
  auto c = max_clique_upto(g, within, k, node_budget);
  if (static_cast<int>(c.size()) < k) return std::nullopt;
  return c;
}

int independence_number_exact(const DenseGraph& g) {
  if (g.n() > 40) fail(Status::invalid_input, "independence_number_exact", "size-limit-exceeded", "n <= 40");
  GraphBuilder b(g.n());
  for (int u = 0; u < g.n(); ++u)
    for (int v = u + 1; v < g.n(); ++v)
      if (!g.adj(u, v)) b.add_edge(u, v);
  DenseGraph comp = b.build();
  return static_cast<int>(max_clique_upto(comp, Bits::full(g.n()), g.n(), 1LL << 40).size());
}

}  // namespace ldbw
