#include <algorithm>
#include <cmath>
#include <numeric>

#include <json.hpp>

#include "ldbw/embed.hpp"

namespace ldbw {

namespace {

[[noreturn]] void bad_spec(const std::string& what) { fail(Status::invalid_input, "gen_instance", "invalid-spec", what); }

}  // namespace

DenseGraph gen_gnp(int n, double p, uint64_t seed) {
  if (n < 0 || p < 0 || p > 1) bad_spec("gnp needs n >= 0 and p in [0,1]");
  Rng rng(seed, hash_tag("gnp"));
  GraphBuilder b(n);
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v)
      if (rng.bernoulli(p)) b.add_edge(u, v);
  return b.build();
}

DenseGraph gen_two_clique(int n) {
  if (n < 2 || n % 2) bad_spec("two-clique needs even n >= 2");
  GraphBuilder b(n);
  const int h = n / 2;
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v)
      if ((u < h) == (v < h)) b.add_edge(u, v);
  return b.build();
}

DenseGraph gen_kr_factor_extremal(int r, int n) {
  if (r < 2 || n < r || n % r) bad_spec("kr-factor-extremal needs r >= 2 and r | n");
  const int a = n / r + 1;  // vertices 0..a-1 form the independent side
  GraphBuilder b(n);
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v)
      if (v >= a) b.add_edge(u, v);
  return b.build();
}

DenseGraph gen_planted_z(int k, int m, int reach, double p_in, double p_far, uint64_t seed, bool shuffle) {
  if (k < 1 || m < 1 || reach < 0) bad_spec("planted-z needs clusters >= 1, m >= 1, reach >= 0");
  Rng rng(seed, hash_tag("planted-z"));
  const int n = k * m;
  std::vector<int> label(n);
  std::iota(label.begin(), label.end(), 0);
  if (shuffle) rng.shuffle(label);
  GraphBuilder b(n);
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v) {
      int cu = u / m, cv = v / m;
      int dist = std::min(std::abs(cu - cv), k - std::abs(cu - cv));
      double p = cu == cv ? p_in : dist <= reach ? 1.0 : p_far;
      if (p >= 1 || rng.bernoulli(p)) b.add_edge(label[u], label[v]);
    }
  return b.build();
}

GeneratedInstance gen_planted_structure(int l, int width, int m, double p, double min_frac, double eps,
                                        double delta, uint64_t seed) {
  if (l < 1 || width < 2 || width % 2 || m < 1) bad_spec("planted-structure needs l >= 1, even width >= 2, m >= 1");
  Rng rng(seed, hash_tag("planted-structure"));
  const int cells = l * width, n = cells * m;
  GraphBuilder rb(cells);
  for (int i = 1; i <= l; ++i)
    for (int j = 1; j <= width; ++j) {
      for (int j2 = j + 1; j2 <= width; ++j2) rb.add_edge(grid_id(i, j, width), grid_id(i, j2, width));
      if (l == 1 || (l == 2 && i == 2)) continue;
      int inext = i == l ? 1 : i + 1;
      for (int j2 = 1; j2 <= width; ++j2)
        if (j2 != j) rb.add_edge(grid_id(i, j, width), grid_id(inext, j2, width));
    }
  DenseGraph rg = rb.build();
  const int floor_deg = static_cast<int>(std::ceil(min_frac * m - 1e-9));
  std::vector<std::vector<char>> adj(n, std::vector<char>(n, 0));
  for (auto [a, c] : rg.edges()) {
    for (int s = 0; s < m; ++s)
      for (int t = 0; t < m; ++t)
        if (rng.bernoulli(p)) adj[a * m + s][c * m + t] = adj[c * m + t][a * m + s] = 1;
    // Top up both sides to the minimum degree.
    for (int side = 0; side < 2; ++side) {
      int from = side ? c : a, to = side ? a : c;
      for (int s = 0; s < m; ++s) {
        int v = from * m + s;
        std::vector<int> missing;
        int deg = 0;
        for (int t = 0; t < m; ++t) {
          if (adj[v][to * m + t]) ++deg;
          else missing.push_back(to * m + t);
        }
        rng.shuffle(missing);
        for (size_t q = 0; deg < floor_deg && q < missing.size(); ++q, ++deg)
          adj[v][missing[q]] = adj[missing[q]][v] = 1;
      }
    }
  }
  GraphBuilder b(n);
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v)
      if (adj[u][v]) b.add_edge(u, v);
  GeneratedInstance out;
  out.kind = "structure";
  out.g = b.build();
  CycleStructure cs;
  cs.l = l;
  cs.width = width;
  cs.cells.resize(cells);
  for (int c = 0; c < cells; ++c)
    for (int s = 0; s < m; ++s) cs.cells[c].push_back(c * m + s);
  cs.reduced = rg;
  cs.eps = eps;
  cs.delta = delta;
  out.structure = std::move(cs);
  return out;
}

BandwidthedH with_greedy_colouring(DenseGraph h, VertexLabelling order) {
  BandwidthedH hb;
  hb.chi.assign(h.n(), 0);
  for (int x : order.order) {
    std::vector<char> taken(h.n() + 2, 0);
    h.row(x).for_each([&](int u) {
      if (hb.chi[u] > 0) taken[hb.chi[u]] = 1;
    });
    int c = 1;
    while (taken[c]) ++c;
    hb.chi[x] = c;
    hb.r = std::max(hb.r, c);
  }
  hb.h = std::move(h);
  hb.order = std::move(order);
  return hb;
}

BandwidthedH gen_cycle_power(int n, int k) {
  if (k < 1 || n < 3) bad_spec("cycle-power needs n >= 3 and k >= 1");
  DenseGraph h = n >= 2 * k + 1 ? make_named(NamedKind::cycle_power, {k, n}) : make_named(NamedKind::complete, {n});
  // Colour along the cycle, then order by the zigzag.
  BandwidthedH hb = with_greedy_colouring(std::move(h), VertexLabelling::identity(n));
  hb.order = zigzag_labelling(n);
  return hb;
}

BandwidthedH gen_path_power(int n, int k) {
  if (k < 1 || n < 1) bad_spec("path-power needs n >= 1 and k >= 1");
  return with_greedy_colouring(make_named(NamedKind::path_power, {k, n}), VertexLabelling::identity(n));
}

BandwidthedH gen_kr_tiling(int r, int count) {
  if (r < 1 || count < 1) bad_spec("kr-tiling needs r >= 1 and count >= 1");
  GraphBuilder b(r * count);
  for (int t = 0; t < count; ++t)
    for (int i = 0; i < r; ++i)
      for (int j = i + 1; j < r; ++j) b.add_edge(t * r + i, t * r + j);
  return with_greedy_colouring(b.build(), VertexLabelling::identity(r * count));
}

BandwidthedH gen_random_bandwidth(int n, int k, double p, int max_deg, uint64_t seed) {
  if (n < 1 || k < 1 || p < 0 || p > 1 || max_deg < 1) bad_spec("random-bandwidth needs n, k, max_deg >= 1 and p in [0,1]");
  Rng rng(seed, hash_tag("random-bandwidth"));
  std::vector<int> deg(n, 0);
  GraphBuilder b(n);
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v <= std::min(n - 1, u + k); ++v)
      if (rng.bernoulli(p) && deg[u] < max_deg && deg[v] < max_deg) {
        b.add_edge(u, v);
        ++deg[u];
        ++deg[v];
      }
  return with_greedy_colouring(b.build(), VertexLabelling::identity(n));
}

GeneratedInstance gen_instance(const std::string& id, const std::string& params_json, uint64_t seed) {
  nlohmann::json p;
  try {
    p = params_json.empty() ? nlohmann::json::object() : nlohmann::json::parse(params_json);
  } catch (const std::exception& e) {
    bad_spec(std::string("params are not JSON: ") + e.what());
  }
  if (!p.is_object()) bad_spec("params must be a JSON object");
  auto num = [&](const char* key) -> double {
    if (!p.contains(key) || !p[key].is_number()) bad_spec(std::string("missing numeric parameter '") + key + "'");
    return p[key].get<double>();
  };
  auto integer = [&](const char* key) -> int {
    double v = num(key);
    if (v != std::floor(v)) bad_spec(std::string("parameter '") + key + "' must be an integer");
    return static_cast<int>(v);
  };
  auto opt_num = [&](const char* key, double fallback) { return p.contains(key) ? num(key) : fallback; };

  GeneratedInstance out;
  out.kind = "graph";
  if (id == "gnp") {
    out.g = gen_gnp(integer("n"), num("p"), seed);
  } else if (id == "two-clique") {
    out.g = gen_two_clique(integer("n"));
  } else if (id == "kr-factor-extremal") {
    out.g = gen_kr_factor_extremal(integer("r"), integer("n"));
  } else if (id == "planted-z") {
    int k = integer("clusters");
    int reach = p.contains("reach") ? integer("reach") : k / 2 - 1;
    bool shuffle = p.value("shuffle", true);
    out.g = gen_planted_z(k, integer("m"), reach, opt_num("p_in", 0.7), opt_num("p_far", 0.2), seed, shuffle);
  } else if (id == "planted-structure") {
    out = gen_planted_structure(integer("l"), integer("width"), integer("m"), opt_num("p", 0.7),
                                opt_num("min_frac", 0.5), opt_num("eps", 0.1), opt_num("delta", 0.4), seed);
  } else {
    out.kind = "h";
    if (id == "cycle-power") out.h = gen_cycle_power(integer("n"), integer("k"));
    else if (id == "path-power") out.h = gen_path_power(integer("n"), integer("k"));
    else if (id == "kr-tiling") out.h = gen_kr_tiling(integer("r"), integer("count"));
    else if (id == "random-bandwidth")
      out.h = gen_random_bandwidth(integer("n"), integer("k"), num("p"), p.contains("max_deg") ? integer("max_deg") : 1 << 20, seed);
    else bad_spec("unknown generator '" + id + "'");
    out.g = out.h->h;
  }
  return out;
}

}  // namespace ldbw
