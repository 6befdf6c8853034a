#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>

#include "ldbw/density.hpp"
#include "ldbw/embed.hpp"
#include "ldbw/regularity.hpp"

namespace ldbw {

PipelineOptions PipelineOptions::from_constants(const ConstantsHierarchy& k) {
  PipelineOptions o;
  o.eps = k.get_or("eps", o.eps);
  o.delta = k.get_or("delta", o.delta);
  o.d = k.get_or("d", o.d);
  o.rho = k.get_or("rho", o.rho);
  o.eta = k.get_or("eta", o.eta);
  o.c = k.get_or("c", o.c);
  o.L_target = static_cast<int>(k.get_or("L_target", o.L_target));
  o.rstar_cap = static_cast<int>(k.get_or("rstar_cap", o.rstar_cap));
  o.strict = k.strict();
  return o;
}

namespace {

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4g", x);
  return buf;
}

// Number of blocks l (clusters L = 4 r l) minimising the remainder n mod L, then favouring
// fewer, larger clusters.
int choose_blocks(int n, int r) {
  int best = 0, best_rem = 0;
  for (int l = 1; l <= 8 && 4 * r * l <= n; ++l) {
    int rem = n % (4 * r * l);
    if (best == 0 || rem < best_rem) {
      best = l;
      best_rem = rem;
    }
  }
  return best;
}

}  // namespace

EmbeddingResult run_main_pipeline(const DenseGraph& g, const BandwidthedH& hb, const PipelineOptions& opt,
                                  uint64_t seed) {
  EmbeddingResult res;
  std::string cur = "precheck:input";
  auto note = [&](const std::string& name, bool pass, const std::string& detail = {}) {
    res.audit.push_back({name, pass, detail});
    if (!pass && opt.strict) fail(Status::hypothesis_violation, cur, "hypothesis", name + (detail.empty() ? "" : " (" + detail + ")"));
  };
  auto sub_seed = [&](const char* tag) { return splitmix64(seed ^ hash_tag(tag)); };

  try {
    const int n = g.n();
    const DenseGraph& h = hb.h;
    if (h.n() != n) fail(Status::invalid_input, cur, "size-mismatch", "|H| = |G| fails");
    if (!hb.order.is_permutation_of(n)) fail(Status::invalid_input, cur, "bad-order", "ordering is not a permutation of V(H)");
    const int w = std::max(1, bandwidth_of(h, hb.order));
    if (auto why = check_bandwidthed(hb, w); !why.empty()) fail(Status::invalid_input, cur, "bad-h", why);
    const int r = hb.r;
    const double beta = static_cast<double>(w) / n;
    const int delta_h = h.max_degree();

    cur = "precheck:connectivity";
    int comps = component_count(g);
    if (comps != 1)
      fail(Status::hypothesis_violation, cur, "disconnected",
           "components(G) = 1 fails: G has " + std::to_string(comps) + " components");
    cur = "precheck:density";
    note("min degree: delta(G) >= (1/2 + eta) n", g.min_degree() >= (0.5 + opt.eta) * n,
         std::to_string(g.min_degree()) + " vs " + fmt((0.5 + opt.eta) * n));
    {
      DensityParams dp{opt.rho, opt.d};
      auto v = n <= kExactDenseLimit ? is_locally_dense_exact(g, dp) : is_locally_dense_sampled(g, dp, 200, sub_seed("density"));
      note("local density: e(G[X]) >= d C(|X|,2) - rho n^2", v.ok, v.certified ? "exact" : "sampled");
    }

    cur = "partition";
    int l = opt.L_target > 0 ? opt.L_target / (4 * r) : choose_blocks(n, r);
    if (opt.L_target > 0 && opt.L_target % (4 * r))
      fail(Status::invalid_input, cur, "invalid-parameters", "L_target must be a multiple of 4r");
    if (l < 1) fail(Status::hypothesis_violation, cur, "too-few-vertices", "n >= 4r fails");
    const int L = 4 * r * l;
    res.L = L;
    res.l = l;
    PartitionOptions popt;
    popt.L_target = L;
    popt.seed = sub_seed("partition");
    PartitionResult part = heuristic_degree_form_partition(g, opt.eps, opt.delta, 4 * r, popt);
    note("|V0| <= eps n", part.exceptional_ok, std::to_string(part.partition.exceptional.size()));
    note("d_G'(x) >= d_G(x) - (delta + eps) n", part.degree_loss_violations == 0,
         std::to_string(part.degree_loss_violations) + " vertices");
    const DenseGraph& r0 = part.reduced.base;

    cur = "inheritance";
    {
      auto inh = inheritance_check(g, part.partition, r0, opt.rho, opt.d, opt.delta, opt.eta);
      note("R is locally dense (inherited)", inh.dense_ok, inh.dense_certified ? "exact" : "sampled");
      note("delta(R) >= (1/2 + eta/2) L", inh.degree_ok,
           std::to_string(inh.min_degree) + " vs " + fmt(inh.min_degree_needed));
    }

    cur = "hamilton-power";
    const double rstar = std::ceil(324.0 * r / (opt.eta * opt.eta));
    const int cap = std::max(opt.rstar_cap > 0 ? opt.rstar_cap : 4 * r - 1, 4 * r - 1);
    const int power = static_cast<int>(std::min<double>(rstar - 1, cap));
    res.audit.push_back({"r* - 1 capped", power < rstar - 1, "r* = " + fmt(rstar) + ", power used " + std::to_string(power)});
    HamResult ham = find_hamilton_power(r0, power, L, opt.ham, sub_seed("hamilton"));
    const std::vector<int>& cycle = ham.cycle.vertices;
    {
      std::vector<int> head(cycle.begin(), cycle.begin() + std::min(L, std::min(power + 1, 4 * r)));
      note("{(1,1)..(1,4r)} spans a clique in R", r0.is_clique(head));
    }

    cur = "refine";
    std::vector<std::vector<int>> raw(L);
    for (int c = 0; c < L; ++c) raw[c] = part.partition.clusters[cycle[c]];
    GraphBuilder tb(L);
    for (int i = 0; i < l; ++i)
      for (int a = 0; a < 4 * r; ++a)
        for (int b = a + 1; b < 4 * r; ++b) tb.add_edge(i * 4 * r + a, i * 4 * r + b);
    DenseGraph blocks = tb.build();
    RefineResult ref = refine_to_superregular(g, raw, blocks, opt.eps, opt.delta, true, sub_seed("refine"));
    note("within-block pairs (4 sqrt(eps), delta/2)-superregular", ref.verified);
    std::vector<int> v0 = part.partition.exceptional;
    for (auto& d : ref.discarded) v0.insert(v0.end(), d.begin(), d.end());
    std::sort(v0.begin(), v0.end());
    const int m = static_cast<int>(ref.clusters[0].size());
    res.m = m;
    res.v0 = static_cast<int>(v0.size());
    if (m < 1) fail(Status::hypothesis_violation, cur, "empty-clusters", "m >= 1 fails after refinement");

    cur = "phi-relabel";
    // Cells of R* on [2l]x[2r]; cell_sets[ab] is the cluster of the cycle position phi^-1(ab).
    const int cols = 2 * r, cells = L;
    auto phi_id = [&](int c) {
      Cell ab = phi_bijection({c / (4 * r) + 1, c % (4 * r) + 1}, 2 * r, l);
      return grid_id(ab.i, ab.j, cols);
    };
    std::vector<int> pos_of_cell(cells);
    for (int c = 0; c < cells; ++c) pos_of_cell[phi_id(c)] = c;
    GraphBuilder rsb(cells);
    for (int a = 0; a < cells; ++a)
      for (int b = a + 1; b < cells; ++b)
        if (r0.adj(cycle[pos_of_cell[a]], cycle[pos_of_cell[b]])) rsb.add_edge(a, b);
    DenseGraph rstar_g = rsb.build();
    std::vector<std::vector<int>> cell_sets(cells);
    for (int ab = 0; ab < cells; ++ab) cell_sets[ab] = ref.clusters[pos_of_cell[ab]];
    {
      const int blocks2 = 2 * l;
      std::string bad;
      for (int i = 1; i <= blocks2 && bad.empty(); ++i)
        for (int j = 1; j <= cols && bad.empty(); ++j) {
          for (int j2 = j + 1; j2 <= cols; ++j2)
            if (!rstar_g.adj(grid_id(i, j, cols), grid_id(i, j2, cols))) bad = "block " + std::to_string(i);
          if (blocks2 == 2 && i == 2) continue;
          int inext = i == blocks2 ? 1 : i + 1;
          for (int j2 = 1; j2 <= cols; ++j2)
            if (j2 != j && !rstar_g.adj(grid_id(i, j, cols), grid_id(inext, j2, cols)))
              bad = "blocks " + std::to_string(i) + "," + std::to_string(inext);
        }
      if (!bad.empty()) fail(Status::hypothesis_violation, cur, "missing-z", "Z^{2r}_{2l} subset of R* fails at " + bad);
    }

    // Prefix handling for V0.
    cur = "framework";
    std::vector<int> psi(n, -1), img_i(n, -1);
    std::vector<int> tau(cells, 0);
    std::vector<int> i_set;
    int s = 0;
    std::vector<Bits> n_v;
    if (!v0.empty()) {
      for (int v : v0) {
        Bits nb(cells);
        for (int ab = 0; ab < cells; ++ab)
          if (g.degree_into(v, Bits::of(n, cell_sets[ab])) >= opt.c * m) nb.set(ab);
        n_v.push_back(nb);
      }
      FrameworkParams fp;
      fp.r = 2 * r;
      fp.eta = opt.eta;
      fp.d = opt.d;
      fp.eps = opt.eps;
      fp.m = m;
      fp.strict = opt.strict;
      std::vector<int> bvec(cols);
      std::iota(bvec.begin(), bvec.end(), 0);
      FrameworkTrail trail = build_framework(rstar_g, n_v, bvec, fp);
      for (const auto& v : trail.violations) res.audit.push_back({"framework hypothesis", false, v});
      res.K = trail.K;

      cur = "special";
      int u = 0;
      for (const auto& p : trail.v0_parts) u = std::max(u, static_cast<int>(p.size()));
      const int bsz = 4 * w + std::max(2 * delta_h * delta_h, 1 + delta_h + delta_h * delta_h) * u + 1;
      res.audit.push_back({"interval width b > 99 beta n", bsz > 99 * beta * n, "b = " + std::to_string(bsz)});
      s = 8 * trail.K * bsz;
      if (s + w > n)
        fail(Status::hypothesis_violation, cur, "prefix-too-long",
             "s + beta n <= n fails: s = 8 K b = " + std::to_string(s) + ", n = " + std::to_string(n));
      std::vector<int> prefix(hb.order.order.begin(), hb.order.order.begin() + s + w);
      BandwidthedH hp;
      hp.h = h.induced(prefix);
      hp.order = VertexLabelling::identity(s + w);
      for (int x : prefix) hp.chi.push_back(hb.chi[x]);
      hp.r = 2 * r;
      SpecialParams sp;
      sp.width = w;
      sp.b = bsz;
      sp.eps = opt.eps;
      sp.m = m;
      sp.L = L;
      sp.max_degree = delta_h;
      SpecialResult spec = special_assignment(hp, rstar_g, trail, n_v, sp);
      for (const auto& v : spec.violations) res.audit.push_back({"special assignment hypothesis", false, v});
      res.audit.push_back({"load |f^-1(a) cap X| <= eps^{1/4} m", spec.max_load <= spec.load_bound + 1e-9,
                           std::to_string(spec.max_load) + " vs " + fmt(spec.load_bound)});
      for (int t = 0; t < s + w; ++t) {
        int x = prefix[t];
        if (spec.a.f[t] < 0) {
          img_i[x] = v0[spec.a.exceptional[t]];
          i_set.push_back(x);
        } else {
          psi[x] = spec.a.f[t];
          if (t < s) ++tau[psi[x]];
        }
      }
      if (i_set.size() != v0.size())
        fail(Status::hypothesis_violation, cur, "postcondition", "|I| = |V0| fails");
    }
    res.s = s;

    cur = "lemma-g";
    std::vector<char> is_v0(n, 0);
    for (int v : v0) is_v0[v] = 1;
    std::vector<int> keep, to_sub(n, -1);
    for (int v = 0; v < n; ++v)
      if (!is_v0[v]) {
        to_sub[v] = static_cast<int>(keep.size());
        keep.push_back(v);
      }
    DenseGraph gsub = g.induced(keep);
    CycleStructure cs;
    cs.l = l;
    cs.width = 4 * r;
    cs.cells.resize(cells);
    for (int c = 0; c < cells; ++c)
      for (int v : ref.clusters[c]) cs.cells[c].push_back(to_sub[v]);
    {
      GraphBuilder cb(cells);
      for (int a = 0; a < cells; ++a)
        for (int b = a + 1; b < cells; ++b)
          if (r0.adj(cycle[a], cycle[b])) cb.add_edge(a, b);
      cs.reduced = cb.build();
    }
    int max_tau = *std::max_element(tau.begin(), tau.end());
    cs.eps = std::min(1.0, std::max(opt.eps, static_cast<double>(max_tau) / m));
    cs.delta = opt.delta / 2;
    res.audit.push_back({"tau_{a,b} <= eps m", max_tau <= opt.eps * m + 1e-9,
                         "max tau " + std::to_string(max_tau) + ", balancing eps " + fmt(cs.eps)});
    LemmaGOptions gopt;
    gopt.xi_n = std::max(1, static_cast<int>(std::floor(11 * beta * (n - static_cast<int>(v0.size())))));
    gopt.check_output = false;
    gopt.seed = sub_seed("lemma-g");
    gopt.strict = opt.strict;
    LemmaGResult g1 = lemma_g(gsub, cs, tau, nullptr, gopt);
    note("L1: (1 - sqrt(eps)) m <= m_{a,b}, balanced within blocks", g1.l1);

    cur = "basic";
    const int nz = n - s;
    std::vector<int> zverts(hb.order.order.begin() + s, hb.order.order.end());
    BandwidthedH hz;
    hz.h = h.induced(zverts);
    hz.order = VertexLabelling::identity(nz);
    for (int x : zverts) hz.chi.push_back(hb.chi[x]);
    hz.r = r;
    std::vector<std::vector<int>> targets(2 * l, std::vector<int>(cols));
    for (int ab = 0; ab < cells; ++ab) targets[ab / cols][ab % cols] = g1.m_ab[ab];
    const double beta_z = (w + 0.5) / nz;
    BasicResult basic = basic_assignment(hz, targets, beta_z, opt.strict);
    for (const auto& v : basic.violations) res.audit.push_back({"basic lemma size hypothesis", false, v});
    std::vector<int> n_ab(cells, 0);
    std::vector<char> in_b(n, 0);
    for (int t = 0; t < nz; ++t) {
      int x = zverts[t];
      int k = basic.a.f[t];
      if (psi[x] >= 0 && psi[x] != k)
        fail(Status::hypothesis_violation, cur, "prefix-mismatch",
             "f(y) = k(y) = (1, chi(y)) fails for y = " + std::to_string(x));
      psi[x] = k;
      ++n_ab[k];
    }
    for (int t : basic.a.special) in_b[zverts[t]] = 1;
    note("B2: | |k^-1(a,b)| - m_{a,b} | <= 10 beta n", basic.report.b2, "max deviation " + std::to_string(basic.report.max_deviation));

    cur = "lemma-g:phase2";
    LemmaGResult g2 = lemma_g(gsub, cs, tau, &n_ab, gopt);
    for (const auto& a : g2.audit)
      if (a.rfind("recorded: ", 0) == 0) res.audit.push_back({"balancing hypothesis", false, a.substr(10)});
    std::vector<std::vector<int>> xsets(cells);
    for (int ab = 0; ab < cells; ++ab) {
      for (int v : g2.x.cells[ab]) xsets[ab].push_back(keep[v]);
      std::sort(xsets[ab].begin(), xsets[ab].end());
      if (static_cast<int>(xsets[ab].size()) != n_ab[ab] + tau[ab])
        fail(Status::hypothesis_violation, cur, "postcondition", "|X_{a,b}| = n_{a,b} + tau_{a,b} fails");
    }
    res.audit.push_back({"|X_{a,b} sym-diff V_{a,b}| <= sqrt(eps) m", g2.max_sym_diff <= std::sqrt(cs.eps) * m + 1e-9,
                         std::to_string(g2.max_sym_diff)});

    cur = "claim2";
    std::vector<char> in_i(n, 0);
    for (int x : i_set) in_i[x] = 1;
    for (auto [u, v] : h.edges()) {
      if (in_i[u] && in_i[v]) fail(Status::hypothesis_violation, cur, "i-not-independent", "I is independent fails");
      if (in_i[u] || in_i[v]) continue;
      if (!rstar_g.adj(psi[u], psi[v]))
        fail(Status::hypothesis_violation, cur, "not-a-homomorphism",
             "psi(x)psi(y) in E(R*) fails for edge (" + std::to_string(u) + "," + std::to_string(v) + ")");
    }

    // X' = (X \ I) u B, W = N(I), N = N(X') \ (X' u I).
    std::vector<char> in_xp(n, 0), in_w(n, 0), in_n(n, 0);
    std::vector<int> owner(n, -1);
    for (int t = 0; t < s; ++t) {
      int x = hb.order.order[t];
      if (!in_i[x]) in_xp[x] = 1;
    }
    for (int x = 0; x < n; ++x)
      if (in_b[x]) in_xp[x] = 1;
    for (int u : i_set)
      h.row(u).for_each([&](int x) {
        in_w[x] = 1;
        owner[x] = u;
      });
    for (int x = 0; x < n; ++x)
      if (in_xp[x])
        h.row(x).for_each([&](int y) {
          if (!in_xp[y] && !in_i[y]) in_n[y] = 1;
        });

    cur = "embed-targets";
    TargetEmbedInput te;
    te.g = &g;
    te.parts = xsets;
    te.r = &rstar_g;
    te.h = &h;
    te.phi.assign(n, -1);
    te.fixed.assign(n, -1);
    for (int x = 0; x < n; ++x) {
      if (in_xp[x] || in_n[x]) te.phi[x] = psi[x];
      if (in_i[x]) te.fixed[x] = img_i[x];
    }
    for (int p = 0; p < n; ++p) {
      int x = hb.order.order[p];
      if (in_xp[x]) te.x.push_back(x);
      else if (in_n[x]) te.y.push_back(x);
    }
    for (int x = 0; x < n; ++x)
      if (in_w[x]) {
        if (!in_xp[x]) fail(Status::hypothesis_violation, cur, "w-outside-x", "W subset of X' fails");
        const auto& cell = xsets[psi[x]];
        std::vector<int> sw;
        for (int v : cell)
          if (g.adj(v, img_i[owner[x]])) sw.push_back(v);
        te.s[x] = std::move(sw);
      }
    te.c = opt.c;
    te.eps = opt.eps;
    te.budget = opt.budget;
    te.strict = opt.strict;
    TargetEmbedResult stage2 = embed_with_targets(te);
    for (const auto& v : stage2.violations) res.audit.push_back({"target embedding hypothesis", false, v});
    res.audit.push_back({"|C_y| >= c m", stage2.min_candidates >= stage2.threshold,
                         std::to_string(stage2.min_candidates) + " vs " + std::to_string(stage2.threshold)});
    res.candidate_sets = stage2.c_y;

    cur = "blowup";
    std::vector<int> gmap(n, -1);
    for (int x = 0; x < n; ++x) {
      if (in_i[x]) gmap[x] = img_i[x];
      if (in_xp[x]) gmap[x] = stage2.f[x];
    }
    Bits taken(n);
    for (int x = 0; x < n; ++x)
      if (gmap[x] >= 0) taken.set(gmap[x]);
    for (int a = 0; a < 2 * l; ++a) {
      BlowupInput bi;
      bi.g = &g;
      bi.h = &h;
      bi.parts.resize(cols);
      for (int b = 0; b < cols; ++b)
        for (int v : xsets[a * cols + b])
          if (!taken.test(v)) bi.parts[b].push_back(v);
      bi.phi.assign(n, -1);
      for (int p = 0; p < n; ++p) {
        int x = hb.order.order[p];
        if (in_i[x] || in_xp[x] || psi[x] / cols != a) continue;
        bi.verts.push_back(x);
        bi.phi[x] = psi[x] % cols;
        if (in_n[x]) bi.special[x] = stage2.c_y.at(x);
      }
      std::vector<int> demand(cols, 0);
      for (int x : bi.verts) ++demand[bi.phi[x]];
      for (int b = 0; b < cols; ++b)
        if (demand[b] != static_cast<int>(bi.parts[b].size()))
          fail(Status::hypothesis_violation, cur, "size-mismatch",
               "|U_{a,b}| = |psi^-1(a,b) \\ (X' u I)| fails at (" + std::to_string(a + 1) + "," + std::to_string(b + 1) + ")");
      bi.anchored = gmap;
      bi.budget = opt.budget;
      bi.seed = sub_seed("blowup") + a;
      BlowupResult br = blowup_embed(bi);
      for (int x : bi.verts) gmap[x] = br.f[x];
    }

    cur = "final-validation";
    for (int x = 0; x < n; ++x)
      if (in_w[x]) {
        const auto& sw = te.s.at(x);
        bool glue = std::find(sw.begin(), sw.end(), gmap[x]) != sw.end() && g.adj(gmap[x], img_i[owner[x]]);
        if (!glue) fail(Status::hypothesis_violation, cur, "glue", "g(w) in S_w subset N(g(u)) fails for w = " + std::to_string(x));
      }
    if (auto why = check_embedding(h, g, gmap); !why.empty())
      fail(Status::hypothesis_violation, cur, "postcondition", "g is an embedding of H into G fails: " + why);
    res.audit.push_back({"g revalidated edge by edge", true, std::to_string(h.edge_count()) + " edges"});
    res.ok = true;
    res.status = Status::ok;
    res.g = std::move(gmap);
  } catch (const Error& e) {
    res.ok = false;
    res.g.clear();
    res.status = e.status();
    res.stage = e.stage().rfind(cur, 0) == 0 ? e.stage() : cur + ":" + e.stage();
    res.inequality = e.detail().empty() ? e.code() : e.detail();
    res.audit.push_back({res.stage, false, res.inequality});
  }
  return res;
}

}  // namespace ldbw
