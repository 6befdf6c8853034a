// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any fails.
// Checks recount results through tests/oracles.hpp wherever a result can be recomputed
// from the adjacency matrix alone.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "ldbw/balance_g.hpp"
#include "ldbw/connect.hpp"
#include "ldbw/density.hpp"
#include "ldbw/embed.hpp"
#include "ldbw/hampower.hpp"
#include "ldbw/partition_h.hpp"
#include "ldbw/regularity.hpp"
#include "oracles.hpp"

using namespace ldbw;

namespace {

using Clock = std::chrono::steady_clock;

double since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

struct Verdict {
  bool pass = true;
  std::ostringstream detail;
  std::string first_failure;

  void require(bool ok, const std::string& what) {
    if (!ok && pass) first_failure = what;
    pass = pass && ok;
  }
};

std::vector<int> range(int lo, int hi) {
  std::vector<int> v;
  for (int x = lo; x < hi; ++x) v.push_back(x);
  return v;
}

std::string fmt(double x, int prec = 2) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", prec, x);
  return buf;
}

// ---- 1 ------------------------------------------------------------------------------

void named_bandwidth(Verdict& v) {
  int checks = 0;
  for (int n = 4; n <= 200; n += 2) {
    DenseGraph c = make_named(NamedKind::cycle_power, {1, n});
    auto z = zigzag_labelling(n);
    v.require(bandwidth_of(c, z) == 2, "zigzag C^1_" + std::to_string(n));
    v.require(oracle::bandwidth(oracle::cycle_power(1, n), z.order) == 2, "oracle zigzag C^1_" + std::to_string(n));
    ++checks;
  }
  for (int n = 2; n <= 200; ++n) {
    DenseGraph k = make_named(NamedKind::complete, {n});
    v.require(bandwidth_of(k, VertexLabelling::identity(n)) == n - 1, "K_" + std::to_string(n));
    ++checks;
  }
  for (int r = 1; r <= 5; ++r)
    for (int n = 2 * r + 1; n <= 200; ++n) {
      BandwidthedH hb = gen_cycle_power(n, r);
      v.require(bandwidth_of(hb.h, hb.order) <= 2 * r, "C^" + std::to_string(r) + "_" + std::to_string(n));
      v.require(oracle::bandwidth(oracle::cycle_power(r, n), hb.order.order) <= 2 * r,
                "oracle C^" + std::to_string(r) + "_" + std::to_string(n));
      ++checks;
    }
  v.detail << checks << " labellings";
}

// ---- 2 ------------------------------------------------------------------------------

bool labelled_in(const oracle::Adj& a, const oracle::Adj& b) {
  if (a.n != b.n) return false;
  for (int u = 0; u < a.n; ++u)
    for (int w = u + 1; w < a.n; ++w)
      if (a(u, w) && !b(u, w)) return false;
  return true;
}

void cz_chain(Verdict& v) {
  int checks = 0;
  for (int r = 2; r <= 4; ++r)
    for (int l = 3; l <= 5; ++l) {
      const int n = 2 * r * l;
      const std::string at = " r=" + std::to_string(r) + " l=" + std::to_string(l);
      auto id = range(0, n);
      // Library graphs under the identity map.
      DenseGraph tiling = oracle::clique_tiling(r, 2 * l).graph();
      DenseGraph c_low = make_named(NamedKind::cycle_power, {r - 1, n});
      DenseGraph z_fine = make_named(NamedKind::zgraph, {r, 2 * l});
      DenseGraph c_high = make_named(NamedKind::cycle_power, {2 * r - 1, n});
      DenseGraph z_coarse = make_named(NamedKind::zgraph, {2 * r, l});
      v.require(is_labelled_subgraph(tiling, c_low, id), "tiling in C^{r-1}" + at);
      v.require(is_labelled_subgraph(c_low, z_fine, id), "C^{r-1} in Z^r_{2l}" + at);
      v.require(is_labelled_subgraph(z_fine, c_high, id), "Z^r_{2l} in C^{2r-1}" + at);
      v.require(is_labelled_subgraph(c_high, z_coarse, id), "C^{2r-1} in Z^{2r}_l" + at);
      // Same chain from the definitions alone.
      v.require(labelled_in(oracle::clique_tiling(r, 2 * l), oracle::cycle_power(r - 1, n)), "oracle 1" + at);
      v.require(labelled_in(oracle::cycle_power(r - 1, n), oracle::z_graph(r, 2 * l)), "oracle 2" + at);
      v.require(labelled_in(oracle::z_graph(r, 2 * l), oracle::cycle_power(2 * r - 1, n)), "oracle 3" + at);
      v.require(labelled_in(oracle::cycle_power(2 * r - 1, n), oracle::z_graph(2 * r, l)), "oracle 4" + at);
      v.require(oracle::same_edges(oracle::z_graph(r, 2 * l), z_fine), "Z definition" + at);
      checks += 4;
    }
  v.detail << checks << " inclusions";
}

// ---- 3 ------------------------------------------------------------------------------

void density_oracle(Verdict& v) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> unit(0, 1);
  int agree = 0;
  for (int t = 0; t < 100; ++t) {
    const int n = 5 + t % 10;
    oracle::Adj g = oracle::random_graph(n, 0.3 + 0.6 * unit(rng), 1000 + t);
    DensityParams p{0.02 * unit(rng), 0.2 + 0.7 * unit(rng)};
    bool lib = is_locally_dense_exact(g.graph(), p).ok;
    bool ref = oracle::locally_dense(g, p.rho, p.d);
    v.require(lib == ref, "exact vs recount on graph " + std::to_string(t));
    agree += lib == ref;
  }

  DenseGraph k100 = make_named(NamedKind::complete, {100});
  int false_violations = 0;
  for (auto [rho, d] : std::vector<std::pair<double, double>>{{0, 1}, {0, 0.5}, {0.01, 0.9}, {0.001, 1}}) {
    auto s = is_locally_dense_sampled(k100, {rho, d}, 10000, 7);
    false_violations += !s.ok;
  }
  v.require(false_violations == 0, "sampled checker flagged K_100");

  int mono = 0;
  for (int t = 0; t < 100; ++t) {
    const int n = 6 + t % 8;
    DenseGraph g = oracle::random_graph(n, 0.4 + 0.5 * unit(rng), 5000 + t).graph();
    DensityParams p{0.03 * unit(rng), 0.2 + 0.7 * unit(rng)};
    DensityParams looser{p.rho + 0.02 * unit(rng), p.d - 0.2 * unit(rng)};
    bool at = is_locally_dense_exact(g, p).ok, loose = is_locally_dense_exact(g, looser).ok;
    v.require(!at || loose, "monotonicity on pair " + std::to_string(t));
    mono += !at || loose;
  }
  v.detail << agree << "/100 agree, " << false_violations << " false violations in 4x10^4 samples, " << mono
           << "/100 monotone";
}

// ---- 4 ------------------------------------------------------------------------------

// Window-limited random H whose residue colouring mod r is proper.
BandwidthedH residue_h(int n, int r, int window, double p, uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::bernoulli_distribution coin(p);
  std::vector<int> deg(n, 0);
  GraphBuilder b(n);
  for (int u = 0; u < n; ++u)
    for (int w = u + 1; w <= std::min(n - 1, u + window); ++w)
      if ((w - u) % r != 0 && deg[u] < 6 && deg[w] < 6 && coin(rng)) {
        b.add_edge(u, w);
        ++deg[u], ++deg[w];
      }
  BandwidthedH hb;
  hb.h = b.build();
  hb.order = VertexLabelling::identity(n);
  hb.r = r;
  for (int x = 0; x < n; ++x) hb.chi.push_back(x % r + 1);
  return hb;
}

// B1-B4 and the Z^{2r}_l homomorphism, recounted from (f, B) only.
std::string recount_basic(const BandwidthedH& hb, const oracle::Adj& h, const std::vector<std::vector<int>>& targets,
                          double beta, const Assignment& a) {
  const int n = h.n, r = hb.r, l = static_cast<int>(targets.size());
  const double bn = beta * n;
  std::vector<int> pos(n);
  for (int p = 0; p < n; ++p) pos[hb.order.order[p]] = p;
  std::set<int> b(a.special.begin(), a.special.end());
  if (b.size() > 2 * l * bn) return "B1: |B| too large";
  for (int x : b)
    if (pos[x] < bn) return "B1: B meets the first beta n positions";
  std::vector<int> cnt(l * 2 * r, 0);
  for (int x = 0; x < n; ++x) {
    if (a.f[x] < 0 || a.f[x] >= l * 2 * r) return "f out of range";
    ++cnt[a.f[x]];
  }
  for (int i = 0; i < l; ++i)
    for (int j = 0; j < 2 * r; ++j)
      if (std::abs(cnt[i * 2 * r + j] - targets[i][j]) > 10 * bn) return "B3: cell size off target";
  oracle::Adj z = oracle::z_graph(2 * r, l);
  for (int u = 0; u < n; ++u)
    for (int w = u + 1; w < n; ++w) {
      if (!h(u, w)) continue;
      int i = a.f[u] / (2 * r), i2 = a.f[w] / (2 * r);
      if (a.f[u] % (2 * r) == a.f[w] % (2 * r)) return "edge inside a colour class";
      if (!b.count(u) && !b.count(w) && i != i2) return "B2: edge between blocks outside B";
      if (l >= 3 && !z(a.f[u], a.f[w])) return "edge not mapped to a Z edge";
      if (l < 3 && std::abs(i - i2) > 1) return "edge spans non-consecutive blocks";
    }
  for (int x = 0; x < n; ++x)
    if (pos[x] < std::floor(bn + 1e-9) && a.f[x] != hb.chi[x] - 1) return "B4: prefix not coloured by chi";
  return "";
}

void lemma13_suite(Verdict& v) {
  std::mt19937_64 rng(13);
  double worst = 0;
  int ok = 0;
  for (int t = 0; t < 50; ++t) {
    const int r = 2 + t % 3;
    std::uniform_int_distribution<int> ndist(1000, 5000);
    const int n = ndist(rng);
    // Bandwidth 2r - 1 windows need beta n >= 2r - 1.
    const double lo = std::max(0.001, (2.0 * r - 1) / n);
    const double beta = lo + (0.01 - lo) * std::uniform_real_distribution<double>(0, 1)(rng);
    const int w = std::max(1, static_cast<int>(std::floor(beta * n + 1e-9)));
    BandwidthedH hb = residue_h(n, r, std::min(w, 2 * r - 1), 0.7, 100 + t);
    const int cell_min = static_cast<int>(std::ceil(10 * beta * n - 1e-9));
    const int lmax = std::max(1, std::min(6, n / (2 * r * cell_min)));
    const int l = std::uniform_int_distribution<int>(1, lmax)(rng);
    // Random block sizes, each at least 2r cell_min, then even rows.
    std::vector<int> blocks(l, 2 * r * cell_min);
    for (int rest = n - l * 2 * r * cell_min; rest > 0; --rest) ++blocks[std::uniform_int_distribution<int>(0, l - 1)(rng)];
    std::vector<std::vector<int>> targets;
    for (int m : blocks) {
      std::vector<int> row(2 * r, m / (2 * r));
      for (int j = 0; j < m % (2 * r); ++j) ++row[j];
      targets.push_back(row);
    }
    auto t0 = Clock::now();
    std::string why;
    try {
      auto res = basic_assignment(hb, targets, beta);
      why = recount_basic(hb, oracle::Adj(hb.h), targets, beta, res.a);
      if (why.empty() && !res.report.ok()) why = "library report disagrees";
    } catch (const Error& e) {
      why = e.what();
    }
    const double secs = since(t0);
    worst = std::max(worst, secs);
    v.require(why.empty(), "instance " + std::to_string(t) + ": " + why);
    v.require(secs < 5, "instance " + std::to_string(t) + " over 5 s");
    ok += why.empty();
  }
  v.detail << ok << "/50 confirmed, max " << fmt(worst) << " s/instance";
}

// ---- 5 ------------------------------------------------------------------------------

void lemma18_suite(Verdict& v) {
  std::mt19937_64 rng(18);
  const double eps = 0.1;
  double worst = 0;
  int ok = 0, moved = 0;
  for (int t = 0; t < 50; ++t) {
    const int l = 2 + t % 3, r = 1 + (t / 3) % 3, w = 2 * r, cells = l * w;
    const int m = std::uniform_int_distribution<int>(30, 80)(rng);
    const double delta = 0.4 + 0.1 * (t % 3);
    auto planted = gen_planted_structure(l, w, m, 0.8, 0.6, eps, delta, 500 + t);
    const auto& cs = *planted.structure;
    const int tau_max = static_cast<int>(std::floor(eps * m + 1e-9));
    std::vector<int> tau(cells);
    for (int& x : tau) x = std::uniform_int_distribution<int>(0, tau_max)(rng);
    const int xi_n = 2;
    LemmaGOptions opt;
    opt.xi_n = xi_n;
    opt.strict = false;
    opt.check_output = false;
    opt.seed = t;

    auto t0 = Clock::now();
    std::string why;
    try {
      auto base = lemma_g(planted.g, cs, tau, nullptr, opt);
      // Targets within xi n of m_{a,b}: shift single units between random cells.
      std::vector<int> tgt = base.m_ab;
      for (int k = 0; k < 6; ++k) {
        int a = std::uniform_int_distribution<int>(0, cells - 1)(rng), b = std::uniform_int_distribution<int>(0, cells - 1)(rng);
        if (a == b || tgt[a] + 1 - base.m_ab[a] > xi_n || base.m_ab[b] - (tgt[b] - 1) > xi_n) continue;
        ++tgt[a], --tgt[b];
      }
      auto res = lemma_g(planted.g, cs, tau, &tgt, opt);
      oracle::Adj ga(planted.g);
      for (int ab = 0; ab < cells && why.empty(); ++ab) {
        if (static_cast<int>(res.x.cells[ab].size()) != tgt[ab] + tau[ab]) why = "size of X_{a,b}";
        Cell ij = phi_inverse({ab / r + 1, ab % r + 1}, r, l);
        const auto& orig = cs.cells[grid_id(ij.i, ij.j, w)];
        std::set<int> a(res.x.cells[ab].begin(), res.x.cells[ab].end()), b(orig.begin(), orig.end());
        int sd = 0;
        for (int x : a) sd += !b.count(x);
        for (int x : b) sd += !a.count(x);
        if (sd > std::sqrt(eps) * m + 1e-9) why = "sym-diff above sqrt(eps) m";
      }
      if (why.empty() && replay_ledger(res.phase1.u, res.phase2.ledger, w) != res.phase2.w) why = "ledger replay";
      // W3: each moved vertex has (delta - 2 eps) m neighbours in the other Y-cells on its side.
      for (const auto& mv : res.phase2.ledger.moves) {
        const int base_cell = (mv.to.i - 1) * w, j = mv.to.j - 1, lo = j < r ? 0 : r;
        for (int j2 = lo; j2 < lo + r; ++j2) {
          if (j2 == j) continue;
          int d = 0;
          for (int u : res.y_sets[base_cell + j2]) d += ga(mv.v, u);
          if (d < (delta - 2 * eps) * m - 1e-9) why = "W3 fails for vertex " + std::to_string(mv.v);
        }
        ++moved;
      }
    } catch (const Error& e) {
      why = e.what();
    }
    const double secs = since(t0);
    worst = std::max(worst, secs);
    v.require(why.empty(), "system " + std::to_string(t) + ": " + why);
    v.require(secs < 10, "system " + std::to_string(t) + " over 10 s");
    ok += why.empty();
  }
  v.detail << ok << "/50 systems, " << moved << " moves checked, max " << fmt(worst) << " s/instance";
}

// ---- 6 ------------------------------------------------------------------------------

// Random greedy r-clique with joint degree >= s, avoiding `avoid`.
std::vector<int> random_clique(const oracle::Adj& g, int r, int s, const std::set<int>& avoid, std::mt19937_64& rng) {
  for (int attempt = 0; attempt < 1000; ++attempt) {
    std::vector<int> cand;
    for (int x = 0; x < g.n; ++x)
      if (!avoid.count(x)) cand.push_back(x);
    std::vector<int> k;
    while (static_cast<int>(k.size()) < r && !cand.empty()) {
      int x = cand[std::uniform_int_distribution<size_t>(0, cand.size() - 1)(rng)];
      k.push_back(x);
      std::vector<int> next;
      for (int y : cand)
        if (y != x && g(x, y)) next.push_back(y);
      cand.swap(next);
    }
    if (static_cast<int>(k.size()) < r) continue;
    int joint = 0;
    for (int y = 0; y < g.n; ++y) {
      bool all = true;
      for (int x : k) all = all && g(x, y);
      joint += all;
    }
    if (joint >= s) return k;
  }
  return {};
}

void connecting_lemma(Verdict& v) {
  oracle::Adj ga = oracle::random_graph(200, 0.75, 6);
  DenseGraph g = ga.graph();
  std::mt19937_64 rng(6);
  const double eta = 0.1;
  int ok = 0, total = 0;
  double worst = 0;
  for (int r : {2, 3})
    for (int q = 0; q < 100; ++q) {
      auto x = random_clique(ga, r, static_cast<int>(std::ceil(eta * 200)), {}, rng);
      auto y = random_clique(ga, r, static_cast<int>(std::ceil(eta * 200)), std::set<int>(x.begin(), x.end()), rng);
      ++total;
      auto t0 = Clock::now();
      std::string why;
      try {
        auto res = connect_cliques(g, x, y, Bits(200), {.r = r, .eta = eta});
        const auto& p = res.path.vertices;
        if (static_cast<int>(p.size()) != 3 * r) why = "length";
        auto power_path = [&](const std::vector<int>& s) {
          if (std::set<int>(s.begin(), s.end()).size() != s.size()) return false;
          for (size_t i = 0; i < s.size(); ++i)
            for (size_t j = i + 1; j < s.size() && j <= i + r; ++j)
              if (!ga(s[i], s[j])) return false;
          return true;
        };
        std::vector<int> xp = x, py = p;
        xp.insert(xp.end(), p.begin(), p.end());
        py.insert(py.end(), y.begin(), y.end());
        if (!power_path(p)) why = "P^r_3r";
        else if (!power_path(xp)) why = "X P";
        else if (!power_path(py)) why = "P Y";
      } catch (const Error& e) {
        why = e.what();
      }
      const double secs = since(t0);
      worst = std::max(worst, secs);
      v.require(why.empty(), "r=" + std::to_string(r) + " query " + std::to_string(q) + ": " + why);
      v.require(secs < 1, "query over 1 s");
      ok += why.empty();
    }
  v.detail << ok << "/" << total << " validated, max " << fmt(worst, 3) << " s/query";
}

// ---- 7 ------------------------------------------------------------------------------

void hamilton_powers(Verdict& v) {
  struct Row {
    int n, r;
    double p, need;
  };
  double worst = 0;
  for (Row row : {Row{60, 2, 0.9, 0.9}, Row{100, 3, 0.95, 0.8}}) {
    int ok = 0, labelled = 0;
    for (uint64_t seed = 1; seed <= 20; ++seed) {
      oracle::Adj ga = oracle::random_graph(row.n, row.p, 7000 + seed);
      DenseGraph g = ga.graph();
      auto t0 = Clock::now();
      try {
        auto res = find_hamilton_power(g, row.r, row.n, {}, seed);
        bool valid = validate_witness(g, res.cycle).ok && static_cast<int>(res.cycle.vertices.size()) == row.n;
        // Recount on the adjacency matrix.
        const auto& c = res.cycle.vertices;
        for (int i = 0; i < row.n && valid; ++i)
          for (int j = 1; j <= row.r; ++j) valid = valid && ga(c[i], c[(i + j) % row.n]);
        valid = valid && std::set<int>(c.begin(), c.end()).size() == c.size();
        v.require(valid, "invalid witness");
        ok += valid;
      } catch (const Error& e) {
        labelled += !e.stage().empty();
        v.require(!e.stage().empty(), "unlabelled failure");
      }
      const double secs = since(t0);
      worst = std::max(worst, secs);
      v.require(secs < 60, "seed over 60 s");
    }
    v.require(ok >= row.need * 20, "success rate for n=" + std::to_string(row.n));
    v.detail << "n=" << row.n << " r=" << row.r << ": " << ok << "/20 (" << labelled << " labelled failures); ";
  }
  v.detail << "max " << fmt(worst) << " s/seed";
}

// ---- 8 ------------------------------------------------------------------------------

void oracle_consistency(Verdict& v) {
  std::mt19937_64 rng(8);
  int found = 0, negative = 0, pipe_ok = 0, blow_ok = 0;
  for (int t = 0; t < 200; ++t) {
    const int n = 5 + t % 6;
    BandwidthedH hb = gen_random_bandwidth(n, 2 + t % 2, 0.6, 4, 800 + t);
    const double p = 0.5 + 0.45 * std::uniform_real_distribution<double>(0, 1)(rng);
    DenseGraph g = gen_gnp(n + t % 2, p, 900 + t);
    auto brute = brute_force_embed(hb.h, g);
    v.require(brute.outcome != BruteOutcome::budget_exceeded, "oracle budget");
    const bool contains = brute.outcome == BruteOutcome::found;
    found += contains;
    negative += !contains;
    v.require(!contains || check_embedding(hb.h, g, brute.map).empty(), "oracle map invalid");

    auto res = run_main_pipeline(g, hb, {}, t);
    if (res.ok) {
      ++pipe_ok;
      v.require(contains, "pipeline succeeded where the oracle certified non-containment");
      v.require(check_embedding(hb.h, g, res.g).empty(), "pipeline map invalid");
    }

    // Blow-up on parts sized to the colour classes.
    std::vector<int> demand(hb.r, 0);
    for (int c : hb.chi) ++demand[c - 1];
    BlowupInput in;
    in.g = &g;
    in.h = &hb.h;
    int next = 0;
    for (int d : demand) {
      in.parts.push_back(range(next, std::min(g.n(), next + d)));
      next += d;
    }
    in.verts = range(0, n);
    for (int c : hb.chi) in.phi.push_back(c - 1);
    try {
      auto b = blowup_embed(in);
      ++blow_ok;
      v.require(contains, "blow-up succeeded where the oracle certified non-containment");
      v.require(oracle::is_embedding(oracle::Adj(hb.h), oracle::Adj(g), b.f), "blow-up map invalid");
    } catch (const Error&) {
    }
  }
  v.detail << found << " contained, " << negative << " certified negative; pipeline " << pipe_ok << " and blow-up "
           << blow_ok << " successes all confirmed";
}

// ---- 9 ------------------------------------------------------------------------------

void extremal_negatives(Verdict& v) {
  DenseGraph two = gen_two_clique(12);
  DenseGraph c12 = make_named(NamedKind::cycle_power, {1, 12});
  auto b = brute_force_embed(c12, two);
  v.require(b.outcome == BruteOutcome::exhausted_no_embedding, "two-clique oracle");
  v.require(!oracle::contains_subgraph(oracle::Adj(c12), oracle::Adj(two)), "two-clique permutation oracle");

  BandwidthedH hb = gen_cycle_power(12, 1);
  auto res = run_main_pipeline(two, hb, {}, 1);
  v.require(!res.ok, "pipeline succeeded on two cliques");
  v.require(res.stage.find("connectivity") != std::string::npos, "stage '" + res.stage + "' is not connectivity");
  bool audit_cites = false;
  for (const auto& a : res.audit) audit_cites = audit_cites || (!a.pass && a.detail.find("component") != std::string::npos);
  audit_cites = audit_cites || res.inequality.find("component") != std::string::npos;
  v.require(audit_cites, "audit does not cite disconnection");

  DenseGraph kr = gen_kr_factor_extremal(3, 9);
  BandwidthedH tiling = gen_kr_tiling(3, 3);
  auto f = brute_force_embed(tiling.h, kr);
  v.require(f.outcome == BruteOutcome::exhausted_no_embedding, "K_3-factor oracle");
  v.require(!oracle::contains_subgraph(oracle::clique_tiling(3, 3), oracle::Adj(kr)), "K_3-factor permutation oracle");
  v.detail << "two-clique: " << brute_outcome_name(b.outcome) << ", pipeline stage " << res.stage
           << "; K_3-factor: " << brute_outcome_name(f.outcome);
}

// ---- 10 -----------------------------------------------------------------------------

void slicing_property(Verdict& v) {
  std::mt19937_64 rng(10);
  std::uniform_real_distribution<double> unit(0, 1);
  int accepted = 0, swaps_total = 0, attempts = 0;
  for (int t = 0; t < 50; ++t) {
    // Plant a pair that is exactly (eps, delta)-regular.
    std::vector<int> a, b;
    oracle::Adj g(1);
    double eps = 0, delta = 0;
    for (;;) {
      ++attempts;
      const int sa = 6 + static_cast<int>(unit(rng) * 7), sb = 6 + static_cast<int>(unit(rng) * 7);
      g = oracle::Adj(sa + sb + 4);
      const double p = 0.5 + 0.4 * unit(rng);
      std::bernoulli_distribution coin(p);
      for (int u = 0; u < sa + sb + 4; ++u)
        for (int w = u + 1; w < sa + sb + 4; ++w)
          if (coin(rng)) g.add(u, w);
      a = range(0, sa);
      b = range(sa, sa + sb);
      eps = 0.25 + 0.2 * unit(rng);
      delta = oracle::density(g, a, b) - 0.05;
      if (oracle::eps_regular(g, a, b, eps)) break;
    }
    const double alpha = 0.05 * unit(rng);
    // |A sym-diff A'| <= alpha |A'|: swap as many vertices as the bound allows (spares are
    // the four vertices outside both sides).
    auto perturb = [&](std::vector<int> side, int spare_base) {
      int k = static_cast<int>(std::floor(alpha * side.size() / 2 + 1e-12));
      for (int i = 0; i < k; ++i) side[i] = spare_base + i;
      swaps_total += k;
      return side;
    };
    auto a2 = perturb(a, a.size() + b.size());
    auto b2 = perturb(b, a.size() + b.size() + 2);
    auto [eps2, delta2] = slice_robustness_expected(eps, delta, alpha);
    DenseGraph dg = g.graph();
    bool ok = true;
    try {
      auto verdict = is_eps_regular(dg, a2, b2, std::min(eps2, 1.0), CheckMode::exact);
      ok = verdict.regular && verdict.certified && pair_density(dg, a2, b2) >= delta2 - 1e-12;
      ok = ok && oracle::eps_regular(g, a2, b2, std::min(eps2, 1.0));
    } catch (const Error& e) {
      ok = false;
    }
    v.require(ok, "pair " + std::to_string(t) + " rejected");
    accepted += ok;
  }
  v.detail << accepted << "/50 accepted; " << swaps_total << " vertices swapped (alpha |A'| < 1 at sides <= 12); "
           << attempts << " plantings";
}

// ---- 11 -----------------------------------------------------------------------------

void phi_bijection_suite(Verdict& v) {
  int cells = 0;
  for (int r = 1; r <= 6; ++r)
    for (int l = 1; l <= 6; ++l) {
      std::set<std::pair<int, int>> image;
      for (int i = 1; i <= l; ++i)
        for (int j = 1; j <= 2 * r; ++j) {
          Cell c{i, j}, d = phi_bijection(c, r, l);
          v.require(d.i >= 1 && d.i <= 2 * l && d.j >= 1 && d.j <= r, "range");
          v.require(phi_inverse(d, r, l) == c, "round trip");
          image.insert({d.i, d.j});
          ++cells;
        }
      v.require(static_cast<int>(image.size()) == 2 * l * r, "not a bijection");
      for (int a = 1; a <= 2 * l; ++a)
        for (int b = 1; b <= r; ++b) v.require(phi_bijection(phi_inverse({a, b}, r, l), r, l) == Cell{a, b}, "inverse round trip");
      for (int b = 1; b <= r; ++b) v.require(phi_bijection({1, b}, r, l) == Cell{1, b}, "prefix");
    }
  v.detail << cells << " cells";
}

// ---- 12 -----------------------------------------------------------------------------

void end_to_end(Verdict& v) {
  int ok = 0, labelled = 0, with_v0 = 0;
  double worst = 0;
  const int clusters = 24;
  for (uint64_t seed = 1; seed <= 10; ++seed) {
    const int m = 5 + static_cast<int>(seed % 4);  // n in {120, 144, 168, 192}
    const int n = clusters * m;
    DenseGraph g = gen_planted_z(clusters, m, clusters / 2 - 1, 0.7, 0.2, seed);
    BandwidthedH hb = gen_cycle_power(n, 2);
    PipelineOptions opt;
    opt.L_target = clusters;
    auto t0 = Clock::now();
    auto res = run_main_pipeline(g, hb, opt, seed);
    const double secs = since(t0);
    worst = std::max(worst, secs);
    v.require(secs < 300, "seed over 5 min");
    with_v0 += res.v0 > 0;
    if (res.ok) {
      bool valid = oracle::is_embedding(oracle::Adj(hb.h), oracle::Adj(g), res.g);
      v.require(valid, "success not revalidated");
      ok += valid;
    } else {
      bool named = !res.stage.empty() && !res.inequality.empty();
      v.require(named, "failure without stage and inequality");
      labelled += named;
    }
  }
  v.require(ok >= 5, "success rate");
  v.detail << ok << "/10 succeeded, " << labelled << "/" << 10 - ok << " failures labelled, " << with_v0
           << " runs with V0 nonempty, max " << fmt(worst) << " s/seed";
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    double limit;  // seconds for the whole criterion; per-item limits are checked inside
    std::function<void(Verdict&)> run;
  };
  const std::vector<Criterion> all = {
      {1, "named-graph bandwidth", 1, named_bandwidth},
      {2, "CZ inclusion chain", 1, cz_chain},
      {3, "density oracle", 30, density_oracle},
      {4, "basic assignment suite", 250, lemma13_suite},
      {5, "cell balancing suite", 500, lemma18_suite},
      {6, "connecting lemma", 200, connecting_lemma},
      {7, "Hamilton powers", 2400, hamilton_powers},
      {8, "oracle consistency", 120, oracle_consistency},
      {9, "extremal negatives", 10, extremal_negatives},
      {10, "slicing robustness", 60, slicing_property},
      {11, "phi bijection", 1, phi_bijection_suite},
      {12, "end-to-end pipeline", 3000, end_to_end},
  };
  int failed = 0;
  for (const auto& c : all) {
    Verdict v;
    auto t0 = Clock::now();
    try {
      c.run(v);
    } catch (const std::exception& e) {
      v.require(false, std::string("uncaught: ") + e.what());
    }
    const double secs = since(t0);
    v.require(secs < c.limit, "time limit " + fmt(c.limit, 0) + " s");
    failed += !v.pass;
    std::printf("%s %2d %-24s %7.2f s  %s%s%s\n", v.pass ? "PASS" : "FAIL", c.id, c.name, secs, v.detail.str().c_str(),
                v.pass ? "" : "  first failure: ", v.first_failure.c_str());
    std::fflush(stdout);
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(all.size()) - failed, all.size());
  return failed ? 1 : 0;
}
