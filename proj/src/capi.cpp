#include "ldbw.h"

#include <cstring>
#include <sstream>

#include "ldbw/balance_g.hpp"
#include "ldbw/constants.hpp"
#include "ldbw/density.hpp"
#include "ldbw/embed.hpp"
#include "ldbw/hampower.hpp"
#include "ldbw/io.hpp"
#include "ldbw/partition_h.hpp"
#include "ldbw/regularity.hpp"

struct ldbw_graph {
  ldbw::DenseGraph g;
};

struct ldbw_hgraph {
  ldbw::BandwidthedH hb;
};

using namespace ldbw;

namespace {

thread_local std::string last_error;

char* dup(const std::string& s) {
  char* p = static_cast<char*>(std::malloc(s.size() + 1));
  if (p) std::memcpy(p, s.c_str(), s.size() + 1);
  return p;
}

void put(char** out, const Json& j) {
  if (out) *out = dup(j.dump());
}

// Runs f, mapping exceptions to status codes and an error report.
template <class F>
ldbw_status guarded(char** report, F&& f) {
  last_error.clear();
  if (report) *report = nullptr;
  try {
    return f();
  } catch (const Error& e) {
    last_error = e.what();
    put(report, error_to_json(e));
    return static_cast<ldbw_status>(e.status());
  } catch (const std::exception& e) {
    last_error = e.what();
    put(report, Json{{"ok", false}, {"status", "invalid-input"}, {"stage", "capi"}, {"code", "exception"}, {"detail", e.what()}});
    return LDBW_INVALID_INPUT;
  }
}

void need(bool ok, const char* what) {
  if (!ok) fail(Status::invalid_input, "capi", "invalid-argument", what);
}

Json parse_json(const char* text) {
  need(text != nullptr, "null JSON text");
  try {
    return Json::parse(text);
  } catch (const std::exception& e) {
    fail(Status::invalid_input, "capi", "malformed-json", e.what());
  }
}

CheckMode mode_of(const char* mode) {
  std::string m = mode ? mode : "sampled";
  if (m == "exact") return CheckMode::exact;
  if (m == "sampled" || m == "heuristic") return CheckMode::sampled;
  fail(Status::invalid_input, "capi", "invalid-argument", "mode must be exact or sampled");
}

Json verdict_json(const RegularityVerdict& v) {
  return {{"regular", v.regular},         {"certified", v.certified}, {"density", v.density},
          {"witness_x", v.x},             {"witness_y", v.y},         {"witness_density", v.witness_density},
          {"checked", v.checked}};
}

Json ledger_json(const MoveLedger& l) {
  Json moves = Json::array();
  for (const auto& mv : l.moves)
    moves.push_back({{"v", mv.v}, {"from", {mv.from.i, mv.from.j}}, {"to", {mv.to.i, mv.to.j}}, {"chain", mv.chain}});
  return moves;
}

}  // namespace

extern "C" {

const char* ldbw_status_name(ldbw_status s) { return status_name(static_cast<Status>(s)); }
const char* ldbw_last_error(void) { return last_error.c_str(); }
void ldbw_string_free(char* s) { std::free(s); }

ldbw_status ldbw_graph_parse(const char* text, ldbw_graph** out) {
  return guarded(nullptr, [&] {
    need(text && out, "null argument");
    *out = new ldbw_graph{parse_graph_text(text)};
    return LDBW_OK;
  });
}

ldbw_status ldbw_graph_from_edges(int n, const int* edges, size_t edge_count, ldbw_graph** out) {
  return guarded(nullptr, [&] {
    need(out && n >= 0 && (edges || edge_count == 0), "invalid argument");
    GraphBuilder b(n);
    for (size_t k = 0; k < edge_count; ++k) b.add_edge(edges[2 * k], edges[2 * k + 1]);
    *out = new ldbw_graph{b.build()};
    return LDBW_OK;
  });
}

ldbw_status ldbw_graph_write(const ldbw_graph* g, const char* format, char** out) {
  return guarded(nullptr, [&] {
    need(g && out, "null argument");
    std::string f = format ? format : "json";
    if (f == "edgelist") {
      std::ostringstream os;
      write_edgelist(os, g->g);
      *out = dup(os.str());
    } else {
      need(f == "json", "format must be json or edgelist");
      *out = dup(graph_to_json(g->g).dump());
    }
    return LDBW_OK;
  });
}

int ldbw_graph_order(const ldbw_graph* g) { return g ? g->g.n() : -1; }
long long ldbw_graph_edge_count(const ldbw_graph* g) { return g ? g->g.edge_count() : -1; }
int ldbw_graph_adjacent(const ldbw_graph* g, int u, int v) {
  if (!g || u < 0 || v < 0 || u >= g->g.n() || v >= g->g.n()) return 0;
  return g->g.adj(u, v) ? 1 : 0;
}
void ldbw_graph_free(ldbw_graph* g) { delete g; }

ldbw_status ldbw_hgraph_parse(const char* json, ldbw_hgraph** out) {
  return guarded(nullptr, [&] {
    need(out != nullptr, "null argument");
    *out = new ldbw_hgraph{h_from_json(parse_json(json))};
    return LDBW_OK;
  });
}

ldbw_status ldbw_hgraph_write(const ldbw_hgraph* h, char** out) {
  return guarded(nullptr, [&] {
    need(h && out, "null argument");
    *out = dup(h_to_json(h->hb).dump());
    return LDBW_OK;
  });
}

int ldbw_hgraph_bandwidth(const ldbw_hgraph* h) { return h ? bandwidth_of(h->hb.h, h->hb.order) : -1; }
void ldbw_hgraph_free(ldbw_hgraph* h) { delete h; }

ldbw_status ldbw_generate(const char* id, const char* params_json, uint64_t seed, char** out) {
  return guarded(out, [&] {
    need(id != nullptr, "null generator id");
    put(out, instance_to_json(gen_instance(id, params_json ? params_json : "", seed)));
    return LDBW_OK;
  });
}

ldbw_status ldbw_check_dense(const ldbw_graph* g, double rho, double d, const char* mode, int trials, uint64_t seed,
                             char** report) {
  return guarded(report, [&] {
    need(g != nullptr, "null graph");
    DensityParams p{rho, d};
    check_density_params(p);
    DensityVerdict v = mode_of(mode) == CheckMode::exact ? is_locally_dense_exact(g->g, p)
                                                         : is_locally_dense_sampled(g->g, p, trials, seed);
    put(report, Json{{"ok", v.ok}, {"certified", v.certified}, {"witness", v.x}, {"slack", v.slack},
                     {"subsets_checked", v.subsets_checked}});
    return v.ok ? LDBW_OK : LDBW_VERIFIED_NEGATIVE;
  });
}

ldbw_status ldbw_check_regular(const ldbw_graph* g, const int* a, size_t na, const int* b, size_t nb, double eps,
                               double delta, const char* mode, uint64_t seed, char** report) {
  return guarded(report, [&] {
    need(g && a && b, "null argument");
    std::vector<int> av(a, a + na), bv(b, b + nb);
    CheckMode m = mode_of(mode);
    RegularityVerdict v = is_eps_regular(g->g, av, bv, eps, m, seed);
    Json j = verdict_json(v);
    bool ok = v.regular;
    if (delta > 0) {
      SuperregularVerdict s = is_superregular(g->g, av, bv, eps, delta, m, seed);
      j["superregular"] = {{"ok", s.ok}, {"reason", s.reason}, {"low_vertex", s.low_vertex}};
      ok = ok && s.ok;
    }
    j["ok"] = ok;
    put(report, j);
    return ok ? LDBW_OK : LDBW_VERIFIED_NEGATIVE;
  });
}

ldbw_status ldbw_find_power(const ldbw_graph* g, int r, int n_target, uint64_t seed, char** report) {
  return guarded(report, [&] {
    need(g != nullptr, "null graph");
    HamResult res = find_hamilton_power(g->g, r, n_target > 0 ? n_target : g->g.n(), HamOptions{}, seed);
    auto chk = validate_witness(g->g, res.cycle);
    put(report, Json{{"ok", chk.ok}, {"cycle", witness_to_json(res.cycle)}, {"report", ham_report_to_json(res.report)}});
    return chk.ok ? LDBW_OK : LDBW_HYPOTHESIS_VIOLATION;
  });
}

ldbw_status ldbw_assign_basic(const ldbw_hgraph* h, const char* targets_json, double beta, char** report) {
  return guarded(report, [&] {
    need(h != nullptr, "null H");
    auto targets = parse_json(targets_json).get<std::vector<std::vector<int>>>();
    BasicResult res = basic_assignment(h->hb, targets, beta);
    const auto& rep = res.report;
    put(report, Json{{"ok", rep.ok()},
                     {"f", res.a.f},
                     {"special", res.a.special},
                     {"tallies", res.a.tallies},
                     {"block_end", res.block_end},
                     {"report",
                      {{"b1", rep.b1}, {"b2", rep.b2}, {"b3", rep.b3}, {"b4", rep.b4}, {"homomorphism", rep.homomorphism},
                       {"max_deviation", rep.max_deviation}, {"failures", rep.failures}}},
                     {"colouring",
                      {{"chi2", res.colouring.chi2}, {"width", res.colouring.width}, {"intervals", res.colouring.intervals},
                       {"proper", res.colouring.proper}, {"parity_ok", res.colouring.parity_ok},
                       {"max_prefix_gap", res.colouring.max_prefix_gap}}}});
    return LDBW_OK;
  });
}

ldbw_status ldbw_assign_special(const char* request_json, char** report) {
  return guarded(report, [&] {
    Json req = parse_json(request_json);
    BandwidthedH hb = h_from_json(req.at("h"));
    DenseGraph rg = graph_from_json(req.at("reduced"));
    std::vector<Bits> n_v;
    for (const auto& s : req.at("n_v")) n_v.push_back(Bits::of(rg.n(), s.get<std::vector<int>>()));
    auto b = req.at("b").get<std::vector<int>>();
    Json fj = req.value("framework", Json::object());
    FrameworkParams fp;
    fp.r = fj.value("r", static_cast<int>(b.size()));
    fp.eta = fj.value("eta", fp.eta);
    fp.d = fj.value("d", fp.d);
    fp.eps = fj.value("eps", fp.eps);
    fp.m = fj.value("m", fp.m);
    fp.block_cap = fj.value("block_cap", fp.block_cap);
    fp.strict = fj.value("strict", fp.strict);
    FrameworkTrail trail = build_framework(rg, n_v, b, fp);
    Json sj = req.value("special", Json::object());
    SpecialParams sp;
    sp.width = sj.value("width", sp.width);
    sp.b = sj.value("b", sp.b);
    sp.eps = sj.value("eps", sp.eps);
    sp.m = sj.value("m", sp.m);
    sp.L = sj.value("L", rg.n());
    sp.max_degree = sj.value("max_degree", 0);
    const int need_n = 8 * trail.K * sp.b + sp.width;
    if (hb.h.n() < need_n)
      fail(Status::invalid_input, "assign-special", "h-too-small",
           "|H| >= 8 K b + beta n = " + std::to_string(need_n) + " fails");
    std::vector<int> prefix(hb.order.order.begin(), hb.order.order.begin() + need_n);
    BandwidthedH hp;
    hp.h = hb.h.induced(prefix);
    hp.order = VertexLabelling::identity(need_n);
    for (int x : prefix) hp.chi.push_back(hb.chi[x]);
    hp.r = std::max(hb.r, fp.r);
    SpecialResult res = special_assignment(hp, rg, trail, n_v, sp);
    // Map prefix positions back to H vertices.
    std::vector<int> f(hb.h.n(), -2), ex(hb.h.n(), -1), ind;
    for (int t = 0; t < need_n; ++t) {
      f[prefix[t]] = res.a.f[t];
      ex[prefix[t]] = res.a.exceptional[t];
    }
    for (int t : res.independent) ind.push_back(prefix[t]);
    put(report, Json{{"ok", true},
                     {"framework",
                      {{"seq", trail.seq}, {"K", trail.K}, {"cliques", trail.cliques}, {"v0_parts", trail.v0_parts},
                       {"b", trail.b}, {"block_cap", trail.block_cap}, {"violations", trail.violations}}},
                     {"s", res.s},
                     {"f", f},
                     {"exceptional", ex},
                     {"independent", ind},
                     {"max_load", res.max_load},
                     {"load_bound", res.load_bound},
                     {"violations", res.violations}});
    return LDBW_OK;
  });
}

ldbw_status ldbw_balance(const char* request_json, uint64_t seed, char** report) {
  return guarded(report, [&] {
    Json req = parse_json(request_json);
    DenseGraph g = graph_from_json(req.at("graph"));
    CycleStructure cs = structure_from_json(req.at("structure"));
    auto tau = req.at("tau").get<std::vector<int>>();
    std::vector<int> targets;
    if (req.contains("targets")) targets = req.at("targets").get<std::vector<int>>();
    LemmaGOptions opt;
    opt.xi_n = req.value("xi_n", 0);
    opt.check_output = req.value("check_output", false);
    opt.strict = req.value("strict", true);
    opt.seed = seed;
    LemmaGResult res = lemma_g(g, cs, tau, req.contains("targets") ? &targets : nullptr, opt);
    Json j = {{"ok", true},
              {"m_ab", res.m_ab},
              {"l1", res.l1},
              {"x", structure_to_json(res.x)},
              {"max_sym_diff", res.max_sym_diff},
              {"phase1_moves", ledger_json(res.phase1.ledger)},
              {"audit", res.audit}};
    if (res.has_phase2) {
      j["phase2_moves"] = ledger_json(res.phase2.ledger);
      j["chains"] = res.phase2.ledger.chains.size();
      j["w"] = {res.phase2.w1, res.phase2.w2, res.phase2.w3};
    }
    if (opt.check_output) j["x_report_ok"] = res.x_report.ok();
    put(report, j);
    return LDBW_OK;
  });
}

ldbw_status ldbw_embed(const ldbw_graph* g, const ldbw_hgraph* h, const char* options_json, uint64_t seed,
                       char** report) {
  return guarded(report, [&] {
    need(g && h, "null argument");
    PipelineOptions opt;
    Json extra = Json::object();
    if (options_json && *options_json) {
      Json j = parse_json(options_json);
      opt = pipeline_options_from_json(j);
      if (j.contains("values")) {
        auto k = ConstantsHierarchy::from_json_text(options_json, ConstantsHierarchy::embedding_chain());
        Json sep = Json::array();
        for (const auto& v : k.check().violations()) sep.push_back(v);
        extra["separation_violations"] = sep;
      }
    }
    EmbeddingResult res = run_main_pipeline(g->g, h->hb, opt, seed);
    Json j = embedding_to_json(res);
    j.update(extra);
    put(report, j);
    return static_cast<ldbw_status>(res.status);
  });
}

ldbw_status ldbw_oracle(const ldbw_graph* h, const ldbw_graph* g, long long budget, char** report) {
  return guarded(report, [&] {
    need(h && g, "null argument");
    BruteResult res = brute_force_embed(h->g, g->g, budget > 0 ? budget : 50'000'000);
    Json j = {{"outcome", brute_outcome_name(res.outcome)}, {"nodes", res.nodes}};
    if (res.outcome == BruteOutcome::found) j["map"] = res.map;
    put(report, j);
    switch (res.outcome) {
      case BruteOutcome::found: return LDBW_OK;
      case BruteOutcome::exhausted_no_embedding: return LDBW_VERIFIED_NEGATIVE;
      default: return LDBW_BUDGET_EXHAUSTED;
    }
  });
}

ldbw_status ldbw_validate_embedding(const ldbw_graph* h, const ldbw_graph* g, const int* map, size_t n,
                                    char** report) {
  return guarded(report, [&] {
    need(h && g && (map || n == 0), "null argument");
    std::string why = check_embedding(h->g, g->g, std::vector<int>(map, map + n));
    put(report, Json{{"ok", why.empty()}, {"violation", why}});
    return why.empty() ? LDBW_OK : LDBW_VERIFIED_NEGATIVE;
  });
}

}  // extern "C"
