#include "ldbw/io.hpp"

#include <sstream>

namespace ldbw {

namespace {

[[noreturn]] void bad(const std::string& what) { fail(Status::invalid_input, "io", "malformed-input", what); }

template <class T>
T get(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) bad(std::string("missing field '") + key + "'");
  try {
    return j.at(key).get<T>();
  } catch (const std::exception&) {
    bad(std::string("field '") + key + "' has the wrong type");
  }
}

}  // namespace

Json graph_to_json(const DenseGraph& g) {
  Json edges = Json::array();
  for (auto [u, v] : g.edges()) edges.push_back({u, v});
  return {{"n", g.n()}, {"edges", edges}};
}

DenseGraph graph_from_json(const Json& j) {
  const Json& gj = j.is_object() && j.contains("graph") ? j.at("graph") : j;
  int n = get<int>(gj, "n");
  if (n < 0) bad("n must be >= 0");
  auto edges = get<std::vector<std::vector<int>>>(gj, "edges");
  GraphBuilder b(n);
  for (const auto& e : edges) {
    if (e.size() != 2) bad("edges must be pairs");
    b.add_edge(e[0], e[1]);
  }
  return b.build();
}

DenseGraph parse_graph_text(const std::string& text) {
  size_t k = text.find_first_not_of(" \t\r\n");
  if (k == std::string::npos) bad("empty graph input");
  if (text[k] == '{') {
    Json j;
    try {
      j = Json::parse(text);
    } catch (const std::exception& e) {
      bad(std::string("invalid JSON: ") + e.what());
    }
    if (j.contains("h") && !j.contains("graph")) return graph_from_json(j.at("h"));
    return graph_from_json(j);
  }
  std::istringstream is(text);
  return read_edgelist(is);
}

Json h_to_json(const BandwidthedH& hb) {
  return {{"graph", graph_to_json(hb.h)}, {"order", hb.order.order}, {"chi", hb.chi}, {"r", hb.r}};
}

BandwidthedH h_from_json(const Json& j) {
  const Json& hj = j.is_object() && j.contains("h") ? j.at("h") : j;
  BandwidthedH hb;
  hb.h = graph_from_json(hj);
  hb.order.order = hj.contains("order") ? get<std::vector<int>>(hj, "order") : VertexLabelling::identity(hb.h.n()).order;
  if (hj.contains("chi")) {
    hb.chi = get<std::vector<int>>(hj, "chi");
    hb.r = hj.contains("r") ? get<int>(hj, "r") : 1;
    for (int c : hb.chi) hb.r = std::max(hb.r, c);
  } else {
    BandwidthedH coloured = with_greedy_colouring(hb.h, hb.order);
    hb.chi = coloured.chi;
    hb.r = coloured.r;
  }
  if (!hb.order.is_permutation_of(hb.h.n())) bad("order must be a permutation of V(H)");
  return hb;
}

Json structure_to_json(const CycleStructure& cs) {
  return {{"l", cs.l},         {"width", cs.width}, {"cells", cs.cells}, {"v0", cs.v0},
          {"reduced", graph_to_json(cs.reduced)}, {"eps", cs.eps}, {"delta", cs.delta}};
}

CycleStructure structure_from_json(const Json& j) {
  CycleStructure cs;
  cs.l = get<int>(j, "l");
  cs.width = get<int>(j, "width");
  cs.cells = get<std::vector<std::vector<int>>>(j, "cells");
  if (j.contains("v0")) cs.v0 = get<std::vector<int>>(j, "v0");
  cs.reduced = graph_from_json(j.at("reduced"));
  cs.eps = get<double>(j, "eps");
  cs.delta = get<double>(j, "delta");
  return cs;
}

Json instance_to_json(const GeneratedInstance& inst) {
  Json j = {{"kind", inst.kind}, {"graph", graph_to_json(inst.g)}};
  if (inst.h) j["h"] = h_to_json(*inst.h);
  if (inst.structure) j["structure"] = structure_to_json(*inst.structure);
  return j;
}

Json witness_to_json(const WitnessSequence& w) {
  return {{"kind", witness_kind_name(w.kind)}, {"r", w.r}, {"vertices", w.vertices}};
}

Json ham_report_to_json(const HamReport& r) {
  return {{"route", r.route},
          {"attempts", r.attempts},
          {"blocks", r.blocks},
          {"C", r.C},
          {"flank_size", r.flank_size},
          {"reservoir", r.reservoir},
          {"reservoir_used", r.reservoir_used},
          {"cover_paths", r.cover_paths},
          {"leftover", r.leftover},
          {"matched_insertions", r.matched_insertions},
          {"window_insertions", r.window_insertions},
          {"deleted", r.deleted},
          {"violations", r.violations},
          {"failures", r.failures}};
}

Json embedding_to_json(const EmbeddingResult& r) {
  Json audit = Json::array();
  for (const auto& a : r.audit) audit.push_back({{"check", a.name}, {"pass", a.pass}, {"detail", a.detail}});
  Json cy = Json::object();
  for (const auto& [y, c] : r.candidate_sets) cy[std::to_string(y)] = c;
  Json j = {{"ok", r.ok},   {"status", status_name(r.status)}, {"audit", audit}, {"candidate_sets", cy},
            {"L", r.L},     {"l", r.l},   {"m", r.m},  {"v0", r.v0},  {"K", r.K}, {"s", r.s}};
  if (r.ok) j["g"] = r.g;
  else {
    j["stage"] = r.stage;
    j["inequality"] = r.inequality;
  }
  return j;
}

Json error_to_json(const Error& e) {
  return {{"ok", false}, {"status", status_name(e.status())}, {"stage", e.stage()}, {"code", e.code()}, {"detail", e.detail()}};
}

PipelineOptions pipeline_options_from_json(const Json& j) {
  PipelineOptions o;
  if (!j.is_object()) bad("options must be a JSON object");
  const Json& v = j.contains("values") ? j.at("values") : j;
  auto num = [&](const char* key, double& dst) {
    if (v.contains(key)) dst = get<double>(v, key);
  };
  num("eps", o.eps);
  num("delta", o.delta);
  num("d", o.d);
  num("rho", o.rho);
  num("eta", o.eta);
  num("c", o.c);
  const Json& p = j.contains("pipeline") ? j.at("pipeline") : v;
  if (p.contains("L_target")) o.L_target = get<int>(p, "L_target");
  if (p.contains("rstar_cap")) o.rstar_cap = get<int>(p, "rstar_cap");
  if (p.contains("budget")) o.budget = get<long long>(p, "budget");
  if (j.contains("strict")) o.strict = get<bool>(j, "strict");
  return o;
}

}  // namespace ldbw
