#include "ldbw/connect.hpp"

#include <algorithm>
#include <optional>
#include <cmath>
#include <map>
#include <sstream>

#include "ldbw/density.hpp"

namespace ldbw {

namespace {

void violate(bool strict, const std::string& stage, const std::string& inequality,
             std::vector<std::string>& out) {
  if (strict) fail(Status::hypothesis_violation, stage, "hypothesis", inequality);
  out.push_back(inequality);
}

std::vector<std::vector<int>> r_subsets(const std::vector<int>& s, int r) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur;
  auto rec = [&](auto&& self, size_t from) -> void {
    if (static_cast<int>(cur.size()) == r) {
      out.push_back(cur);
      return;
    }
    for (size_t i = from; i < s.size(); ++i) {
      cur.push_back(s[i]);
      self(self, i + 1);
      cur.pop_back();
    }
  };
  rec(rec, 0);
  return out;
}

}  // namespace

BridgeResult find_bridging_clique(const DenseGraph& g, const Bits& u, const std::vector<int>& x,
                                  const std::vector<int>& y, const Bits& w, int r, double eta,
                                  bool strict) {
  const char* stage = "find_bridging_clique";
  if (r < 1) fail(Status::invalid_input, stage, "invalid-parameters", "r >= 1");
  const int c = static_cast<int>(x.size());
  if (c != static_cast<int>(y.size()) || c < r)
    fail(Status::invalid_input, stage, "invalid-parameters", "need |X| = |Y| >= r");
  const int n = g.n();
  Bits xs = Bits::of(n, x), ys = Bits::of(n, y);
  if (xs.intersects(ys) || xs.intersects(w) || ys.intersects(w) || xs.count() != c || ys.count() != c)
    fail(Status::invalid_input, stage, "not-disjoint", "X, Y, W must be pairwise disjoint sets");

  BridgeResult res;
  const int nu = u.count();
  for (int v : x)
    if (g.degree_into(v, u) < (0.5 + eta) * nu - 1e-9)
      violate(strict, stage, "d_G(x,U) >= (1/2+eta)|U| fails at x=" + std::to_string(v), res.violations);
  for (int v : y)
    if (g.degree_into(v, u) < (0.5 + eta) * nu - 1e-9)
      violate(strict, stage, "d_G(y,U) >= (1/2+eta)|U| fails at y=" + std::to_string(v), res.violations);
  if (w.count() > eta * nu / 2 + 1e-9)
    violate(strict, stage, "|W| <= eta|U|/2 fails (|W|=" + std::to_string(w.count()) + ")", res.violations);

  Bits xy = xs | ys;
  Bits u1 = u - xy - w;
  std::vector<int> high;
  u1.for_each([&](int v) {
    if (g.degree_into(v, xy) >= c + r) high.push_back(v);
  });
  res.high_attachment = static_cast<int>(high.size());
  if (high.empty())
    fail(Status::hypothesis_violation, stage, "no-high-attachment",
         "no vertex of U' has >= " + std::to_string(c + r) + " neighbours in X u Y");

  // Pattern = adjacency string over X then Y, in the given order.
  std::map<std::vector<char>, std::vector<int>> buckets;
  for (int v : high) {
    std::vector<char> pat(2 * c);
    for (int i = 0; i < c; ++i) pat[i] = g.adj(v, x[i]);
    for (int i = 0; i < c; ++i) pat[c + i] = g.adj(v, y[i]);
    buckets[pat].push_back(v);
  }
  std::vector<const std::pair<const std::vector<char>, std::vector<int>>*> order;
  for (const auto& b : buckets) order.push_back(&b);
  std::stable_sort(order.begin(), order.end(),
                   [](auto* a, auto* b) { return a->second.size() > b->second.size(); });

  auto pick = [&](const std::vector<char>& pat, int off, const std::vector<int>& side) {
    std::vector<int> out;
    for (int i = 0; i < c && static_cast<int>(out.size()) < r; ++i)
      if (pat[off + i]) out.push_back(side[i]);
    return out;
  };
  for (auto* b : order) {
    if (static_cast<int>(b->second.size()) < r) break;
    CliqueQuery q;
    q.r = r;
    q.within = Bits::of(n, b->second);
    if (auto k = first_extendable_clique(g, q)) {
      res.z = k->vertices;
      res.x_sub = pick(b->first, 0, x);
      res.y_sub = pick(b->first, c, y);
      res.bucket_size = static_cast<int>(b->second.size());
      return res;
    }
  }
  // Core buckets: all of U'' attached to a fixed r-subset of X and a fixed r-subset of Y.
  Bits hs = Bits::of(n, high);
  auto xsubs = r_subsets(x, r), ysubs = r_subsets(y, r);
  std::vector<std::pair<int, std::pair<int, int>>> cores;
  std::vector<Bits> xcommon, ycommon;
  for (auto& s : xsubs) xcommon.push_back(g.common_neighbourhood(s) & hs);
  for (auto& s : ysubs) ycommon.push_back(g.common_neighbourhood(s) & hs);
  for (size_t i = 0; i < xsubs.size(); ++i)
    for (size_t j = 0; j < ysubs.size(); ++j) {
      int sz = xcommon[i].and_count(ycommon[j]);
      if (sz >= r) cores.push_back({-sz, {static_cast<int>(i), static_cast<int>(j)}});
    }
  std::sort(cores.begin(), cores.end());
  for (auto& [negsz, ij] : cores) {
    CliqueQuery q;
    q.r = r;
    q.within = xcommon[ij.first] & ycommon[ij.second];
    if (auto k = first_extendable_clique(g, q)) {
      res.z = k->vertices;
      res.x_sub = xsubs[ij.first];
      res.y_sub = ysubs[ij.second];
      res.bucket_size = -negsz;
      res.relaxed = true;
      return res;
    }
  }
  fail(Status::hypothesis_violation, stage, "no-clique-in-bucket",
       "no K_" + std::to_string(r) + " inside any attachment bucket of U'' (|U''|=" +
           std::to_string(high.size()) + ")");
}

ConnectResult connect_cliques(const DenseGraph& g, const std::vector<int>& x, const std::vector<int>& y,
                              const Bits& w, const ConnectParams& p) {
  const char* stage = "connect_cliques";
  const int r = p.r, n = g.n();
  if (r < 1 || !(p.eta > 0)) fail(Status::invalid_input, stage, "invalid-parameters", "r >= 1, eta > 0");
  if (static_cast<int>(x.size()) != r || static_cast<int>(y.size()) != r)
    fail(Status::invalid_input, stage, "invalid-parameters", "X and Y must have r vertices");
  if (!g.is_clique(x) || !g.is_clique(y))
    fail(Status::invalid_input, stage, "not-a-clique", "X and Y must span K_r");
  Bits xs = Bits::of(n, x), ys = Bits::of(n, y);
  if (xs.intersects(ys) || xs.intersects(w) || ys.intersects(w))
    fail(Status::invalid_input, stage, "not-disjoint", "X, Y, W must be pairwise disjoint");

  ConnectResult res;
  res.c_paper = static_cast<int>(std::ceil(4.0 * r / p.eta - 1e-9));
  res.C_paper = static_cast<int>(std::ceil(9.0 * r / p.eta - 1e-9));
  const int cap = p.c_cap > 0 ? p.c_cap : 2 * r;
  res.c = std::clamp(res.c_paper, r, std::max(r, cap));

  if (w.count() > p.eta * n / 4 + 1e-9)
    violate(p.strict, stage, "|W| <= eta n/4 fails (|W|=" + std::to_string(w.count()) + ")", res.violations);

  auto branch = [&](const std::vector<int>& s) -> std::string {
    if (g.joint_degree(s) >= p.eta * n - 1e-9) return "extendable";
    Bits room = g.common_neighbourhood(s) - w;
    if (find_clique(g, room, res.C_paper - r, p.clique_budget)) return "clique";
    return "none";
  };
  res.x_branch = branch(x);
  res.y_branch = branch(y);
  if (res.x_branch == "none")
    violate(p.strict, stage, "X is eta n-extendable or lies in K_ceil(9r/eta) avoiding W", res.violations);
  if (res.y_branch == "none")
    violate(p.strict, stage, "Y is eta n-extendable or lies in K_ceil(9r/eta) avoiding W", res.violations);

  // Envelopes: c-cliques completing X and Y, kept apart from each other and from W.
  // On small hosts c shrinks towards r until envelopes and bridge all fit; the shrink is recorded.
  Bits room_x = g.common_neighbourhood(x) - w - ys;
  const Bits w2 = w | xs | ys;
  const int c_first = res.c;
  for (;; --res.c) {
    auto xe = find_clique(g, room_x, res.c, p.clique_budget);
    std::optional<std::vector<int>> ye;
    if (xe) ye = find_clique(g, g.common_neighbourhood(y) - w - xs - Bits::of(n, *xe), res.c, p.clique_budget);
    if (!xe || !ye) {
      if (res.c > r) continue;
      fail(Status::hypothesis_violation, stage, "envelope-not-found",
           !xe ? "no K_" + std::to_string(r) + " in N(X) \\ (W u Y)"
               : "no K_" + std::to_string(r) + " in N(Y) \\ (W u X u X')");
    }
    try {
      res.bridge = find_bridging_clique(g, Bits::full(n), *xe, *ye, w2, r, p.eta, p.strict);
      break;
    } catch (const Error&) {
      if (res.c == r) throw;
    }
  }
  if (res.c < c_first)
    res.violations.push_back("envelope size shrunk from " + std::to_string(c_first) + " to " + std::to_string(res.c));
  for (auto& v : res.bridge.violations) res.violations.push_back(v);

  res.path.kind = WitnessKind::path;
  res.path.r = r;
  res.path.vertices = res.bridge.x_sub;
  for (int v : res.bridge.z) res.path.vertices.push_back(v);
  for (int v : res.bridge.y_sub) res.path.vertices.push_back(v);

  // Postcondition, rechecked rather than trusted.
  WitnessSequence left{WitnessKind::path, r, x}, right{WitnessKind::path, r, res.path.vertices};
  for (int v : res.path.vertices) left.vertices.push_back(v);
  for (int v : y) right.vertices.push_back(v);
  for (const auto* s : {&res.path, &left, &right}) {
    auto chk = validate_witness(g, *s);
    if (!chk.ok) fail(Status::hypothesis_violation, stage, "postcondition", chk.violation);
  }
  for (int v : res.path.vertices)
    if (w2.test(v)) fail(Status::hypothesis_violation, stage, "postcondition", "path meets W u X u Y");
  return res;
}

}  // namespace ldbw
