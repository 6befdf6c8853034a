// Command-line front end. Uses only the C API in ldbw.h.
#include <CLI11.hpp>
#include <json.hpp>

#include <atomic>
#include <chrono>
#include <fstream>
#include <iostream>
#include <memory>
#include <mutex>
#include <sstream>
#include <thread>

#include "ldbw.h"

using Json = nlohmann::json;

namespace {

struct Common {
  uint64_t seed = 1;
  std::string constants;
  std::string format = "json";
  std::string out;
};

struct GraphPtr {
  ldbw_graph* p = nullptr;
  ~GraphPtr() { ldbw_graph_free(p); }
};

struct HPtr {
  ldbw_hgraph* p = nullptr;
  ~HPtr() { ldbw_hgraph_free(p); }
};

struct Usage : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string slurp(const std::string& path) {
  std::stringstream ss;
  if (path == "-") {
    ss << std::cin.rdbuf();
  } else {
    std::ifstream in(path);
    if (!in) throw Usage("cannot read " + path);
    ss << in.rdbuf();
  }
  return ss.str();
}

// Inline JSON or a path to a JSON file.
std::string json_arg(const std::string& s) {
  size_t k = s.find_first_not_of(" \t\r\n");
  if (k != std::string::npos && (s[k] == '{' || s[k] == '[')) return s;
  return slurp(s);
}

void emit(const Common& c, const std::string& text) {
  if (c.out.empty()) {
    std::cout << text << "\n";
    return;
  }
  std::ofstream o(c.out);
  if (!o) throw Usage("cannot write " + c.out);
  o << text << "\n";
}

// Pretty-prints a report string returned by the library and frees it. Takes the
// out-parameter's address so the call that fills it is sequenced first.
int finish(const Common& c, ldbw_status st, char** slot) {
  char* report = *slot;
  std::string text;
  if (report) {
    try {
      text = Json::parse(report).dump(2);
    } catch (const std::exception&) {
      text = report;
    }
    ldbw_string_free(report);
  } else {
    text = Json{{"ok", false}, {"status", ldbw_status_name(st)}, {"detail", ldbw_last_error()}}.dump(2);
  }
  emit(c, text);
  return st;
}

void check(ldbw_status st) {
  if (st != LDBW_OK) throw std::runtime_error(std::string(ldbw_status_name(st)) + ": " + ldbw_last_error());
}

void load_graph(const std::string& path, GraphPtr& g) { check(ldbw_graph_parse(slurp(path).c_str(), &g.p)); }
void load_h(const std::string& path, HPtr& h) { check(ldbw_hgraph_parse(slurp(path).c_str(), &h.p)); }

// Value from the constants file ("values" member or flat), or the fallback.
double constant(const Common& c, const char* key, double fallback) {
  if (c.constants.empty()) return fallback;
  Json j = Json::parse(slurp(c.constants));
  const Json& v = j.contains("values") ? j["values"] : j;
  return v.contains(key) ? v[key].get<double>() : fallback;
}

std::vector<int> int_list(const std::string& s) {
  std::vector<int> out;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    if (tok.empty()) continue;
    out.push_back(std::stoi(tok));
  }
  return out;
}

struct SuiteJob {
  Json spec;
  uint64_t seed;
};

// One pipeline run on freshly generated G and H.
Json run_suite_job(const SuiteJob& job) {
  const Json& s = job.spec;
  auto t0 = std::chrono::steady_clock::now();
  Json row = {{"name", s.value("name", s.value("graph", Json::object()).value("id", "job"))}, {"seed", job.seed}};
  auto gen = [&](const Json& gspec, char** text) {
    std::string params = gspec.value("params", Json::object()).dump();
    return ldbw_generate(gspec.at("id").get<std::string>().c_str(), params.c_str(), job.seed, text);
  };
  char* gtext = nullptr;
  char* htext = nullptr;
  ldbw_status st = gen(s.at("graph"), &gtext);
  if (st == LDBW_OK) st = gen(s.at("h"), &htext);
  GraphPtr g;
  HPtr h;
  if (st == LDBW_OK) st = ldbw_graph_parse(gtext, &g.p);
  if (st == LDBW_OK) st = ldbw_hgraph_parse(htext, &h.p);
  ldbw_string_free(gtext);
  ldbw_string_free(htext);
  if (st != LDBW_OK) {
    row["status"] = ldbw_status_name(st);
    row["stage"] = "generate";
    row["detail"] = ldbw_last_error();
    return row;
  }
  char* report = nullptr;
  std::string opts = s.value("options", Json::object()).dump();
  st = ldbw_embed(g.p, h.p, opts.c_str(), job.seed, &report);
  Json rep = report ? Json::parse(report) : Json::object();
  ldbw_string_free(report);
  row["status"] = ldbw_status_name(st);
  row["ok"] = st == LDBW_OK;
  row["n"] = ldbw_graph_order(g.p);
  if (st != LDBW_OK) {
    row["stage"] = rep.value("stage", "");
    row["inequality"] = rep.value("inequality", rep.value("detail", ""));
  }
  row["seconds"] = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return row;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Embedding of low-bandwidth graphs into locally dense graphs"};
  app.require_subcommand(1);
  app.fallthrough();
  Common c;
  app.add_option("--seed", c.seed, "random seed");
  app.add_option("--constants", c.constants, "constants JSON file");
  app.add_option("--format", c.format, "graph output format")->check(CLI::IsMember({"json", "edgelist"}));
  app.add_option("--out", c.out, "output path (default stdout)");

  std::function<int()> action;

  // gen
  std::string gen_id, gen_params = "{}";
  auto* gen = app.add_subcommand("gen", "generate an instance");
  gen->add_option("id", gen_id, "generator id")->required();
  gen->add_option("--params", gen_params, "generator parameters (inline JSON or file)");
  gen->callback([&] {
    action = [&] {
      char* text = nullptr;
      ldbw_status st = ldbw_generate(gen_id.c_str(), json_arg(gen_params).c_str(), c.seed, &text);
      if (st != LDBW_OK || c.format == "json") return finish(c, st, &text);
      GraphPtr g;
      ldbw_status pst = ldbw_graph_parse(text, &g.p);
      ldbw_string_free(text);
      check(pst);
      char* el = nullptr;
      check(ldbw_graph_write(g.p, "edgelist", &el));
      std::string s = el;
      ldbw_string_free(el);
      if (!s.empty() && s.back() == '\n') s.pop_back();
      emit(c, s);
      return 0;
    };
  });

  // check-dense
  std::string dense_graph, dense_mode = "sampled";
  double dense_rho = -1, dense_d = -1;
  int dense_trials = 2000;
  auto* dense = app.add_subcommand("check-dense", "local density check");
  dense->add_option("graph", dense_graph)->required();
  dense->add_option("--rho", dense_rho);
  dense->add_option("--d", dense_d);
  dense->add_option("--mode", dense_mode)->check(CLI::IsMember({"exact", "sampled"}));
  dense->add_option("--trials", dense_trials);
  dense->callback([&] {
    action = [&] {
      GraphPtr g;
      load_graph(dense_graph, g);
      double rho = dense_rho >= 0 ? dense_rho : constant(c, "rho", 0.01);
      double d = dense_d >= 0 ? dense_d : constant(c, "d", 0.5);
      char* rep = nullptr;
      return finish(c, ldbw_check_dense(g.p, rho, d, dense_mode.c_str(), dense_trials, c.seed, &rep), &rep);
    };
  });

  // check-regular
  std::string reg_graph, reg_a, reg_b, reg_mode = "exact";
  double reg_eps = -1, reg_delta = 0;
  auto* reg = app.add_subcommand("check-regular", "regularity of a pair of vertex sets");
  reg->add_option("graph", reg_graph)->required();
  reg->add_option("--a", reg_a, "comma-separated vertices")->required();
  reg->add_option("--b", reg_b, "comma-separated vertices")->required();
  reg->add_option("--eps", reg_eps);
  reg->add_option("--delta", reg_delta, "also check superregularity when > 0");
  reg->add_option("--mode", reg_mode)->check(CLI::IsMember({"exact", "sampled"}));
  reg->callback([&] {
    action = [&] {
      GraphPtr g;
      load_graph(reg_graph, g);
      auto a = int_list(reg_a), b = int_list(reg_b);
      double eps = reg_eps >= 0 ? reg_eps : constant(c, "eps", 0.1);
      char* rep = nullptr;
      return finish(c,
                    ldbw_check_regular(g.p, a.data(), a.size(), b.data(), b.size(), eps, reg_delta, reg_mode.c_str(),
                                       c.seed, &rep),
                    &rep);
    };
  });

  // find-power
  std::string pow_graph;
  int pow_r = 2, pow_n = 0;
  auto* pow = app.add_subcommand("find-power", "power of a Hamilton cycle");
  pow->add_option("graph", pow_graph)->required();
  pow->add_option("--r", pow_r);
  pow->add_option("--n", pow_n, "cycle length (default |G|)");
  pow->callback([&] {
    action = [&] {
      GraphPtr g;
      load_graph(pow_graph, g);
      char* rep = nullptr;
      return finish(c, ldbw_find_power(g.p, pow_r, pow_n, c.seed, &rep), &rep);
    };
  });

  // assign-basic
  std::string basic_h, basic_targets;
  double basic_beta = -1;
  auto* basic = app.add_subcommand("assign-basic", "balanced homomorphism of H");
  basic->add_option("hgraph", basic_h)->required();
  basic->add_option("--targets", basic_targets, "[[m_11, ...], ...] inline or file")->required();
  basic->add_option("--beta", basic_beta);
  basic->callback([&] {
    action = [&] {
      HPtr h;
      load_h(basic_h, h);
      double beta = basic_beta > 0 ? basic_beta : constant(c, "beta", 0.01);
      char* rep = nullptr;
      return finish(c, ldbw_assign_basic(h.p, json_arg(basic_targets).c_str(), beta, &rep), &rep);
    };
  });

  // assign-special
  std::string special_req;
  auto* special = app.add_subcommand("assign-special", "framework and exceptional-vertex assignment");
  special->add_option("request", special_req, "request JSON file")->required();
  special->callback([&] {
    action = [&] {
      char* rep = nullptr;
      return finish(c, ldbw_assign_special(slurp(special_req).c_str(), &rep), &rep);
    };
  });

  // balance
  std::string bal_req;
  auto* bal = app.add_subcommand("balance", "rebalance cluster sizes of a cycle structure");
  bal->add_option("request", bal_req, "request JSON file")->required();
  bal->callback([&] {
    action = [&] {
      char* rep = nullptr;
      return finish(c, ldbw_balance(slurp(bal_req).c_str(), c.seed, &rep), &rep);
    };
  });

  // embed
  std::string emb_graph, emb_h;
  auto* emb = app.add_subcommand("embed", "run the full embedding pipeline");
  emb->add_option("graph", emb_graph, "host graph")->required();
  emb->add_option("hgraph", emb_h, "H with ordering and colouring")->required();
  emb->callback([&] {
    action = [&] {
      GraphPtr g;
      HPtr h;
      load_graph(emb_graph, g);
      load_h(emb_h, h);
      std::string opts = c.constants.empty() ? "" : slurp(c.constants);
      char* rep = nullptr;
      return finish(c, ldbw_embed(g.p, h.p, opts.empty() ? nullptr : opts.c_str(), c.seed, &rep), &rep);
    };
  });

  // oracle
  std::string or_h, or_graph;
  long long or_budget = 50'000'000;
  auto* orc = app.add_subcommand("oracle", "exact containment test");
  orc->add_option("hgraph", or_h)->required();
  orc->add_option("graph", or_graph)->required();
  orc->add_option("--budget", or_budget);
  orc->callback([&] {
    action = [&] {
      GraphPtr h, g;
      load_graph(or_h, h);
      load_graph(or_graph, g);
      char* rep = nullptr;
      return finish(c, ldbw_oracle(h.p, g.p, or_budget, &rep), &rep);
    };
  });

  // suite
  std::string suite_file;
  unsigned suite_jobs = std::max(1u, std::thread::hardware_concurrency());
  auto* suite = app.add_subcommand("suite", "batch of pipeline runs in parallel");
  suite->add_option("spec", suite_file, "{\"jobs\": [{\"graph\", \"h\", \"seeds\", \"options\"?}]}")->required();
  suite->add_option("--jobs,-j", suite_jobs);
  suite->callback([&] {
    action = [&] {
      Json spec = Json::parse(slurp(suite_file));
      std::vector<SuiteJob> jobs;
      for (const auto& j : spec.at("jobs"))
        for (const auto& s : j.at("seeds")) jobs.push_back({j, s.get<uint64_t>()});
      std::vector<Json> rows(jobs.size());
      std::atomic<size_t> next{0};
      std::vector<std::thread> pool;
      for (unsigned t = 0; t < std::max(1u, suite_jobs); ++t)
        pool.emplace_back([&] {
          for (size_t k; (k = next++) < jobs.size();) rows[k] = run_suite_job(jobs[k]);
        });
      for (auto& t : pool) t.join();
      int ok = 0;
      for (const auto& r : rows) ok += r.value("ok", false);
      emit(c, Json{{"runs", rows}, {"succeeded", ok}, {"total", rows.size()}}.dump(2));
      return ok == static_cast<int>(rows.size()) ? 0 : 1;
    };
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : LDBW_INVALID_INPUT;
  }
  try {
    return action();
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return LDBW_INVALID_INPUT;
  }
}
