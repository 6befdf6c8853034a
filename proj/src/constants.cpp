#include "ldbw/constants.hpp"

#include <json.hpp>

#include "ldbw/common.hpp"

namespace ldbw {

bool SeparationReport::ok() const {
  for (const auto& it : items)
    if (!it.ok) return false;
  return true;
}

std::vector<std::string> SeparationReport::violations() const {
  std::vector<std::string> out;
  for (const auto& it : items)
    if (!it.ok)
      out.push_back(it.rel.small + " << " + it.rel.large + " (" + std::to_string(it.small_value) +
                    " * " + std::to_string(sigma) + " > " + std::to_string(it.large_value) + ")");
  return out;
}

namespace {

void chain(ConstantsHierarchy& h, const std::vector<std::string>& names) {
  for (size_t i = 0; i + 1 < names.size(); ++i) h.relate(names[i], names[i + 1]);
}

}  // namespace

ConstantsHierarchy ConstantsHierarchy::embedding_chain() {
  ConstantsHierarchy h;
  // Values are a desk-scale example; only the relations carry meaning.
  h.values_ = {{"beta", 1e-9}, {"inv_L", 1e-8}, {"rho", 1e-7}, {"eps", 1e-6},
               {"c", 1e-5},    {"delta", 1e-4}, {"rho_prime", 1e-3}, {"eta", 1e-2},
               {"d", 0.5},     {"inv_Delta", 0.25}};
  chain(h, {"beta", "inv_L", "rho", "eps", "c", "delta", "rho_prime", "eta", "d"});
  h.relate("eta", "inv_Delta");
  return h;
}

ConstantsHierarchy ConstantsHierarchy::hampower_chain() {
  ConstantsHierarchy h;
  h.values_ = {{"eps", 1e-11}, {"delta", 1e-10}, {"rho", 1e-9}, {"eta3", 1e-8}, {"eta2", 1e-7},
               {"eta1", 1e-6}, {"eta0", 1e-5},   {"d1", 1e-4},  {"d", 1e-3},    {"eta", 0.1},
               {"inv_r", 0.5}};
  chain(h, {"eps", "delta", "rho", "eta3", "eta2", "eta1", "eta0", "d1", "d", "eta"});
  h.relate("d", "inv_r");
  return h;
}

void ConstantsHierarchy::set(const std::string& name, double value) {
  if (!(value > 0) || value > 1)
    fail(Status::invalid_input, "constants", "out-of-range",
         name + " = " + std::to_string(value) + " not in (0,1]");
  values_[name] = value;
}

double ConstantsHierarchy::get(const std::string& name) const {
  auto it = values_.find(name);
  if (it == values_.end()) fail(Status::invalid_input, "constants", "missing", name);
  return it->second;
}

double ConstantsHierarchy::get_or(const std::string& name, double fallback) const {
  auto it = values_.find(name);
  return it == values_.end() ? fallback : it->second;
}

void ConstantsHierarchy::relate(const std::string& small, const std::string& large) {
  relations_.push_back({small, large});
}

void ConstantsHierarchy::set_sigma(double s) {
  if (!(s >= 2)) fail(Status::invalid_input, "constants", "bad-sigma", std::to_string(s));
  sigma_ = s;
}

SeparationReport ConstantsHierarchy::check() const {
  SeparationReport rep;
  rep.sigma = sigma_;
  for (const auto& rel : relations_) {
    SeparationItem it;
    it.rel = rel;
    auto a = values_.find(rel.small), b = values_.find(rel.large);
    if (a == values_.end() || b == values_.end()) {
      it.ok = false;
    } else {
      it.small_value = a->second;
      it.large_value = b->second;
      it.ok = a->second * sigma_ <= b->second;
    }
    rep.items.push_back(it);
  }
  return rep;
}

SeparationReport ConstantsHierarchy::enforce(const std::string& stage) const {
  SeparationReport rep = check();
  if (strict_ && !rep.ok())
    fail(Status::hypothesis_violation, stage, "constants-separation", rep.violations().front());
  return rep;
}

ConstantsHierarchy ConstantsHierarchy::from_json_text(const std::string& text,
                                                      ConstantsHierarchy base) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    fail(Status::invalid_input, "constants", "bad-json", e.what());
  }
  if (j.contains("sigma")) base.set_sigma(j["sigma"].get<double>());
  if (j.contains("strict")) base.strict_ = j["strict"].get<bool>();
  if (j.contains("values"))
    for (auto& [k, v] : j["values"].items()) base.set(k, v.get<double>());
  if (j.contains("relations")) {
    base.relations_.clear();
    for (auto& pr : j["relations"]) base.relate(pr.at(0).get<std::string>(), pr.at(1).get<std::string>());
  }
  return base;
}

std::string ConstantsHierarchy::to_json_text() const {
  nlohmann::json j;
  j["sigma"] = sigma_;
  j["strict"] = strict_;
  j["values"] = values_;
  j["relations"] = nlohmann::json::array();
  for (const auto& r : relations_) j["relations"].push_back({r.small, r.large});
  return j.dump(2);
}

}  // namespace ldbw
