#pragma once

#include <map>
#include <string>
#include <vector>

namespace ldbw {

// a << b is checked as a * sigma <= b.
struct Relation {
  std::string small;
  std::string large;
};

struct SeparationItem {
  Relation rel;
  double small_value = 0;
  double large_value = 0;
  bool ok = false;
};

struct SeparationReport {
  double sigma = 10;
  std::vector<SeparationItem> items;
  bool ok() const;
  std::vector<std::string> violations() const;
};

class ConstantsHierarchy {
 public:
  ConstantsHierarchy() = default;

  // Names used across the library. Integer-valued parameters (L', Delta, r)
  // enter the chain through their reciprocals.
  static ConstantsHierarchy embedding_chain();  // beta << 1/L' << rho << eps << c << delta << rho' << eta << d, 1/Delta
  static ConstantsHierarchy hampower_chain();   // eps << delta << rho << eta3 << eta2 << eta1 << eta0 << d1 << d << eta, 1/r

  void set(const std::string& name, double value);
  bool has(const std::string& name) const { return values_.count(name) != 0; }
  double get(const std::string& name) const;
  double get_or(const std::string& name, double fallback) const;
  const std::map<std::string, double>& values() const { return values_; }

  void relate(const std::string& small, const std::string& large);
  const std::vector<Relation>& relations() const { return relations_; }

  double sigma() const { return sigma_; }
  void set_sigma(double s);
  bool strict() const { return strict_; }
  void set_strict(bool s) { strict_ = s; }

  SeparationReport check() const;
  // Throws hypothesis-violation naming the first broken relation when strict.
  SeparationReport enforce(const std::string& stage) const;

  // {"sigma": 10, "strict": false, "values": {...}, "relations": [["beta","inv_L"], ...]}
  // Missing "relations" keeps the preset chain of the base object.
  static ConstantsHierarchy from_json_text(const std::string& text, ConstantsHierarchy base);
  std::string to_json_text() const;

 private:
  double sigma_ = 10;
  bool strict_ = false;
  std::map<std::string, double> values_;
  std::vector<Relation> relations_;
};

}  // namespace ldbw
