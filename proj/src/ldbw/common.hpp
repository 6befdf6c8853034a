#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace ldbw {

// Mirrors the CLI exit codes.
enum class Status : int {
  ok = 0,
  verified_negative = 1,
  hypothesis_violation = 2,
  budget_exhausted = 3,
  invalid_input = 4,
};

const char* status_name(Status s);

class Error : public std::runtime_error {
 public:
  Error(Status status, std::string stage, std::string code, std::string detail);

  Status status() const { return status_; }
  const std::string& stage() const { return stage_; }
  const std::string& code() const { return code_; }
  const std::string& detail() const { return detail_; }

 private:
  Status status_;
  std::string stage_;
  std::string code_;
  std::string detail_;
};

[[noreturn]] void fail(Status status, const std::string& stage, const std::string& code,
                       const std::string& detail);

// Fixed-size bitset over 0..n-1.
class Bits {
 public:
  Bits() = default;
  explicit Bits(int n) : n_(n), w_((n + 63) / 64, 0) {}

  static Bits full(int n);
  static Bits of(int n, const std::vector<int>& items);

  int size() const { return n_; }
  void set(int i) { w_[i >> 6] |= (uint64_t{1} << (i & 63)); }
  void reset(int i) { w_[i >> 6] &= ~(uint64_t{1} << (i & 63)); }
  bool test(int i) const { return (w_[i >> 6] >> (i & 63)) & 1; }

  int count() const {
    int c = 0;
    for (uint64_t x : w_) c += std::popcount(x);
    return c;
  }
  bool any() const {
    for (uint64_t x : w_)
      if (x) return true;
    return false;
  }
  bool none() const { return !any(); }

  int and_count(const Bits& o) const {
    int c = 0;
    for (size_t k = 0; k < w_.size(); ++k) c += std::popcount(w_[k] & o.w_[k]);
    return c;
  }
  bool subset_of(const Bits& o) const {
    for (size_t k = 0; k < w_.size(); ++k)
      if (w_[k] & ~o.w_[k]) return false;
    return true;
  }
  bool intersects(const Bits& o) const {
    for (size_t k = 0; k < w_.size(); ++k)
      if (w_[k] & o.w_[k]) return true;
    return false;
  }

  Bits& operator&=(const Bits& o) {
    for (size_t k = 0; k < w_.size(); ++k) w_[k] &= o.w_[k];
    return *this;
  }
  Bits& operator|=(const Bits& o) {
    for (size_t k = 0; k < w_.size(); ++k) w_[k] |= o.w_[k];
    return *this;
  }
  Bits& operator-=(const Bits& o) {
    for (size_t k = 0; k < w_.size(); ++k) w_[k] &= ~o.w_[k];
    return *this;
  }
  friend Bits operator&(Bits a, const Bits& b) { return a &= b; }
  friend Bits operator|(Bits a, const Bits& b) { return a |= b; }
  friend Bits operator-(Bits a, const Bits& b) { return a -= b; }
  bool operator==(const Bits& o) const = default;

  // Smallest set index >= from, or -1.
  int next(int from) const;
  int first() const { return next(0); }
  std::vector<int> items() const;

  template <class F>
  void for_each(F&& f) const {
    for (size_t k = 0; k < w_.size(); ++k) {
      uint64_t x = w_[k];
      while (x) {
        int b = std::countr_zero(x);
        f(static_cast<int>(k * 64 + b));
        x &= x - 1;
      }
    }
  }

 private:
  int n_ = 0;
  std::vector<uint64_t> w_;
};

uint64_t splitmix64(uint64_t x);

// Seeded stream; split(tag) derives an independent child stream, so each
// pipeline stage can be reproduced in isolation.
class Rng {
 public:
  explicit Rng(uint64_t seed = 0, uint64_t stream = 0);

  uint64_t seed() const { return seed_; }
  uint64_t stream() const { return stream_; }
  Rng split(uint64_t tag) const;

  uint64_t next_u64() { return eng_(); }
  int uniform_int(int lo, int hi);  // inclusive
  double uniform01();
  bool bernoulli(double p) { return uniform01() < p; }

  template <class T>
  void shuffle(std::vector<T>& v) {
    std::shuffle(v.begin(), v.end(), eng_);
  }
  std::vector<int> permutation(int n);
  std::vector<int> sample(int n, int k);  // k distinct values of 0..n-1, sorted

 private:
  uint64_t seed_;
  uint64_t stream_;
  std::mt19937_64 eng_;
};

uint64_t hash_tag(const std::string& s);

}  // namespace ldbw
