#include "ldbw/common.hpp"

#include <numeric>

namespace ldbw {

const char* status_name(Status s) {
  switch (s) {
    case Status::ok: return "ok";
    case Status::verified_negative: return "verified-negative";
    case Status::hypothesis_violation: return "hypothesis-violation";
    case Status::budget_exhausted: return "budget-exhausted";
    case Status::invalid_input: return "invalid-input";
  }
  return "unknown";
}

Error::Error(Status status, std::string stage, std::string code, std::string detail)
    : std::runtime_error("[" + stage + "] " + code + (detail.empty() ? "" : ": " + detail)),
      status_(status),
      stage_(std::move(stage)),
      code_(std::move(code)),
      detail_(std::move(detail)) {}

void fail(Status status, const std::string& stage, const std::string& code,
          const std::string& detail) {
  throw Error(status, stage, code, detail);
}

Bits Bits::full(int n) {
  Bits b(n);
  for (int i = 0; i < n; ++i) b.set(i);
  return b;
}

Bits Bits::of(int n, const std::vector<int>& items) {
  Bits b(n);
  for (int x : items) b.set(x);
  return b;
}

int Bits::next(int from) const {
  if (from >= n_) return -1;
  size_t k = static_cast<size_t>(from) >> 6;
  uint64_t x = w_[k] & (~uint64_t{0} << (from & 63));
  while (true) {
    if (x) return static_cast<int>(k * 64 + std::countr_zero(x));
    if (++k >= w_.size()) return -1;
    x = w_[k];
  }
}

std::vector<int> Bits::items() const {
  std::vector<int> out;
  out.reserve(count());
  for_each([&](int i) { out.push_back(i); });
  return out;
}

uint64_t splitmix64(uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

uint64_t hash_tag(const std::string& s) {
  uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : s) h = (h ^ c) * 1099511628211ULL;
  return h;
}

Rng::Rng(uint64_t seed, uint64_t stream)
    : seed_(seed), stream_(stream), eng_(splitmix64(seed ^ splitmix64(stream + 0x51ed27))) {}

Rng Rng::split(uint64_t tag) const { return Rng(seed_, splitmix64(stream_ ^ splitmix64(tag))); }

int Rng::uniform_int(int lo, int hi) {
  std::uniform_int_distribution<int> d(lo, hi);
  return d(eng_);
}

double Rng::uniform01() {
  std::uniform_real_distribution<double> d(0.0, 1.0);
  return d(eng_);
}

std::vector<int> Rng::permutation(int n) {
  std::vector<int> p(n);
  std::iota(p.begin(), p.end(), 0);
  shuffle(p);
  return p;
}

std::vector<int> Rng::sample(int n, int k) {
  std::vector<int> p = permutation(n);
  p.resize(std::min(k, n));
  std::sort(p.begin(), p.end());
  return p;
}

}  // namespace ldbw
