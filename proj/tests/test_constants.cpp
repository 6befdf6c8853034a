#include <doctest.h>

#include "ldbw/common.hpp"
#include "ldbw/constants.hpp"

using namespace ldbw;

TEST_CASE("preset chains are separated") {
  CHECK(ConstantsHierarchy::embedding_chain().check().ok());
  CHECK(ConstantsHierarchy::hampower_chain().check().ok());
  CHECK(ConstantsHierarchy::embedding_chain().sigma() == 10);
}

TEST_CASE("separation is a * sigma <= b") {
  ConstantsHierarchy h;
  h.set("a", 0.01);
  h.set("b", 0.1);
  h.relate("a", "b");
  CHECK(h.check().ok());
  h.set("a", 0.0101);
  auto rep = h.check();
  CHECK_FALSE(rep.ok());
  REQUIRE(rep.violations().size() == 1);
  CHECK(rep.violations()[0].rfind("a << b", 0) == 0);
  h.set_sigma(2);
  CHECK(h.check().ok());

  // A relation naming an unset constant is a violation, not a pass.
  h.relate("b", "missing");
  CHECK_FALSE(h.check().ok());
}

TEST_CASE("strict enforcement throws, lenient records") {
  ConstantsHierarchy h;
  h.set("x", 0.5);
  h.set("y", 0.6);
  h.relate("x", "y");
  CHECK_NOTHROW(h.enforce("test"));
  h.set_strict(true);
  try {
    h.enforce("stage-name");
    FAIL("expected a hypothesis violation");
  } catch (const Error& e) {
    CHECK(e.status() == Status::hypothesis_violation);
    CHECK(e.stage() == "stage-name");
  }
}

TEST_CASE("value validation") {
  ConstantsHierarchy h;
  CHECK_THROWS_AS(h.set("a", 0), Error);
  CHECK_THROWS_AS(h.set("a", 1.5), Error);
  CHECK_NOTHROW(h.set("a", 1));
  CHECK_THROWS_AS(h.get("nope"), Error);
  CHECK(h.get_or("nope", 7) == 7);
  CHECK_THROWS_AS(h.set_sigma(1.5), Error);
}

TEST_CASE("JSON round trip") {
  auto base = ConstantsHierarchy::embedding_chain();
  auto h = ConstantsHierarchy::from_json_text(R"({"sigma": 4, "values": {"eps": 0.02}})", base);
  CHECK(h.sigma() == 4);
  CHECK(h.get("eps") == doctest::Approx(0.02));
  CHECK(h.relations().size() == base.relations().size());
  auto back = ConstantsHierarchy::from_json_text(h.to_json_text(), ConstantsHierarchy{});
  CHECK(back.values() == h.values());
  CHECK(back.relations().size() == h.relations().size());
  CHECK(back.sigma() == 4);

  auto custom = ConstantsHierarchy::from_json_text(R"({"values": {"p": 0.1, "q": 0.2}, "relations": [["p", "q"]]})",
                                                   ConstantsHierarchy{});
  CHECK_FALSE(custom.check().ok());
  CHECK_THROWS_AS(ConstantsHierarchy::from_json_text("{", base), Error);
  CHECK_THROWS_AS(ConstantsHierarchy::from_json_text(R"({"values": {"eps": 2}})", base), Error);
}

TEST_CASE("Rng streams are reproducible") {
  Rng a(42), b(42);
  for (int i = 0; i < 10; ++i) CHECK(a.next_u64() == b.next_u64());
  Rng c = Rng(42).split(hash_tag("x")), d = Rng(42).split(hash_tag("x")), e = Rng(42).split(hash_tag("y"));
  CHECK(c.next_u64() == d.next_u64());
  CHECK(Rng(42).split(hash_tag("x")).next_u64() != e.next_u64());
  auto s = Rng(5).sample(20, 7);
  CHECK(s.size() == 7);
  CHECK(std::is_sorted(s.begin(), s.end()));
  CHECK(std::adjacent_find(s.begin(), s.end()) == s.end());
  auto p = Rng(5).permutation(9);
  std::sort(p.begin(), p.end());
  for (int i = 0; i < 9; ++i) CHECK(p[i] == i);
}

TEST_CASE("Bits") {
  Bits b(130);
  b.set(0);
  b.set(64);
  b.set(129);
  CHECK(b.count() == 3);
  CHECK(b.items() == std::vector<int>{0, 64, 129});
  CHECK(b.next(1) == 64);
  CHECK(b.next(130) == -1);
  Bits f = Bits::full(130);
  CHECK(f.count() == 130);
  CHECK(b.subset_of(f));
  CHECK((f - b).count() == 127);
  CHECK(Bits::of(10, {1, 3}).and_count(Bits::of(10, {3, 4})) == 1);
}
