#include <doctest.h>

#include "fgred/instances.hpp"

using namespace fgred;

TEST_CASE("generators are deterministic for a fixed seed") {
  for (const char* kind : {"3sum", "minplus", "exacttri", "ov", "sparse", "mono", "cbmm",
                           "trico", "setdisj", "strings", "sparse-bundle"}) {
    auto a = generate(kind, "{}", 7);
    auto b = generate(kind, "{}", 7);
    CHECK(instances_equal(a, b));
    auto c = generate(kind, "{}", 8);
    // not a hard guarantee, but these generators have far more than one outcome
    CHECK(a.kind == c.kind);
  }
  auto a = generate("3sum", R"({"n":4,"nhat":2})", 7);
  auto b = generate("3sum", R"({"n":4,"nhat":2})", 7);
  CHECK(instances_equal(a, b));
}

TEST_CASE("validate(generate(...)) passes for all kinds and many seeds") {
  for (const char* kind : {"3sum", "3sum-symmetric", "minplus", "exacttri", "ov", "sparse",
                           "mono", "cbmm", "trico", "setdisj", "strings", "sparse-bundle"}) {
    for (uint64_t seed = 0; seed < 100; ++seed) {
      auto inst = generate(kind, "{}", seed);
      CHECK(!validate(inst));
    }
  }
  // variant coverage for trico
  for (int v = 0; v <= 3; ++v)
    for (uint64_t seed = 0; seed < 25; ++seed) {
      auto inst = generate("trico", R"({"variant_id":)" + std::to_string(v) + "}", seed);
      CHECK(!validate(inst));
    }
}

TEST_CASE("planted modes plant") {
  auto inst = generate("ov", R"({"n":2,"f":2,"planted":true})", 3);
  const auto& ov = std::get<OVInstance>(inst.payload);
  bool orth = true;
  for (size_t s = 0; s < ov.f; ++s)
    if (ov.at(0, s) && ov.at(1, s)) orth = false;
  CHECK(orth);

  auto ts = generate("3sum", R"({"planted":true})", 5);
  const auto& t = std::get<ThreeSumInstance>(ts.payload);
  bool found = false;
  for (const auto& a : t.a)
    for (const auto& b : t.b)
      for (const auto& c : t.c)
        if ((a + b + c).raw_eq(RestrictedReal(0))) found = true;
  CHECK(found);
}

TEST_CASE("generator rejects bad params") {
  CHECK_THROWS_AS(generate("3sum", R"({"n":0})", 1), BadParams);
  CHECK_THROWS_AS(generate("nosuchkind", "{}", 1), BadParams);
  CHECK_THROWS_AS(generate("ov", R"({"zzz":1})", 1), BadParams);
}

TEST_CASE("validators catch the spec's named violations") {
  auto inst = generate("trico", R"({"variant_id":2,"p":2})", 1);
  auto& trico = std::get<TriCoInstance>(inst.payload);
  // force 3 nodes of one color into a light(2) instance
  uint32_t color = trico.nodes[0].color;
  uint8_t part = trico.nodes[0].part;
  trico.nodes.push_back({color, part, 0});
  trico.nodes.push_back({color, part, 0});
  trico.nodes.push_back({color, part, 0});
  auto v = validate(trico);
  REQUIRE(v);
  CHECK(v->message.find("color multiplicity") != std::string::npos);

  auto inst2 = generate("trico", R"({"variant_id":1})", 1);
  auto& t2 = std::get<TriCoInstance>(inst2.payload);
  // add an intra-part edge
  uint32_t a = UINT32_MAX, b = UINT32_MAX;
  for (uint32_t i = 0; i < t2.nodes.size() && b == UINT32_MAX; ++i)
    for (uint32_t j = i + 1; j < t2.nodes.size(); ++j)
      if (t2.nodes[i].part == 0 && t2.nodes[j].part == 0) {
        a = i;
        b = j;
        break;
      }
  REQUIRE(b != UINT32_MAX);
  t2.edges.emplace_back(a, b);
  auto v2 = validate(t2);
  REQUIRE(v2);
  CHECK(v2->message.find("intra-part") != std::string::npos);

  SparseGraph g;
  g.nodes = 3;
  g.edges = {{0, 1}, {1, 0}};
  auto v3 = validate(g);
  REQUIRE(v3);
  CHECK(v3->message.find("duplicate") != std::string::npos);
}

TEST_CASE("serialize round-trips every generated kind") {
  for (const char* kind : {"3sum", "minplus", "exacttri", "ov", "sparse", "mono", "cbmm",
                           "trico", "setdisj", "strings", "sparse-bundle"}) {
    for (uint64_t seed = 1; seed <= 5; ++seed) {
      auto inst = generate(kind, "{}", seed);
      auto text = serialize(inst);
      auto back = deserialize(text);
      CHECK(instances_equal(inst, back));
      CHECK(serialize(back) == text);
    }
  }
}

TEST_CASE("rationals and infinities survive the file format") {
  ThreeSumInstance t;
  t.a = {RestrictedReal(Rational::fraction(1, 3)), RestrictedReal(Rational::fraction(-7, 2))};
  t.b = {RestrictedReal(5), RestrictedReal(Rational::fraction(22, 7))};
  t.c = {RestrictedReal(0)};
  Instance inst{"3sum", t, {}};
  auto back = deserialize(serialize(inst));
  CHECK(instances_equal(inst, back));

  MinPlusInstance mp;
  mp.n = 2;
  mp.d = 1;
  mp.a = {RestrictedReal::infinity(), RestrictedReal(3)};
  mp.b = {RestrictedReal(1), RestrictedReal::infinity()};
  Instance inst2{"minplus", mp, {}};
  auto back2 = deserialize(serialize(inst2));
  CHECK(instances_equal(inst2, back2));
}

TEST_CASE("truncated and malformed files raise ParseError") {
  auto text = serialize(generate("ov", "{}", 1));
  CHECK_THROWS_AS(deserialize(text.substr(0, text.size() / 2)), ParseError);
  CHECK_THROWS_AS(deserialize(R"({"kind":"ov","payload":{}})"), ParseError);
  CHECK_THROWS_AS(deserialize(R"({"kind":"wat","payload":{}})"), ParseError);
}
