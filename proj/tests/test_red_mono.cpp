#include <doctest.h>

#include <random>
#include <set>

#include "fgred/red_mono.hpp"

using namespace fgred;
using namespace fgred::red_mono;

namespace {

SparseGraph random_sparse(std::mt19937_64& rng, size_t nodes, int pct) {
  SparseGraph g;
  g.nodes = nodes;
  for (uint32_t u = 0; u < nodes; ++u)
    for (uint32_t v = u + 1; v < nodes; ++v)
      if (static_cast<int>(rng() % 100) < pct) g.edges.emplace_back(u, v);
  return g;
}

EdgeColoredMultigraph random_mono(std::mt19937_64& rng, size_t nodes, size_t colors,
                                  int pct) {
  EdgeColoredMultigraph g;
  g.nodes = nodes;
  g.parts.resize(nodes);
  for (size_t v = 0; v < nodes; ++v) g.parts[v] = static_cast<uint8_t>(v % 3);
  for (uint32_t u = 0; u < nodes; ++u)
    for (uint32_t v = u + 1; v < nodes; ++v) {
      if (g.parts[u] == g.parts[v]) continue;
      if (static_cast<int>(rng() % 100) < pct)
        g.edges.push_back({u, v, static_cast<uint32_t>(rng() % colors)});
    }
  return g;
}

bool is_3ap_free(const std::vector<long long>& s) {
  std::set<long long> members(s.begin(), s.end());
  for (size_t x = 0; x < s.size(); ++x)
    for (size_t z = x + 1; z < s.size(); ++z) {
      long long sum = s[x] + s[z];
      if (sum % 2 == 0 && members.count(sum / 2) && sum / 2 != s[x]) return false;
    }
  return true;
}

}  // namespace

TEST_CASE("overlay decode equals per-instance sparse-triangle answers") {
  std::mt19937_64 rng(3);
  SUBCASE("single instance: answers identical to AE-Sparse-Tri") {
    SparseBundle bundle;
    bundle.slots = 7;
    bundle.graphs.push_back(random_sparse(rng, 7, 50));
    auto ov = overlay(bundle, 5);
    CHECK(!validate(ov.graph));
    auto mono = oracles::ae_mono_tri(ov.graph, oracles::Mode::Decide);
    auto want = oracles::ae_sparse_tri(bundle.graphs[0], oracles::Mode::Decide);
    REQUIRE(mono.size() == want.size());
    for (size_t e = 0; e < mono.size(); ++e) {
      auto [gi, se] = ov.source_edge[e];
      CHECK(gi == 0);
      CHECK(mono[e].yes == want[se].yes);
    }
  }
  SUBCASE("20 random bundles decode exactly, for any seed") {
    for (uint64_t seed = 0; seed < 20; ++seed) {
      SparseBundle bundle;
      bundle.slots = 8;
      size_t count = 1 + rng() % 4;
      for (size_t g = 0; g < count; ++g)
        bundle.graphs.push_back(random_sparse(rng, 3 + rng() % 6, 45));
      auto ov = overlay(bundle, seed);
      CHECK(!validate(ov.graph));
      auto mono = oracles::ae_mono_tri(ov.graph, oracles::Mode::Decide);
      std::vector<std::vector<oracles::EdgeAnswer>> want;
      for (const auto& g : bundle.graphs)
        want.push_back(oracles::ae_sparse_tri(g, oracles::Mode::Decide));
      for (size_t e = 0; e < mono.size(); ++e) {
        auto [gi, se] = ov.source_edge[e];
        CHECK(mono[e].yes == want[gi][se].yes);
      }
    }
  }
  SUBCASE("instance larger than the slot count is rejected") {
    SparseBundle bundle;
    bundle.slots = 3;
    bundle.graphs.push_back(random_sparse(rng, 5, 50));
    CHECK_THROWS_AS(overlay(bundle, 1), TooManyNodes);
  }
}

TEST_CASE("mono_to_acp_trico_light decodes exactly on small graphs") {
  std::array<uint8_t, 3> parts = {0, 1, 2};
  SUBCASE("single all-same-color triangle decodes yes") {
    EdgeColoredMultigraph g;
    g.nodes = 3;
    g.parts = {0, 1, 2};
    g.edges = {{0, 1, 5}, {0, 2, 5}, {1, 2, 5}};
    auto red = mono_to_acp_trico_light(g, parts);
    CHECK(!validate(red.instance));
    auto acp = oracles::tri_co_acp(red.instance);
    auto got = decode_acp_answers(red, acp);
    REQUIRE(got.size() == 1);  // one A-B edge
    CHECK(got[0] == 1);
  }
  SUBCASE("colors differing in one bit decode no") {
    EdgeColoredMultigraph g;
    g.nodes = 3;
    g.parts = {0, 1, 2};
    g.edges = {{0, 1, 5}, {0, 2, 5}, {1, 2, 4}};
    auto red = mono_to_acp_trico_light(g, parts);
    auto got = decode_acp_answers(red, oracles::tri_co_acp(red.instance));
    REQUIRE(got.size() == 1);
    CHECK(got[0] == 0);
  }
  SUBCASE("missing apex edge: spurious-positive regression pin") {
    // A-B edge present, (B,C) edge present, but (A,C) missing: no triangle
    EdgeColoredMultigraph g;
    g.nodes = 3;
    g.parts = {0, 1, 2};
    g.edges = {{0, 1, 7}, {1, 2, 7}};
    auto red = mono_to_acp_trico_light(g, parts);
    auto got = decode_acp_answers(red, oracles::tri_co_acp(red.instance));
    REQUIRE(got.size() == 1);
    CHECK(got[0] == 0);
  }
  SUBCASE("exhaustive bit/edge-presence combinations on one triple") {
    // nodes a,b,z; colors of the three edges range over {0,1} x presence
    for (int mask = 0; mask < 8; ++mask)
      for (uint32_t cab = 0; cab < 2; ++cab)
        for (uint32_t caz = 0; caz < 2; ++caz)
          for (uint32_t cbz = 0; cbz < 2; ++cbz) {
            EdgeColoredMultigraph g;
            g.nodes = 3;
            g.parts = {0, 1, 2};
            if (mask & 1) g.edges.push_back({0, 1, cab});
            if (mask & 2) g.edges.push_back({0, 2, caz});
            if (mask & 4) g.edges.push_back({1, 2, cbz});
            auto red = mono_to_acp_trico_light(g, {0, 1, 2});
            auto got = decode_acp_answers(red, oracles::tri_co_acp(red.instance));
            auto want = oracles::ae_mono_tri(g, oracles::Mode::Decide);
            size_t q = 0;
            for (size_t e = 0; e < g.edges.size(); ++e) {
              uint8_t pu = g.parts[g.edges[e].u], pv = g.parts[g.edges[e].v];
              if ((pu == 0 && pv == 1) || (pu == 1 && pv == 0)) {
                CHECK((got[q] == 1) == want[e].yes);
                ++q;
              }
            }
          }
  }
  SUBCASE("random tripartite graphs, <= 8 nodes per part, all edges via rotations") {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 40; ++trial) {
      auto g = random_mono(rng, 6 + rng() % 7, 1 + rng() % 4, 55);
      auto want = oracles::ae_mono_tri(g, oracles::Mode::Decide);
      std::vector<int8_t> got(g.edges.size(), -1);
      for (const auto& parts3 :
           {std::array<uint8_t, 3>{0, 1, 2}, {0, 2, 1}, {1, 2, 0}}) {
        auto red = mono_to_acp_trico_light(g, parts3);
        CHECK(!validate(red.instance));
        auto dec = decode_acp_answers(red, oracles::tri_co_acp(red.instance));
        for (size_t q = 0; q < red.query_edges.size(); ++q)
          got[red.query_edges[q]] = dec[q];
      }
      for (size_t e = 0; e < g.edges.size(); ++e) {
        REQUIRE(got[e] >= 0);  // the three rotations cover every edge
        CHECK((got[e] == 1) == want[e].yes);
      }
    }
  }
  SUBCASE("parallel edges are rejected") {
    EdgeColoredMultigraph g;
    g.nodes = 3;
    g.parts = {0, 1, 2};
    g.edges = {{0, 1, 1}, {0, 1, 2}};
    CHECK_THROWS_AS(mono_to_acp_trico_light(g, parts), NotSimple);
  }
}

TEST_CASE("behrend_set: 3-AP-freeness, smallness, monotonicity") {
  CHECK(behrend_set(1) == std::vector<long long>{0});
  CHECK(behrend_set(2) == std::vector<long long>{0, 1});
  CHECK_THROWS_AS(behrend_set(0), BadParams);

  size_t prev = 0;
  for (long long n : {2ll, 4ll, 8ll, 16ll, 32ll, 64ll, 128ll, 256ll, 512ll, 1024ll, 2048ll,
                      4096ll}) {
    auto s = behrend_set(n);
    CHECK(is_3ap_free(s));
    CHECK(std::is_sorted(s.begin(), s.end()));
    CHECK(s.back() < n);
    CHECK(s.front() >= 0);
    CHECK(s.size() >= prev);  // monotone in N
    prev = s.size();
  }
  // the set must be reasonably large (at least the base-3 cube size)
  CHECK(behrend_set(4096).size() >= 128);
}

TEST_CASE("mono_to_int_exact_tri: weights and decode") {
  std::array<uint8_t, 3> parts = {0, 1, 2};
  SUBCASE("monochromatic K3 maps to a zero triangle") {
    EdgeColoredMultigraph g;
    g.nodes = 3;
    g.parts = {0, 1, 2};
    g.edges = {{0, 1, 9}, {0, 2, 9}, {1, 2, 9}};
    auto red = mono_to_int_exact_tri(g, parts);
    auto ans = oracles::ae_exact_tri(red.graph, oracles::Mode::Decide);
    REQUIRE(red.query_ij.size() == 1);
    auto [i, j] = red.query_ij[0];
    CHECK(ans[i * red.graph.nj + j].yes);
  }
  SUBCASE("two colors on a triangle give a nonzero sum") {
    EdgeColoredMultigraph g;
    g.nodes = 3;
    g.parts = {0, 1, 2};
    g.edges = {{0, 1, 3}, {0, 2, 3}, {1, 2, 8}};
    auto red = mono_to_int_exact_tri(g, parts);
    auto ans = oracles::ae_exact_tri(red.graph, oracles::Mode::Decide);
    auto [i, j] = red.query_ij[0];
    CHECK(!ans[i * red.graph.nj + j].yes);
  }
  SUBCASE("random graphs: decode equals ae_mono_tri on every edge via rotations") {
    std::mt19937_64 rng(17);
    for (int trial = 0; trial < 40; ++trial) {
      auto g = random_mono(rng, 6 + rng() % 7, 1 + rng() % 5, 55);
      auto want = oracles::ae_mono_tri(g, oracles::Mode::Decide);
      std::vector<int8_t> got(g.edges.size(), -1);
      for (const auto& parts3 :
           {std::array<uint8_t, 3>{0, 1, 2}, {0, 2, 1}, {1, 2, 0}}) {
        auto red = mono_to_int_exact_tri(g, parts3);
        auto ans = oracles::ae_exact_tri(red.graph, oracles::Mode::Decide);
        for (size_t q = 0; q < red.query_edges.size(); ++q) {
          auto [i, j] = red.query_ij[q];
          got[red.query_edges[q]] = ans[i * red.graph.nj + j].yes ? 1 : 0;
        }
      }
      for (size_t e = 0; e < g.edges.size(); ++e) {
        REQUIRE(got[e] >= 0);
        CHECK((got[e] == 1) == want[e].yes);
      }
    }
  }
  SUBCASE("zero-triangle equivalence holds exhaustively on the image") {
    std::mt19937_64 rng(23);
    auto g = random_mono(rng, 9, 3, 70);
    auto red = mono_to_int_exact_tri(g, parts);
    const auto& wg = red.graph;
    for (size_t i = 0; i < wg.ni; ++i)
      for (size_t j = 0; j < wg.nj; ++j)
        for (size_t k = 0; k < wg.nk; ++k) {
          const auto& wij = wg.WIJ(i, j);
          const auto& wik = wg.WIK(i, k);
          const auto& wkj = wg.WKJ(k, j);
          if (wij.is_infinite() || wik.is_infinite() || wkj.is_infinite()) continue;
          bool zero = (wij + wik + wkj).raw_eq(RestrictedReal(0));
          bool same_color = wik.raw_eq(wkj) && (wij.raw_eq(-(wik + wik)));
          CHECK(zero == same_color);
        }
  }
}
