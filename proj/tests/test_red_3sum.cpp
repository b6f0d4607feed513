#include <doctest.h>

#include <random>
#include <set>

#include "fgred/red_3sum.hpp"

using namespace fgred;
using namespace fgred::red_3sum;

namespace {

std::vector<RestrictedReal> random_reals(std::mt19937_64& rng, size_t n, long long range) {
  std::vector<RestrictedReal> out;
  for (size_t t = 0; t < n; ++t)
    out.push_back(RestrictedReal(static_cast<long long>(rng() % (2 * range + 1)) - range));
  return out;
}

ThreeSumInstance random_3sum(std::mt19937_64& rng, size_t n, size_t nhat, long long range,
                             bool plant) {
  ThreeSumInstance t;
  t.a = random_reals(rng, n, range);
  t.b = random_reals(rng, n, range);
  t.c = random_reals(rng, nhat, range);
  if (plant) {
    size_t i = rng() % n, j = rng() % n, k = rng() % nhat;
    t.c[k] = -(t.a[i] + t.b[j]);
  }
  return t;
}

}  // namespace

TEST_CASE("staircase_pairs: emptiness, single bucket, completeness, length") {
  ComparisonLedger ledger;
  std::mt19937_64 rng(3);

  SUBCASE("c below all sums -> empty") {
    auto bp = bucketize(random_reals(rng, 8, 10), random_reals(rng, 8, 10), 2, ledger);
    CHECK(staircase_pairs(bp, RestrictedReal(-1000), ledger).empty());
  }
  SUBCASE("single bucket -> at most the single pair") {
    auto bp = bucketize(random_reals(rng, 4, 10), random_reals(rng, 4, 10), 4, ledger);
    auto st = staircase_pairs(bp, RestrictedReal(0), ledger);
    CHECK(st.size() <= 1);
  }
  SUBCASE("random: matches exhaustive bucket-range scan, length <= 2 nb") {
    for (int trial = 0; trial < 40; ++trial) {
      size_t n = 12 + rng() % 13, d = 2 + rng() % 3;
      // large range: duplicates vanishingly unlikely
      auto bp = bucketize(random_reals(rng, n, 4 * static_cast<long long>(n) * n),
                          random_reals(rng, n, 4 * static_cast<long long>(n) * n), d, ledger);
      RestrictedReal c(static_cast<long long>(rng() % 64) - 32);
      auto st = staircase_pairs(bp, c, ledger);
      std::set<std::pair<uint32_t, uint32_t>> got(st.begin(), st.end());
      CHECK(got.size() == st.size());
      for (uint32_t i = 0; i < bp.nb; ++i)
        for (uint32_t j = 0; j < bp.nb; ++j) {
          bool lo = bp.A(i, 0).raw_cmp(c + (-bp.B(j, 0))) <= 0;
          bool hi =
              bp.A(i, bp.width(i) - 1).raw_cmp(c + (-bp.B(j, bp.width(j) - 1))) >= 0;
          CHECK(got.count({i, j}) == (lo && hi ? 1u : 0u));
        }
      CHECK(st.size() <= 2 * bp.nb);
    }
  }
}

TEST_CASE("staircase completeness: every solution's bucket pair is routed") {
  ComparisonLedger ledger;
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 30; ++trial) {
    auto inst = random_3sum(rng, 16, 8, 24, trial % 2 == 0);
    auto bp = bucketize(inst.a, inst.b, 3, ledger);
    for (const auto& craw : inst.c) {
      RestrictedReal c = -craw;
      auto st = staircase_pairs(bp, c, ledger);
      std::set<std::pair<uint32_t, uint32_t>> got(st.begin(), st.end());
      for (uint32_t i = 0; i < bp.nb; ++i)
        for (size_t k = 0; k < bp.width(i); ++k)
          for (uint32_t j = 0; j < bp.nb; ++j)
            for (size_t l = 0; l < bp.width(j); ++l)
              if ((bp.A(i, k) + bp.B(j, l)).raw_eq(c)) CHECK(got.count({i, j}) == 1);
    }
  }
}

TEST_CASE("quad graph: d=1 never finds anything strictly between") {
  ComparisonLedger ledger;
  std::mt19937_64 rng(7);
  auto bp = bucketize(random_reals(rng, 6, 9), random_reals(rng, 6, 9), 1, ledger);
  ThreeSumRanks ranks(bp, ledger);
  std::vector<Quadruple> quads;
  quads.push_back({0, 0, {0, 0}, {0, 0}});
  auto qg = build_3sum_quad_graph(bp, quads, ranks, {}, SIZE_MAX, ledger);
  auto ans = oracles::ae_sparse_tri(qg.graph, oracles::Mode::Decide);
  for (const auto& a : ans) CHECK(!a.yes);
}

TEST_CASE("quad graph finds a planted between-pair") {
  ComparisonLedger ledger;
  // A bucket row {0, 10, 20}, B row {0,1,2}; anchors (0,0) and (2,2);
  // (k',l') = (1, anything) lies strictly between.
  std::vector<RestrictedReal> a = {RestrictedReal(0), RestrictedReal(10), RestrictedReal(20)};
  std::vector<RestrictedReal> b = {RestrictedReal(0), RestrictedReal(1), RestrictedReal(2)};
  auto bp = bucketize(a, b, 3, ledger);
  ThreeSumRanks ranks(bp, ledger);
  std::vector<Quadruple> quads = {{0, 0, {0, 0}, {2, 2}}};
  auto qg = build_3sum_quad_graph(bp, quads, ranks, {}, SIZE_MAX, ledger);
  auto ans = oracles::ae_sparse_tri(qg.graph, oracles::Mode::Witness);
  std::map<uint32_t, size_t> pos;
  for (size_t p = 0; p < qg.graph.query_edges.size(); ++p)
    pos[qg.graph.query_edges[p]] = p;
  CHECK(ans[pos[qg.query_edge[0]]].yes);
}

TEST_CASE("pair-mode counts equal the exhaustive pair scan") {
  ComparisonLedger ledger;
  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 40; ++trial) {
    size_t n = 8 + rng() % 9, d = 2 + rng() % 3;
    auto bp = bucketize(random_reals(rng, n, 20), random_reals(rng, n, 20), d, ledger);
    ThreeSumRanks ranks(bp, ledger);
    std::vector<PairRef> refs;
    for (int t = 0; t < 6; ++t) {
      uint32_t i = static_cast<uint32_t>(rng() % bp.nb);
      uint32_t j = static_cast<uint32_t>(rng() % bp.nb);
      refs.push_back({i, j, static_cast<int32_t>(rng() % bp.width(i)),
                      static_cast<int32_t>(rng() % bp.width(j))});
    }
    for (auto dir : {PairDir::Below, PairDir::Above}) {
      auto pg = build_3sum_pair_graph(bp, refs, ranks, dir, {}, SIZE_MAX, ledger);
      auto ans = oracles::ae_sparse_tri(pg.graph, oracles::Mode::Count);
      std::map<uint32_t, size_t> pos;
      for (size_t p = 0; p < pg.graph.query_edges.size(); ++p)
        pos[pg.graph.query_edges[p]] = p;
      for (size_t r = 0; r < refs.size(); ++r) {
        const auto& rf = refs[r];
        RestrictedReal ref_sum = bp.A(rf.i, rf.k) + bp.B(rf.j, rf.l);
        uint64_t want = 0;
        for (size_t kp = 0; kp < bp.width(rf.i); ++kp)
          for (size_t lp = 0; lp < bp.width(rf.j); ++lp) {
            int cmp = (bp.A(rf.i, kp) + bp.B(rf.j, lp)).raw_cmp(ref_sum);
            if ((dir == PairDir::Below && cmp < 0) || (dir == PairDir::Above && cmp > 0))
              ++want;
          }
        CHECK(ans[pos[pg.query_edge[r]]].count == want);
      }
    }
  }
}

TEST_CASE("pair-mode ledger bound holds") {
  ComparisonLedger ledger;
  std::mt19937_64 rng(17);
  auto bp = bucketize(random_reals(rng, 16, 40), random_reals(rng, 16, 40), 2, ledger);
  ThreeSumRanks ranks(bp, ledger);
  std::vector<PairRef> refs;
  for (uint32_t i = 0; i < bp.nb; ++i)
    refs.push_back({i, i, 0, 0});
  auto pg = build_3sum_pair_graph(bp, refs, ranks, PairDir::Below, {}, SIZE_MAX, ledger);
  CHECK(pg.row.edges <= pg.row.edges_bound);
  CHECK_THROWS_AS(build_3sum_pair_graph(bp, refs, ranks, PairDir::Below, {}, 2, ledger),
                  QuadBudgetExceeded);
}

TEST_CASE("variant1 pred/succ: itself convention and scan equality") {
  BruteSparseTriOracle oracle;
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 25; ++trial) {
    size_t n = 10 + rng() % 11, d = 2 + rng() % 3;
    ComparisonLedger ledger;
    auto bp = bucketize(random_reals(rng, n, 30), random_reals(rng, n, 30), d, ledger);
    std::vector<RestrictedReal> cvals;
    for (int t = 0; t < 5; ++t)
      cvals.push_back(RestrictedReal(static_cast<long long>(rng() % 81) - 40));
    // make one c hit an exact sum so the "itself" convention is exercised
    cvals.push_back(bp.A(rng() % bp.nb, 0) + bp.B(rng() % bp.nb, 0));
    std::vector<Variant1Query> queries;
    for (uint32_t ci = 0; ci < cvals.size(); ++ci)
      for (auto [i, j] : staircase_pairs(bp, cvals[ci], ledger))
        queries.push_back({i, j, ci});
    auto route = trial % 2 ? Route::Counting : Route::Witness;
    auto res = solve_3sum_variant1(bp, queries, cvals, oracle, trial, ledger, route);
    for (size_t t = 0; t < queries.size(); ++t) {
      const auto& q = queries[t];
      const RestrictedReal& c = cvals[q.c_index];
      // exhaustive pred/succ within the bucket pair
      bool has_pred = false, has_succ = false;
      RestrictedReal best_pred, best_succ;
      for (size_t k = 0; k < bp.width(q.i); ++k)
        for (size_t l = 0; l < bp.width(q.j); ++l) {
          RestrictedReal s = bp.A(q.i, k) + bp.B(q.j, l);
          if (s.raw_cmp(c) <= 0) {
            if (!has_pred || s.raw_cmp(best_pred) > 0) best_pred = s;
            has_pred = true;
          } else {
            if (!has_succ || s.raw_cmp(best_succ) < 0) best_succ = s;
            has_succ = true;
          }
        }
      REQUIRE(res.pred[t].defined() == has_pred);
      REQUIRE(res.succ[t].defined() == has_succ);
      if (has_pred) {
        RestrictedReal got = bp.A(q.i, res.pred[t].k) + bp.B(q.j, res.pred[t].l);
        CHECK(got.raw_eq(best_pred));
      }
      if (has_succ) {
        RestrictedReal got = bp.A(q.i, res.succ[t].k) + bp.B(q.j, res.succ[t].l);
        CHECK(got.raw_eq(best_succ));
      }
    }
  }
}

TEST_CASE("all_nums_3sum_via_sparse equals the oracle") {
  BruteSparseTriOracle oracle;
  SUBCASE("planted triples are found; huge C values are all no") {
    std::mt19937_64 rng(31);
    for (uint64_t seed = 0; seed < 10; ++seed) {
      auto inst = random_3sum(rng, 12, 6, 20, true);
      ComparisonLedger ledger;
      auto got = all_nums_3sum_via_sparse(inst, 3, oracle, seed, ledger);
      CHECK(got == oracles::all_nums_3sum(inst));
    }
    ThreeSumInstance far;
    far.a = {RestrictedReal(1), RestrictedReal(2)};
    far.b = {RestrictedReal(3), RestrictedReal(4)};
    far.c = {RestrictedReal(1000), RestrictedReal(2000)};
    ComparisonLedger ledger;
    auto got = all_nums_3sum_via_sparse(far, 2, oracle, 1, ledger);
    CHECK(got == std::vector<uint8_t>{0, 0});
  }
  SUBCASE("50 random n=24 instances across d in {2,3,4}, both routes") {
    std::mt19937_64 rng(37);
    for (int trial = 0; trial < 50; ++trial) {
      auto inst = random_3sum(rng, 24, 24, 60, trial % 3 == 0);
      size_t d = 2 + trial % 3;
      auto route = trial % 2 ? Route::Counting : Route::Witness;
      ComparisonLedger ledger;
      auto got = all_nums_3sum_via_sparse(inst, d, oracle, trial, ledger, route);
      CHECK(got == oracles::all_nums_3sum(inst));
    }
  }
}

TEST_CASE("real3sum_to_exact_tri: detection, absence, degenerate buckets") {
  auto make_symmetric = [](std::mt19937_64& rng, size_t n, long long range, bool plant) {
    ThreeSumInstance t;
    t.a = random_reals(rng, n, range);
    if (plant && n >= 3) {
      size_t i = rng() % n, j = rng() % n;
      size_t k = rng() % n;
      while (k == i || k == j) k = rng() % n;
      t.a[k] = -(t.a[i] + t.a[j]);
    }
    t.b = t.a;
    t.c = t.a;
    return t;
  };
  auto decide = [](const Real3SumToExactTri& red) {
    if (red.partial_yes) return true;
    for (const auto& inst : red.instances)
      for (const auto& ans : oracles::ae_exact_tri(inst, oracles::Mode::Decide))
        if (ans.yes) return true;
    return false;
  };
  auto brute = [](const ThreeSumInstance& t) {
    for (const auto& x : t.a)
      for (const auto& y : t.a)
        for (const auto& z : t.a)
          if ((x + y + z).raw_eq(RestrictedReal(0))) return true;
    return false;
  };

  std::mt19937_64 rng(41);
  SUBCASE("planted and random instances match the brute-force answer") {
    for (int trial = 0; trial < 30; ++trial) {
      auto inst = make_symmetric(rng, 18, 40, trial % 2 == 0);
      ComparisonLedger ledger;
      auto red = real3sum_to_exact_tri(inst, 6, 0.5, ledger);
      CHECK(decide(red) == brute(inst));
      CHECK(red.valid_triples <= 3 * red.bucket_count * red.bucket_count);
      if (red.partial_yes) {
        auto [x, y, z] = red.partial_witness;
        CHECK((x + y + z).raw_eq(RestrictedReal(0)));
      }
    }
  }
  SUBCASE("g = n: buckets of size one") {
    auto inst = make_symmetric(rng, 9, 25, true);
    ComparisonLedger ledger;
    auto red = real3sum_to_exact_tri(inst, 9, 0.5, ledger);
    CHECK(decide(red) == brute(inst));
  }
  SUBCASE("bad bucket count") {
    auto inst = make_symmetric(rng, 6, 10, false);
    ComparisonLedger ledger;
    CHECK_THROWS_AS(real3sum_to_exact_tri(inst, 0, 0.5, ledger), BadBucketCount);
    CHECK_THROWS_AS(real3sum_to_exact_tri(inst, 7, 0.5, ledger), BadBucketCount);
  }
}
