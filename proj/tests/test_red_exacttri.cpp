#include <doctest.h>

#include <random>

#include "fgred/red_exacttri.hpp"

using namespace fgred;
using namespace fgred::red_exacttri;

namespace {

MinPlusInstance random_minplus(std::mt19937_64& rng, size_t n, size_t d, int range,
                               int inf_pct = 0) {
  MinPlusInstance inst;
  inst.n = n;
  inst.d = d;
  auto rnd = [&]() -> RestrictedReal {
    if (inf_pct && static_cast<int>(rng() % 100) < inf_pct) return RestrictedReal::infinity();
    return RestrictedReal(static_cast<long long>(rng() % (2 * range + 1)) - range);
  };
  for (size_t i = 0; i < n * d; ++i) inst.a.push_back(rnd());
  for (size_t i = 0; i < d * n; ++i) inst.b.push_back(rnd());
  return inst;
}

std::vector<int32_t> all_cols(size_t d) {
  std::vector<int32_t> cols(d);
  for (size_t c = 0; c < d; ++c) cols[c] = static_cast<int32_t>(c);
  return cols;
}

// exhaustive: is there k' strictly between the anchor sums?
int32_t scan_between(const MinPlusInstance& inst, size_t i, size_t j, int32_t pred,
                     int32_t succ) {
  for (size_t kp = 0; kp < inst.d; ++kp) {
    RestrictedReal s = inst.A(i, kp) + inst.B(kp, j);
    if (s.is_infinite()) continue;
    if (pred >= 0) {
      RestrictedReal lo = inst.A(i, pred) + inst.B(pred, j);
      if (s.raw_cmp(lo) <= 0) continue;
    }
    if (succ >= 0) {
      RestrictedReal hi = inst.A(i, succ) + inst.B(succ, j);
      if (s.raw_cmp(hi) >= 0) continue;
    }
    return static_cast<int32_t>(kp);
  }
  return -1;
}

}  // namespace

TEST_CASE("solve_variant2: d=1 has nothing strictly between") {
  MinPlusInstance inst;
  inst.n = 2;
  inst.d = 1;
  inst.a = {RestrictedReal(1), RestrictedReal(2)};
  inst.b = {RestrictedReal(3), RestrictedReal(4)};
  ComparisonLedger ledger;
  red_apsp::FredmanRanks ranks(inst, ledger);
  auto state = PredSuccState::empty(2, std::vector<RestrictedReal>(4, RestrictedReal(0)));
  for (auto& v : state.pred) v = 0;
  for (auto& v : state.succ) v = 0;
  BruteSparseTriOracle oracle;
  auto ans = solve_variant2(inst, all_cols(1), state, ranks, oracle, ledger);
  for (const auto& a : ans) CHECK(!a.found);
}

TEST_CASE("solve_variant2 agrees with the exhaustive between-scan") {
  std::mt19937_64 rng(13);
  BruteSparseTriOracle oracle;
  for (int trial = 0; trial < 30; ++trial) {
    auto inst = random_minplus(rng, 6, 4, 14);
    ComparisonLedger ledger;
    red_apsp::FredmanRanks ranks(inst, ledger);
    auto state = PredSuccState::empty(6, std::vector<RestrictedReal>(36, RestrictedReal(0)));
    auto mp = oracles::min_plus(inst);
    for (size_t t = 0; t < 36; ++t) {
      // anchors: argmin as pred, random other column as succ when above it
      state.pred[t] = mp.argmin[t];
      int32_t other = static_cast<int32_t>(rng() % 4);
      size_t i = t / 6, j = t % 6;
      RestrictedReal so = inst.A(i, other) + inst.B(other, j);
      if (!so.is_infinite() && so.raw_cmp(mp.value[t]) > 0) state.succ[t] = other;
    }
    auto ans = solve_variant2(inst, all_cols(4), state, ranks, oracle, ledger);
    for (size_t t = 0; t < 36; ++t) {
      size_t i = t / 6, j = t % 6;
      bool expect = scan_between(inst, i, j, state.pred[t], state.succ[t]) >= 0;
      CHECK(ans[t].found == expect);
      if (ans[t].found) {
        RestrictedReal s = inst.A(i, ans[t].k_prime) + inst.B(ans[t].k_prime, j);
        RestrictedReal lo = inst.A(i, state.pred[t]) + inst.B(state.pred[t], j);
        CHECK(s.raw_cmp(lo) > 0);
        if (state.succ[t] >= 0) {
          RestrictedReal hi = inst.A(i, state.succ[t]) + inst.B(state.succ[t], j);
          CHECK(s.raw_cmp(hi) < 0);
        }
      }
    }
  }
}

TEST_CASE("exacttri graph family respects the lemma's constructed bounds") {
  std::mt19937_64 rng(19);
  auto inst = random_minplus(rng, 32, 4, 60);
  ComparisonLedger ledger;
  red_apsp::FredmanRanks ranks(inst, ledger);
  auto state =
      PredSuccState::empty(32, std::vector<RestrictedReal>(32 * 32, RestrictedReal(0)));
  for (size_t t = 0; t < state.pred.size(); ++t) {
    state.pred[t] = static_cast<int32_t>(rng() % 4);
    state.succ[t] = static_cast<int32_t>(rng() % 4);
  }
  auto fam = build_exacttri_graphs(inst, all_cols(4), state, ranks, ledger);
  CHECK(fam.ledger.graphs <= fam.ledger.graphs_bound);
  CHECK(fam.ledger.graphs_bound == 32);
  CHECK(fam.ledger.edges <= fam.ledger.edges_bound);
  size_t chunk = (32 * 32 + 15) / 16;
  size_t lv = static_cast<size_t>(ranks.levels());
  for (const auto& g : fam.graphs)
    CHECK(g.graph.edges.size() <= chunk + 2 * 32 * 4 * lv * lv);
}

TEST_CASE("pred_succ equals the scan oracle") {
  BruteSparseTriOracle oracle;
  SUBCASE("C below all sums -> -inf pred, min-sum succ") {
    MinPlusInstance inst;
    inst.n = 3;
    inst.d = 3;
    inst.a.assign(9, RestrictedReal(0));
    for (size_t i = 0; i < 3; ++i)
      for (size_t k = 0; k < 3; ++k)
        inst.a[i * 3 + k] = RestrictedReal(static_cast<long long>(5 + k));
    inst.b.assign(9, RestrictedReal(0));
    std::vector<RestrictedReal> c(9, RestrictedReal(-100));
    ComparisonLedger ledger;
    auto state = pred_succ(inst, c, oracle, 1, ledger);
    auto want = oracles::exact_tri_pred_succ(inst, c);
    for (size_t t = 0; t < 9; ++t) {
      CHECK(state.pred[t] == -1);
      CHECK(state.succ[t] == want[t].succ_k);
    }
  }
  SUBCASE("C equal to some sum -> predecessor is itself") {
    MinPlusInstance inst;
    inst.n = 4;
    inst.d = 4;
    inst.a.assign(16, RestrictedReal(0));
    for (size_t i = 0; i < 4; ++i)
      for (size_t k = 0; k < 4; ++k)
        inst.a[i * 4 + k] = RestrictedReal(static_cast<long long>(2 * k));
    inst.b.assign(16, RestrictedReal(0));
    std::vector<RestrictedReal> c(16, RestrictedReal(4));  // sums are {0,2,4,6}
    ComparisonLedger ledger;
    auto state = pred_succ(inst, c, oracle, 2, ledger);
    for (size_t t = 0; t < 16; ++t) {
      CHECK(state.pred[t] == 2);
      CHECK(state.succ[t] == 3);
    }
  }
  SUBCASE("random instances equal the scan oracle, both routes") {
    for (uint64_t seed = 0; seed < 30; ++seed) {
      std::mt19937_64 rng(seed * 17 + 1);
      auto inst = random_minplus(rng, 8, 4, 20, seed % 3 == 0 ? 20 : 0);
      std::vector<RestrictedReal> c;
      for (size_t t = 0; t < 64; ++t)
        c.push_back(RestrictedReal(static_cast<long long>(rng() % 81) - 40));
      auto want = oracles::exact_tri_pred_succ(inst, c);
      for (auto route : {VariantRoute::Witness, VariantRoute::Counting}) {
        ComparisonLedger ledger;
        auto state = pred_succ(inst, c, oracle, seed, ledger, route);
        for (size_t t = 0; t < 64; ++t) {
          CHECK((state.pred[t] >= 0) == want[t].pred_defined);
          CHECK((state.succ[t] >= 0) == want[t].succ_defined);
          size_t i = t / 8, j = t % 8;
          if (want[t].pred_defined) {
            // anchors may differ among equal sums; compare the sums
            RestrictedReal got = inst.A(i, state.pred[t]) + inst.B(state.pred[t], j);
            RestrictedReal exp = inst.A(i, want[t].pred_k) + inst.B(want[t].pred_k, j);
            CHECK(got.raw_eq(exp));
          }
          if (want[t].succ_defined) {
            RestrictedReal got = inst.A(i, state.succ[t]) + inst.B(state.succ[t], j);
            RestrictedReal exp = inst.A(i, want[t].succ_k) + inst.B(want[t].succ_k, j);
            CHECK(got.raw_eq(exp));
          }
        }
      }
    }
  }
}

TEST_CASE("pred_succ output admits nothing strictly inside (exhaustive, n <= 16)") {
  std::mt19937_64 rng(37);
  BruteSparseTriOracle oracle;
  for (int trial = 0; trial < 10; ++trial) {
    auto inst = random_minplus(rng, 6, 5, 12);
    std::vector<RestrictedReal> c;
    for (size_t t = 0; t < 36; ++t)
      c.push_back(RestrictedReal(static_cast<long long>(rng() % 49) - 24));
    ComparisonLedger ledger;
    auto state = pred_succ(inst, c, oracle, trial, ledger);
    for (size_t t = 0; t < 36; ++t) {
      size_t i = t / 6, j = t % 6;
      for (size_t k = 0; k < 5; ++k) {
        RestrictedReal s = inst.A(i, k) + inst.B(k, j);
        if (s.is_infinite()) continue;
        if (state.pred[t] >= 0) {
          RestrictedReal lo = inst.A(i, state.pred[t]) + inst.B(state.pred[t], j);
          // no k strictly between predecessor and C
          CHECK(!(s.raw_cmp(lo) > 0 && s.raw_cmp(c[t]) <= 0));
        } else {
          CHECK(s.raw_cmp(c[t]) > 0);  // -inf sentinel correct
        }
        if (state.succ[t] >= 0) {
          RestrictedReal hi = inst.A(i, state.succ[t]) + inst.B(state.succ[t], j);
          // no k strictly between C and the successor
          CHECK(!(s.raw_cmp(c[t]) > 0 && s.raw_cmp(hi) < 0));
        } else {
          CHECK(s.raw_cmp(c[t]) <= 0);  // +inf sentinel correct
        }
      }
    }
  }
}

TEST_CASE("count_below equals the brute-force count") {
  std::mt19937_64 rng(41);
  BruteSparseTriOracle oracle;
  for (int trial = 0; trial < 30; ++trial) {
    auto inst = random_minplus(rng, 6, 4, 10, trial % 4 == 0 ? 25 : 0);
    ComparisonLedger ledger;
    red_apsp::FredmanRanks ranks(inst, ledger);
    std::vector<int32_t> k(36, -1);
    for (size_t t = 0; t < 36; ++t) {
      size_t i = t / 6, j = t % 6;
      int32_t cand = static_cast<int32_t>(rng() % 4);
      if (!inst.A(i, cand).is_infinite() && !inst.B(cand, j).is_infinite()) k[t] = cand;
    }
    auto got = count_below(inst, all_cols(4), k, ranks, oracle, ledger);
    auto got_le = count_at_most(inst, all_cols(4), k, oracle, ledger);
    for (size_t t = 0; t < 36; ++t) {
      if (k[t] < 0) continue;
      size_t i = t / 6, j = t % 6;
      RestrictedReal ref = inst.A(i, k[t]) + inst.B(k[t], j);
      uint64_t lt = 0, le = 0;
      for (size_t kp = 0; kp < 4; ++kp) {
        RestrictedReal s = inst.A(i, kp) + inst.B(kp, j);
        if (s.is_infinite()) continue;
        if (s.raw_cmp(ref) < 0) ++lt;
        if (s.raw_cmp(ref) <= 0) ++le;
      }
      CHECK(got[t] == lt);
      CHECK(got_le[t] == le);
    }
  }
}

TEST_CASE("count_below spec pins: argmin gives 0, argmax gives d-1") {
  MinPlusInstance inst;
  inst.n = 1;
  inst.d = 4;
  inst.a = {RestrictedReal(3), RestrictedReal(1), RestrictedReal(9), RestrictedReal(5)};
  inst.b = {RestrictedReal(0), RestrictedReal(0), RestrictedReal(0), RestrictedReal(0)};
  ComparisonLedger ledger;
  red_apsp::FredmanRanks ranks(inst, ledger);
  BruteSparseTriOracle oracle;
  CHECK(count_below(inst, all_cols(4), {1}, ranks, oracle, ledger)[0] == 0);
  CHECK(count_below(inst, all_cols(4), {2}, ranks, oracle, ledger)[0] == 3);
}

TEST_CASE("variant2_via_counts agrees with solve_variant2 on existence") {
  std::mt19937_64 rng(53);
  BruteSparseTriOracle oracle;
  for (int trial = 0; trial < 20; ++trial) {
    auto inst = random_minplus(rng, 5, 4, 16);
    ComparisonLedger ledger;
    red_apsp::FredmanRanks ranks(inst, ledger);
    auto state = PredSuccState::empty(5, std::vector<RestrictedReal>(25, RestrictedReal(0)));
    auto mp = oracles::min_plus(inst);
    for (size_t t = 0; t < 25; ++t) {
      state.pred[t] = mp.argmin[t];
      if (rng() % 3 == 0) state.pred[t] = -1;
      int32_t other = static_cast<int32_t>(rng() % 4);
      size_t i = t / 5, j = t % 5;
      RestrictedReal so = inst.A(i, other) + inst.B(other, j);
      if (state.pred[t] >= 0) {
        RestrictedReal lo = inst.A(i, state.pred[t]) + inst.B(state.pred[t], j);
        if (so.raw_cmp(lo) > 0) state.succ[t] = other;
      } else if (rng() % 2 == 0) {
        state.succ[t] = other;
      }
      if (state.pred[t] < 0 && state.succ[t] < 0) state.pred[t] = mp.argmin[t];
    }
    auto wit = solve_variant2(inst, all_cols(4), state, ranks, oracle, ledger);
    auto cnt = variant2_via_counts(inst, all_cols(4), state, oracle, ledger, trial);
    for (size_t t = 0; t < 25; ++t) {
      CHECK(wit[t].found == cnt[t].found);
      if (cnt[t].found) {
        size_t i = t / 5, j = t % 5;
        CHECK(scan_between(inst, i, j, state.pred[t], state.succ[t]) >= 0);
        RestrictedReal s = inst.A(i, cnt[t].k_prime) + inst.B(cnt[t].k_prime, j);
        if (state.pred[t] >= 0)
          CHECK(s.raw_cmp(inst.A(i, state.pred[t]) + inst.B(state.pred[t], j)) > 0);
        if (state.succ[t] >= 0)
          CHECK(s.raw_cmp(inst.A(i, state.succ[t]) + inst.B(state.succ[t], j)) < 0);
      }
    }
  }
}

TEST_CASE("ae_exact_tri_via_sparse equals the oracle") {
  BruteSparseTriOracle oracle;
  SUBCASE("planted zero triangle is found") {
    std::mt19937_64 rng(61);
    WeightedTripartiteGraph g;
    g.ni = g.nj = g.nk = 5;
    auto rnd = [&] { return RestrictedReal(static_cast<long long>(rng() % 21) + 1); };
    for (size_t t = 0; t < 25; ++t) {
      g.w_ij.push_back(rnd());
      g.w_ik.push_back(rnd());
      g.w_kj.push_back(rnd());
    }
    g.w_ik[0 * 5 + 2] = RestrictedReal(3);
    g.w_kj[2 * 5 + 1] = RestrictedReal(4);
    g.w_ij[0 * 5 + 1] = RestrictedReal(-7);
    ComparisonLedger ledger;
    auto got = ae_exact_tri_via_sparse(g, 2, oracle, 5, ledger);
    CHECK(got[0 * 5 + 1] == 1);
  }
  SUBCASE("all-positive weights give all no") {
    std::mt19937_64 rng(62);
    WeightedTripartiteGraph g;
    g.ni = g.nj = g.nk = 4;
    auto rnd = [&] { return RestrictedReal(static_cast<long long>(rng() % 9) + 1); };
    for (size_t t = 0; t < 16; ++t) {
      g.w_ij.push_back(rnd());
      g.w_ik.push_back(rnd());
      g.w_kj.push_back(rnd());
    }
    ComparisonLedger ledger;
    auto got = ae_exact_tri_via_sparse(g, 2, oracle, 6, ledger);
    for (auto v : got) CHECK(v == 0);
  }
  SUBCASE("30 random instances n=12 d=3 match the oracle, both routes") {
    std::mt19937_64 rng(63);
    for (int trial = 0; trial < 30; ++trial) {
      WeightedTripartiteGraph g;
      g.ni = g.nj = g.nk = 12;
      auto rnd = [&]() -> RestrictedReal {
        if (rng() % 100 < 15) return RestrictedReal::infinity();
        return RestrictedReal(static_cast<long long>(rng() % 25) - 12);
      };
      for (size_t t = 0; t < 144; ++t) {
        g.w_ij.push_back(rnd());
        g.w_ik.push_back(rnd());
        g.w_kj.push_back(rnd());
      }
      auto want = oracles::ae_exact_tri(g, oracles::Mode::Decide);
      auto route = trial % 2 ? VariantRoute::Counting : VariantRoute::Witness;
      ComparisonLedger ledger;
      auto got = ae_exact_tri_via_sparse(g, 3, oracle, trial, ledger, route);
      for (size_t t = 0; t < 144; ++t) CHECK((got[t] == 1) == want[t].yes);
    }
  }
}
