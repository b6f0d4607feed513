#include "fgred/red_exacttri.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <random>

namespace fgred {
namespace red_exacttri {

namespace {

struct AttemptFailed {};

uint64_t round_budget(size_t n, int c_iter) {
  return static_cast<uint64_t>(c_iter * std::log2(static_cast<double>(n) + 2.0));
}

MinPlusInstance negate_finite(const MinPlusInstance& inst) {
  MinPlusInstance neg = inst;
  for (auto& v : neg.a)
    if (!v.is_infinite()) v = -v;
  for (auto& v : neg.b)
    if (!v.is_infinite()) v = -v;
  return neg;
}

// Shared materials for one (A,B) pair, reused across rounds and levels. The
// negated orientation gets its own rank structure (negation mirrors the
// order, but rebuilding keeps the code straightforward at desk scale).
struct Workspace {
  const MinPlusInstance* inst;
  MinPlusInstance neg;
  red_apsp::FredmanRanks ranks;
  red_apsp::FredmanRanks neg_ranks;

  Workspace(const MinPlusInstance& i, ComparisonLedger& ledger)
      : inst(&i), neg(negate_finite(i)), ranks(i, ledger), neg_ranks(neg, ledger) {}
};

// number of candidate columns with both entries finite, per pair
uint64_t finite_count(const red_apsp::FredmanRanks& ranks, const std::vector<int32_t>& cols,
                      size_t i, size_t j) {
  uint64_t c = 0;
  for (int32_t kp : cols)
    if (ranks.a_finite(i, static_cast<size_t>(kp)) &&
        ranks.b_finite(static_cast<size_t>(kp), j))
      ++c;
  return c;
}

}  // namespace

ExactTriFamily build_exacttri_graphs(const MinPlusInstance& inst,
                                     const std::vector<int32_t>& cols,
                                     const PredSuccState& state,
                                     const red_apsp::FredmanRanks& ranks,
                                     ComparisonLedger& ledger) {
  (void)ledger;
  const size_t n = inst.n;
  if (state.pred.size() != n * n || state.succ.size() != n * n)
    throw ShapeMismatch("anchor matrices must be n x n");
  const size_t dl = cols.size();
  const size_t chunk_cap = (n * n + dl * dl - 1) / (dl * dl);  // ceil(n^2/d^2)
  const int L = ranks.universe_log();

  std::map<std::pair<int32_t, int32_t>, std::vector<std::pair<uint32_t, uint32_t>>> groups;
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j) {
      int32_t km = state.pred[i * n + j], kp = state.succ[i * n + j];
      if (km < 0 || kp < 0) continue;  // sentinel side: handled one-sidedly
      groups[{km, kp}].emplace_back(static_cast<uint32_t>(i), static_cast<uint32_t>(j));
    }

  ExactTriFamily fam;
  fam.ledger.lemma = "exacttri2";
  fam.ledger.n = n;
  fam.ledger.d = dl;
  fam.ledger.levels = static_cast<uint64_t>(ranks.levels());
  fam.ledger.graphs_bound = 2 * dl * dl;

  for (auto& [anchors, pairs] : groups) {
    auto [km, kpl] = anchors;
    size_t ku_m = static_cast<size_t>(km), ku_p = static_cast<size_t>(kpl);
    for (size_t off = 0; off < pairs.size(); off += chunk_cap) {
      ExactTriGraph eg;
      eg.k_minus = km;
      eg.k_plus = kpl;
      eg.chunk = off / chunk_cap;
      eg.n = n;
      SparseGraph& g = eg.graph;

      std::map<std::tuple<int32_t, long long, long long>, uint32_t> middle_ids;
      std::vector<std::pair<uint32_t, uint32_t>> mid_edges;
      auto middle_id = [&](int32_t kp, const DyadicInterval& lo, const DyadicInterval& hi) {
        auto key = std::make_tuple(kp, lo.key(), hi.key());
        auto it = middle_ids.find(key);
        if (it != middle_ids.end()) return it->second;
        uint32_t id = static_cast<uint32_t>(2 * n + eg.middles.size());
        middle_ids.emplace(key, id);
        eg.middles.push_back({kp, lo, hi});
        return id;
      };

      size_t end = std::min(pairs.size(), off + chunk_cap);
      std::vector<uint8_t> row_used(n, 0), col_used(n, 0);
      for (size_t t = off; t < end; ++t) {
        auto [i, j] = pairs[t];
        eg.query_pairs.emplace_back(i, j);
        g.edges.emplace_back(i, static_cast<uint32_t>(n + j));
        g.query_edges.push_back(static_cast<uint32_t>(g.edges.size() - 1));
        row_used[i] = col_used[j] = 1;
      }

      for (size_t i = 0; i < n; ++i) {
        if (!row_used[i] || !ranks.a_finite(i, ku_m) || !ranks.a_finite(i, ku_p)) continue;
        for (int32_t kp : cols) {
          size_t kpu = static_cast<size_t>(kp);
          if (!ranks.a_finite(i, kpu)) continue;
          // ranks of A[i,k-] - A[i,k'] and A[i,k'] - A[i,k+]
          long long ra_lo = ranks.rank_a(i, kpu, ku_m);
          long long ra_hi = ranks.rank_a(i, ku_p, kpu);
          for (const auto& ivlo : covering_halves(ra_lo, L, Half::Left))
            for (const auto& ivhi : covering_halves(ra_hi, L, Half::Left))
              mid_edges.emplace_back(static_cast<uint32_t>(i), middle_id(kp, ivlo, ivhi));
        }
      }
      for (size_t j = 0; j < n; ++j) {
        if (!col_used[j] || !ranks.b_finite(ku_m, j) || !ranks.b_finite(ku_p, j)) continue;
        for (int32_t kp : cols) {
          size_t kpu = static_cast<size_t>(kp);
          if (!ranks.b_finite(kpu, j)) continue;
          // ranks of B[k',j] - B[k-,j] and B[k+,j] - B[k',j]
          long long rb_lo = ranks.rank_b(kpu, j, ku_m);
          long long rb_hi = ranks.rank_b(ku_p, j, kpu);
          for (const auto& ivlo : covering_halves(rb_lo, L, Half::Right))
            for (const auto& ivhi : covering_halves(rb_hi, L, Half::Right))
              mid_edges.emplace_back(middle_id(kp, ivlo, ivhi), static_cast<uint32_t>(n + j));
        }
      }

      g.nodes = 2 * n + eg.middles.size();
      for (auto& e : mid_edges) g.edges.push_back(e);
      g.parts.assign(g.nodes, 0);
      for (size_t j = 0; j < n; ++j) g.parts[n + j] = 2;
      for (size_t m = 0; m < eg.middles.size(); ++m) g.parts[2 * n + m] = 1;

      fam.ledger.graphs += 1;
      fam.ledger.edges += g.edges.size();
      fam.ledger.nodes += g.nodes;
      fam.graphs.push_back(std::move(eg));
    }
  }
  size_t lv = static_cast<size_t>(ranks.levels());
  fam.ledger.edges_bound = fam.ledger.graphs * (chunk_cap + 2 * n * dl * lv * lv);
  return fam;
}

namespace {

// Decode + revalidate the both-anchors family.
void decode_exacttri_family(const MinPlusInstance& inst, const ExactTriFamily& fam,
                            SparseTriOracle& oracle, ComparisonLedger& ledger,
                            std::vector<BetweenAnswer>& out) {
  const size_t n = inst.n;
  for (const auto& eg : fam.graphs) {
    std::vector<oracles::EdgeAnswer> answers;
    {
      audit::Suspend lift;
      answers = oracle.run(eg.graph, oracles::Mode::Witness);
    }
    if (answers.size() != eg.query_pairs.size()) throw OracleProtocol("answer count");
    for (size_t q = 0; q < answers.size(); ++q) {
      if (!answers[q].yes) continue;
      auto [i, j] = eg.query_pairs[q];
      int64_t w = answers[q].witness;
      if (w < static_cast<int64_t>(eg.middle_base()) ||
          w >= static_cast<int64_t>(eg.middle_base() + eg.middles.size()))
        throw OracleProtocol("witness is not a middle node");
      int32_t kp = eg.middles[static_cast<size_t>(w) - eg.middle_base()].k_prime;
      size_t kpu = static_cast<size_t>(kp);
      // Re-validate Eq. (3) strictly on both sides.
      if (ledger.compare4(inst.A(i, kpu), inst.B(kpu, j),
                          inst.A(i, static_cast<size_t>(eg.k_minus)),
                          inst.B(static_cast<size_t>(eg.k_minus), j)) != Ord::Greater)
        throw OracleProtocol("witness not above the predecessor anchor");
      if (ledger.compare4(inst.A(i, kpu), inst.B(kpu, j),
                          inst.A(i, static_cast<size_t>(eg.k_plus)),
                          inst.B(static_cast<size_t>(eg.k_plus), j)) != Ord::Less)
        throw OracleProtocol("witness not below the successor anchor");
      out[i * n + j] = {true, kp};
    }
  }
}

std::vector<BetweenAnswer> solve_variant2_impl(const Workspace& ws,
                                               const std::vector<int32_t>& cols,
                                               const PredSuccState& state,
                                               SparseTriOracle& oracle,
                                               ComparisonLedger& ledger, LedgerRow* accum,
                                               int jobs) {
  const MinPlusInstance& inst = *ws.inst;
  const size_t n = inst.n;
  std::vector<BetweenAnswer> out(n * n);

  // family 1: both anchors defined
  auto fam = build_exacttri_graphs(inst, cols, state, ws.ranks, ledger);
  if (accum) {
    accum->graphs += fam.ledger.graphs;
    accum->graphs_bound += fam.ledger.graphs_bound;
    accum->edges += fam.ledger.edges;
    accum->edges_bound += fam.ledger.edges_bound;
    accum->nodes += fam.ledger.nodes;
    accum->levels = std::max(accum->levels, fam.ledger.levels);
  }
  decode_exacttri_family(inst, fam, oracle, ledger, out);

  // family 2: missing predecessor -> find any sum strictly below the successor
  std::vector<int32_t> k_lower(n * n, -1);
  bool any_lower = false;
  // family 3: missing successor -> find any finite sum strictly above the
  // predecessor, via the negated instance
  std::vector<int32_t> k_upper(n * n, -1);
  bool any_upper = false;
  for (size_t t = 0; t < n * n; ++t) {
    if (state.pred[t] < 0 && state.succ[t] >= 0) {
      k_lower[t] = state.succ[t];
      any_lower = true;
    } else if (state.succ[t] < 0 && state.pred[t] >= 0) {
      k_upper[t] = state.pred[t];
      any_upper = true;
    }
  }
  if (any_lower) {
    auto ans =
        red_apsp::solve_variant(inst, cols, k_lower, ws.ranks, oracle, ledger, accum, jobs);
    for (size_t t = 0; t < n * n; ++t)
      if (ans[t].found) out[t] = {true, ans[t].k_prime};
  }
  if (any_upper) {
    auto ans = red_apsp::solve_variant(ws.neg, cols, k_upper, ws.neg_ranks, oracle, ledger,
                                       accum, jobs);
    for (size_t t = 0; t < n * n; ++t)
      if (ans[t].found) out[t] = {true, ans[t].k_prime};
  }
  return out;
}

}  // namespace

std::vector<BetweenAnswer> solve_variant2(const MinPlusInstance& inst,
                                          const std::vector<int32_t>& cols,
                                          const PredSuccState& state,
                                          const red_apsp::FredmanRanks& ranks,
                                          SparseTriOracle& oracle, ComparisonLedger& ledger,
                                          LedgerRow* accum, int jobs) {
  (void)ranks;  // the workspace holds both orientations
  Workspace ws(inst, ledger);
  return solve_variant2_impl(ws, cols, state, oracle, ledger, accum, jobs);
}

std::vector<uint64_t> count_below(const MinPlusInstance& inst,
                                  const std::vector<int32_t>& cols,
                                  const std::vector<int32_t>& k,
                                  const red_apsp::FredmanRanks& ranks,
                                  SparseTriOracle& count_oracle, ComparisonLedger& ledger,
                                  LedgerRow* accum, int jobs) {
  (void)jobs;
  const size_t n = inst.n;
  auto fam = red_apsp::build_variant_graphs(inst, cols, k, ranks, ledger);
  if (accum) {
    accum->graphs += fam.ledger.graphs;
    accum->graphs_bound += fam.ledger.graphs_bound;
    accum->edges += fam.ledger.edges;
    accum->edges_bound += fam.ledger.edges_bound;
    accum->nodes += fam.ledger.nodes;
    accum->levels = std::max(accum->levels, fam.ledger.levels);
  }
  std::vector<uint64_t> out(n * n, 0);
  for (const auto& vg : fam.graphs) {
    std::vector<oracles::EdgeAnswer> answers;
    {
      audit::Suspend lift;
      answers = count_oracle.run(vg.graph, oracles::Mode::Count);
    }
    if (answers.size() != vg.query_pairs.size()) throw OracleProtocol("answer count");
    for (size_t q = 0; q < answers.size(); ++q) {
      auto [i, j] = vg.query_pairs[q];
      out[i * n + j] = answers[q].count;
    }
  }
  return out;
}

std::vector<uint64_t> count_at_most(const MinPlusInstance& inst,
                                    const std::vector<int32_t>& cols,
                                    const std::vector<int32_t>& k,
                                    SparseTriOracle& count_oracle, ComparisonLedger& ledger,
                                    LedgerRow* accum, int jobs) {
  Workspace ws(inst, ledger);
  const size_t n = inst.n;
  auto above = count_below(ws.neg, cols, k, ws.neg_ranks, count_oracle, ledger, accum, jobs);
  std::vector<uint64_t> out(n * n, 0);
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j) {
      if (k[i * n + j] < 0) continue;
      out[i * n + j] = finite_count(ws.ranks, cols, i, j) - above[i * n + j];
    }
  return out;
}

namespace {

// Count-based strictly-between count for a candidate subset; pairs whose
// decision is not needed carry 0.
std::vector<uint64_t> between_counts(const Workspace& ws, const std::vector<int32_t>& subset,
                                     const PredSuccState& state,
                                     const std::vector<uint8_t>& need,
                                     SparseTriOracle& count_oracle, ComparisonLedger& ledger,
                                     LedgerRow* accum, int jobs) {
  const size_t n = ws.inst->n;
  std::vector<int32_t> k_succ(n * n, -1), k_pred(n * n, -1);
  bool any_succ = false, any_pred = false;
  for (size_t t = 0; t < n * n; ++t) {
    if (!need[t]) continue;
    if (state.succ[t] >= 0) {
      k_succ[t] = state.succ[t];
      any_succ = true;
    }
    if (state.pred[t] >= 0) {
      k_pred[t] = state.pred[t];
      any_pred = true;
    }
  }
  std::vector<uint64_t> below_succ(n * n, 0), above_pred(n * n, 0);
  if (any_succ)
    below_succ =
        count_below(*ws.inst, subset, k_succ, ws.ranks, count_oracle, ledger, accum, jobs);
  if (any_pred)
    above_pred =
        count_below(ws.neg, subset, k_pred, ws.neg_ranks, count_oracle, ledger, accum, jobs);

  std::vector<uint64_t> out(n * n, 0);
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j) {
      size_t t = i * n + j;
      if (!need[t]) continue;
      bool has_pred = state.pred[t] >= 0, has_succ = state.succ[t] >= 0;
      if (has_pred && has_succ) {
        // #(sum < succ) - #(sum <= pred), the latter via the negated counts
        uint64_t fin = finite_count(ws.ranks, subset, i, j);
        out[t] = below_succ[t] - (fin - above_pred[t]);
      } else if (has_succ) {
        out[t] = below_succ[t];
      } else if (has_pred) {
        out[t] = above_pred[t];
      }
    }
  return out;
}

bool validate_between(const MinPlusInstance& inst, const PredSuccState& state, size_t i,
                      size_t j, int32_t kp, const red_apsp::FredmanRanks& ranks,
                      ComparisonLedger& ledger) {
  size_t n = inst.n, kpu = static_cast<size_t>(kp);
  if (!ranks.a_finite(i, kpu) || !ranks.b_finite(kpu, j)) return false;
  int32_t p = state.pred[i * n + j], s = state.succ[i * n + j];
  if (p >= 0 && ledger.compare4(inst.A(i, kpu), inst.B(kpu, j),
                                inst.A(i, static_cast<size_t>(p)),
                                inst.B(static_cast<size_t>(p), j)) != Ord::Greater)
    return false;
  if (s >= 0 && ledger.compare4(inst.A(i, kpu), inst.B(kpu, j),
                                inst.A(i, static_cast<size_t>(s)),
                                inst.B(static_cast<size_t>(s), j)) != Ord::Less)
    return false;
  return true;
}

}  // namespace

std::vector<BetweenAnswer> variant2_via_counts(const MinPlusInstance& inst,
                                               const std::vector<int32_t>& cols,
                                               const PredSuccState& state,
                                               SparseTriOracle& count_oracle,
                                               ComparisonLedger& ledger, uint64_t seed,
                                               LedgerRow* accum,
                                               red_apsp::DriverOptions opts) {
  Workspace ws(inst, ledger);
  const size_t n = inst.n;
  std::vector<BetweenAnswer> out(n * n);

  std::vector<uint8_t> need(n * n, 0);
  for (size_t t = 0; t < n * n; ++t)
    need[t] = (state.pred[t] >= 0 || state.succ[t] >= 0) ? 1 : 0;
  auto counts = between_counts(ws, cols, state, need, count_oracle, ledger, accum, opts.jobs);

  std::vector<uint8_t> unresolved(n * n, 0);
  size_t remaining = 0;
  for (size_t t = 0; t < n * n; ++t)
    if (need[t] && counts[t] > 0) {
      unresolved[t] = 1;
      ++remaining;
    }
  if (remaining == 0) return out;

  int bits = 0;
  int32_t max_col = *std::max_element(cols.begin(), cols.end());
  while ((1 << bits) <= max_col) ++bits;

  auto try_recover = [&](const std::vector<int32_t>& subset) {
    // a pair is recoverable from this subset when exactly one
    // strictly-between candidate lies inside it
    auto sub_counts =
        between_counts(ws, subset, state, unresolved, count_oracle, ledger, accum, opts.jobs);
    std::vector<uint8_t> target(n * n, 0);
    bool any = false;
    for (size_t t = 0; t < n * n; ++t)
      if (unresolved[t] && sub_counts[t] == 1) {
        target[t] = 1;
        any = true;
      }
    if (!any) return;
    std::vector<std::vector<uint64_t>> bit_counts(static_cast<size_t>(bits));
    for (int b = 0; b < bits; ++b) {
      std::vector<int32_t> restricted;
      for (int32_t kk : subset)
        if ((kk >> b) & 1) restricted.push_back(kk);
      if (restricted.empty())
        bit_counts[b].assign(n * n, 0);
      else
        bit_counts[b] = between_counts(ws, restricted, state, target, count_oracle, ledger,
                                       accum, opts.jobs);
    }
    for (size_t t = 0; t < n * n; ++t) {
      if (!target[t]) continue;
      int32_t kp = 0;
      for (int b = 0; b < bits; ++b)
        if (bit_counts[b][t] > 0) kp |= (1 << b);
      if (std::find(subset.begin(), subset.end(), kp) == subset.end()) continue;
      size_t i = t / n, j = t % n;
      if (!validate_between(inst, state, i, j, kp, ws.ranks, ledger)) continue;
      out[t] = {true, kp};
      unresolved[t] = 0;
      --remaining;
    }
  };

  for (int attempt = 0; attempt < opts.c_retry && remaining > 0; ++attempt) {
    std::mt19937_64 rng(seed + 0xabcd01ull * static_cast<uint64_t>(attempt + 1));
    // full set first: covers pairs whose between-candidate is unique overall
    try_recover(cols);
    int c_rand = 2 + static_cast<int>(std::log2(static_cast<double>(n) + 2.0) / 2.0);
    for (size_t sz = 1; sz < cols.size() && remaining > 0; sz *= 2) {
      for (int rep = 0; rep < c_rand && remaining > 0; ++rep) {
        std::vector<int32_t> shuffled = cols;
        for (size_t i = shuffled.size(); i > 1; --i)
          std::swap(shuffled[i - 1], shuffled[rng() % i]);
        shuffled.resize(sz);
        std::sort(shuffled.begin(), shuffled.end());
        try_recover(shuffled);
      }
    }
  }
  if (remaining > 0) throw RetryBudgetExhausted("variant2_via_counts witness recovery");
  return out;
}

namespace {

// Brute anchors over a tiny column set (the recursion base case, |cols| <= 2).
void brute_anchors(const MinPlusInstance& inst, const std::vector<int32_t>& cols,
                   PredSuccState& state, ComparisonLedger& ledger) {
  const size_t n = inst.n;
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j) {
      size_t t = i * n + j;
      for (int32_t k : cols) {
        size_t ku = static_cast<size_t>(k);
        if (inst.A(i, ku).is_infinite() || inst.B(ku, j).is_infinite()) continue;
        Ord vs_c = ledger.compare3(inst.A(i, ku), inst.B(ku, j), state.c[t]);
        if (vs_c != Ord::Greater) {
          if (state.pred[t] < 0 ||
              ledger.compare4(inst.A(i, ku), inst.B(ku, j),
                              inst.A(i, static_cast<size_t>(state.pred[t])),
                              inst.B(static_cast<size_t>(state.pred[t]), j)) == Ord::Greater)
            state.pred[t] = k;
        } else {
          if (state.succ[t] < 0 ||
              ledger.compare4(inst.A(i, ku), inst.B(ku, j),
                              inst.A(i, static_cast<size_t>(state.succ[t])),
                              inst.B(static_cast<size_t>(state.succ[t]), j)) == Ord::Less)
            state.succ[t] = k;
        }
      }
    }
}

PredSuccState rec_pred_succ(const Workspace& ws, std::vector<int32_t> cols,
                            const std::vector<RestrictedReal>& c, SparseTriOracle& oracle,
                            std::mt19937_64& rng, ComparisonLedger& ledger,
                            VariantRoute route, red_apsp::DriverStats* stats,
                            const red_apsp::DriverOptions& opts, uint64_t budget,
                            uint64_t seed) {
  const MinPlusInstance& inst = *ws.inst;
  const size_t n = inst.n;
  PredSuccState state = PredSuccState::empty(n, c);
  if (cols.size() <= 2) {
    brute_anchors(inst, cols, state, ledger);
    return state;
  }
  std::vector<int32_t> shuffled = cols;
  for (size_t i = shuffled.size(); i > 1; --i)
    std::swap(shuffled[i - 1], shuffled[rng() % i]);
  std::vector<int32_t> half(shuffled.begin(), shuffled.begin() + (shuffled.size() + 1) / 2);
  std::sort(half.begin(), half.end());
  state = rec_pred_succ(ws, half, c, oracle, rng, ledger, route, stats, opts, budget, seed);

  // Pairs whose sampled half had no finite sum at all: seed an anchor from
  // any structurally finite column so the one-sided search can take over.
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j) {
      size_t t = i * n + j;
      if (state.pred[t] >= 0 || state.succ[t] >= 0) continue;
      for (int32_t k : cols) {
        size_t ku = static_cast<size_t>(k);
        if (!ws.ranks.a_finite(i, ku) || !ws.ranks.b_finite(ku, j)) continue;
        if (ledger.compare3(inst.A(i, ku), inst.B(ku, j), state.c[t]) != Ord::Greater)
          state.pred[t] = k;
        else
          state.succ[t] = k;
        break;
      }
    }

  uint64_t rounds = 0;
  for (;;) {
    std::vector<BetweenAnswer> ans;
    if (route == VariantRoute::Witness)
      ans = solve_variant2_impl(ws, cols, state, oracle, ledger,
                                stats ? &stats->row : nullptr, opts.jobs);
    else
      ans = variant2_via_counts(inst, cols, state, oracle, ledger, seed + rounds,
                                stats ? &stats->row : nullptr, opts);
    bool any = false;
    for (size_t t = 0; t < ans.size(); ++t) {
      if (!ans[t].found) continue;
      any = true;
      size_t i = t / n, j = t % n;
      size_t kpu = static_cast<size_t>(ans[t].k_prime);
      if (ledger.compare3(inst.A(i, kpu), inst.B(kpu, j), state.c[t]) != Ord::Greater)
        state.pred[t] = ans[t].k_prime;
      else
        state.succ[t] = ans[t].k_prime;
    }
    if (!any) break;
    if (++rounds > budget) throw AttemptFailed{};
  }
  if (stats) {
    stats->max_rounds = std::max(stats->max_rounds, rounds);
    stats->total_rounds += rounds;
    stats->row.rounds = std::max(stats->row.rounds, rounds);
  }
  return state;
}

}  // namespace

PredSuccState pred_succ(const MinPlusInstance& inst, const std::vector<RestrictedReal>& c,
                        SparseTriOracle& oracle, uint64_t seed, ComparisonLedger& ledger,
                        VariantRoute route, red_apsp::DriverStats* stats,
                        red_apsp::DriverOptions opts) {
  if (auto v = validate(inst)) throw ShapeMismatch(v->field + ": " + v->message);
  if (c.size() != inst.n * inst.n) throw ShapeMismatch("C matrix must be n x n");
  audit::Scope audited;
  Workspace ws(inst, ledger);
  std::vector<int32_t> cols(inst.d);
  for (size_t k = 0; k < inst.d; ++k) cols[k] = static_cast<int32_t>(k);
  uint64_t budget = round_budget(inst.n, opts.c_iter);

  for (int attempt = 0; attempt < opts.c_retry; ++attempt) {
    std::mt19937_64 rng(seed + 0x7f4a11ull * static_cast<uint64_t>(attempt + 1));
    try {
      auto state = rec_pred_succ(ws, cols, c, oracle, rng, ledger, route, stats, opts,
                                 budget, seed + static_cast<uint64_t>(attempt) * 1315423911ull);
      // finalization: re-check the anchor invariant (predecessor may equal
      // the target, per the "itself" convention; the successor is strict)
      for (size_t t = 0; t < state.pred.size(); ++t) {
        size_t i = t / inst.n, j = t % inst.n;
        if (state.pred[t] >= 0) {
          size_t k = static_cast<size_t>(state.pred[t]);
          if (ledger.compare3(inst.A(i, k), inst.B(k, j), c[t]) == Ord::Greater)
            throw OracleProtocol("predecessor exceeds target");
        }
        if (state.succ[t] >= 0) {
          size_t k = static_cast<size_t>(state.succ[t]);
          if (ledger.compare3(inst.A(i, k), inst.B(k, j), c[t]) != Ord::Greater)
            throw OracleProtocol("successor not above target");
        }
      }
      if (stats) {
        stats->row.lemma = "exacttri1+exacttri2";
        stats->row.n = inst.n;
        stats->row.d = inst.d;
        stats->row.seed = seed;
      }
      return state;
    } catch (const AttemptFailed&) {
      if (stats) ++stats->retries;
    }
  }
  throw RetryBudgetExhausted("pred_succ exceeded retry budget");
}

std::vector<uint8_t> ae_exact_tri_via_sparse(const WeightedTripartiteGraph& g, size_t d,
                                             SparseTriOracle& oracle, uint64_t seed,
                                             ComparisonLedger& ledger, VariantRoute route,
                                             red_apsp::DriverStats* stats,
                                             red_apsp::DriverOptions opts) {
  if (g.ni != g.nj) throw ShapeMismatch("strip driver needs ni == nj");
  const size_t n = g.ni, nk = g.nk;
  if (d < 1) throw ShapeMismatch("need d >= 1");

  std::vector<uint8_t> out(n * n, 0);
  std::vector<RestrictedReal> c(n * n, RestrictedReal(0));
  std::vector<uint8_t> has_query(n * n, 0);
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j)
      if (!g.WIJ(i, j).is_infinite()) {
        c[i * n + j] = -g.WIJ(i, j);
        has_query[i * n + j] = 1;
      }

  for (size_t lo = 0; lo < nk; lo += d) {
    size_t width = std::min(d, nk - lo);
    MinPlusInstance strip;
    strip.n = n;
    strip.d = width;
    strip.a.reserve(n * width);
    strip.b.reserve(width * n);
    for (size_t i = 0; i < n; ++i)
      for (size_t k = 0; k < width; ++k) strip.a.push_back(g.WIK(i, lo + k));
    for (size_t k = 0; k < width; ++k)
      for (size_t j = 0; j < n; ++j) strip.b.push_back(g.WKJ(lo + k, j));
    auto state =
        pred_succ(strip, c, oracle, seed ^ (0x5bd1ull * (lo + 1)), ledger, route, stats, opts);
    audit::Scope audited;
    for (size_t t = 0; t < n * n; ++t) {
      if (!has_query[t] || out[t] || state.pred[t] < 0) continue;
      size_t i = t / n, j = t % n, k = static_cast<size_t>(state.pred[t]);
      if (ledger.compare3(strip.A(i, k), strip.B(k, j), c[t]) == Ord::Equal) out[t] = 1;
    }
  }
  return out;
}

}  // namespace red_exacttri
}  // namespace fgred
