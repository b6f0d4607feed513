#include "fgred/red_3sum.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <random>

namespace fgred {
namespace red_3sum {

namespace {

struct AttemptFailed {};

uint64_t round_budget(size_t n, int c_iter) {
  return static_cast<uint64_t>(c_iter * std::log2(static_cast<double>(n) + 2.0));
}

}  // namespace

BucketedPair bucketize(std::vector<RestrictedReal> a, std::vector<RestrictedReal> b,
                       size_t d, ComparisonLedger& ledger) {
  if (d < 1 || a.empty() || a.size() != b.size()) throw ShapeMismatch("bucketize shapes");
  auto cmp = [&ledger](const RestrictedReal& x, const RestrictedReal& y) {
    return ledger.compare_values(x, y) == Ord::Less;
  };
  std::stable_sort(a.begin(), a.end(), cmp);
  std::stable_sort(b.begin(), b.end(), cmp);
  BucketedPair bp;
  bp.d = d;
  bp.n = a.size();
  bp.nb = (bp.n + d - 1) / d;
  bp.a = std::move(a);
  bp.b = std::move(b);
  return bp;
}

std::vector<std::pair<uint32_t, uint32_t>> staircase_pairs(const BucketedPair& bp,
                                                           const RestrictedReal& c,
                                                           ComparisonLedger& ledger) {
  std::vector<std::pair<uint32_t, uint32_t>> out;
  const size_t nb = bp.nb;
  auto lo_a = [&](size_t i) -> const RestrictedReal& { return bp.A(i, 0); };
  auto hi_a = [&](size_t i) -> const RestrictedReal& { return bp.A(i, bp.width(i) - 1); };
  auto lo_b = [&](size_t j) -> const RestrictedReal& { return bp.B(j, 0); };
  auto hi_b = [&](size_t j) -> const RestrictedReal& { return bp.B(j, bp.width(j) - 1); };
  // cond1(i,j): lo_a + lo_b <= c (anti-monotone in both coordinates)
  // cond2(i,j): hi_a + hi_b >= c (monotone in both coordinates)
  long long j_hi = static_cast<long long>(nb) - 1;
  long long j_lo = static_cast<long long>(nb);
  for (size_t i = 0; i < nb; ++i) {
    while (j_hi >= 0 &&
           ledger.compare3(lo_a(i), lo_b(static_cast<size_t>(j_hi)), c) == Ord::Greater)
      --j_hi;
    while (j_lo > 0 &&
           ledger.compare3(hi_a(i), hi_b(static_cast<size_t>(j_lo - 1)), c) != Ord::Less)
      --j_lo;
    for (long long j = std::max(j_lo, 0ll); j <= j_hi; ++j)
      out.emplace_back(static_cast<uint32_t>(i), static_cast<uint32_t>(j));
  }
  return out;
}

ThreeSumRanks::ThreeSumRanks(const BucketedPair& bp, ComparisonLedger& ledger) : d_(bp.d) {
  ra_.assign(bp.nb * d_ * d_, -1);
  rb_.assign(bp.nb * d_ * d_, -1);
  RankList list;
  list.reserve(2 * bp.nb * d_ * d_);
  const uint32_t b_base = static_cast<uint32_t>(bp.nb * d_ * d_);
  for (size_t i = 0; i < bp.nb; ++i) {
    size_t w = bp.width(i);
    for (size_t p = 0; p < w; ++p)
      for (size_t q = 0; q < w; ++q)
        list.add({bp.A(i, p), bp.A(i, q)}, static_cast<uint32_t>((i * d_ + p) * d_ + q));
  }
  for (size_t j = 0; j < bp.nb; ++j) {
    size_t w = bp.width(j);
    for (size_t p = 0; p < w; ++p)
      for (size_t q = 0; q < w; ++q)
        list.add({bp.B(j, p), bp.B(j, q)},
                 b_base + static_cast<uint32_t>((j * d_ + p) * d_ + q));
  }
  list.build(ledger);
  ulog_ = list.universe_log();
  for (size_t i = 0; i < bp.nb; ++i) {
    size_t w = bp.width(i);
    for (size_t p = 0; p < w; ++p)
      for (size_t q = 0; q < w; ++q) {
        uint32_t slot = static_cast<uint32_t>((i * d_ + p) * d_ + q);
        ra_[slot] = list.rank_of_slot(slot);
      }
  }
  for (size_t j = 0; j < bp.nb; ++j) {
    size_t w = bp.width(j);
    for (size_t p = 0; p < w; ++p)
      for (size_t q = 0; q < w; ++q) {
        uint32_t slot = static_cast<uint32_t>((j * d_ + p) * d_ + q);
        rb_[slot] = list.rank_of_slot(b_base + slot);
      }
  }
}

namespace {

// Middle-node key: family tag encoded by which interval keys are present.
struct MidKey {
  long long lo = -1, hi = -1;
  bool operator<(const MidKey& o) const {
    return lo != o.lo ? lo < o.lo : hi < o.hi;
  }
};

}  // namespace

QuadGraph build_3sum_quad_graph(const BucketedPair& bp, const std::vector<Quadruple>& quads,
                                const ThreeSumRanks& ranks,
                                const std::vector<uint8_t>& subset_mask,
                                size_t quad_budget, ComparisonLedger& ledger) {
  (void)ledger;
  if (quads.size() > quad_budget) throw QuadBudgetExceeded();
  const int L = ranks.universe_log();
  auto in_subset = [&](size_t kp) {
    return subset_mask.empty() || subset_mask[kp] != 0;
  };

  QuadGraph qg;
  qg.row.lemma = "3sum2";
  qg.row.n = bp.n;
  qg.row.d = bp.d;
  qg.row.levels = static_cast<uint64_t>(ranks.levels());
  qg.row.sum_q = quads.size();

  std::map<std::tuple<uint32_t, int32_t, int32_t>, uint32_t> xid;
  std::map<std::tuple<uint32_t, int32_t, int32_t>, uint32_t> zid;
  for (const auto& q : quads) {
    int32_t km = q.pred.defined() ? q.pred.k : -1;
    int32_t kp = q.succ.defined() ? q.succ.k : -1;
    int32_t lm = q.pred.defined() ? q.pred.l : -1;
    int32_t lp = q.succ.defined() ? q.succ.l : -1;
    if (!xid.count({q.i, km, kp})) {
      xid[{q.i, km, kp}] = static_cast<uint32_t>(qg.xs.size());
      qg.xs.push_back({q.i, km, kp});
    }
    if (!zid.count({q.j, lm, lp})) {
      zid[{q.j, lm, lp}] = static_cast<uint32_t>(qg.zs.size());
      qg.zs.push_back({q.j, lm, lp});
    }
  }
  qg.z_base = qg.xs.size();

  SparseGraph& g = qg.graph;
  std::map<std::pair<uint32_t, uint32_t>, uint32_t> edge_of;  // query edges
  qg.query_edge.resize(quads.size());
  for (size_t t = 0; t < quads.size(); ++t) {
    const auto& q = quads[t];
    uint32_t x = xid[{q.i, q.pred.defined() ? q.pred.k : -1, q.succ.defined() ? q.succ.k : -1}];
    uint32_t z = static_cast<uint32_t>(
        qg.z_base + zid[{q.j, q.pred.defined() ? q.pred.l : -1, q.succ.defined() ? q.succ.l : -1}]);
    auto it = edge_of.find({x, z});
    if (it == edge_of.end()) {
      uint32_t e = static_cast<uint32_t>(g.edges.size());
      g.edges.emplace_back(x, z);
      g.query_edges.push_back(e);
      qg.left_annot.push_back(-1);
      qg.right_annot.push_back(-1);
      edge_of[{x, z}] = e;
      qg.query_edge[t] = e;
    } else {
      qg.query_edge[t] = it->second;
    }
  }

  // middle nodes, materialized lazily
  std::map<MidKey, uint32_t> mids;
  qg.y_base = qg.xs.size() + qg.zs.size();
  size_t mid_count = 0;
  auto mid_id = [&](const MidKey& key) {
    auto it = mids.find(key);
    if (it != mids.end()) return it->second;
    uint32_t id = static_cast<uint32_t>(qg.y_base + mid_count++);
    mids.emplace(key, id);
    return id;
  };
  std::map<std::pair<uint32_t, uint32_t>, size_t> side_edge;  // staged (u,v) -> edge idx
  auto add_side_edge = [&](uint32_t u, uint32_t v, int32_t annot, bool left) {
    auto it = side_edge.find({u, v});
    if (it == side_edge.end()) {
      size_t e = g.edges.size();
      g.edges.emplace_back(u, v);
      qg.left_annot.push_back(left ? annot : -1);
      qg.right_annot.push_back(left ? -1 : annot);
      side_edge[{u, v}] = e;
    }
    qg.row.edges += 1;  // bound counts inserts, parallel attempts included
  };

  for (size_t xi = 0; xi < qg.xs.size(); ++xi) {
    const auto& xn = qg.xs[xi];
    size_t w = bp.width(xn.i);
    for (size_t kp = 0; kp < w; ++kp) {
      if (!in_subset(kp)) continue;
      if (xn.km >= 0 && xn.kp >= 0) {
        long long ra_lo = ranks.rank_a(xn.i, static_cast<size_t>(xn.km), kp);
        long long ra_hi = ranks.rank_a(xn.i, kp, static_cast<size_t>(xn.kp));
        for (const auto& ivlo : covering_halves(ra_lo, L, Half::Left))
          for (const auto& ivhi : covering_halves(ra_hi, L, Half::Left))
            add_side_edge(static_cast<uint32_t>(xi), mid_id({ivlo.key(), ivhi.key()}),
                          static_cast<int32_t>(kp), true);
      } else if (xn.kp >= 0) {  // pred sentinel: only the upper constraint
        long long ra_hi = ranks.rank_a(xn.i, kp, static_cast<size_t>(xn.kp));
        for (const auto& ivhi : covering_halves(ra_hi, L, Half::Left))
          add_side_edge(static_cast<uint32_t>(xi), mid_id({-1, ivhi.key()}),
                        static_cast<int32_t>(kp), true);
      } else if (xn.km >= 0) {  // succ sentinel: only the lower constraint
        long long ra_lo = ranks.rank_a(xn.i, static_cast<size_t>(xn.km), kp);
        for (const auto& ivlo : covering_halves(ra_lo, L, Half::Left))
          add_side_edge(static_cast<uint32_t>(xi), mid_id({ivlo.key(), -1}),
                        static_cast<int32_t>(kp), true);
      }
    }
  }
  for (size_t zi = 0; zi < qg.zs.size(); ++zi) {
    const auto& zn = qg.zs[zi];
    uint32_t z = static_cast<uint32_t>(qg.z_base + zi);
    size_t w = bp.width(zn.j);
    for (size_t lp = 0; lp < w; ++lp) {
      if (zn.lm >= 0 && zn.lp >= 0) {
        long long rb_lo = ranks.rank_b(zn.j, lp, static_cast<size_t>(zn.lm));
        long long rb_hi = ranks.rank_b(zn.j, static_cast<size_t>(zn.lp), lp);
        for (const auto& ivlo : covering_halves(rb_lo, L, Half::Right))
          for (const auto& ivhi : covering_halves(rb_hi, L, Half::Right)) {
            MidKey key{ivlo.key(), ivhi.key()};
            if (!mids.count(key)) continue;  // no left edge can pair with it
            add_side_edge(mid_id(key), z, static_cast<int32_t>(lp), false);
          }
      } else if (zn.lp >= 0) {
        long long rb_hi = ranks.rank_b(zn.j, static_cast<size_t>(zn.lp), lp);
        for (const auto& ivhi : covering_halves(rb_hi, L, Half::Right)) {
          MidKey key{-1, ivhi.key()};
          if (!mids.count(key)) continue;
          add_side_edge(mid_id(key), z, static_cast<int32_t>(lp), false);
        }
      } else if (zn.lm >= 0) {
        long long rb_lo = ranks.rank_b(zn.j, lp, static_cast<size_t>(zn.lm));
        for (const auto& ivlo : covering_halves(rb_lo, L, Half::Right)) {
          MidKey key{ivlo.key(), -1};
          if (!mids.count(key)) continue;
          add_side_edge(mid_id(key), z, static_cast<int32_t>(lp), false);
        }
      }
    }
  }

  g.nodes = qg.y_base + mid_count;
  g.parts.assign(g.nodes, 1);
  for (size_t x = 0; x < qg.xs.size(); ++x) g.parts[x] = 0;
  for (size_t z = 0; z < qg.zs.size(); ++z) g.parts[qg.z_base + z] = 2;

  qg.row.graphs = 1;
  qg.row.graphs_bound = 1;
  qg.row.nodes = g.nodes;
  size_t lv = static_cast<size_t>(ranks.levels());
  qg.row.edges += quads.size();
  qg.row.edges_bound = quads.size() + 2 * bp.nb * bp.d * bp.d * bp.d * lv * lv;
  return qg;
}

PairCountGraph build_3sum_pair_graph(const BucketedPair& bp,
                                     const std::vector<PairRef>& refs,
                                     const ThreeSumRanks& ranks, PairDir dir,
                                     const std::vector<uint8_t>& subset_mask,
                                     size_t quad_budget, ComparisonLedger& ledger) {
  (void)ledger;
  if (refs.size() > quad_budget) throw QuadBudgetExceeded();
  const int L = ranks.universe_log();
  auto in_subset = [&](size_t kp) {
    return subset_mask.empty() || subset_mask[kp] != 0;
  };

  PairCountGraph pg;
  pg.row.lemma = "3sum3";
  pg.row.n = bp.n;
  pg.row.d = bp.d;
  pg.row.levels = static_cast<uint64_t>(ranks.levels());
  pg.row.sum_q = refs.size();

  std::map<std::pair<uint32_t, int32_t>, uint32_t> xid, zid;
  for (const auto& r : refs) {
    if (!xid.count({r.i, r.k})) {
      uint32_t id = static_cast<uint32_t>(xid.size());
      xid[{r.i, r.k}] = id;
    }
    if (!zid.count({r.j, r.l})) {
      uint32_t id = static_cast<uint32_t>(zid.size());
      zid[{r.j, r.l}] = id;
    }
  }
  size_t z_base = xid.size();
  size_t y_base = z_base + zid.size();

  SparseGraph& g = pg.graph;
  std::map<std::pair<uint32_t, uint32_t>, uint32_t> edge_of;
  pg.query_edge.resize(refs.size());
  std::vector<uint32_t> mult;
  for (size_t t = 0; t < refs.size(); ++t) {
    uint32_t x = xid[{refs[t].i, refs[t].k}];
    uint32_t z = static_cast<uint32_t>(z_base + zid[{refs[t].j, refs[t].l}]);
    auto it = edge_of.find({x, z});
    if (it == edge_of.end()) {
      uint32_t e = static_cast<uint32_t>(g.edges.size());
      g.edges.emplace_back(x, z);
      g.query_edges.push_back(e);
      mult.push_back(1);
      edge_of[{x, z}] = e;
      pg.query_edge[t] = e;
    } else {
      pg.query_edge[t] = it->second;
    }
  }

  std::map<long long, uint32_t> mids;  // interval key -> node id
  size_t mid_count = 0;
  auto mid_id = [&](long long key) {
    auto it = mids.find(key);
    if (it != mids.end()) return it->second;
    uint32_t id = static_cast<uint32_t>(y_base + mid_count++);
    mids.emplace(key, id);
    return id;
  };
  std::map<std::pair<uint32_t, uint32_t>, size_t> side_edge;
  auto add_side_edge = [&](uint32_t u, uint32_t v) {
    auto it = side_edge.find({u, v});
    if (it == side_edge.end()) {
      side_edge[{u, v}] = g.edges.size();
      g.edges.emplace_back(u, v);
      mult.push_back(1);
    } else {
      mult[it->second] += 1;  // parallel insert: carried as multiplicity
    }
    pg.row.edges += 1;
  };

  for (const auto& [key, x] : xid) {
    auto [i, k] = key;
    size_t w = bp.width(i);
    for (size_t kp = 0; kp < w; ++kp) {
      if (!in_subset(kp)) continue;
      // Below: rank of A(i,k') - A(i,k); Above: rank of A(i,k) - A(i,k')
      long long ra = dir == PairDir::Below
                         ? ranks.rank_a(i, kp, static_cast<size_t>(k))
                         : ranks.rank_a(i, static_cast<size_t>(k), kp);
      for (const auto& iv : covering_halves(ra, L, Half::Left))
        add_side_edge(x, mid_id(iv.key()));
    }
  }
  for (const auto& [key, zi] : zid) {
    auto [j, l] = key;
    uint32_t z = static_cast<uint32_t>(z_base + zi);
    size_t w = bp.width(j);
    for (size_t lp = 0; lp < w; ++lp) {
      // Below: rank of B(j,l) - B(j,l'); Above: rank of B(j,l') - B(j,l)
      long long rb = dir == PairDir::Below
                         ? ranks.rank_b(j, static_cast<size_t>(l), lp)
                         : ranks.rank_b(j, lp, static_cast<size_t>(l));
      for (const auto& iv : covering_halves(rb, L, Half::Right)) {
        auto it = mids.find(iv.key());
        if (it == mids.end()) continue;
        add_side_edge(it->second, z);
      }
    }
  }

  g.nodes = y_base + mid_count;
  g.multiplicity = std::move(mult);
  g.parts.assign(g.nodes, 1);
  for (size_t x = 0; x < xid.size(); ++x) g.parts[x] = 0;
  for (size_t z = 0; z < zid.size(); ++z) g.parts[z_base + z] = 2;

  pg.row.graphs = 1;
  pg.row.graphs_bound = 1;
  pg.row.nodes = g.nodes;
  size_t lv = static_cast<size_t>(ranks.levels());
  pg.row.edges += refs.size();
  pg.row.edges_bound = refs.size() + 2 * bp.nb * bp.d * bp.d * lv;
  return pg;
}

namespace {

// largest l with A(i,k') + B(j,l) <= c, or -1 (binary search over the sorted
// bucket row)
int32_t anchor_pred_l(const BucketedPair& bp, size_t i, size_t j, size_t kp,
                      const RestrictedReal& c, ComparisonLedger& ledger) {
  long long lo = 0, hi = static_cast<long long>(bp.width(j)) - 1, best = -1;
  while (lo <= hi) {
    long long mid = (lo + hi) / 2;
    if (ledger.compare3(bp.A(i, kp), bp.B(j, static_cast<size_t>(mid)), c) != Ord::Greater) {
      best = mid;
      lo = mid + 1;
    } else {
      hi = mid - 1;
    }
  }
  return static_cast<int32_t>(best);
}

// smallest l with A(i,k') + B(j,l) > c, or -1
int32_t anchor_succ_l(const BucketedPair& bp, size_t i, size_t j, size_t kp,
                      const RestrictedReal& c, ComparisonLedger& ledger) {
  long long lo = 0, hi = static_cast<long long>(bp.width(j)) - 1, best = -1;
  while (lo <= hi) {
    long long mid = (lo + hi) / 2;
    if (ledger.compare3(bp.A(i, kp), bp.B(j, static_cast<size_t>(mid)), c) == Ord::Greater) {
      best = mid;
      hi = mid - 1;
    } else {
      lo = mid + 1;
    }
  }
  return static_cast<int32_t>(best);
}

Ord sum_vs_sum(const BucketedPair& bp, uint32_t i, uint32_t j, const PairAnchor& x,
               const PairAnchor& y, ComparisonLedger& ledger) {
  return ledger.compare4(bp.A(i, static_cast<size_t>(x.k)), bp.B(j, static_cast<size_t>(x.l)),
                         bp.A(i, static_cast<size_t>(y.k)),
                         bp.B(j, static_cast<size_t>(y.l)));
}

struct V1State {
  std::vector<PairAnchor> pred, succ;
};

// brute-force anchors over a tiny A-column subset
void brute_v1(const BucketedPair& bp, const std::vector<Variant1Query>& queries,
              const std::vector<RestrictedReal>& cvals, const std::vector<uint8_t>& subset,
              V1State& st, ComparisonLedger& ledger) {
  for (size_t t = 0; t < queries.size(); ++t) {
    const auto& q = queries[t];
    const RestrictedReal& c = cvals[q.c_index];
    size_t w = bp.width(q.i);
    for (size_t k = 0; k < w; ++k) {
      if (!subset.empty() && !subset[k]) continue;
      int32_t lp = anchor_pred_l(bp, q.i, q.j, k, c, ledger);
      if (lp >= 0) {
        PairAnchor cand{static_cast<int32_t>(k), lp};
        if (!st.pred[t].defined() ||
            sum_vs_sum(bp, q.i, q.j, cand, st.pred[t], ledger) == Ord::Greater)
          st.pred[t] = cand;
      }
      int32_t ls = anchor_succ_l(bp, q.i, q.j, k, c, ledger);
      if (ls >= 0) {
        PairAnchor cand{static_cast<int32_t>(k), ls};
        if (!st.succ[t].defined() ||
            sum_vs_sum(bp, q.i, q.j, cand, st.succ[t], ledger) == Ord::Less)
          st.succ[t] = cand;
      }
    }
  }
}

// Witness-route round: one quad graph, decode (k',l') per query.
std::vector<QuadAnswer> quad_round(const BucketedPair& bp,
                                   const std::vector<Variant1Query>& queries,
                                   const V1State& st, const ThreeSumRanks& ranks,
                                   const std::vector<uint8_t>& subset,
                                   SparseTriOracle& oracle, ComparisonLedger& ledger,
                                   LedgerRow* accum) {
  std::vector<Quadruple> quads(queries.size());
  for (size_t t = 0; t < queries.size(); ++t)
    quads[t] = {queries[t].i, queries[t].j, st.pred[t], st.succ[t]};
  auto qg = build_3sum_quad_graph(bp, quads, ranks, subset, SIZE_MAX, ledger);
  if (accum) {
    accum->graphs += qg.row.graphs;
    accum->edges += qg.row.edges;
    accum->edges_bound += qg.row.edges_bound;
    accum->nodes += qg.row.nodes;
    accum->sum_q += qg.row.sum_q;
    accum->levels = std::max(accum->levels, qg.row.levels);
  }
  std::vector<oracles::EdgeAnswer> answers;
  {
    audit::Suspend lift;
    answers = oracle.run(qg.graph, oracles::Mode::Witness);
  }
  if (answers.size() != qg.graph.query_edges.size()) throw OracleProtocol("answer count");
  // map query edge -> per-query answers
  std::map<uint32_t, size_t> pos_of_edge;
  for (size_t p = 0; p < qg.graph.query_edges.size(); ++p)
    pos_of_edge[qg.graph.query_edges[p]] = p;
  // per-edge witness decode: left annot from (x,y) edge, right from (y,z)
  std::map<std::pair<uint32_t, uint32_t>, size_t> edge_idx;
  for (size_t e = 0; e < qg.graph.edges.size(); ++e)
    edge_idx[{qg.graph.edges[e].first, qg.graph.edges[e].second}] = e;

  std::vector<QuadAnswer> out(queries.size());
  for (size_t t = 0; t < queries.size(); ++t) {
    const auto& ans = answers[pos_of_edge[qg.query_edge[t]]];
    if (!ans.yes) continue;
    auto [x, z] = qg.graph.edges[qg.query_edge[t]];
    uint32_t w = static_cast<uint32_t>(ans.witness);
    if (w < qg.y_base) throw OracleProtocol("witness is not a middle node");
    auto le = edge_idx.find({x, w});
    auto re = edge_idx.find({w, z});
    if (le == edge_idx.end() || re == edge_idx.end())
      throw OracleProtocol("witness edges missing");
    int32_t kp = qg.left_annot[le->second];
    int32_t lp = qg.right_annot[re->second];
    if (kp < 0 || lp < 0) throw OracleProtocol("witness edges lack annotations");
    const auto& q = queries[t];
    PairAnchor cand{kp, lp};
    if (st.pred[t].defined() &&
        sum_vs_sum(bp, q.i, q.j, cand, st.pred[t], ledger) != Ord::Greater)
      throw OracleProtocol("witness not above predecessor anchor");
    if (st.succ[t].defined() &&
        sum_vs_sum(bp, q.i, q.j, cand, st.succ[t], ledger) != Ord::Less)
      throw OracleProtocol("witness not below successor anchor");
    out[t] = {true, kp, lp};
  }
  return out;
}

// Counting-route helpers: strictly-between counts for queries (restricted to
// an A-column subset).
std::vector<uint64_t> between_counts_3sum(const BucketedPair& bp,
                                          const std::vector<Variant1Query>& queries,
                                          const V1State& st, const ThreeSumRanks& ranks,
                                          const std::vector<uint8_t>& subset,
                                          const std::vector<uint8_t>& need,
                                          SparseTriOracle& oracle, ComparisonLedger& ledger,
                                          LedgerRow* accum) {
  // counts below the successor / at-most the predecessor, via two pair graphs
  std::vector<PairRef> below_refs, above_refs;
  std::vector<size_t> below_of(queries.size(), SIZE_MAX), above_of(queries.size(), SIZE_MAX);
  for (size_t t = 0; t < queries.size(); ++t) {
    if (!need[t]) continue;
    if (st.succ[t].defined()) {
      below_of[t] = below_refs.size();
      below_refs.push_back({queries[t].i, queries[t].j, st.succ[t].k, st.succ[t].l});
    }
    if (st.pred[t].defined()) {
      above_of[t] = above_refs.size();
      above_refs.push_back({queries[t].i, queries[t].j, st.pred[t].k, st.pred[t].l});
    }
  }
  auto run = [&](const std::vector<PairRef>& refs, PairDir dir) {
    std::vector<uint64_t> counts(refs.size(), 0);
    if (refs.empty()) return counts;
    auto pg = build_3sum_pair_graph(bp, refs, ranks, dir, subset, SIZE_MAX, ledger);
    if (accum) {
      accum->graphs += pg.row.graphs;
      accum->edges += pg.row.edges;
      accum->edges_bound += pg.row.edges_bound;
      accum->nodes += pg.row.nodes;
      accum->sum_q += pg.row.sum_q;
      accum->levels = std::max(accum->levels, pg.row.levels);
    }
    std::vector<oracles::EdgeAnswer> answers;
    {
      audit::Suspend lift;
      answers = oracle.run(pg.graph, oracles::Mode::Count);
    }
    std::map<uint32_t, size_t> pos_of_edge;
    for (size_t p = 0; p < pg.graph.query_edges.size(); ++p)
      pos_of_edge[pg.graph.query_edges[p]] = p;
    for (size_t r = 0; r < refs.size(); ++r)
      counts[r] = answers[pos_of_edge[pg.query_edge[r]]].count;
    return counts;
  };
  auto below = run(below_refs, PairDir::Below);
  auto above = run(above_refs, PairDir::Above);

  std::vector<uint64_t> out(queries.size(), 0);
  for (size_t t = 0; t < queries.size(); ++t) {
    if (!need[t]) continue;
    size_t wi = bp.width(queries[t].i), wj = bp.width(queries[t].j);
    uint64_t total = 0;
    if (subset.empty()) {
      total = static_cast<uint64_t>(wi) * wj;
    } else {
      uint64_t cnt = 0;
      for (size_t k = 0; k < wi; ++k)
        if (subset[k]) ++cnt;
      total = cnt * wj;
    }
    bool has_pred = st.pred[t].defined(), has_succ = st.succ[t].defined();
    if (has_pred && has_succ)
      out[t] = below[below_of[t]] - (total - above[above_of[t]]);
    else if (has_succ)
      out[t] = below[below_of[t]];
    else if (has_pred)
      out[t] = above[above_of[t]];
  }
  return out;
}

bool validate_pair_between(const BucketedPair& bp, const Variant1Query& q,
                           const V1State& st, size_t t, int32_t kp, int32_t lp,
                           ComparisonLedger& ledger) {
  if (kp < 0 || lp < 0) return false;
  if (static_cast<size_t>(kp) >= bp.width(q.i) || static_cast<size_t>(lp) >= bp.width(q.j))
    return false;
  PairAnchor cand{kp, lp};
  if (st.pred[t].defined() &&
      sum_vs_sum(bp, q.i, q.j, cand, st.pred[t], ledger) != Ord::Greater)
    return false;
  if (st.succ[t].defined() && sum_vs_sum(bp, q.i, q.j, cand, st.succ[t], ledger) != Ord::Less)
    return false;
  return true;
}

// Counting-route round per Lemma 3sum23: decide per query via count
// differences, then recover k' by bit restriction and l' by binary search
// between the anchor sums.
std::vector<QuadAnswer> count_round(const BucketedPair& bp,
                                    const std::vector<Variant1Query>& queries,
                                    const V1State& st, const ThreeSumRanks& ranks,
                                    const std::vector<uint8_t>& subset,
                                    SparseTriOracle& oracle, ComparisonLedger& ledger,
                                    uint64_t seed, LedgerRow* accum,
                                    const red_apsp::DriverOptions& opts) {
  std::vector<QuadAnswer> out(queries.size());
  std::vector<uint8_t> need(queries.size(), 1);
  auto counts =
      between_counts_3sum(bp, queries, st, ranks, subset, need, oracle, ledger, accum);
  std::vector<uint8_t> unresolved(queries.size(), 0);
  size_t remaining = 0;
  for (size_t t = 0; t < queries.size(); ++t)
    if (counts[t] > 0) {
      unresolved[t] = 1;
      ++remaining;
    }
  if (remaining == 0) return out;

  int bits = 0;
  while ((1u << bits) < bp.d) ++bits;
  auto base_subset = [&]() {
    return subset.empty() ? std::vector<uint8_t>(bp.d, 1) : subset;
  }();

  // find l' between the anchor sums for a fixed k' (binary search on the
  // sorted row: smallest l with sum > pred-sum, then check against succ)
  auto find_l = [&](size_t t, int32_t kp) -> int32_t {
    const auto& q = queries[t];
    size_t w = bp.width(q.j);
    long long lo = 0, hi = static_cast<long long>(w) - 1, best = -1;
    if (st.pred[t].defined()) {
      while (lo <= hi) {
        long long mid = (lo + hi) / 2;
        if (ledger.compare4(bp.A(q.i, static_cast<size_t>(kp)),
                            bp.B(q.j, static_cast<size_t>(mid)),
                            bp.A(q.i, static_cast<size_t>(st.pred[t].k)),
                            bp.B(q.j, static_cast<size_t>(st.pred[t].l))) == Ord::Greater) {
          best = mid;
          hi = mid - 1;
        } else {
          lo = mid + 1;
        }
      }
    } else if (st.succ[t].defined()) {
      // need any sum strictly below the successor: the smallest row sum
      best = 0;
    }
    return static_cast<int32_t>(best);
  };

  auto try_recover = [&](const std::vector<uint8_t>& sub) {
    auto sub_counts =
        between_counts_3sum(bp, queries, st, ranks, sub, unresolved, oracle, ledger, accum);
    std::vector<uint8_t> target(queries.size(), 0);
    bool any = false;
    for (size_t t = 0; t < queries.size(); ++t)
      if (unresolved[t] && sub_counts[t] > 0) {
        target[t] = 1;
        any = true;
      }
    if (!any) return;
    std::vector<std::vector<uint64_t>> bit_counts(static_cast<size_t>(bits));
    for (int b = 0; b < bits; ++b) {
      std::vector<uint8_t> restricted(bp.d, 0);
      bool nonempty = false;
      for (size_t k = 0; k < bp.d; ++k)
        if (sub[k] && ((k >> b) & 1)) {
          restricted[k] = 1;
          nonempty = true;
        }
      if (!nonempty)
        bit_counts[b].assign(queries.size(), 0);
      else
        bit_counts[b] = between_counts_3sum(bp, queries, st, ranks, restricted, target,
                                            oracle, ledger, accum);
    }
    for (size_t t = 0; t < queries.size(); ++t) {
      if (!target[t]) continue;
      int32_t kp = 0;
      for (int b = 0; b < bits; ++b)
        if (bit_counts[b][t] > 0) kp |= (1 << b);
      if (static_cast<size_t>(kp) >= bp.d || !sub[kp]) continue;
      int32_t lp = find_l(t, kp);
      if (lp < 0 || !validate_pair_between(bp, queries[t], st, t, kp, lp, ledger)) continue;
      out[t] = {true, kp, lp};
      unresolved[t] = 0;
      --remaining;
    }
  };

  for (int attempt = 0; attempt < opts.c_retry && remaining > 0; ++attempt) {
    std::mt19937_64 rng(seed + 0x3c6ef372ull * static_cast<uint64_t>(attempt + 1));
    try_recover(base_subset);
    for (size_t sz = 1; sz < bp.d && remaining > 0; sz *= 2) {
      for (int rep = 0; rep < 3 && remaining > 0; ++rep) {
        std::vector<size_t> perm(bp.d);
        for (size_t k = 0; k < bp.d; ++k) perm[k] = k;
        for (size_t k = bp.d; k > 1; --k) std::swap(perm[k - 1], perm[rng() % k]);
        std::vector<uint8_t> sub(bp.d, 0);
        for (size_t k = 0; k < sz; ++k)
          if (base_subset[perm[k]]) sub[perm[k]] = 1;
        try_recover(sub);
      }
    }
  }
  if (remaining > 0) throw RetryBudgetExhausted("3sum counting witness recovery");
  return out;
}

V1State rec_variant1(const BucketedPair& bp, const std::vector<Variant1Query>& queries,
                     const std::vector<RestrictedReal>& cvals, std::vector<size_t> acols,
                     const ThreeSumRanks& ranks, SparseTriOracle& oracle,
                     std::mt19937_64& rng, ComparisonLedger& ledger, Route route,
                     LedgerRow* accum, uint64_t* max_rounds,
                     const red_apsp::DriverOptions& opts, uint64_t budget, uint64_t seed) {
  V1State st;
  st.pred.assign(queries.size(), {});
  st.succ.assign(queries.size(), {});
  std::vector<uint8_t> subset(bp.d, 0);
  for (size_t k : acols) subset[k] = 1;

  if (acols.size() <= 2) {
    brute_v1(bp, queries, cvals, subset, st, ledger);
    return st;
  }
  std::vector<size_t> shuffled = acols;
  for (size_t i = shuffled.size(); i > 1; --i)
    std::swap(shuffled[i - 1], shuffled[rng() % i]);
  std::vector<size_t> half(shuffled.begin(), shuffled.begin() + (shuffled.size() + 1) / 2);
  std::sort(half.begin(), half.end());
  st = rec_variant1(bp, queries, cvals, half, ranks, oracle, rng, ledger, route, accum,
                    max_rounds, opts, budget, seed);

  // Queries whose ragged bucket row missed the sampled half entirely: seed
  // anchors from the first in-range candidate column.
  for (size_t t = 0; t < queries.size(); ++t) {
    if (st.pred[t].defined() || st.succ[t].defined()) continue;
    const auto& q = queries[t];
    for (size_t k : acols) {
      if (k >= bp.width(q.i)) continue;
      const RestrictedReal& c = cvals[q.c_index];
      int32_t lp = anchor_pred_l(bp, q.i, q.j, k, c, ledger);
      if (lp >= 0) st.pred[t] = {static_cast<int32_t>(k), lp};
      int32_t ls = anchor_succ_l(bp, q.i, q.j, k, c, ledger);
      if (ls >= 0) st.succ[t] = {static_cast<int32_t>(k), ls};
      break;
    }
  }

  uint64_t rounds = 0;
  for (;;) {
    std::vector<QuadAnswer> ans;
    if (route == Route::Witness)
      ans = quad_round(bp, queries, st, ranks, subset, oracle, ledger, accum);
    else
      ans = count_round(bp, queries, st, ranks, subset, oracle, ledger,
                        seed + rounds * 977ull, accum, opts);
    bool any = false;
    for (size_t t = 0; t < queries.size(); ++t) {
      if (!ans[t].found) continue;
      any = true;
      const auto& q = queries[t];
      const RestrictedReal& c = cvals[q.c_index];
      size_t kp = static_cast<size_t>(ans[t].k_prime);
      // re-anchor l by binary search on the sorted row, as in the lemma
      if (ledger.compare3(bp.A(q.i, kp), bp.B(q.j, static_cast<size_t>(ans[t].l_prime)), c) !=
          Ord::Greater) {
        int32_t l = anchor_pred_l(bp, q.i, q.j, kp, c, ledger);
        st.pred[t] = {ans[t].k_prime, l};
      } else {
        int32_t l = anchor_succ_l(bp, q.i, q.j, kp, c, ledger);
        st.succ[t] = {ans[t].k_prime, l};
      }
    }
    if (!any) break;
    if (++rounds > budget) throw AttemptFailed{};
  }
  if (max_rounds) *max_rounds = std::max(*max_rounds, rounds);
  return st;
}

}  // namespace

Variant1Result solve_3sum_variant1(const BucketedPair& bp,
                                   const std::vector<Variant1Query>& queries,
                                   const std::vector<RestrictedReal>& cvals,
                                   SparseTriOracle& oracle, uint64_t seed,
                                   ComparisonLedger& ledger, Route route,
                                   red_apsp::DriverOptions opts) {
  audit::Scope audited;
  ThreeSumRanks ranks(bp, ledger);
  std::vector<size_t> acols(bp.d);
  for (size_t k = 0; k < bp.d; ++k) acols[k] = k;
  uint64_t budget = round_budget(bp.n, opts.c_iter);

  Variant1Result res;
  res.row.lemma = route == Route::Witness ? "3sum1+3sum2" : "3sum1+3sum23+3sum3";
  res.row.n = bp.n;
  res.row.d = bp.d;
  res.row.seed = seed;

  for (int attempt = 0; attempt < opts.c_retry; ++attempt) {
    std::mt19937_64 rng(seed + 0x94d049ull * static_cast<uint64_t>(attempt + 1));
    try {
      auto st = rec_variant1(bp, queries, cvals, acols, ranks, oracle, rng, ledger, route,
                             &res.row, &res.max_rounds, opts, budget,
                             seed + static_cast<uint64_t>(attempt) * 69069ull);
      res.pred = std::move(st.pred);
      res.succ = std::move(st.succ);
      res.row.rounds = res.max_rounds;
      return res;
    } catch (const AttemptFailed&) {
    }
  }
  throw RetryBudgetExhausted("solve_3sum_variant1 exceeded retry budget");
}

std::vector<uint8_t> all_nums_3sum_via_sparse(const ThreeSumInstance& inst, size_t d,
                                              SparseTriOracle& oracle, uint64_t seed,
                                              ComparisonLedger& ledger, Route route,
                                              LedgerRow* row_out,
                                              red_apsp::DriverOptions opts) {
  if (auto v = validate(inst)) throw ShapeMismatch(v->field + ": " + v->message);
  if (d < 1 || d > inst.a.size()) throw ShapeMismatch("need 1 <= d <= n");
  audit::Scope audited;

  // third set negated once: seek a + b = c'
  std::vector<RestrictedReal> cvals;
  cvals.reserve(inst.c.size());
  for (const auto& c : inst.c) cvals.push_back(-c);

  BucketedPair bp = bucketize(inst.a, inst.b, d, ledger);
  std::vector<Variant1Query> queries;
  for (uint32_t ci = 0; ci < cvals.size(); ++ci)
    for (auto [i, j] : staircase_pairs(bp, cvals[ci], ledger))
      queries.push_back({i, j, ci});

  auto res = solve_3sum_variant1(bp, queries, cvals, oracle, seed, ledger, route, opts);
  if (row_out) {
    *row_out = res.row;
    row_out->pipeline = route == Route::Witness ? "3sum-sparse" : "3sum-count";
  }
  std::vector<uint8_t> out(inst.c.size(), 0);
  for (size_t t = 0; t < queries.size(); ++t) {
    if (!res.pred[t].defined()) continue;
    const auto& q = queries[t];
    if (ledger.compare3(bp.A(q.i, static_cast<size_t>(res.pred[t].k)),
                        bp.B(q.j, static_cast<size_t>(res.pred[t].l)),
                        cvals[q.c_index]) == Ord::Equal)
      out[q.c_index] = 1;
  }
  return out;
}

Real3SumToExactTri real3sum_to_exact_tri(const ThreeSumInstance& inst, size_t g, double eps,
                                         ComparisonLedger& ledger) {
  // symmetric single-list form: A = B = C (checked structurally at ingestion)
  size_t n = inst.a.size();
  if (g < 1 || g > n) throw BadBucketCount("need 1 <= g <= n");
  {
    audit::Suspend lift;
    for (size_t t = 0; t < n; ++t)
      if (!inst.a[t].raw_eq(inst.b[t]) || t >= inst.c.size() || !inst.a[t].raw_eq(inst.c[t]))
        throw ShapeMismatch("symmetric form requires A = B = C");
  }
  audit::Scope audited;

  std::vector<RestrictedReal> sorted = inst.a;
  std::stable_sort(sorted.begin(), sorted.end(),
                   [&](const RestrictedReal& x, const RestrictedReal& y) {
                     return ledger.compare_values(x, y) == Ord::Less;
                   });
  std::vector<RestrictedReal> neg_sorted;  // negations, for 3-argument tests
  neg_sorted.reserve(n);
  for (const auto& v : sorted) neg_sorted.push_back(-v);

  Real3SumToExactTri out;
  size_t piece = (n + g - 1) / g;
  out.piece = piece;
  out.bucket_count = g;
  out.tau = static_cast<size_t>(std::ceil(std::pow(static_cast<double>(n), eps)));
  out.row.lemma = "appendixB";
  out.row.n = n;
  out.row.d = g;

  auto bucket_lo = [&](size_t bi) { return bi * piece; };
  auto bucket_width = [&](size_t bi) {
    return std::min(piece, n - bucket_lo(bi));
  };
  size_t buckets = (n + piece - 1) / piece;  // may be < g when g doesn't divide n
  out.bucket_count = buckets;
  // boundary b_i = first element of bucket i; b_buckets = +inf
  auto boundary = [&](size_t bi) -> RestrictedReal {
    if (bi >= buckets) return RestrictedReal::infinity();
    return sorted[bucket_lo(bi)];
  };

  // valid triples (i,j,k): b_i+b_j+b_k <= 0 <= b_{i+1}+b_{j+1}+b_{k+1};
  // enumerate with monotone k-ranges
  std::vector<std::vector<uint32_t>> valid(buckets * buckets);
  auto lower_ok = [&](size_t i, size_t j, size_t k) {
    // b_i + b_j + b_k <= 0  <=>  b_i + b_j <= -b_k
    return ledger.compare3(boundary(i), boundary(j), -boundary(k)) != Ord::Greater;
  };
  auto upper_ok = [&](size_t i, size_t j, size_t k) {
    // 0 <= b_{i+1} + b_{j+1} + b_{k+1}
    RestrictedReal bi1 = boundary(i + 1), bj1 = boundary(j + 1), bk1 = boundary(k + 1);
    if (bi1.is_infinite() || bj1.is_infinite() || bk1.is_infinite()) return true;
    return ledger.compare3(bi1, bj1, -bk1) != Ord::Less;
  };
  for (size_t i = 0; i < buckets; ++i) {
    long long ks = static_cast<long long>(buckets);  // first k passing upper_ok
    long long ke = static_cast<long long>(buckets) - 1;
    for (size_t j = 0; j < buckets; ++j) {
      // ks, ke are non-increasing as j grows
      while (ks > 0 && upper_ok(i, j, static_cast<size_t>(ks - 1))) --ks;
      while (ke >= 0 && !lower_ok(i, j, static_cast<size_t>(ke))) --ke;
      for (long long k = std::max(ks, 0ll); k <= ke; ++k) {
        valid[i * buckets + j].push_back(static_cast<uint32_t>(k));
        ++out.valid_triples;
      }
    }
  }
  out.row.sum_q = out.valid_triples;

  // heavy pairs: direct pairwise brute force against the sorted list
  auto member = [&](const RestrictedReal& lhs_a, const RestrictedReal& lhs_b) {
    // is there x in the list with lhs_a + lhs_b + x = 0, i.e. lhs_a+lhs_b = -x?
    long long lo = 0, hi = static_cast<long long>(n) - 1;
    while (lo <= hi) {
      long long mid = (lo + hi) / 2;
      // -x decreases as x increases; neg_sorted is descending
      Ord o = ledger.compare3(lhs_a, lhs_b, neg_sorted[static_cast<size_t>(mid)]);
      if (o == Ord::Equal) return true;
      if (o == Ord::Greater)
        hi = mid - 1;
      else
        lo = mid + 1;
    }
    return false;
  };
  for (size_t i = 0; i < buckets && !out.partial_yes; ++i)
    for (size_t j = 0; j < buckets && !out.partial_yes; ++j) {
      if (valid[i * buckets + j].size() < out.tau) continue;
      for (size_t s = 0; s < bucket_width(i) && !out.partial_yes; ++s)
        for (size_t t = 0; t < bucket_width(j); ++t) {
          const RestrictedReal& x = sorted[bucket_lo(i) + s];
          const RestrictedReal& y = sorted[bucket_lo(j) + t];
          if (member(x, y)) {
            out.partial_yes = true;
            out.partial_witness = {x, y, -(x + y)};
            break;
          }
        }
    }

  // light pairs: one Real-Exact-Tri instance per (q, p)
  size_t kpart = piece * piece;
  for (size_t qq = 0; qq < out.tau; ++qq)
    for (size_t pp = 0; pp < piece; ++pp) {
      WeightedTripartiteGraph wg;
      wg.ni = buckets;
      wg.nj = buckets;
      wg.nk = kpart;
      wg.w_ij.assign(buckets * buckets, RestrictedReal::infinity());
      wg.w_ik.assign(buckets * kpart, RestrictedReal::infinity());
      wg.w_kj.assign(kpart * buckets, RestrictedReal::infinity());
      bool any_edge = false;
      for (size_t i = 0; i < buckets; ++i)
        for (size_t j = 0; j < buckets; ++j) {
          const auto& ks = valid[i * buckets + j];
          if (ks.size() >= out.tau || qq >= ks.size()) continue;
          size_t kb = ks[qq];
          if (pp >= bucket_width(kb)) continue;
          wg.w_ij[i * buckets + j] = sorted[bucket_lo(kb) + pp];
          any_edge = true;
        }
      if (!any_edge) continue;
      for (size_t i = 0; i < buckets; ++i)
        for (size_t s = 0; s < bucket_width(i); ++s)
          for (size_t t = 0; t < piece; ++t)
            wg.w_ik[i * kpart + (s * piece + t)] = sorted[bucket_lo(i) + s];
      for (size_t j = 0; j < buckets; ++j)
        for (size_t t = 0; t < bucket_width(j); ++t)
          for (size_t s = 0; s < piece; ++s)
            wg.w_kj[(s * piece + t) * buckets + j] = sorted[bucket_lo(j) + t];
      out.instances.push_back(std::move(wg));
    }
  out.row.graphs = out.instances.size();
  out.row.graphs_bound = out.tau * piece;
  return out;
}

}  // namespace red_3sum
}  // namespace fgred
