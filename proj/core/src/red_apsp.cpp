#include "fgred/red_apsp.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <map>
#include <random>
#include <set>
#include <thread>

namespace fgred {
namespace red_apsp {

namespace {

// Run fn(i) for i in [0, count); runs on the caller thread unless jobs > 1.
template <class Fn>
void parallel_for(size_t count, int jobs, Fn&& fn) {
  if (jobs <= 1 || count <= 1) {
    for (size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<size_t> next{0};
  auto worker = [&] {
    for (size_t i = next.fetch_add(1); i < count; i = next.fetch_add(1)) fn(i);
  };
  std::vector<std::thread> threads;
  size_t nthreads = std::min<size_t>(static_cast<size_t>(jobs), count);
  threads.reserve(nthreads);
  for (size_t t = 0; t < nthreads; ++t) threads.emplace_back(worker);
  for (auto& t : threads) t.join();
}

uint64_t round_budget(size_t n, int c_iter) {
  double b = c_iter * std::log2(static_cast<double>(n) + 2.0);
  return static_cast<uint64_t>(b);
}

struct AttemptFailed {};

}  // namespace

FredmanRanks::FredmanRanks(const MinPlusInstance& inst, ComparisonLedger& ledger)
    : n_(inst.n), d_(inst.d) {
  ra_.assign(n_ * d_ * d_, -1);
  rb_.assign(n_ * d_ * d_, -1);
  af_.assign(n_ * d_, 0);
  bf_.assign(d_ * n_, 0);
  for (size_t i = 0; i < n_; ++i)
    for (size_t k = 0; k < d_; ++k) af_[i * d_ + k] = inst.A(i, k).is_infinite() ? 0 : 1;
  for (size_t k = 0; k < d_; ++k)
    for (size_t j = 0; j < n_; ++j)
      bf_[k * n_ + j] = inst.B(k, j).is_infinite() ? 0 : 1;

  RankList list;
  list.reserve(2 * n_ * d_ * d_);
  // A-side slots: (i*d + k)*d + k'; B-side slots offset by n*d*d.
  const uint32_t b_base = static_cast<uint32_t>(n_ * d_ * d_);
  for (size_t i = 0; i < n_; ++i)
    for (size_t k = 0; k < d_; ++k) {
      if (!a_finite(i, k)) continue;
      for (size_t kp = 0; kp < d_; ++kp) {
        if (!a_finite(i, kp)) continue;
        list.add({inst.A(i, kp), inst.A(i, k)},
                 static_cast<uint32_t>((i * d_ + k) * d_ + kp));
      }
    }
  for (size_t j = 0; j < n_; ++j)
    for (size_t k = 0; k < d_; ++k) {
      if (!bf_[k * n_ + j]) continue;
      for (size_t kp = 0; kp < d_; ++kp) {
        if (!bf_[kp * n_ + j]) continue;
        list.add({inst.B(k, j), inst.B(kp, j)},
                 b_base + static_cast<uint32_t>((j * d_ + k) * d_ + kp));
      }
    }
  list.build(ledger);
  ulog_ = list.universe_log();
  distinct_ = list.distinct();
  for (size_t i = 0; i < n_; ++i)
    for (size_t k = 0; k < d_; ++k)
      for (size_t kp = 0; kp < d_; ++kp) {
        uint32_t slot = static_cast<uint32_t>((i * d_ + k) * d_ + kp);
        if (a_finite(i, k) && a_finite(i, kp)) ra_[slot] = list.rank_of_slot(slot);
      }
  for (size_t j = 0; j < n_; ++j)
    for (size_t k = 0; k < d_; ++k)
      for (size_t kp = 0; kp < d_; ++kp) {
        uint32_t slot = static_cast<uint32_t>((j * d_ + k) * d_ + kp);
        if (bf_[k * n_ + j] && bf_[kp * n_ + j]) rb_[slot] = list.rank_of_slot(b_base + slot);
      }
}

GraphFamily build_variant_graphs(const MinPlusInstance& inst,
                                 const std::vector<int32_t>& cols,
                                 const std::vector<int32_t>& k, const FredmanRanks& ranks,
                                 ComparisonLedger& ledger) {
  (void)ledger;
  const size_t n = inst.n;
  if (k.size() != n * n) throw ShapeMismatch("k matrix must be n x n");
  if (cols.empty()) throw ShapeMismatch("empty column set");
  const size_t dl = cols.size();
  const size_t chunk_cap = (n * n + dl - 1) / dl;  // ceil(n^2 / d)
  const int L = ranks.universe_log();

  // group active pairs by their current index
  std::map<int32_t, std::vector<std::pair<uint32_t, uint32_t>>> groups;
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j) {
      int32_t kk = k[i * n + j];
      if (kk < 0) continue;
      groups[kk].emplace_back(static_cast<uint32_t>(i), static_cast<uint32_t>(j));
    }

  GraphFamily fam;
  fam.ledger.lemma = "apsp2";
  fam.ledger.n = n;
  fam.ledger.d = dl;
  fam.ledger.levels = static_cast<uint64_t>(ranks.levels());

  for (auto& [kk, pairs] : groups) {
    for (size_t off = 0; off < pairs.size(); off += chunk_cap) {
      VariantGraph vg;
      vg.k = kk;
      vg.chunk = off / chunk_cap;
      vg.n = n;
      SparseGraph& g = vg.graph;

      std::map<std::pair<int32_t, long long>, uint32_t> middle_ids;
      std::vector<std::pair<uint32_t, uint32_t>> mid_edges;  // staged (u,v)
      auto middle_id = [&](int32_t kp, const DyadicInterval& iv) {
        auto key = std::make_pair(kp, iv.key());
        auto it = middle_ids.find(key);
        if (it != middle_ids.end()) return it->second;
        uint32_t id = static_cast<uint32_t>(2 * n + vg.middles.size());
        middle_ids.emplace(key, id);
        vg.middles.push_back({kp, iv});
        return id;
      };

      size_t end = std::min(pairs.size(), off + chunk_cap);
      std::vector<uint8_t> row_used(n, 0), col_used(n, 0);
      for (size_t t = off; t < end; ++t) {
        auto [i, j] = pairs[t];
        vg.query_pairs.emplace_back(i, j);
        g.edges.emplace_back(i, static_cast<uint32_t>(n + j));
        g.query_edges.push_back(static_cast<uint32_t>(g.edges.size() - 1));
        row_used[i] = col_used[j] = 1;
      }

      size_t ku = static_cast<size_t>(kk);
      for (size_t i = 0; i < n; ++i) {
        if (!row_used[i] || !ranks.a_finite(i, ku)) continue;
        for (int32_t kp : cols) {
          size_t kpu = static_cast<size_t>(kp);
          if (kpu == ku || !ranks.a_finite(i, kpu)) continue;
          long long ra = ranks.rank_a(i, ku, kpu);
          for (const auto& iv : covering_halves(ra, L, Half::Left))
            mid_edges.emplace_back(static_cast<uint32_t>(i), middle_id(kp, iv));
        }
      }
      for (size_t j = 0; j < n; ++j) {
        if (!col_used[j] || !ranks.b_finite(ku, j)) continue;
        for (int32_t kp : cols) {
          size_t kpu = static_cast<size_t>(kp);
          if (kpu == ku || !ranks.b_finite(kpu, j)) continue;
          long long rb = ranks.rank_b(ku, j, kpu);
          for (const auto& iv : covering_halves(rb, L, Half::Right))
            mid_edges.emplace_back(middle_id(kp, iv), static_cast<uint32_t>(n + j));
        }
      }

      g.nodes = 2 * n + vg.middles.size();
      for (auto& e : mid_edges) g.edges.push_back(e);
      g.parts.assign(g.nodes, 0);
      for (size_t j = 0; j < n; ++j) g.parts[n + j] = 2;
      for (size_t m = 0; m < vg.middles.size(); ++m) g.parts[2 * n + m] = 1;

      fam.ledger.graphs += 1;
      fam.ledger.edges += g.edges.size();
      fam.ledger.nodes += g.nodes;
      fam.graphs.push_back(std::move(vg));
    }
  }
  // Lemma apsp2 constructed bounds: graphs <= 2d, per-graph edges
  // <= ceil(n^2/d) + 2 n d levels.
  fam.ledger.graphs_bound = 2 * dl;
  fam.ledger.edges_bound =
      fam.ledger.graphs * (chunk_cap + 2 * n * dl * static_cast<size_t>(ranks.levels()));
  return fam;
}

std::vector<VariantAnswer> solve_variant(const MinPlusInstance& inst,
                                         const std::vector<int32_t>& cols,
                                         const std::vector<int32_t>& k,
                                         const FredmanRanks& ranks, SparseTriOracle& oracle,
                                         ComparisonLedger& ledger, LedgerRow* accum,
                                         int jobs) {
  const size_t n = inst.n;
  GraphFamily fam = build_variant_graphs(inst, cols, k, ranks, ledger);
  if (accum) {
    accum->graphs += fam.ledger.graphs;
    accum->graphs_bound += fam.ledger.graphs_bound;
    accum->edges += fam.ledger.edges;
    accum->edges_bound += fam.ledger.edges_bound;
    accum->nodes += fam.ledger.nodes;
    accum->levels = std::max<uint64_t>(accum->levels, fam.ledger.levels);
  }

  std::vector<std::vector<oracles::EdgeAnswer>> per_graph(fam.graphs.size());
  {
    audit::Suspend lift;  // oracle calls stand outside the audited reduction
    parallel_for(fam.graphs.size(), jobs, [&](size_t gi) {
      per_graph[gi] = oracle.run(fam.graphs[gi].graph, oracles::Mode::Witness);
    });
  }

  std::vector<VariantAnswer> out(n * n);
  for (size_t gi = 0; gi < fam.graphs.size(); ++gi) {
    const VariantGraph& vg = fam.graphs[gi];
    const auto& answers = per_graph[gi];
    if (answers.size() != vg.query_pairs.size()) throw OracleProtocol("answer count");
    for (size_t q = 0; q < answers.size(); ++q) {
      if (!answers[q].yes) continue;
      auto [i, j] = vg.query_pairs[q];
      int64_t w = answers[q].witness;
      if (w < static_cast<int64_t>(vg.middle_base()) ||
          w >= static_cast<int64_t>(vg.middle_base() + vg.middles.size()))
        throw OracleProtocol("witness is not a middle node");
      int32_t kp = vg.middles[static_cast<size_t>(w) - vg.middle_base()].k_prime;
      // Re-validate Eq. (1): A[i,k'] + B[k',j] < A[i,k] + B[k,j].
      if (ledger.compare4(inst.A(i, static_cast<size_t>(kp)),
                          inst.B(static_cast<size_t>(kp), j),
                          inst.A(i, static_cast<size_t>(vg.k)),
                          inst.B(static_cast<size_t>(vg.k), j)) != Ord::Less)
        throw OracleProtocol("witness fails Eq. (1)");
      out[i * n + j] = {true, kp};
    }
  }
  return out;
}

namespace {

// Structurally (no comparisons) find any column with both entries finite.
int32_t first_finite(const MinPlusInstance& inst, const FredmanRanks& ranks,
                     const std::vector<int32_t>& cols, size_t i, size_t j) {
  for (int32_t c : cols)
    if (ranks.a_finite(i, static_cast<size_t>(c)) &&
        ranks.b_finite(static_cast<size_t>(c), j))
      return c;
  return -1;
}

std::vector<int32_t> solve_rect_recursive(const MinPlusInstance& inst,
                                          const FredmanRanks& ranks,
                                          std::vector<int32_t> cols, SparseTriOracle& oracle,
                                          std::mt19937_64& rng, ComparisonLedger& ledger,
                                          DriverStats* stats, const DriverOptions& opts,
                                          uint64_t budget) {
  const size_t n = inst.n;
  std::vector<int32_t> k(n * n, -1);
  if (cols.size() > 1) {
    std::vector<int32_t> shuffled = cols;
    for (size_t i = shuffled.size(); i > 1; --i)
      std::swap(shuffled[i - 1], shuffled[rng() % i]);
    std::vector<int32_t> half(shuffled.begin(),
                              shuffled.begin() + (shuffled.size() + 1) / 2);
    std::sort(half.begin(), half.end());
    k = solve_rect_recursive(inst, ranks, half, oracle, rng, ledger, stats, opts, budget);
  }
  // ensure every pair with a finite candidate has one
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j)
      if (k[i * n + j] < 0) k[i * n + j] = first_finite(inst, ranks, cols, i, j);

  uint64_t rounds = 0;
  for (;;) {
    auto ans = solve_variant(inst, cols, k, ranks, oracle, ledger,
                             stats ? &stats->row : nullptr, opts.jobs);
    bool any = false;
    for (size_t t = 0; t < ans.size(); ++t)
      if (ans[t].found) {
        k[t] = ans[t].k_prime;
        any = true;
      }
    if (!any) break;
    if (++rounds > budget) throw AttemptFailed{};
  }
  if (stats) {
    stats->max_rounds = std::max(stats->max_rounds, rounds);
    stats->total_rounds += rounds;
    stats->row.rounds = std::max(stats->row.rounds, rounds);
  }
  return k;
}

}  // namespace

oracles::MinPlusResult min_plus_rect(const MinPlusInstance& inst, SparseTriOracle& oracle,
                                     uint64_t seed, ComparisonLedger& ledger,
                                     DriverStats* stats, DriverOptions opts) {
  if (auto v = validate(inst)) throw ShapeMismatch(v->field + ": " + v->message);
  audit::Scope audited;
  FredmanRanks ranks(inst, ledger);
  std::vector<int32_t> all_cols(inst.d);
  for (size_t c = 0; c < inst.d; ++c) all_cols[c] = static_cast<int32_t>(c);
  uint64_t budget = round_budget(inst.n, opts.c_iter);

  for (int attempt = 0; attempt < opts.c_retry; ++attempt) {
    std::mt19937_64 rng(seed + 0x51ed2701ull * static_cast<uint64_t>(attempt + 1));
    try {
      auto k = solve_rect_recursive(inst, ranks, all_cols, oracle, rng, ledger, stats, opts,
                                    budget);
      oracles::MinPlusResult res;
      res.n = inst.n;
      res.value.assign(inst.n * inst.n, RestrictedReal::infinity());
      res.argmin.assign(inst.n * inst.n, 0);
      for (size_t t = 0; t < k.size(); ++t) {
        if (k[t] < 0) continue;
        size_t i = t / inst.n, j = t % inst.n;
        res.value[t] = inst.A(i, static_cast<size_t>(k[t])) + inst.B(static_cast<size_t>(k[t]), j);
        res.argmin[t] = k[t];
      }
      if (stats) {
        stats->row.lemma = "apsp1+apsp2";
        stats->row.n = inst.n;
        stats->row.d = inst.d;
        stats->row.seed = seed;
      }
      return res;
    } catch (const AttemptFailed&) {
      if (stats) ++stats->retries;
    }
  }
  throw RetryBudgetExhausted("min_plus_rect exceeded retry budget");
}

oracles::MinPlusResult min_plus_square(const std::vector<RestrictedReal>& a,
                                       const std::vector<RestrictedReal>& b, size_t n,
                                       size_t d, SparseTriOracle& oracle, uint64_t seed,
                                       ComparisonLedger& ledger, DriverStats* stats,
                                       DriverOptions opts) {
  if (a.size() != n * n || b.size() != n * n) throw ShapeMismatch("square matrices expected");
  if (d < 1 || d > n) throw ShapeMismatch("need 1 <= d <= n");
  oracles::MinPlusResult acc;
  acc.n = n;
  acc.value.assign(n * n, RestrictedReal::infinity());
  acc.argmin.assign(n * n, 0);
  bool first = true;
  for (size_t lo = 0; lo < n; lo += d) {
    size_t width = std::min(d, n - lo);
    MinPlusInstance strip;
    strip.n = n;
    strip.d = width;
    strip.a.reserve(n * width);
    strip.b.reserve(width * n);
    for (size_t i = 0; i < n; ++i)
      for (size_t c = 0; c < width; ++c) strip.a.push_back(a[i * n + lo + c]);
    for (size_t c = 0; c < width; ++c)
      for (size_t j = 0; j < n; ++j) strip.b.push_back(b[(lo + c) * n + j]);
    auto part = min_plus_rect(strip, oracle, seed ^ (0x9e37ull * (lo + 1)), ledger, stats, opts);
    audit::Scope audited;
    for (size_t t = 0; t < n * n; ++t) {
      if (first) {
        acc.value[t] = part.value[t];
        acc.argmin[t] = static_cast<int32_t>(lo) + part.argmin[t];
      } else if (ledger.compare_values(part.value[t], acc.value[t]) == Ord::Less) {
        acc.value[t] = part.value[t];
        acc.argmin[t] = static_cast<int32_t>(lo) + part.argmin[t];
      }
    }
    first = false;
  }
  return acc;
}

std::vector<RestrictedReal> apsp(const std::vector<RestrictedReal>& w, size_t n, size_t d,
                                 SparseTriOracle& oracle, uint64_t seed,
                                 ComparisonLedger& ledger, DriverStats* stats,
                                 DriverOptions opts) {
  std::vector<RestrictedReal> dist = w;
  for (size_t i = 0; i < n; ++i) dist[i * n + i] = RestrictedReal(0);
  size_t iters = 0;
  while ((1ull << iters) < n) ++iters;
  for (size_t it = 0; it < std::max<size_t>(iters, 1); ++it) {
    auto sq = min_plus_square(dist, dist, n, d, oracle, seed + it, ledger, stats, opts);
    dist = std::move(sq.value);
    audit::Scope audited;
    for (size_t i = 0; i < n; ++i) {
      if (ledger.compare_values(dist[i * n + i], RestrictedReal(0)) == Ord::Less)
        throw NegativeCycleDetected();
      dist[i * n + i] = RestrictedReal(0);
    }
  }
  return dist;
}

VariantGraph split_for_degeneracy(const VariantGraph& src, size_t d) {
  if (d == 0) throw ShapeMismatch("d must be positive");
  const size_t n = src.n;

  // group query edges and middle edges by their left node
  std::vector<std::vector<size_t>> left_queries(n);
  for (size_t q = 0; q < src.query_pairs.size(); ++q)
    left_queries[src.query_pairs[q].first].push_back(q);
  std::vector<std::vector<uint32_t>> left_middles(n);
  std::vector<std::pair<uint32_t, uint32_t>> middle_right;
  for (size_t e = src.query_pairs.size(); e < src.graph.edges.size(); ++e) {
    auto [u, v] = src.graph.edges[e];
    if (u < n)
      left_middles[u].push_back(v);
    else
      middle_right.emplace_back(u, v);
  }

  VariantGraph out;
  out.k = src.k;
  out.chunk = src.chunk;
  out.n = n;
  out.middles = src.middles;

  // left copies first
  std::vector<std::vector<uint32_t>> copies(n);
  uint32_t next_id = 0;
  for (size_t i = 0; i < n; ++i) {
    size_t deg = left_queries[i].size();
    size_t count = deg == 0 ? 1 : (deg + d - 1) / d;
    for (size_t c = 0; c < count; ++c) copies[i].push_back(next_id++);
  }
  uint32_t z_base = next_id;
  uint32_t mid_base = z_base + static_cast<uint32_t>(n);

  SparseGraph& g = out.graph;
  g.nodes = mid_base + src.middles.size();
  out.query_pairs.assign(src.query_pairs.size(), {0, 0});
  // query edges keep their original order
  std::vector<std::pair<uint32_t, uint32_t>> qedges(src.query_pairs.size());
  for (size_t i = 0; i < n; ++i)
    for (size_t t = 0; t < left_queries[i].size(); ++t) {
      size_t q = left_queries[i][t];
      uint32_t copy = copies[i][t / d];
      qedges[q] = {copy, z_base + src.query_pairs[q].second};
      out.query_pairs[q] = src.query_pairs[q];
    }
  for (size_t q = 0; q < qedges.size(); ++q) {
    g.edges.push_back(qedges[q]);
    g.query_edges.push_back(static_cast<uint32_t>(q));
  }
  for (size_t i = 0; i < n; ++i)
    for (uint32_t m : left_middles[i]) {
      uint32_t mid = mid_base + (m - static_cast<uint32_t>(2 * n));
      for (uint32_t copy : copies[i]) g.edges.emplace_back(copy, mid);
    }
  for (auto [m, z] : middle_right)
    g.edges.emplace_back(mid_base + (m - static_cast<uint32_t>(2 * n)),
                         z_base + (z - static_cast<uint32_t>(n)));

  g.parts.assign(g.nodes, 0);
  for (size_t j = 0; j < n; ++j) g.parts[z_base + j] = 2;
  for (size_t m = 0; m < src.middles.size(); ++m) g.parts[mid_base + m] = 1;
  return out;
}

PruneResult prune_low_degree_middle(const SparseGraph& g, size_t threshold) {
  if (g.parts.size() != g.nodes) throw NotTripartite("graph needs part tags");
  std::vector<std::vector<uint32_t>> adj(g.nodes);
  for (auto [u, v] : g.edges) {
    adj[u].push_back(v);
    adj[v].push_back(u);
  }
  std::set<std::pair<uint32_t, uint32_t>> queries;
  std::vector<uint32_t> qlist = g.query_edges;
  if (qlist.empty()) {
    for (uint32_t e = 0; e < g.edges.size(); ++e) qlist.push_back(e);
  }
  for (auto qe : qlist) {
    auto key = std::minmax(g.edges[qe].first, g.edges[qe].second);
    queries.insert({key.first, key.second});
  }

  PruneResult res;
  res.resolved_yes.assign(qlist.size(), 0);
  std::map<std::pair<uint32_t, uint32_t>, size_t> query_pos;
  for (size_t q = 0; q < qlist.size(); ++q) {
    auto key = std::minmax(g.edges[qlist[q]].first, g.edges[qlist[q]].second);
    query_pos[{key.first, key.second}] = q;
  }

  std::vector<uint8_t> drop(g.nodes, 0);
  for (uint32_t m = 0; m < g.nodes; ++m) {
    if (g.parts[m] != 1 || adj[m].size() > threshold || adj[m].empty()) continue;
    drop[m] = 1;
    for (uint32_t x : adj[m]) {
      if (g.parts[x] != 0) continue;
      for (uint32_t z : adj[m]) {
        if (g.parts[z] != 2) continue;
        auto key = std::minmax(x, z);
        auto it = query_pos.find({key.first, key.second});
        if (it != query_pos.end()) res.resolved_yes[it->second] = 1;
      }
    }
    ++res.removed_middles;
  }

  res.pruned = g;
  res.pruned.edges.clear();
  res.pruned.query_edges.clear();
  res.pruned.multiplicity.clear();
  std::set<uint32_t> live_middles;
  for (size_t e = 0; e < g.edges.size(); ++e) {
    auto [u, v] = g.edges[e];
    if (drop[u] || drop[v]) continue;
    res.pruned.edges.emplace_back(u, v);
    if (g.parts[u] == 1) live_middles.insert(u);
    if (g.parts[v] == 1) live_middles.insert(v);
  }
  for (size_t e = 0; e < res.pruned.edges.size(); ++e) {
    auto key = std::minmax(res.pruned.edges[e].first, res.pruned.edges[e].second);
    if (queries.count({key.first, key.second}))
      res.pruned.query_edges.push_back(static_cast<uint32_t>(e));
  }
  res.remaining_middles = live_middles.size();
  return res;
}

SetDisjointnessReduction sparse_tri_to_set_disjointness(const SparseGraph& g) {
  if (g.parts.size() != g.nodes) throw NotTripartite("graph needs part tags");
  std::vector<uint32_t> middle_index(g.nodes, UINT32_MAX);
  uint32_t middles = 0;
  for (uint32_t v = 0; v < g.nodes; ++v)
    if (g.parts[v] == 1) middle_index[v] = middles++;

  SetDisjointnessReduction red;
  red.instance.universe = middles;
  std::vector<uint32_t> set_of(g.nodes, UINT32_MAX);
  for (uint32_t v = 0; v < g.nodes; ++v)
    if (g.parts[v] != 1) {
      set_of[v] = static_cast<uint32_t>(red.instance.family.size());
      red.instance.family.emplace_back();
    }
  for (auto [u, v] : g.edges) {
    if (g.parts[u] == 1 && g.parts[v] != 1)
      red.instance.family[set_of[v]].push_back(middle_index[u]);
    else if (g.parts[v] == 1 && g.parts[u] != 1)
      red.instance.family[set_of[u]].push_back(middle_index[v]);
  }
  std::vector<uint32_t> qlist = g.query_edges;
  if (qlist.empty())
    for (uint32_t e = 0; e < g.edges.size(); ++e) qlist.push_back(e);
  for (auto qe : qlist) {
    auto [u, v] = g.edges[qe];
    if (g.parts[u] == 1 || g.parts[v] == 1) continue;  // only left-right queries
    red.instance.queries.emplace_back(set_of[u], set_of[v]);
  }
  return red;
}

}  // namespace red_apsp
}  // namespace fgred
