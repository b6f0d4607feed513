#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace fgred {

// One accounting row per reduction run: measured construction sizes next to
// the exact constructed-size bound of the lemma that produced them.
// `comparisons` is the driver count; rank-list sorting is reported separately
// so the d-tradeoff in the driver cost stays visible.
struct LedgerRow {
  std::string pipeline;
  std::string lemma;
  uint64_t seed = 0;

  uint64_t n = 0, d = 0, f = 0, p = 0;
  uint64_t graphs = 0;
  uint64_t graphs_bound = 0;
  uint64_t edges = 0;        // inserted edges, parallel inserts included
  uint64_t edges_bound = 0;  // sum over graphs of the per-graph bound
  uint64_t nodes = 0;
  uint64_t sum_q = 0;
  uint64_t levels = 0;
  uint64_t inner_dim = 0, inner_dim_bound = 0;
  uint64_t components = 0, components_bound = 0;
  uint64_t degeneracy = 0, degeneracy_bound = 0;
  uint64_t rounds = 0;
  uint64_t comparisons = 0;       // driver comparisons
  uint64_t sort_comparisons = 0;  // rank-list construction comparisons

  std::string to_json() const;
  static LedgerRow from_json(const std::string& line);  // throws ParseError
};

void append_ledger(const std::string& path, const LedgerRow& row);
std::vector<LedgerRow> read_ledger(const std::string& path);  // throws MissingLedger

// Formatted measured-vs-bound table; flags any ratio > 1. Returns true when
// all ratios are within bound.
bool account_report(const std::vector<LedgerRow>& rows, std::string& table_out);

}  // namespace fgred
