#include "fgred/accounting.hpp"

#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "fgred/errors.hpp"

namespace fgred {

using nlohmann::json;

namespace {

const std::pair<const char*, uint64_t LedgerRow::*> kFields[] = {
    {"seed", &LedgerRow::seed},
    {"n", &LedgerRow::n},
    {"d", &LedgerRow::d},
    {"f", &LedgerRow::f},
    {"p", &LedgerRow::p},
    {"graphs", &LedgerRow::graphs},
    {"graphs_bound", &LedgerRow::graphs_bound},
    {"edges", &LedgerRow::edges},
    {"edges_bound", &LedgerRow::edges_bound},
    {"nodes", &LedgerRow::nodes},
    {"sum_q", &LedgerRow::sum_q},
    {"levels", &LedgerRow::levels},
    {"inner_dim", &LedgerRow::inner_dim},
    {"inner_dim_bound", &LedgerRow::inner_dim_bound},
    {"components", &LedgerRow::components},
    {"components_bound", &LedgerRow::components_bound},
    {"degeneracy", &LedgerRow::degeneracy},
    {"degeneracy_bound", &LedgerRow::degeneracy_bound},
    {"rounds", &LedgerRow::rounds},
    {"comparisons", &LedgerRow::comparisons},
    {"sort_comparisons", &LedgerRow::sort_comparisons},
};

}  // namespace

std::string LedgerRow::to_json() const {
  json j;
  j["pipeline"] = pipeline;
  j["lemma"] = lemma;
  for (const auto& [name, member] : kFields) j[name] = this->*member;
  return j.dump();
}

LedgerRow LedgerRow::from_json(const std::string& line) {
  json j;
  try {
    j = json::parse(line);
  } catch (const json::parse_error& e) {
    throw ParseError("ledger line", e.what());
  }
  LedgerRow row;
  row.pipeline = j.value("pipeline", "");
  row.lemma = j.value("lemma", "");
  for (const auto& [name, member] : kFields) row.*member = j.value(name, 0ull);
  return row;
}

void append_ledger(const std::string& path, const LedgerRow& row) {
  std::ofstream out(path, std::ios::app);
  if (!out) throw Error("cannot open ledger " + path);
  out << row.to_json() << "\n";
}

std::vector<LedgerRow> read_ledger(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw MissingLedger("no ledger at " + path);
  std::vector<LedgerRow> rows;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    rows.push_back(LedgerRow::from_json(line));
  }
  if (rows.empty()) throw MissingLedger("empty ledger at " + path);
  return rows;
}

bool account_report(const std::vector<LedgerRow>& rows, std::string& table_out) {
  std::ostringstream os;
  bool all_ok = true;
  auto emit = [&](const LedgerRow& r, const char* what, uint64_t measured, uint64_t bound) {
    if (bound == 0) return;
    double ratio = static_cast<double>(measured) / static_cast<double>(bound);
    bool ok = measured <= bound;
    all_ok = all_ok && ok;
    char buf[256];
    std::snprintf(buf, sizeof(buf), "%-16s %-22s %-12s %12llu %12llu  %.3f%s\n",
                  r.pipeline.c_str(), r.lemma.c_str(), what,
                  static_cast<unsigned long long>(measured),
                  static_cast<unsigned long long>(bound), ratio, ok ? "" : "  EXCEEDED");
    os << buf;
  };
  os << "pipeline         lemma                  quantity         measured        bound  ratio\n";
  for (const auto& r : rows) {
    emit(r, "graphs", r.graphs, r.graphs_bound);
    emit(r, "edges", r.edges, r.edges_bound);
    emit(r, "inner_dim", r.inner_dim, r.inner_dim_bound);
    emit(r, "components", r.components, r.components_bound);
    emit(r, "degeneracy", r.degeneracy, r.degeneracy_bound);
  }
  table_out = os.str();
  return all_ok;
}

}  // namespace fgred
