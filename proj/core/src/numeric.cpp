#include "fgred/numeric.hpp"

#include <algorithm>
#include <charconv>
#include <numeric>

namespace fgred {

namespace {

long long narrow(__int128 v) {
  if (v > INT64_MAX || v < INT64_MIN) throw Overflow("rational out of 64-bit range");
  return static_cast<long long>(v);
}

__int128 gcd128(__int128 a, __int128 b) {
  if (a < 0) a = -a;
  if (b < 0) b = -b;
  while (b) {
    __int128 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

}  // namespace

Rational Rational::normalized(__int128 num, __int128 den) {
  if (den == 0) throw BadParams("zero denominator");
  if (den < 0) {
    den = -den;
    num = -num;
  }
  __int128 g = gcd128(num, den);
  if (g > 1) {
    num /= g;
    den /= g;
  }
  Rational r;
  r.num_ = narrow(num);
  r.den_ = narrow(den);
  return r;
}

Rational Rational::fraction(long long num, long long den) {
  return normalized(num, den);
}

Rational Rational::operator+(const Rational& o) const {
  __int128 n = static_cast<__int128>(num_) * o.den_ + static_cast<__int128>(o.num_) * den_;
  __int128 d = static_cast<__int128>(den_) * o.den_;
  return normalized(n, d);
}

Rational Rational::operator-(const Rational& o) const { return *this + (-o); }

Rational Rational::operator-() const {
  Rational r;
  r.num_ = narrow(-static_cast<__int128>(num_));
  r.den_ = den_;
  return r;
}

int Rational::cmp(const Rational& o) const {
  __int128 lhs = static_cast<__int128>(num_) * o.den_;
  __int128 rhs = static_cast<__int128>(o.num_) * den_;
  return lhs < rhs ? -1 : (lhs > rhs ? 1 : 0);
}

std::string Rational::str() const {
  if (den_ == 1) return std::to_string(num_);
  return std::to_string(num_) + "/" + std::to_string(den_);
}

std::optional<Rational> Rational::parse(std::string_view s) {
  auto parse_ll = [](std::string_view t, long long& out) {
    const char* b = t.data();
    const char* e = t.data() + t.size();
    auto [p, ec] = std::from_chars(b, e, out);
    return ec == std::errc() && p == e;
  };
  auto slash = s.find('/');
  long long num = 0, den = 1;
  if (slash == std::string_view::npos) {
    if (!parse_ll(s, num)) return std::nullopt;
  } else {
    if (!parse_ll(s.substr(0, slash), num)) return std::nullopt;
    if (!parse_ll(s.substr(slash + 1), den)) return std::nullopt;
    if (den == 0) return std::nullopt;
  }
  return Rational::fraction(num, den);
}

// --------------------------------------------------------------------------
// audit
// --------------------------------------------------------------------------
namespace audit {

namespace {
thread_local int g_depth = 0;
}

bool active() noexcept { return g_depth > 0; }

void raw_access(const char* what) {
  if (g_depth > 0) throw AuditViolation(what);
}

Scope::Scope() noexcept { ++g_depth; }
Scope::~Scope() { --g_depth; }

Suspend::Suspend() noexcept : saved_(g_depth) { g_depth = 0; }
Suspend::~Suspend() { g_depth = saved_; }

}  // namespace audit

// --------------------------------------------------------------------------
// RestrictedReal
// --------------------------------------------------------------------------
RestrictedReal RestrictedReal::operator+(const RestrictedReal& o) const {
  if (inf_ || o.inf_) return infinity();
  return RestrictedReal(v_ + o.v_);
}

RestrictedReal RestrictedReal::operator-() const {
  if (inf_) throw BadParams("cannot negate +inf");
  return RestrictedReal(-v_);
}

const Rational& RestrictedReal::finite_value() const {
  audit::raw_access("RestrictedReal::finite_value");
  if (inf_) throw BadParams("finite_value of +inf");
  return v_;
}

int RestrictedReal::raw_cmp(const RestrictedReal& o) const {
  audit::raw_access("RestrictedReal::raw_cmp");
  if (inf_ && o.inf_) return 0;
  if (inf_) return 1;
  if (o.inf_) return -1;
  return v_.cmp(o.v_);
}

std::string RestrictedReal::str() const {
  audit::raw_access("RestrictedReal::str");
  return inf_ ? "inf" : v_.str();
}

std::optional<RestrictedReal> RestrictedReal::parse(std::string_view s) {
  if (s == "inf") return infinity();
  auto r = Rational::parse(s);
  if (!r) return std::nullopt;
  return RestrictedReal(*r);
}

// --------------------------------------------------------------------------
// ComparisonLedger
// --------------------------------------------------------------------------
Ord ComparisonLedger::compare4(const RestrictedReal& a, const RestrictedReal& b,
                               const RestrictedReal& a2, const RestrictedReal& b2) {
  bump();
  bool li = a.inf_ || b.inf_;
  bool ri = a2.inf_ || b2.inf_;
  if (li && ri) return Ord::Equal;
  if (li) return Ord::Greater;
  if (ri) return Ord::Less;
  return ord_of((a.v_ + b.v_).cmp(a2.v_ + b2.v_));
}

Ord ComparisonLedger::compare3(const RestrictedReal& a, const RestrictedReal& b,
                               const RestrictedReal& c) {
  bump();
  bool li = a.inf_ || b.inf_;
  if (li && c.inf_) return Ord::Equal;
  if (li) return Ord::Greater;
  if (c.inf_) return Ord::Less;
  return ord_of((a.v_ + b.v_).cmp(c.v_));
}

Ord ComparisonLedger::compare_values(const RestrictedReal& a, const RestrictedReal& b) {
  return compare4(a, a, b, b);
}

Ord ComparisonLedger::compare4p(const PerturbedReal& a, const PerturbedReal& b,
                                const PerturbedReal& a2, const PerturbedReal& b2) {
  Ord base = compare4(a.base, b.base, a2.base, b2.base);
  if (base != Ord::Equal) return base;
  long long le = a.eps + b.eps;
  long long re = a2.eps + b2.eps;
  return ord_of(le < re ? -1 : (le > re ? 1 : 0));
}

Ord ComparisonLedger::compare_values_p(const PerturbedReal& a, const PerturbedReal& b) {
  return compare4p(a, {0, 0}, b, {0, 0});
}

// --------------------------------------------------------------------------
// BasicRankList
// --------------------------------------------------------------------------
template <class DiffT>
void BasicRankList<DiffT>::build(ComparisonLedger& ledger) {
  ComparisonLedger::RankPhase phase(ledger);
  std::vector<size_t> order(items_.size());
  for (size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(), [&](size_t x, size_t y) {
    return ledger.compare_diff(items_[x].diff, items_[y].diff) == Ord::Less;
  });

  uint32_t max_slot = 0;
  for (const auto& it : items_) max_slot = std::max(max_slot, it.slot);
  slot_rank_.assign(items_.empty() ? 0 : max_slot + 1, -1);
  rep_.clear();

  long long rank = -1;
  for (size_t pos = 0; pos < order.size(); ++pos) {
    bool new_value =
        pos == 0 || ledger.compare_diff(items_[order[pos - 1]].diff, items_[order[pos]].diff) ==
                        Ord::Less;
    if (new_value) {
      ++rank;
      rep_.push_back(order[pos]);
    }
    slot_rank_[items_[order[pos]].slot] = rank;
  }
  distinct_ = static_cast<size_t>(rank + 1);
  built_ = true;
}

template <class DiffT>
long long BasicRankList<DiffT>::rank_of(const DiffT& d, ComparisonLedger& ledger) const {
  long long lo = 0, hi = static_cast<long long>(distinct_) - 1;
  while (lo <= hi) {
    long long mid = (lo + hi) / 2;
    Ord o = ledger.compare_diff(items_[rep_[static_cast<size_t>(mid)]].diff, d);
    if (o == Ord::Equal) return mid;
    if (o == Ord::Less)
      lo = mid + 1;
    else
      hi = mid - 1;
  }
  throw NotAMember();
}

template <class DiffT>
int BasicRankList<DiffT>::universe_log() const {
  int l = 0;
  while ((1ull << l) < distinct_) ++l;
  return l;
}

template class BasicRankList<RealDiff>;
template class BasicRankList<PerturbedDiff>;

}  // namespace fgred
