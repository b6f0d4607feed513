#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "fgred/errors.hpp"

namespace fgred {

// ---------------------------------------------------------------------------
// Exact rational arithmetic. Values stay exact through every reduction; the
// numerator/denominator are kept in int64 with __int128 intermediates, which
// is ample at desk scale.
// ---------------------------------------------------------------------------
class Rational {
 public:
  constexpr Rational() : num_(0), den_(1) {}
  constexpr Rational(long long n) : num_(n), den_(1) {}  // NOLINT: implicit by design
  static Rational fraction(long long num, long long den);

  long long num() const { return num_; }
  long long den() const { return den_; }
  bool is_integer() const { return den_ == 1; }

  Rational operator+(const Rational& o) const;
  Rational operator-(const Rational& o) const;
  Rational operator-() const;

  // Sign of *this - o: -1, 0, +1.
  int cmp(const Rational& o) const;
  bool operator==(const Rational& o) const { return num_ == o.num_ && den_ == o.den_; }

  std::string str() const;  // "p" or "p/q"
  static std::optional<Rational> parse(std::string_view s);

 private:
  long long num_;
  long long den_;  // > 0, gcd(num_, den_) == 1
  static Rational normalized(__int128 num, __int128 den);
};

// ---------------------------------------------------------------------------
// Tattling harness. While a Scope is active, any raw inspection of a
// RestrictedReal (value extraction, direct relational test, printing) throws
// AuditViolation. The ledger's comparison predicates and the structural
// infinity flag stay usable, which is exactly the restricted comparison
// model the reductions are allowed.
// ---------------------------------------------------------------------------
namespace audit {

bool active() noexcept;
void raw_access(const char* what);  // throws AuditViolation when active

struct Scope {
  Scope() noexcept;
  ~Scope();
  Scope(const Scope&) = delete;
  Scope& operator=(const Scope&) = delete;
};

// Temporarily lifts the audit, e.g. while control is handed to a target
// oracle (the oracle stands for an external solver, not reduction code).
struct Suspend {
  Suspend() noexcept;
  ~Suspend();
  Suspend(const Suspend&) = delete;
  Suspend& operator=(const Suspend&) = delete;

 private:
  int saved_;
};

}  // namespace audit

enum class Ord { Less, Equal, Greater };

inline Ord ord_of(int sign) {
  return sign < 0 ? Ord::Less : (sign > 0 ? Ord::Greater : Ord::Equal);
}

// ---------------------------------------------------------------------------
// A real input value: an exact rational, or the distinguished +inf used for
// absent edges. Addition and negation are the restricted value-producing
// operations; everything else goes through a ComparisonLedger.
// ---------------------------------------------------------------------------
class RestrictedReal {
 public:
  constexpr RestrictedReal() : v_(), inf_(false) {}
  constexpr RestrictedReal(long long n) : v_(n), inf_(false) {}  // NOLINT
  explicit RestrictedReal(Rational v) : v_(v), inf_(false) {}
  static RestrictedReal infinity() {
    RestrictedReal r;
    r.inf_ = true;
    return r;
  }

  bool is_infinite() const noexcept { return inf_; }  // structural, never tattles

  RestrictedReal operator+(const RestrictedReal& o) const;  // inf-absorbing
  RestrictedReal operator-() const;                         // throws Overflow-free; inf not negatable

  // Raw accessors; these tattle under an audit scope.
  const Rational& finite_value() const;
  int raw_cmp(const RestrictedReal& o) const;  // inf-aware sign of *this - o
  bool raw_eq(const RestrictedReal& o) const { return raw_cmp(o) == 0; }
  std::string str() const;  // "inf" or rational text

  static std::optional<RestrictedReal> parse(std::string_view s);

 private:
  Rational v_;
  bool inf_;
  friend struct ComparisonLedger;
};

inline bool raw_less(const RestrictedReal& a, const RestrictedReal& b) {
  return a.raw_cmp(b) < 0;
}

// Value a + eps * delta for an infinitesimal delta; comparison is
// lexicographic (base first, eps only on ties).
struct PerturbedReal {
  RestrictedReal base;
  long long eps = 0;
};

// Difference expressions pos - neg; comparing two of them is a 4-linear test,
// which is how every rank list stays inside the comparison model.
struct RealDiff {
  RestrictedReal pos, neg;
};
struct PerturbedDiff {
  PerturbedReal pos, neg;
};

// ---------------------------------------------------------------------------
// Comparison counting. `driver` counts comparisons made by reduction driver
// logic (witness validation, staircase walks, binary searches, strip
// combining); `rank_build` counts the comparisons spent sorting rank lists.
// Both are exposed in accounting rows.
// ---------------------------------------------------------------------------
struct ComparisonLedger {
  unsigned long long driver = 0;
  unsigned long long rank_build = 0;

  struct RankPhase {
    explicit RankPhase(ComparisonLedger& l) : l_(l), saved_(l.in_rank_build_) {
      l_.in_rank_build_ = true;
    }
    ~RankPhase() { l_.in_rank_build_ = saved_; }

   private:
    ComparisonLedger& l_;
    bool saved_;
  };

  unsigned long long total() const { return driver + rank_build; }
  void reset() { driver = rank_build = 0; }

  // sign((a+b) - (a2+b2)); one counted predicate.
  Ord compare4(const RestrictedReal& a, const RestrictedReal& b,
               const RestrictedReal& a2, const RestrictedReal& b2);
  // sign((a+b) - c)
  Ord compare3(const RestrictedReal& a, const RestrictedReal& b, const RestrictedReal& c);
  // sign(a - b), realized as compare4(a, a, b, b)
  Ord compare_values(const RestrictedReal& a, const RestrictedReal& b);

  // Lexicographic 4-linear comparison of perturbed sums (a+b) vs (a2+b2).
  Ord compare4p(const PerturbedReal& a, const PerturbedReal& b,
                const PerturbedReal& a2, const PerturbedReal& b2);
  Ord compare_values_p(const PerturbedReal& a, const PerturbedReal& b);

  // Difference-vs-difference: d1 < d2  <=>  d1.pos + d2.neg < d2.pos + d1.neg.
  Ord compare_diff(const RealDiff& d1, const RealDiff& d2) {
    return compare4(d1.pos, d2.neg, d2.pos, d1.neg);
  }
  Ord compare_diff(const PerturbedDiff& d1, const PerturbedDiff& d2) {
    return compare4p(d1.pos, d2.neg, d2.pos, d1.neg);
  }

 private:
  bool in_rank_build_ = false;
  void bump() {
    if (in_rank_build_)
      ++rank_build;
    else
      ++driver;
  }
};

// ---------------------------------------------------------------------------
// Rank lists: deduplicated sorted difference lists. Elements are added with a
// caller-assigned slot id; build() sorts once and fills a slot -> rank table,
// so reductions never pay comparisons to look ranks up again.
// ---------------------------------------------------------------------------
template <class DiffT>
class BasicRankList {
 public:
  void reserve(size_t n) { items_.reserve(n); }
  void add(DiffT d, uint32_t slot) { items_.push_back({std::move(d), slot}); }

  void build(ComparisonLedger& ledger);

  size_t distinct() const { return distinct_; }
  size_t size_before_dedup() const { return items_.size(); }
  bool built() const { return built_; }

  // Precomputed, comparison-free.
  long long rank_of_slot(uint32_t slot) const { return slot_rank_.at(slot); }

  // Rank of an arbitrary difference; pays O(log) counted comparisons and
  // throws NotAMember if the value was never inserted.
  long long rank_of(const DiffT& d, ComparisonLedger& ledger) const;

  // Smallest L with 2^L >= distinct(); every rank lives in [0, 2^L).
  int universe_log() const;
  int levels() const { return universe_log() + 1; }

 private:
  struct Item {
    DiffT diff;
    uint32_t slot;
  };
  std::vector<Item> items_;
  std::vector<long long> slot_rank_;
  std::vector<size_t> rep_;  // index into items_ of one representative per rank
  size_t distinct_ = 0;
  bool built_ = false;
};

using RankList = BasicRankList<RealDiff>;
using PerturbedRankList = BasicRankList<PerturbedDiff>;

extern template class BasicRankList<RealDiff>;
extern template class BasicRankList<PerturbedDiff>;

}  // namespace fgred
