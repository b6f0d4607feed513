#include <doctest.h>

#include <random>

#include "fgred/dyadic.hpp"
#include "fgred/numeric.hpp"

using namespace fgred;

TEST_CASE("rational arithmetic and parsing") {
  Rational half = Rational::fraction(1, 2);
  Rational third = Rational::fraction(-2, -6);
  CHECK(third == Rational::fraction(1, 3));
  CHECK((half + third) == Rational::fraction(5, 6));
  CHECK((half - half) == Rational(0));
  CHECK(half.cmp(third) > 0);
  CHECK(Rational::parse("5/3"));
  CHECK(Rational::parse("5/3")->str() == "5/3");
  CHECK(Rational::parse("-7")->str() == "-7");
  CHECK(!Rational::parse("x"));
  CHECK(!Rational::parse("1/0"));
}

TEST_CASE("compare4 spec examples") {
  ComparisonLedger ledger;
  CHECK(ledger.compare4(1, 2, 1, 3) == Ord::Less);
  CHECK(ledger.compare4(1, RestrictedReal::infinity(), 5, 5) == Ord::Greater);
  CHECK(ledger.compare4(2, 3, 4, 1) == Ord::Equal);
  CHECK(ledger.driver == 3);
  SUBCASE("compare3 and value comparison") {
    CHECK(ledger.compare3(1, 2, 4) == Ord::Less);
    CHECK(ledger.compare3(1, 2, RestrictedReal::infinity()) == Ord::Less);
    CHECK(ledger.compare_values(RestrictedReal::infinity(), RestrictedReal::infinity()) ==
          Ord::Equal);
  }
}

TEST_CASE("perturbed comparison is lexicographic") {
  ComparisonLedger ledger;
  PerturbedReal a{RestrictedReal(3), 2};
  PerturbedReal b{RestrictedReal(3), 5};
  CHECK(ledger.compare_values_p(a, b) == Ord::Less);
  PerturbedReal c{RestrictedReal(2), 100};
  CHECK(ledger.compare_values_p(c, a) == Ord::Less);
}

TEST_CASE("audit scope tattles on raw access but not on ledger predicates") {
  RestrictedReal x(4), y(5);
  ComparisonLedger ledger;
  {
    audit::Scope guard;
    CHECK_THROWS_AS((void)x.raw_cmp(y), AuditViolation);
    CHECK_THROWS_AS((void)x.str(), AuditViolation);
    CHECK(ledger.compare_values(x, y) == Ord::Less);
    CHECK(x.is_infinite() == false);  // structural flag stays readable
    {
      audit::Suspend lift;
      CHECK(x.raw_cmp(y) < 0);
    }
    CHECK_THROWS_AS((void)x.raw_cmp(y), AuditViolation);
  }
  CHECK(x.raw_cmp(y) < 0);
}

// brute-force oracle: enumerate every dyadic interval in [0, 2^L)
static std::vector<DyadicInterval> all_intervals(int L) {
  std::vector<DyadicInterval> out;
  for (int s = 0; s <= L; ++s)
    for (long long t = 0; (t << s) < (1ll << L); ++t)
      out.push_back({s, t, L});
  return out;
}

TEST_CASE("separating_interval matches brute force") {
  // frozen expectations, derived by the exhaustive scan below
  auto iv = separating_interval(3, 5, 3);
  CHECK(iv.level == 3);
  CHECK(iv.lo() == 0);
  CHECK(iv.hi() == 8);
  iv = separating_interval(4, 5, 3);
  CHECK(iv.level == 1);
  CHECK(iv.lo() == 4);
  CHECK(iv.hi() == 6);
  CHECK_THROWS_AS(separating_interval(5, 5, 3), EqualRanks);
  CHECK_THROWS_AS(separating_interval(6, 5, 3), NotSeparable);

  for (int L = 1; L <= 6; ++L) {
    auto intervals = all_intervals(L);
    for (long long a = 0; a < (1ll << L); ++a)
      for (long long b = a + 1; b < (1ll << L); ++b) {
        int found = 0;
        DyadicInterval expect{};
        for (const auto& cand : intervals)
          if (cand.in_left_half(a) && cand.in_right_half(b)) {
            ++found;
            expect = cand;
          }
        CHECK(found == 1);  // uniqueness
        auto got = separating_interval(a, b, L);
        CHECK(got == expect);
      }
  }
}

TEST_CASE("covering_halves matches brute force") {
  // derived by the exhaustive scan: level-1 [2,4) has left half {2}, so only
  // the level-3 interval keeps 3 in a left half
  auto got = covering_halves(3, 3, Half::Left);
  REQUIRE(got.size() == 1);
  CHECK(got[0].level == 3);
  CHECK(got[0].lo() == 0);

  got = covering_halves(0, 1, Half::Left);
  REQUIRE(got.size() == 1);
  CHECK(got[0].lo() == 0);
  CHECK(got[0].hi() == 2);

  CHECK(covering_halves(0, 0, Half::Left).empty());

  for (int L = 0; L <= 6; ++L) {
    auto intervals = all_intervals(L);
    for (long long r = 0; r < (1ll << L); ++r) {
      for (Half side : {Half::Left, Half::Right}) {
        std::vector<DyadicInterval> expect;
        for (const auto& cand : intervals)
          if (side == Half::Left ? cand.in_left_half(r) : cand.in_right_half(r))
            expect.push_back(cand);
        auto out = covering_halves(r, L, side);
        REQUIRE(out.size() == expect.size());
        CHECK(out.size() <= static_cast<size_t>(L));
        for (const auto& iv : out)
          CHECK(std::find(expect.begin(), expect.end(), iv) != expect.end());
      }
    }
  }
}

TEST_CASE("covering halves of a and b intersect exactly in the separator") {
  for (int L = 1; L <= 5; ++L)
    for (long long a = 0; a < (1ll << L); ++a)
      for (long long b = a + 1; b < (1ll << L); ++b) {
        auto lefts = covering_halves(a, L, Half::Left);
        auto rights = covering_halves(b, L, Half::Right);
        int common = 0;
        for (const auto& x : lefts)
          for (const auto& y : rights)
            if (x == y) ++common;
        CHECK(common == 1);
        auto sep = separating_interval(a, b, L);
        CHECK(std::find(lefts.begin(), lefts.end(), sep) != lefts.end());
        CHECK(std::find(rights.begin(), rights.end(), sep) != rights.end());
      }
}

TEST_CASE("rank list: order isomorphism, dedup, membership") {
  ComparisonLedger ledger;
  RankList list;
  // values {-2, 0, 1, 5} realized as differences (v) - (0)
  std::vector<long long> vals = {-2, 0, 1, 5};
  for (uint32_t s = 0; s < vals.size(); ++s)
    list.add({RestrictedReal(vals[s]), RestrictedReal(0)}, s);
  list.build(ledger);
  CHECK(list.distinct() == 4);
  CHECK(list.rank_of_slot(2) == 2);  // rank of 1
  CHECK(ledger.rank_build > 0);
  CHECK(ledger.driver == 0);

  RankList dups;
  dups.add({RestrictedReal(0), RestrictedReal(0)}, 0);
  dups.add({RestrictedReal(3), RestrictedReal(3)}, 1);  // same value 0
  dups.add({RestrictedReal(3), RestrictedReal(0)}, 2);
  dups.build(ledger);
  CHECK(dups.distinct() == 2);
  CHECK(dups.rank_of_slot(0) == 0);
  CHECK(dups.rank_of_slot(1) == 0);
  CHECK(dups.rank_of_slot(2) == 1);
  CHECK(dups.universe_log() == 1);

  CHECK_THROWS_AS(dups.rank_of({RestrictedReal(7), RestrictedReal(0)}, ledger), NotAMember);
  CHECK(dups.rank_of({RestrictedReal(2), RestrictedReal(2)}, ledger) == 0);
}

TEST_CASE("rank list order isomorphism on random difference sets") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 20; ++trial) {
    ComparisonLedger ledger;
    RankList list;
    std::vector<long long> pos(12), neg(12);
    for (auto& v : pos) v = static_cast<long long>(rng() % 40) - 20;
    for (auto& v : neg) v = static_cast<long long>(rng() % 40) - 20;
    for (uint32_t s = 0; s < pos.size(); ++s)
      list.add({RestrictedReal(pos[s]), RestrictedReal(neg[s])}, s);
    list.build(ledger);
    for (uint32_t x = 0; x < pos.size(); ++x)
      for (uint32_t y = 0; y < pos.size(); ++y) {
        long long vx = pos[x] - neg[x], vy = pos[y] - neg[y];
        CHECK((vx < vy) == (list.rank_of_slot(x) < list.rank_of_slot(y)));
        CHECK((vx == vy) == (list.rank_of_slot(x) == list.rank_of_slot(y)));
      }
    CHECK((1ll << list.universe_log()) >= static_cast<long long>(list.distinct()));
  }
}
