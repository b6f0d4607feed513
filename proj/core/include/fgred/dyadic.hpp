#pragma once

#include <cstdint>
#include <vector>

#include "fgred/errors.hpp"

namespace fgred {

// Interval [2^level * index, 2^level * (index+1)) inside [0, 2^universe_log).
struct DyadicInterval {
  int level = 0;
  long long index = 0;
  int universe_log = 0;

  long long lo() const { return index << level; }
  long long hi() const { return (index + 1) << level; }
  long long mid() const { return lo() + (1ll << (level - 1)); }

  bool contains(long long r) const { return r >= lo() && r < hi(); }
  // Level-0 intervals have no halves.
  bool in_left_half(long long r) const {
    return level >= 1 && r >= lo() && r < mid();
  }
  bool in_right_half(long long r) const {
    return level >= 1 && r >= mid() && r < hi();
  }

  bool operator==(const DyadicInterval& o) const {
    return level == o.level && index == o.index;
  }
  // Dense key within a fixed universe: level in [0,L], index in [0, 2^(L-level)).
  long long key() const {
    // offset of level s = 2^(L+1) - 2^(L+1-s); supports L up to ~60.
    long long off = (2ll << universe_log) - (2ll << (universe_log - level));
    return off + index;
  }
};

enum class Half { Left, Right };

// The unique dyadic interval with a in its left half and b in its right half.
// Requires 0 <= a, b < 2^L; throws EqualRanks / NotSeparable.
DyadicInterval separating_interval(long long a, long long b, int universe_log);

// All intervals whose chosen half contains r; at most universe_log of them.
std::vector<DyadicInterval> covering_halves(long long r, int universe_log, Half side);

}  // namespace fgred
