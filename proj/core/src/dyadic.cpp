#include "fgred/dyadic.hpp"

namespace fgred {

DyadicInterval separating_interval(long long a, long long b, int universe_log) {
  if (a < 0 || b < 0 || a >= (1ll << universe_log) || b >= (1ll << universe_log))
    throw BadParams("rank outside universe");
  if (a == b) throw EqualRanks();
  if (a > b) throw NotSeparable();
  int h = 63 - __builtin_clzll(static_cast<unsigned long long>(a ^ b));
  DyadicInterval iv;
  iv.level = h + 1;
  iv.index = a >> (h + 1);
  iv.universe_log = universe_log;
  return iv;
}

std::vector<DyadicInterval> covering_halves(long long r, int universe_log, Half side) {
  if (r < 0 || r >= (1ll << universe_log)) throw BadParams("rank outside universe");
  std::vector<DyadicInterval> out;
  out.reserve(static_cast<size_t>(universe_log));
  for (int s = 1; s <= universe_log; ++s) {
    bool upper = (r >> (s - 1)) & 1;
    if ((side == Half::Left && !upper) || (side == Half::Right && upper)) {
      DyadicInterval iv;
      iv.level = s;
      iv.index = r >> s;
      iv.universe_log = universe_log;
      out.push_back(iv);
    }
  }
  return out;
}

}  // namespace fgred
