#include "noisylff/scoring.hpp"

#include <algorithm>

namespace noisylff {

Score score(const Hypothesis& h, const Outcome& outcome) {
  Score s;
  s.outcome = outcome;
  s.size = h.size();
  s.s_acc = outcome.tp + outcome.tn;
  s.s_mdl = s.s_acc - s.size;
  return s;
}

SoundTriggers sound_triggers(const Score& next, const Score& prev, int n_pos, int n_neg) {
  const int gain = next.s_acc - prev.s_acc;
  return {gain > n_pos - prev.outcome.tp, gain > n_neg - prev.outcome.tn};
}

SizeBounds size_bounds(const Score& next, const Score& prev, int n_pos, int n_neg) {
  SizeBounds b;
  b.gen_floor_prev = std::max(0, n_pos + prev.outcome.tn - next.s_mdl);
  b.spec_floor_prev = std::max(0, n_neg + prev.outcome.tp - next.s_mdl);
  b.gen_floor_new = std::max(0, n_pos - next.outcome.tp + next.size);
  b.spec_floor_new = std::max(0, n_neg - next.outcome.tn + next.size);
  return b;
}

}  // namespace noisylff
