#pragma once

#include "noisylff/evaluator.hpp"
#include "noisylff/logic.hpp"

namespace noisylff {

struct Score {
  int s_acc = 0;
  int s_mdl = 0;
  Outcome outcome;
  int size = 0;
};

Score score(const Hypothesis& h, const Outcome& outcome);

struct SoundTriggers {
  bool gen_prunable_prev = false;
  bool spec_prunable_prev = false;
};

// Score gain of `next` over `prev` against prev's false negatives / false positives.
SoundTriggers sound_triggers(const Score& next, const Score& prev, int n_pos, int n_neg);

struct SizeBounds {
  int gen_floor_prev = 0;
  int spec_floor_prev = 0;
  int gen_floor_new = 0;
  int spec_floor_new = 0;
};

// Size floors beyond which generalizations / specializations cannot beat `next`
// under S_MDL. Clamped at 0.
SizeBounds size_bounds(const Score& next, const Score& prev, int n_pos, int n_neg);

}  // namespace noisylff
