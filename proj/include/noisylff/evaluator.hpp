#pragma once

#include <chrono>

#include "noisylff/knowledge.hpp"
#include "noisylff/logic.hpp"
#include "noisylff/task.hpp"

namespace noisylff {

struct EvalLimits {
  int max_depth = 100;
  long max_steps = 100000;
  std::chrono::milliseconds per_example_timeout{100};
};

struct Outcome {
  int tp = 0;
  int tn = 0;
  int fp = 0;
  int fn = 0;
  // Examples whose proof search hit a limit; each counted as not entailed.
  int exhausted = 0;
};

enum class Proof { Proved, Failed, Exhausted };

// Goal-directed tabled resolution of e against h, the BK facts and built-ins.
// Body atoms are selected by readiness: facts and hypothesis predicates are
// always callable, built-ins only once their input arguments are bound.
Proof prove(const Hypothesis& h, const BackgroundKnowledge& bk, const GroundAtom& e, const EvalLimits& lim);

inline bool entails(const Hypothesis& h, const BackgroundKnowledge& bk, const GroundAtom& e,
                    const EvalLimits& lim = {}) {
  return prove(h, bk, e, lim) == Proof::Proved;
}

Outcome count_outcomes(const Hypothesis& h, const BackgroundKnowledge& bk, const ExampleSet& ex,
                       const EvalLimits& lim = {});

}  // namespace noisylff
