#pragma once

#include <chrono>
#include <cstddef>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "noisylff/constraints.hpp"
#include "noisylff/evaluator.hpp"
#include "noisylff/generator.hpp"
#include "noisylff/knowledge.hpp"
#include "noisylff/logic.hpp"
#include "noisylff/scoring.hpp"
#include "noisylff/task.hpp"

namespace noisylff {

enum class Mode { Normal, Noisy, Enumerate };

const char* mode_name(Mode m);

struct EngineConfig {
  Mode mode = Mode::Noisy;
  // Outcomes with tp > t*|E+| (resp. tn > t*|E-|) are relaxed to the maximum
  // before the outcome table is consulted. Must lie in [0, 1].
  double threshold_t = 0.0;
  bool enable_minimal = true;
  bool enable_sound = true;
  bool enable_size = true;
  // Normal mode only: return the best program seen instead of nothing.
  bool anytime = false;
  SearchBounds bounds;
  Matching matching = Matching::Semantic;
  EvalLimits eval;
};

struct LearningTask {
  DeclarationBias bias;
  BackgroundKnowledge bk;
  ExampleSet examples;
};

struct TraceRecord {
  std::size_t index = 0;
  Hypothesis program;
  Score score;
  int best_s_acc = 0;
  std::size_t constraints_emitted = 0;
  std::size_t store_size = 0;
  // Constraints this program added to the store (duplicates dropped).
  std::vector<HypothesisConstraint> emitted;
};

struct RunResult {
  std::optional<Hypothesis> returned;
  bool is_lff_solution = false;
  std::optional<Score> best_train_score;
  std::size_t programs_generated = 0;
  std::size_t constraints_added = 0;
  std::chrono::duration<double> wall_time{0};
  bool timed_out = false;
  bool space_exhausted = false;
  std::vector<TraceRecord> trace;
};

// One previously scored program plus what has already been pruned around it.
struct HistoryEntry {
  Hypothesis program;
  Score score;
  bool gens_pruned = false;
  bool specs_pruned = false;
  std::optional<int> gen_floor;
  std::optional<int> spec_floor;
};

using History = std::vector<HistoryEntry>;

// Constraints that cannot remove any program scoring strictly better under
// S_ACC than the best of `history` and `next`. Updates the bookkeeping in
// `history`. The returned entry describes `next` and is meant to be appended
// by the caller.
std::vector<HypothesisConstraint> learn_sound_constraints(const Hypothesis& next, const Score& s, History& history,
                                                          int n_pos, int n_neg, HistoryEntry& entry);

// Size-bounded constraints that keep every program which could beat `next`
// under S_MDL.
std::vector<HypothesisConstraint> learn_size_constraints(const Hypothesis& next, const Score& s, History& history,
                                                         int n_pos, int n_neg, HistoryEntry& entry);

// Throws std::invalid_argument on a task without head predicates or a
// threshold outside [0, 1].
RunResult run(const LearningTask& task, const EngineConfig& cfg);
RunResult run(const LearningTask& task, const EngineConfig& cfg, CandidateSource& source);

// Trace as CSV: index,size,tp,tn,s_acc,s_mdl,best_s_acc,emitted,store_size,program
void write_trace_csv(std::ostream& os, const RunResult& r);

}  // namespace noisylff
