#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include "noisylff/engine.hpp"
#include "noisylff/knowledge.hpp"
#include "noisylff/logic.hpp"
#include "noisylff/task.hpp"

namespace noisylff {

struct TaskSpec {
  std::string name;
  DeclarationBias bias;
  SearchBounds bounds;
  BackgroundKnowledge bk;
  ExampleSet train;
  ExampleSet test;
  double noise_rate = 0.0;
  std::uint64_t seed = 0;
  // Number of training examples whose label was flipped.
  std::size_t flipped = 0;

  LearningTask learning_task() const { return {bias, bk, train}; }
};

// Number of labels flipped for a given rate: ceil(rate * n).
std::size_t noise_count(double rate, std::size_t n);

// Moves ceil(rate * n) uniformly chosen training examples to the opposite
// label. Returns the number moved.
std::size_t flip_labels(ExampleSet& train, double rate, std::uint64_t seed);

// East-west trains over a synthetic pool of random trains, labelled by
// evaluating `ground_truth` (an eastbound/1 program).
TaskSpec gen_trains_task(const Hypothesis& ground_truth, int n_train_pos, int n_train_neg, int n_test_pos,
                         int n_test_neg, double noise_rate, std::uint64_t seed);

// The two ground truths used for the trains experiments.
Hypothesis trains_truth(int which);

const std::vector<std::string>& list_task_names();

// Reference label for a list task example. Throws std::invalid_argument on an
// unknown task.
bool list_oracle(const std::string& task, const GroundAtom& example);

TaskSpec gen_list_task(const std::string& name, int n_train_pos, int n_train_neg, int n_test_pos, int n_test_neg,
                       double noise_rate, std::uint64_t seed);

// Fraction of test examples classified correctly; an absent program entails
// every example.
double predictive_accuracy(const std::optional<Hypothesis>& h, const BackgroundKnowledge& bk, const ExampleSet& test,
                           const EvalLimits& lim = {});

struct TrialRecord {
  std::string task;
  std::string config;
  double noise = 0.0;
  std::uint64_t seed = 0;
  double accuracy = 0.0;
  double time_s = 0.0;
  std::size_t programs = 0;
  bool solution_found = false;
  std::string program_text;
  // Programs generated up to the point where the best-so-far program first
  // reached the final test accuracy.
  std::size_t programs_to_final = 0;
  RunResult run;
};

TrialRecord run_trial(const TaskSpec& task, const std::string& config_label, const EngineConfig& cfg);

struct SuiteConfig {
  std::string label;
  EngineConfig engine;
};

using TaskFactory = std::function<TaskSpec(double noise, std::uint64_t seed)>;

struct SuiteTask {
  std::string name;
  TaskFactory make;
};

// Every (task, config, noise, trial) combination; trial i uses seed base_seed + i.
std::vector<TrialRecord> run_suite(const std::vector<SuiteTask>& tasks, const std::vector<SuiteConfig>& configs,
                                   const std::vector<double>& noise_levels, int trials, std::uint64_t base_seed);

struct Summary {
  double mean = 0.0;
  double stderr_ = 0.0;
};

// Sample standard deviation over sqrt(n); zero for fewer than two values.
Summary summarize(const std::vector<double>& xs);

// Header, one row per record, then one "mean" row per (task, config, noise)
// group. With zero_time the time column is written as 0 so that reruns
// compare byte for byte.
void write_csv(std::ostream& os, const std::vector<TrialRecord>& records, bool zero_time = false);

}  // namespace noisylff
