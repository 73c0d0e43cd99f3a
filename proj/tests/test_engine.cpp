#include <gtest/gtest.h>

#include <algorithm>
#include <random>
#include <sstream>

#include "fixtures.hpp"
#include "noisylff/engine.hpp"
#include "oracles.hpp"

using namespace noisylff;
using K = ConstraintKind;

namespace {

const TraceRecord* find(const RunResult& r, const std::string& program) {
  const std::string key = parse_hypothesis(program).key();
  for (const auto& t : r.trace)
    if (t.program.key() == key) return &t;
  return nullptr;
}

std::multiset<std::string> emitted(const TraceRecord& t) {
  std::multiset<std::string> out;
  for (const auto& c : t.emitted) {
    std::string s = kind_name(c.kind);
    if (c.size_floor) s += ">" + std::to_string(*c.size_floor);
    if (c.non_recursive_only) s += " nonrec";
    s += " " + c.anchor.key();
    out.insert(s);
  }
  return out;
}

std::string tag(K k, const std::string& anchor, std::optional<int> floor = std::nullopt) {
  std::string s = kind_name(k);
  if (floor) s += ">" + std::to_string(*floor);
  return s + " " + parse_hypothesis(anchor).key();
}

RunResult replay(bool noisy) {
  EngineConfig cfg;
  cfg.mode = noisy ? Mode::Noisy : Mode::Normal;
  cfg.matching = Matching::Syntactic;
  FixedSpace space(fixtures::parse_space(noisy ? fixtures::noisy_space() : fixtures::normal_space()));
  return run(fixtures::trains_task(noisy), cfg, space);
}

const std::string kH1 = "eastbound(A) :- has_car(A,B),long(B).";
const std::string kShort = "eastbound(A) :- has_car(A,B),short(B).";
const std::string kH3 = "eastbound(A) :- has_car(A,B),roof_closed(B).";
const std::string kH4 = "eastbound(A) :- has_car(A,B),short(B),two_wheels(B).";

}  // namespace

TEST(Engine, NormalModeTrainsReplay) {
  RunResult r = replay(false);
  ASSERT_TRUE(r.returned);
  EXPECT_TRUE(r.is_lff_solution);
  EXPECT_EQ(r.returned->key(), parse_hypothesis(kH4).key());

  const TraceRecord* h1 = find(r, kH1);
  ASSERT_NE(h1, nullptr);
  EXPECT_EQ(emitted(*h1), (std::multiset<std::string>{tag(K::Specialization, kH1), tag(K::Elimination, kH1)}));
  const TraceRecord* h3 = find(r, kH3);
  ASSERT_NE(h3, nullptr);
  EXPECT_EQ(emitted(*h3), (std::multiset<std::string>{tag(K::Generalization, kH3)}));
  // Pruned before being generated.
  EXPECT_EQ(find(r, "eastbound(A) :- has_car(A,B),long(B),two_wheels(B)."), nullptr);
  EXPECT_EQ(find(r, "eastbound(A) :- has_car(A,B),long(B),roof_closed(B)."), nullptr);
}

TEST(Engine, NoisyModeTrainsReplay) {
  RunResult r = replay(true);
  ASSERT_TRUE(r.returned);
  EXPECT_FALSE(r.is_lff_solution);
  EXPECT_EQ(r.returned->key(), parse_hypothesis(kH4).key());

  const TraceRecord* h1 = find(r, kH1);
  ASSERT_NE(h1, nullptr);
  EXPECT_EQ(emitted(*h1), (std::multiset<std::string>{tag(K::Specialization, kH1), tag(K::Elimination, kH1),
                                                      tag(K::Generalization, kH1, 5)}));
  const TraceRecord* s = find(r, kShort);
  ASSERT_NE(s, nullptr);
  EXPECT_EQ(emitted(*s), (std::multiset<std::string>{tag(K::Banish, kShort), tag(K::Generalization, kH1, 4),
                                                     tag(K::Generalization, kShort, 3),
                                                     tag(K::Specialization, kShort, 3)}));
  const TraceRecord* h4 = find(r, kH4);
  ASSERT_NE(h4, nullptr);
  EXPECT_EQ(h4->score.outcome.tp, 2);
  EXPECT_EQ(h4->score.outcome.tn, 2);
  EXPECT_EQ(h4->constraints_emitted, 3u);
}

TEST(Engine, SoundConstraintsWithEmptyHistory) {
  History hist;
  Hypothesis h = parse_hypothesis(kH1);
  Outcome o;
  o.tp = 1;
  o.tn = 1;
  HistoryEntry entry;
  EXPECT_TRUE(learn_sound_constraints(h, score(h, o), hist, 3, 3, entry).empty());
  o.tp = 3;
  auto cs = learn_sound_constraints(h, score(h, o), hist, 3, 3, entry);
  ASSERT_EQ(cs.size(), 1u);
  EXPECT_EQ(cs[0].kind, K::Generalization);
  EXPECT_FALSE(cs[0].non_recursive_only);
  EXPECT_TRUE(entry.gens_pruned);
}

TEST(Engine, SoundConstraintsPruneEachSideOnce) {
  const int n = 5;
  History hist;
  Hypothesis a = parse_hypothesis("f(A) :- p(A).");
  Outcome oa;
  oa.tp = 2;
  oa.tn = 0;
  HistoryEntry ea;
  ea.program = a;
  ea.score = score(a, oa);
  hist.push_back(ea);
  Hypothesis b = parse_hypothesis("f(A) :- q(A).");
  Outcome ob;
  ob.tp = 3;
  ob.tn = 3;
  HistoryEntry eb;
  auto first = learn_sound_constraints(b, score(b, ob), hist, n, n, eb);
  ASSERT_EQ(first.size(), 1u);
  EXPECT_EQ(first[0].kind, K::Generalization);
  EXPECT_TRUE(hist[0].gens_pruned);
  HistoryEntry ec;
  EXPECT_TRUE(learn_sound_constraints(b, score(b, ob), hist, n, n, ec).empty());
}

TEST(Engine, SizeFloorsOfPerfectProgramEqualItsSize) {
  History hist;
  Hypothesis h = parse_hypothesis(kH4);
  Outcome o;
  o.tp = 4;
  o.tn = 4;
  HistoryEntry entry;
  auto cs = learn_size_constraints(h, score(h, o), hist, 4, 4, entry);
  ASSERT_EQ(cs.size(), 2u);
  for (const auto& c : cs) EXPECT_EQ(c.size_floor, std::optional<int>(h.size()));
  // A repeated call adds nothing: floors only ever tighten.
  EXPECT_TRUE(learn_size_constraints(h, score(h, o), hist, 4, 4, entry).empty());
}

TEST(Engine, RejectsBadTasks) {
  LearningTask t = fixtures::trains_task(false);
  EngineConfig cfg;
  cfg.threshold_t = 1.5;
  EXPECT_THROW(run(t, cfg), std::invalid_argument);
  cfg.threshold_t = 0.0;
  t.bias.head_preds.clear();
  EXPECT_THROW(run(t, cfg), std::invalid_argument);
}

TEST(Engine, NormalModeReturnsNothingWithoutSolution) {
  LearningTask t = fixtures::trains_task(true);
  EngineConfig cfg;
  cfg.mode = Mode::Normal;
  cfg.bounds = SearchBounds{3, 3, 1, 0};
  RunResult r = run(t, cfg);
  EXPECT_FALSE(r.returned);
  EXPECT_TRUE(r.best_train_score);
  cfg.anytime = true;
  r = run(t, cfg);
  ASSERT_TRUE(r.returned);
  EXPECT_EQ(r.best_train_score->s_acc, 4);
}

TEST(Engine, RandomProblemsAgreeWithExhaustiveSearch) {
  std::mt19937_64 rng(41);
  for (int i = 0; i < 40; ++i) {
    auto p = oracle::random_tiny_problem(rng);
    int best = -1;
    for (const auto& h : oracle::whole_space(p.task.bias, p.bounds))
      best = std::max(best, oracle::model_score(h, p.task.bk, p.task.examples).s_acc);

    EngineConfig cfg;
    cfg.bounds = p.bounds;
    cfg.mode = Mode::Enumerate;
    RunResult e = run(p.task, cfg);
    ASSERT_TRUE(e.best_train_score);
    EXPECT_EQ(e.best_train_score->s_acc, best) << "problem " << i;

    cfg.mode = Mode::Noisy;
    cfg.enable_size = false;
    RunResult n = run(p.task, cfg);
    ASSERT_TRUE(n.returned);
    EXPECT_EQ(n.best_train_score->s_acc, best) << "problem " << i;
    EXPECT_LE(n.programs_generated, e.programs_generated);

    int running = -1;
    for (const auto& t : n.trace) {
      running = std::max(running, t.score.s_acc);
      ASSERT_EQ(t.best_s_acc, running);
    }
  }
}

TEST(Engine, Deterministic) {
  LearningTask t = fixtures::trains_task(true);
  EngineConfig cfg;
  cfg.bounds = SearchBounds{3, 3, 1, 0};
  std::ostringstream a, b;
  write_trace_csv(a, run(t, cfg));
  write_trace_csv(b, run(t, cfg));
  EXPECT_EQ(a.str(), b.str());
  EXPECT_EQ(a.str().rfind("index,size,tp,tn,s_acc,s_mdl,best_s_acc,emitted,store_size,program\n", 0), 0u);
}
