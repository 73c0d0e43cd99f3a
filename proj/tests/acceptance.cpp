// One PASS/FAIL line per acceptance criterion. Exit status is the number of
// failed criteria.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "fixtures.hpp"
#include "noisylff/bench.hpp"
#include "noisylff/engine.hpp"
#include "noisylff/subsumption.hpp"
#include "oracles.hpp"

using namespace noisylff;
using K = ConstraintKind;
using Clock = std::chrono::steady_clock;

namespace {

// Tolerances and sizes.
constexpr double kReplaySeconds = 1.0;
constexpr int kTinyProblems = 200;
constexpr double kTinySuiteSeconds = 300.0;
constexpr int kSubsumptionPairs = 500;
constexpr int kPlantedProblems = 50;
constexpr double kTrainsMinMeanAccuracy = 0.95;
constexpr double kTrialSeconds = 600.0;
constexpr double kMemberNoisyMinMeanAccuracy = 0.99;
constexpr int kSeeds = 5;

int failures = 0;

struct Check {
  bool ok = true;
  std::vector<std::string> notes;

  void require(bool cond, const std::string& what) {
    if (!cond) ok = false;
    notes.push_back(std::string(cond ? "ok   " : "FAIL ") + what);
  }
};

void report(int n, const std::string& title, const Check& c) {
  std::printf("%s criterion %d: %s\n", c.ok ? "PASS" : "FAIL", n, title.c_str());
  for (const auto& s : c.notes) std::printf("      %s\n", s.c_str());
  std::fflush(stdout);
  if (!c.ok) ++failures;
}

double seconds_since(Clock::time_point t) { return std::chrono::duration<double>(Clock::now() - t).count(); }

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

const TraceRecord* find(const RunResult& r, const Hypothesis& h) {
  for (const auto& t : r.trace)
    if (t.program.key() == h.key()) return &t;
  return nullptr;
}

std::set<K> kinds_of(const TraceRecord& t, bool sized) {
  std::set<K> ks;
  for (const auto& c : t.emitted)
    if (c.size_floor.has_value() == sized) ks.insert(c.kind);
  return ks;
}

// Constraints (with the program that emitted them) violated by `h`.
std::vector<std::pair<const TraceRecord*, const HypothesisConstraint*>> pruners(const RunResult& r,
                                                                              const Hypothesis& h, Matching m) {
  std::vector<std::pair<const TraceRecord*, const HypothesisConstraint*>> out;
  for (const auto& t : r.trace)
    for (const auto& c : t.emitted)
      if (violates(h, c, m)) out.emplace_back(&t, &c);
  return out;
}

bool pruned_by(const RunResult& r, const Hypothesis& h, const Hypothesis& by, Matching m) {
  if (find(r, h)) return false;
  for (auto [t, c] : pruners(r, h, m))
    if (t->program.key() == by.key()) return true;
  return false;
}

// ---- 1 ------------------------------------------------------------------------

void criterion1() {
  Check c;
  const auto t0 = Clock::now();
  const auto hs = fixtures::parse_space(fixtures::normal_space());
  FixedSpace space(hs);
  EngineConfig cfg;
  cfg.mode = Mode::Normal;
  cfg.matching = Matching::Syntactic;
  RunResult r = run(fixtures::trains_task(false), cfg, space);
  const double secs = seconds_since(t0);

  const auto& h = hs;  // h[0] is h1
  const TraceRecord* h1 = find(r, h[0]);
  const TraceRecord* h3 = find(r, h[2]);
  c.require(h1 && kinds_of(*h1, false) == std::set<K>{K::Specialization, K::Elimination} && h1->emitted.size() == 2,
            "h1 emits exactly {specialization, elimination}");
  for (int i : {1, 4, 8})
    c.require(pruned_by(r, h[i], h[0], cfg.matching), "h" + std::to_string(i + 1) + " pruned by h1");
  c.require(h3 && kinds_of(*h3, false) == std::set<K>{K::Generalization} && h3->emitted.size() == 1,
            "h3 emits exactly {generalization}");
  for (int i : {5, 6}) c.require(pruned_by(r, h[i], h[2], cfg.matching), "h" + std::to_string(i + 1) + " pruned by h3");
  c.require(r.returned && r.returned->key() == h[3].key() && r.is_lff_solution, "h4 returned as an LFF solution");
  c.require(secs < kReplaySeconds, "runtime " + fmt("%.4f s", secs));
  report(1, "worked example replay, normal mode", c);
}

// ---- 2 ------------------------------------------------------------------------

void criterion2() {
  Check c;
  const auto t0 = Clock::now();
  const auto h = fixtures::parse_space(fixtures::noisy_space());
  FixedSpace space(h);
  EngineConfig cfg;
  cfg.mode = Mode::Noisy;
  cfg.threshold_t = 0.0;
  cfg.matching = Matching::Syntactic;
  RunResult r = run(fixtures::trains_task(true), cfg, space);
  const double secs = seconds_since(t0);

  // The fixture lists the short-car program third; the walkthrough calls it h2.
  const Hypothesis& h_short = h[2];
  const Hypothesis& h4 = h[3];
  const TraceRecord* ts = find(r, h_short);
  c.require(ts && kinds_of(*ts, false) == std::set<K>{K::Banish}, "short-car program: only Banish among unsized constraints");
  const TraceRecord* t4 = find(r, h4);
  c.require(t4 && t4->best_s_acc == 4 && t4->score.s_acc == 4, "h4 becomes best-so-far with s_acc 4");

  std::vector<int> floors;
  for (int i : {5, 6}) {
    const bool generated = find(r, h[i]) != nullptr;
    bool by_size = false;
    for (auto [t, con] : pruners(r, h[i], cfg.matching))
      if (con->size_floor) {
        by_size = true;
        floors.push_back(*con->size_floor);
        break;
      }
    c.require(!generated && by_size, "h" + std::to_string(i + 1) + " pruned by a size constraint");
  }
  std::string fl;
  for (int f : floors) fl += (fl.empty() ? "" : ",") + std::to_string(f);
  c.require(floors == std::vector<int>{4, 4}, "size floors pruning h6, h7 are 4 and 4 (observed " + fl + ")");
  c.require(r.returned && r.returned->key() == h4.key() && !r.is_lff_solution, "h4 returned, not as an LFF solution");
  c.require(secs < kReplaySeconds, "runtime " + fmt("%.4f s", secs));
  report(2, "worked example replay, noisy mode", c);
}

// ---- 3, 4 -----------------------------------------------------------------------

void criteria3and4() {
  Check c3, c4;
  std::mt19937_64 rng(2024);
  const auto t0 = Clock::now();
  int bad3 = 0, bad4 = 0, oracle_bad = 0;
  for (int i = 0; i < kTinyProblems; ++i) {
    auto p = oracle::random_tiny_problem(rng);
    int best_acc = -1, best_mdl = -1000;
    for (const auto& h : oracle::whole_space(p.task.bias, p.bounds)) {
      Score s = oracle::model_score(h, p.task.bk, p.task.examples);
      best_acc = std::max(best_acc, s.s_acc);
      best_mdl = std::max(best_mdl, s.s_mdl);
    }
    EngineConfig cfg;
    cfg.bounds = p.bounds;
    cfg.mode = Mode::Enumerate;
    RunResult e = run(p.task, cfg);
    if (e.best_train_score->s_acc != best_acc) ++oracle_bad;

    cfg.mode = Mode::Noisy;
    cfg.enable_minimal = false;
    cfg.enable_size = false;
    RunResult n = run(p.task, cfg);
    if (!n.best_train_score || n.best_train_score->s_acc != e.best_train_score->s_acc) ++bad3;

    cfg.enable_sound = false;
    cfg.enable_size = true;
    RunResult m = run(p.task, cfg);
    int seen_mdl = -1000;
    for (const auto& t : m.trace) seen_mdl = std::max(seen_mdl, t.score.s_mdl);
    if (seen_mdl != best_mdl) ++bad4;
  }
  const double secs = seconds_since(t0);
  c3.require(bad3 == 0, std::to_string(bad3) + " of " + std::to_string(kTinyProblems) +
                            " problems where sound pruning lost the best s_acc");
  c3.require(oracle_bad == 0, "enumerate mode agrees with the least-model oracle on " +
                                  std::to_string(kTinyProblems - oracle_bad) + " problems");
  c3.require(secs < kTinySuiteSeconds, "suite runtime " + fmt("%.1f s", secs));
  report(3, "S_ACC pruning soundness on random tiny problems", c3);
  c4.require(bad4 == 0, std::to_string(bad4) + " of " + std::to_string(kTinyProblems) +
                            " problems where size pruning lost the best s_mdl");
  report(4, "S_MDL pruning soundness on random tiny problems", c4);
}

// ---- 5 ------------------------------------------------------------------------

// A random specialization of h: extra literals and unified variables.
Hypothesis specialize(std::mt19937_64& rng, const Hypothesis& h, const std::vector<PredSym>& preds) {
  auto pick = [&](int n) { return std::uniform_int_distribution<int>(0, n - 1)(rng); };
  std::vector<ClauseRef> out;
  for (const auto& c : h.clauses()) {
    std::vector<Atom> body = c->body();
    Atom hd = c->head();
    const int nv = std::max(1, c->num_vars());
    for (int extra = pick(3); extra > 0; --extra) {
      const PredSym& p = preds[pick(static_cast<int>(preds.size()))];
      Atom a{p, {}};
      for (int j = 0; j < p.arity; ++j) a.args.push_back(Term::var(pick(nv + 1)));
      body.push_back(a);
    }
    if (pick(3) == 0 && nv >= 2) {
      const int from = pick(nv), to = pick(nv);
      auto sub = [&](Atom& a) {
        for (auto& t : a.args)
          if (t.is_var() && t.var_id() == from) t = Term::var(to);
      };
      sub(hd);
      for (auto& a : body) sub(a);
    }
    out.push_back(make_clause(hd, body));
  }
  return Hypothesis(std::move(out));
}

void criterion5() {
  Check c;
  std::mt19937_64 rng(77);
  const PredSym head = oracle::pred("f", 2);
  const std::vector<PredSym> preds = {oracle::pred("p", 2), oracle::pred("q", 1), head};
  EvalLimits generous;
  generous.max_depth = 400;
  generous.max_steps = 2000000;
  generous.per_example_timeout = std::chrono::milliseconds(5000);
  int pairs = 0, violations = 0, checked = 0, not_subsumed = 0;
  while (pairs < kSubsumptionPairs) {
    Hypothesis h1 = oracle::random_hypothesis(rng, head, preds, 3, 2, 2, false);
    Hypothesis h2 = specialize(rng, h1, preds);
    // An extra clause on the general side keeps the relation.
    if (std::bernoulli_distribution(0.3)(rng)) {
      std::vector<ClauseRef> cs = h1.clauses();
      cs.push_back(oracle::random_clause(rng, head, preds, 3, 1 + static_cast<int>(rng() % 2), false));
      h1 = Hypothesis(std::move(cs));
    }
    if (!theory_subsumes(h1, h2)) {
      ++not_subsumed;
      continue;
    }
    ++pairs;
    std::vector<GroundAtom> facts;
    std::vector<Value> dom;
    for (int i = 0; i < 5; ++i) dom.push_back(Value::integer(i));
    std::bernoulli_distribution coin(0.3);
    for (const auto& a : dom) {
      if (coin(rng)) facts.push_back({preds[1], {a}});
      for (const auto& b : dom)
        if (coin(rng)) facts.push_back({preds[0], {a, b}});
    }
    BackgroundKnowledge bk(facts, {});
    for (const auto& a : dom)
      for (const auto& b : dom) {
        GroundAtom e{head, {a, b}};
        if (entails(h2, bk, e, generous)) {
          ++checked;
          if (!entails(h1, bk, e, generous)) ++violations;
        }
      }
  }
  c.require(violations == 0, std::to_string(violations) + " violations over " + std::to_string(pairs) + " pairs, " +
                                 std::to_string(checked) + " entailed examples");
  c.require(not_subsumed == 0, std::to_string(not_subsumed) + " constructed specializations not recognised as subsumed");
  report(5, "subsumption implies entailment", c);
}

// ---- 6 ------------------------------------------------------------------------

void criterion6() {
  Check c;
  std::mt19937_64 rng(606);
  int done = 0, mismatched = 0, missing = 0;
  while (done < kPlantedProblems) {
    auto p = oracle::random_tiny_problem(rng, 8);
    auto space = oracle::whole_space(p.task.bias, p.bounds);
    const Hypothesis& planted = space[std::uniform_int_distribution<std::size_t>(0, space.size() - 1)(rng)];
    // Relabel the drawn examples by the planted program.
    ExampleSet ex;
    for (const auto* part : {&p.task.examples.pos, &p.task.examples.neg})
      for (const auto& e : *part) (oracle::model_entails(planted, p.task.bk, e) ? ex.pos : ex.neg).push_back(e);
    if (ex.pos.empty() || ex.neg.empty()) continue;
    p.task.examples = ex;
    ++done;

    int min_size = -1;
    for (const auto& h : space) {
      Score s = oracle::model_score(h, p.task.bk, ex);
      if (s.outcome.tp == static_cast<int>(ex.pos.size()) && s.outcome.tn == static_cast<int>(ex.neg.size())) {
        min_size = h.size();
        break;  // the space is in size order
      }
    }
    EngineConfig cfg;
    cfg.mode = Mode::Normal;
    cfg.bounds = p.bounds;
    RunResult r = run(p.task, cfg);
    if (!r.returned || !r.is_lff_solution) {
      ++missing;
    } else if (r.returned->size() != min_size) {
      ++mismatched;
    }
  }
  c.require(missing == 0, std::to_string(missing) + " of " + std::to_string(done) + " planted problems without a solution");
  c.require(mismatched == 0, std::to_string(mismatched) + " returned solutions larger than the minimum");
  report(6, "normal mode returns a minimal solution", c);
}

// ---- 7 - 11 -------------------------------------------------------------------

std::vector<TrialRecord> kept;

void keep(const std::vector<TrialRecord>& rs) {
  for (const auto& r : rs) kept.push_back(r);
}

double mean_accuracy(const std::vector<TrialRecord>& rs) {
  std::vector<double> a;
  for (const auto& r : rs) a.push_back(r.accuracy);
  return summarize(a).mean;
}

double max_time(const std::vector<TrialRecord>& rs) {
  double t = 0;
  for (const auto& r : rs) t = std::max(t, r.time_s);
  return t;
}

std::vector<TrialRecord> trials(const std::function<TaskSpec(std::uint64_t)>& make, const EngineConfig& cfg,
                                const std::string& label) {
  std::vector<TrialRecord> out;
  for (int s = 1; s <= kSeeds; ++s) out.push_back(run_trial(make(static_cast<std::uint64_t>(s)), label, cfg));
  return out;
}

void criterion7() {
  Check c;
  EngineConfig noisy, normal;
  normal.mode = Mode::Normal;
  for (double noise : {0.1, 0.2}) {
    auto make = [noise](std::uint64_t s) { return gen_trains_task(trains_truth(1), 50, 50, 200, 200, noise, s); };
    auto rn = trials(make, noisy, "noisy");
    auto rm = trials(make, normal, "normal");
    const double acc = mean_accuracy(rn);
    std::string per;
    for (const auto& r : rn) per += fmt(" %.3f", r.accuracy);
    c.require(acc >= kTrainsMinMeanAccuracy,
              "noise " + fmt("%.2f", noise) + ": noisy mean accuracy " + fmt("%.4f", acc) + " (" + per.substr(1) + ")");
    bool none = std::all_of(rm.begin(), rm.end(), [](const TrialRecord& r) { return !r.solution_found; });
    c.require(none && mean_accuracy(rm) == 0.5,
              "noise " + fmt("%.2f", noise) + ": normal mode returns nothing, accuracy " + fmt("%.3f", mean_accuracy(rm)));
    const double t = std::max(max_time(rn), max_time(rm));
    c.require(t <= kTrialSeconds, "noise " + fmt("%.2f", noise) + ": slowest trial " + fmt("%.2f s", t));
    keep(rn);
    keep(rm);
  }
  report(7, "trains with label noise", c);
}

void criterion8() {
  Check c;
  EngineConfig noisy;
  for (const char* name : {"member", "last", "len", "evens", "threesame"}) {
    TrialRecord r = run_trial(gen_list_task(name, 20, 20, 1000, 1000, 0.0, 1), "noisy", noisy);
    c.require(r.accuracy == 1.0 && r.programs <= 500 && r.time_s <= kTrialSeconds,
              std::string(name) + ": accuracy " + fmt("%.4f", r.accuracy) + ", " + std::to_string(r.programs) +
                  " programs, " + fmt("%.2f s", r.time_s) + ", " + (r.run.is_lff_solution ? "lff solution" : "best-so-far"));
    kept.push_back(r);
  }
  report(8, "noiseless list tasks", c);
}

void criterion9() {
  Check c;
  EngineConfig noisy;
  auto rs = trials([](std::uint64_t s) { return gen_list_task("member", 20, 20, 1000, 1000, 0.2, s); }, noisy, "noisy");
  std::string per;
  for (const auto& r : rs) per += fmt(" %.4f", r.accuracy);
  const double acc = mean_accuracy(rs);
  c.require(acc >= kMemberNoisyMinMeanAccuracy, "member at 20% noise: mean accuracy " + fmt("%.4f", acc) + " (" +
                                                    per.substr(1) + ")");
  for (const auto& r : rs)
    if (r.accuracy < 1.0) {
      std::string text = r.program_text;
      std::replace(text.begin(), text.end(), '\n', ' ');
      c.notes.push_back("     seed " + std::to_string(r.seed) + " returned: " + text);
    }
  keep(rs);
  report(9, "member with 20% label noise", c);
}

void criterion10() {
  Check c;
  std::size_t traces = 0, records = 0, bad = 0;
  for (const auto& k : kept) {
    ++traces;
    int running = -1;
    int last = -1;
    for (const auto& t : k.run.trace) {
      ++records;
      running = std::max(running, t.score.s_acc);
      if (t.best_s_acc != running || t.best_s_acc < last) ++bad;
      last = t.best_s_acc;
    }
    if (k.run.returned && k.run.best_train_score && k.run.best_train_score->s_acc != running) ++bad;
  }
  c.require(bad == 0 && traces > 0, std::to_string(bad) + " violations over " + std::to_string(traces) + " traces, " +
                                        std::to_string(records) + " programs");
  report(10, "anytime invariant", c);
}

// Programs generated before the best-so-far program first reaches `target`
// test accuracy; the whole run when it never does.
std::size_t programs_to_target(const TrialRecord& r, const TaskSpec& task, double target) {
  int best = -1;
  for (const auto& t : r.run.trace)
    if (t.score.s_acc > best) {
      best = t.score.s_acc;
      if (predictive_accuracy(t.program, task.bk, task.test) >= target) return t.index;
    }
  return r.programs;
}

void criterion11() {
  Check c;
  EngineConfig full, no_sound, enumerate;
  no_sound.enable_sound = false;
  enumerate.mode = Mode::Enumerate;
  const std::vector<std::pair<std::string, EngineConfig>> configs = {
      {"noisy", full}, {"no-sound", no_sound}, {"enumerate", enumerate}};
  std::vector<double> sums(configs.size(), 0.0);
  for (int s = 1; s <= kSeeds; ++s) {
    TaskSpec task = gen_list_task("evens", 20, 20, 1000, 1000, 0.05, static_cast<std::uint64_t>(s));
    std::vector<TrialRecord> rs;
    double target = 0.0;
    for (const auto& [label, cfg] : configs) {
      rs.push_back(run_trial(task, label, cfg));
      target = std::max(target, rs.back().accuracy);
    }
    std::string line = "seed " + std::to_string(s) + " target " + fmt("%.4f", target) + ":";
    for (std::size_t i = 0; i < rs.size(); ++i) {
      const auto n = programs_to_target(rs[i], task, target);
      sums[i] += static_cast<double>(n);
      line += " " + configs[i].first + " " + std::to_string(n) + " (final " + fmt("%.4f", rs[i].accuracy) + ")";
    }
    c.notes.push_back("     " + line);
  }
  const double a = sums[0] / kSeeds, b = sums[1] / kSeeds, e = sums[2] / kSeeds;
  c.require(a <= b && b <= e, "mean programs to the best final accuracy: noisy " + fmt("%.1f", a) + " <= no-sound " +
                                  fmt("%.1f", b) + " <= enumerate " + fmt("%.1f", e));
  report(11, "ablation ordering on evens with 5% noise", c);
}

}  // namespace

int main() {
  criterion1();
  criterion2();
  criteria3and4();
  criterion5();
  criterion6();
  criterion7();
  criterion8();
  criterion9();
  criterion10();
  criterion11();
  std::printf("%d of 11 criteria failed\n", failures);
  return failures;
}
