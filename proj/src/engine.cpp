#include "noisylff/engine.hpp"

#include <algorithm>
#include <ostream>
#include <stdexcept>

#include "noisylff/subsumption.hpp"

namespace noisylff {

const char* mode_name(Mode m) {
  switch (m) {
    case Mode::Normal:
      return "normal";
    case Mode::Noisy:
      return "noisy";
    case Mode::Enumerate:
      return "enumerate";
  }
  return "?";
}

namespace {

using Kind = ConstraintKind;

bool better_floor(const std::optional<int>& have, int floor) { return !have || floor < *have; }

}  // namespace

std::vector<HypothesisConstraint> learn_sound_constraints(const Hypothesis& next, const Score& s, History& history,
                                                          int n_pos, int n_neg, HistoryEntry& entry) {
  std::vector<HypothesisConstraint> out;
  const int tp = s.outcome.tp, tn = s.outcome.tn;
  bool gen_nonrec = false;

  for (auto& p : history) {
    const auto trig = sound_triggers(s, p.score, n_pos, n_neg);
    if (trig.gen_prunable_prev && !p.gens_pruned) {
      out.push_back(make_constraint(Kind::Generalization, p.program));
      p.gens_pruned = true;
    }
    if (trig.spec_prunable_prev && !p.specs_pruned) {
      out.push_back(make_constraint(Kind::Specialization, p.program));
      p.specs_pruned = true;
    }
    // A generalization with equal tp: adding clauses to it can do no better
    // than adding them to p. Its specializations are left alone; a clause it
    // adds to p can cover positives that a specialized copy of p loses.
    if (p.score.outcome.tp == tp && is_generalization_of(next, p.program)) gen_nonrec = true;
    if (p.score.outcome.tn == tn && is_specialization_of(next, p.program)) gen_nonrec = true;
  }

  const bool gen_all = tp == n_pos;
  const bool spec_all = tn == n_neg;
  if (gen_nonrec && !gen_all) out.push_back(make_constraint(Kind::Generalization, next, true));
  if (gen_all) {
    out.push_back(make_constraint(Kind::Generalization, next));
    entry.gens_pruned = true;
  }
  if (spec_all) {
    out.push_back(make_constraint(Kind::Specialization, next));
    entry.specs_pruned = true;
  }
  return out;
}

std::vector<HypothesisConstraint> learn_size_constraints(const Hypothesis& next, const Score& s, History& history,
                                                         int n_pos, int n_neg, HistoryEntry& entry) {
  std::vector<HypothesisConstraint> out;
  for (auto& p : history) {
    const auto b = size_bounds(s, p.score, n_pos, n_neg);
    if (!p.gens_pruned && better_floor(p.gen_floor, b.gen_floor_prev)) {
      out.push_back(make_constraint(Kind::Generalization, p.program, false, b.gen_floor_prev));
      p.gen_floor = b.gen_floor_prev;
    }
    if (!p.specs_pruned && better_floor(p.spec_floor, b.spec_floor_prev)) {
      out.push_back(make_constraint(Kind::Specialization, p.program, false, b.spec_floor_prev));
      p.spec_floor = b.spec_floor_prev;
    }
  }
  const auto b = size_bounds(s, s, n_pos, n_neg);
  if (!entry.gens_pruned && better_floor(entry.gen_floor, b.gen_floor_new)) {
    out.push_back(make_constraint(Kind::Generalization, next, false, b.gen_floor_new));
    entry.gen_floor = b.gen_floor_new;
  }
  if (!entry.specs_pruned && better_floor(entry.spec_floor, b.spec_floor_new)) {
    out.push_back(make_constraint(Kind::Specialization, next, false, b.spec_floor_new));
    entry.spec_floor = b.spec_floor_new;
  }
  return out;
}

RunResult run(const LearningTask& task, const EngineConfig& cfg) {
  Generator gen(task.bias, cfg.bounds);
  return run(task, cfg, gen);
}

RunResult run(const LearningTask& task, const EngineConfig& cfg, CandidateSource& source) {
  if (task.bias.head_preds.empty()) throw std::invalid_argument("task has no head predicate");
  if (!(cfg.threshold_t >= 0.0 && cfg.threshold_t <= 1.0)) throw std::invalid_argument("threshold_t outside [0, 1]");

  using Clock = std::chrono::steady_clock;
  const auto start = Clock::now();
  const int n_pos = static_cast<int>(task.examples.pos.size());
  const int n_neg = static_cast<int>(task.examples.neg.size());

  RunResult r;
  ConstraintStore store(cfg.matching);
  History history;
  std::optional<Hypothesis> best;

  EvalLimits lim = cfg.eval;
  lim.max_steps = std::min(lim.max_steps, cfg.bounds.eval_step_limit);

  auto finish = [&](bool lff) {
    r.is_lff_solution = lff;
    if (lff || cfg.mode != Mode::Normal || cfg.anytime) r.returned = best;
    r.wall_time = Clock::now() - start;
    return r;
  };

  while (r.programs_generated < cfg.bounds.max_programs) {
    if (Clock::now() - start >= cfg.bounds.wall_timeout) {
      r.timed_out = true;
      break;
    }
    GenResult g = source.next(store);
    if (g.status == GenStatus::ExhaustedAtSize) {
      source.advance_size();
      continue;
    }
    if (g.status == GenStatus::FullyExhausted) {
      r.space_exhausted = true;
      break;
    }
    const Hypothesis& h = g.hypothesis;
    ++r.programs_generated;
    const Score s = score(h, count_outcomes(h, task.bk, task.examples, lim));
    const int tp = s.outcome.tp, tn = s.outcome.tn;

    if (!r.best_train_score || s.s_acc > r.best_train_score->s_acc) {
      r.best_train_score = s;
      best = h;
    }
    TraceRecord rec;
    rec.index = r.programs_generated;
    rec.program = h;
    rec.score = s;
    rec.best_s_acc = r.best_train_score->s_acc;

    if (tp == n_pos && tn == n_neg) {
      rec.store_size = store.size();
      r.trace.push_back(std::move(rec));
      return finish(true);
    }

    std::vector<HypothesisConstraint> cs;
    if (cfg.mode == Mode::Normal) {
      cs = learn_constraints(h, tp, tn, n_pos, n_neg);
    } else if (cfg.mode == Mode::Noisy) {
      int rtp = n_pos, rtn = n_neg;
      if (cfg.enable_minimal) {
        if (!(tp > cfg.threshold_t * n_pos)) rtp = tp;
        if (!(tn > cfg.threshold_t * n_neg)) rtn = tn;
      }
      cs = learn_constraints(h, rtp, rtn, n_pos, n_neg);
      HistoryEntry entry;
      entry.program = h;
      entry.score = s;
      if (cfg.enable_sound) {
        auto more = learn_sound_constraints(h, s, history, n_pos, n_neg, entry);
        cs.insert(cs.end(), more.begin(), more.end());
      }
      if (cfg.enable_size) {
        auto more = learn_size_constraints(h, s, history, n_pos, n_neg, entry);
        cs.insert(cs.end(), more.begin(), more.end());
      }
      history.push_back(std::move(entry));
    }
    for (auto& c : cs)
      if (store.add(c)) rec.emitted.push_back(std::move(c));
    rec.constraints_emitted = rec.emitted.size();
    r.constraints_added += rec.constraints_emitted;
    rec.store_size = store.size();
    r.trace.push_back(std::move(rec));
  }
  return finish(false);
}

void write_trace_csv(std::ostream& os, const RunResult& r) {
  os << "index,size,tp,tn,s_acc,s_mdl,best_s_acc,emitted,store_size,program\n";
  for (const auto& t : r.trace) {
    std::string prog = t.program.str();
    std::replace(prog.begin(), prog.end(), '\n', ' ');
    os << t.index << ',' << t.score.size << ',' << t.score.outcome.tp << ',' << t.score.outcome.tn << ','
       << t.score.s_acc << ',' << t.score.s_mdl << ',' << t.best_s_acc << ',' << t.constraints_emitted << ','
       << t.store_size << ",\"" << prog << "\"\n";
  }
}

}  // namespace noisylff
