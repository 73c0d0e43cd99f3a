#include "noisylff/evaluator.hpp"

#include <optional>
#include <unordered_map>
#include <unordered_set>

namespace noisylff {

namespace {

struct CallKey {
  PredSym pred;
  std::uint64_t bound = 0;  // bit i set when argument i is bound
  std::vector<Value> values;  // bound values in argument order

  bool operator==(const CallKey&) const = default;
};

struct CallKeyHash {
  std::size_t operator()(const CallKey& k) const {
    std::size_t h = hash_combine(k.pred.hash(), k.bound);
    for (const auto& v : k.values) h = hash_combine(h, v.hash());
    return h;
  }
};

struct Table {
  std::vector<std::vector<Value>> answers;
  std::unordered_set<std::vector<Value>, ValuesHash> seen;
  int iter = 0;
  bool in_progress = false;
};

class Prover {
 public:
  Prover(const Hypothesis& h, const BackgroundKnowledge& bk, const EvalLimits& lim)
      : bk_(bk), lim_(lim), deadline_(std::chrono::steady_clock::now() + lim.per_example_timeout) {
    for (const auto& c : h.clauses()) clauses_[c->head().pred].push_back(c.get());
  }

  Proof run(const GroundAtom& e) {
    if (!clauses_.count(e.pred)) return Proof::Failed;
    CallKey top{e.pred, 0, e.args};
    for (int i = 0; i < e.pred.arity; ++i) top.bound |= std::uint64_t{1} << i;
    top_ = &tables_[top];
    while (true) {
      ++iter_;
      consumed_incomplete_ = false;
      changed_ = false;
      evaluate(top, 0);
      if (!top_->answers.empty()) return Proof::Proved;
      if (aborted_) return Proof::Exhausted;
      if (!consumed_incomplete_ || !changed_) return Proof::Failed;
    }
  }

 private:
  using Env = std::vector<std::optional<Value>>;

  bool halted() const { return aborted_ || !top_->answers.empty(); }

  bool tick() {
    if (++steps_ > lim_.max_steps) aborted_ = true;
    if ((steps_ & 255) == 0 && std::chrono::steady_clock::now() > deadline_) aborted_ = true;
    return !halted();
  }

  Table& evaluate(const CallKey& key, int depth) {
    Table& t = tables_[key];
    if (t.iter == iter_) {
      if (t.in_progress) consumed_incomplete_ = true;
      return t;
    }
    t.iter = iter_;
    if (depth > lim_.max_depth) {
      aborted_ = true;
      return t;
    }
    t.in_progress = true;
    for (const Clause* c : clauses_.at(key.pred)) {
      Env env(c->num_vars());
      if (!bind_head(*c, key, env)) continue;
      solve(*c, env, 0, t, depth);
      if (halted()) break;
    }
    t.in_progress = false;
    return t;
  }

  static bool bind_value(const Term& term, const Value& v, Env& env, std::vector<int>& trail) {
    if (!term.is_var()) return term.value() == v;
    auto& slot = env[term.var_id()];
    if (slot) return *slot == v;
    slot = v;
    trail.push_back(term.var_id());
    return true;
  }

  static void undo(Env& env, std::vector<int>& trail) {
    for (int v : trail) env[v].reset();
    trail.clear();
  }

  bool bind_head(const Clause& c, const CallKey& key, Env& env) {
    std::vector<int> trail;
    std::size_t j = 0;
    for (int i = 0; i < key.pred.arity; ++i) {
      if (!(key.bound >> i & 1)) continue;
      if (!bind_value(c.head().args[i], key.values[j++], env, trail)) return false;
    }
    return true;
  }

  const Value* lookup(const Term& t, const Env& env) const {
    if (!t.is_var()) return &t.value();
    const auto& slot = env[t.var_id()];
    return slot ? &*slot : nullptr;
  }

  // Lower is preferred; -1 means not callable yet.
  int priority(const Atom& a, const Env& env) const {
    int nbound = 0;
    const Value* args[64];
    for (std::size_t i = 0; i < a.args.size(); ++i) {
      args[i] = lookup(a.args[i], env);
      nbound += args[i] != nullptr;
    }
    const bool all = nbound == static_cast<int>(a.args.size());
    if (clauses_.count(a.pred)) return all ? 1 : nbound > 0 ? 2 : 4;
    if (bk_.is_builtin(a.pred)) {
      const Builtin* b = find_builtin(a.pred);
      if (!b->callable(args)) return -1;
      return all ? 0 : 1;
    }
    return all ? 0 : nbound > 0 ? 1 : 3;
  }

  void solve(const Clause& c, Env& env, std::uint64_t done, Table& out, int depth) {
    if (!tick()) return;
    const auto& body = c.body();
    if (done == (std::uint64_t{1} << body.size()) - 1) {
      emit(c, env, out);
      return;
    }
    int pick = -1;
    int best = 1 << 30;
    for (std::size_t i = 0; i < body.size(); ++i) {
      if (done >> i & 1) continue;
      int p = priority(body[i], env);
      if (p >= 0 && p < best) {
        best = p;
        pick = static_cast<int>(i);
      }
    }
    if (pick < 0) return;
    const Atom& a = body[pick];
    done |= std::uint64_t{1} << pick;
    if (clauses_.count(a.pred)) {
      call_program(c, a, env, done, out, depth);
    } else if (bk_.is_builtin(a.pred)) {
      call_builtin(c, a, env, done, out, depth);
    } else {
      call_facts(c, a, env, done, out, depth);
    }
  }

  void emit(const Clause& c, const Env& env, Table& out) {
    std::vector<Value> row;
    row.reserve(c.head().args.size());
    for (const auto& t : c.head().args) {
      const Value* v = lookup(t, env);
      if (!v) return;
      row.push_back(*v);
    }
    if (out.seen.insert(row).second) {
      out.answers.push_back(std::move(row));
      changed_ = true;
    }
  }

  // Binds the atom's arguments to `row` and continues with the rest of the body.
  void step(const Clause& c, const Atom& a, const Value* row, Env& env, std::uint64_t done, Table& out,
            int depth) {
    std::vector<int> trail;
    for (std::size_t i = 0; i < a.args.size(); ++i)
      if (!bind_value(a.args[i], row[i], env, trail)) {
        undo(env, trail);
        return;
      }
    solve(c, env, done, out, depth);
    undo(env, trail);
  }

  void call_facts(const Clause& c, const Atom& a, Env& env, std::uint64_t done, Table& out, int depth) {
    const auto* t = bk_.table(a.pred);
    if (!t || t->n == 0) return;
    const int ar = t->arity;
    if (ar == 0) {
      solve(c, env, done, out, depth);
      return;
    }
    const std::vector<std::uint32_t>* rows = nullptr;
    for (int i = 0; i < ar; ++i) {
      const Value* v = lookup(a.args[i], env);
      if (!v) continue;
      auto it = t->by_arg[i].find(*v);
      if (it == t->by_arg[i].end()) return;
      if (!rows || it->second.size() < rows->size()) rows = &it->second;
    }
    if (rows) {
      for (auto r : *rows) {
        if (halted()) return;
        step(c, a, &t->rows[std::size_t{r} * ar], env, done, out, depth);
      }
    } else {
      for (std::size_t r = 0; r < t->n; ++r) {
        if (halted()) return;
        step(c, a, &t->rows[r * ar], env, done, out, depth);
      }
    }
  }

  void call_builtin(const Clause& c, const Atom& a, Env& env, std::uint64_t done, Table& out, int depth) {
    const Builtin* b = find_builtin(a.pred);
    const Value* args[64];
    for (std::size_t i = 0; i < a.args.size(); ++i) args[i] = lookup(a.args[i], env);
    std::vector<Value> rows;
    b->call(args, rows);
    const std::size_t ar = a.args.size();
    for (std::size_t r = 0; r + ar <= rows.size() && ar > 0; r += ar) {
      if (halted()) return;
      step(c, a, &rows[r], env, done, out, depth);
    }
  }

  void call_program(const Clause& c, const Atom& a, Env& env, std::uint64_t done, Table& out, int depth) {
    CallKey key{a.pred, 0, {}};
    for (std::size_t i = 0; i < a.args.size(); ++i)
      if (const Value* v = lookup(a.args[i], env)) {
        key.bound |= std::uint64_t{1} << i;
        key.values.push_back(*v);
      }
    Table& t = evaluate(key, depth + 1);
    for (std::size_t i = 0; i < t.answers.size(); ++i) {
      if (halted()) return;
      std::vector<Value> row = t.answers[i];
      step(c, a, row.data(), env, done, out, depth);
    }
  }

  const BackgroundKnowledge& bk_;
  const EvalLimits& lim_;
  std::chrono::steady_clock::time_point deadline_;
  std::unordered_map<PredSym, std::vector<const Clause*>, PredSymHash> clauses_;
  std::unordered_map<CallKey, Table, CallKeyHash> tables_;
  Table* top_ = nullptr;
  long steps_ = 0;
  int iter_ = 0;
  bool aborted_ = false;
  bool consumed_incomplete_ = false;
  bool changed_ = false;
};

}  // namespace

Proof prove(const Hypothesis& h, const BackgroundKnowledge& bk, const GroundAtom& e, const EvalLimits& lim) {
  return Prover(h, bk, lim).run(e);
}

Outcome count_outcomes(const Hypothesis& h, const BackgroundKnowledge& bk, const ExampleSet& ex,
                       const EvalLimits& lim) {
  Outcome o;
  for (const auto& e : ex.pos) {
    Proof p = prove(h, bk, e, lim);
    if (p == Proof::Proved) {
      ++o.tp;
    } else {
      ++o.fn;
      o.exhausted += p == Proof::Exhausted;
    }
  }
  for (const auto& e : ex.neg) {
    Proof p = prove(h, bk, e, lim);
    if (p == Proof::Proved) {
      ++o.fp;
    } else {
      ++o.tn;
      o.exhausted += p == Proof::Exhausted;
    }
  }
  return o;
}

}  // namespace noisylff
