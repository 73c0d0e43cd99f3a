#include "noisylff/subsumption.hpp"

#include <algorithm>
#include <vector>

namespace noisylff {

namespace {

class Matcher {
 public:
  Matcher(const Clause& c1, const Clause& c2, bool injective)
      : c1_(c1), c2_(c2), injective_(injective), theta_(c1.num_vars()), used_(c2.num_vars(), false) {}

  bool run() {
    if (c1_.head().pred != c2_.head().pred) return false;
    if ((c1_.body_mask() & ~c2_.body_mask()) != 0) return false;
    if (injective_ && c1_.size() > c2_.size()) return false;
    if (!match(c1_.head(), c2_.head())) return false;

    // Most constrained atoms first: fewest candidates in c2.
    order_.resize(c1_.body().size());
    std::vector<int> cands(order_.size(), 0);
    for (std::size_t i = 0; i < order_.size(); ++i) {
      order_[i] = static_cast<int>(i);
      for (const auto& b : c2_.body())
        if (b.pred == c1_.body()[i].pred) ++cands[i];
      if (cands[i] == 0) return false;
    }
    std::stable_sort(order_.begin(), order_.end(), [&](int a, int b) { return cands[a] < cands[b]; });
    return search(0);
  }

 private:
  bool bind(const Term& from, const Term& to) {
    if (!from.is_var()) return !to.is_var() && from.value() == to.value();
    Term& slot = theta_[from.var_id()].term;
    bool& set = theta_[from.var_id()].set;
    if (set) return slot == to;
    if (injective_) {
      if (!to.is_var() || used_[to.var_id()]) return false;
      used_[to.var_id()] = true;
    }
    slot = to;
    set = true;
    trail_.push_back(from.var_id());
    return true;
  }

  void undo(std::size_t mark) {
    while (trail_.size() > mark) {
      int v = trail_.back();
      trail_.pop_back();
      if (injective_) used_[theta_[v].term.var_id()] = false;
      theta_[v].set = false;
    }
  }

  bool match(const Atom& a, const Atom& b) {
    std::size_t mark = trail_.size();
    for (std::size_t i = 0; i < a.args.size(); ++i)
      if (!bind(a.args[i], b.args[i])) {
        undo(mark);
        return false;
      }
    return true;
  }

  bool search(std::size_t k) {
    if (k == order_.size()) return true;
    const Atom& a = c1_.body()[order_[k]];
    for (const auto& b : c2_.body()) {
      if (b.pred != a.pred) continue;
      std::size_t mark = trail_.size();
      if (match(a, b)) {
        if (search(k + 1)) return true;
        undo(mark);
      }
    }
    return false;
  }

  struct Slot {
    Term term;
    bool set = false;
  };

  const Clause& c1_;
  const Clause& c2_;
  bool injective_;
  std::vector<Slot> theta_;
  std::vector<bool> used_;
  std::vector<int> trail_;
  std::vector<int> order_;
};

}  // namespace

bool clause_subsumes(const Clause& c1, const Clause& c2) {
  if (&c1 == &c2 || c1.key() == c2.key()) return true;
  return Matcher(c1, c2, false).run();
}

bool clause_included(const Clause& c1, const Clause& c2) {
  if (&c1 == &c2 || c1.key() == c2.key()) return true;
  return Matcher(c1, c2, true).run();
}

bool theory_subsumes(const Hypothesis& t1, const Hypothesis& t2) {
  for (const auto& c2 : t2.clauses()) {
    bool found = std::any_of(t1.clauses().begin(), t1.clauses().end(),
                             [&](const ClauseRef& c1) { return clause_subsumes(*c1, *c2); });
    if (!found) return false;
  }
  return true;
}

bool is_superset_modulo_renaming(const Hypothesis& a, const Hypothesis& b) {
  return std::all_of(b.clauses().begin(), b.clauses().end(),
                     [&](const ClauseRef& c) { return a.contains_key(c->key()); });
}

}  // namespace noisylff
