#include "noisylff/generator.hpp"

#include <algorithm>
#include <optional>

#include "noisylff/subsumption.hpp"

namespace noisylff {

namespace {

bool key_less(const ClauseRef& a, const ClauseRef& b) { return a->key() < b->key(); }

// Some ordering of the body binds every `in` argument before use, starting
// from the head's `in` positions (all head positions when undirected).
bool admissible(const Atom& head, const std::vector<Atom>& body, const DeclarationBias& bias, int num_vars) {
  std::vector<bool> bound(num_vars, false);
  auto hd = bias.directions.find(head.pred);
  for (std::size_t i = 0; i < head.args.size(); ++i)
    if (head.args[i].is_var() && (hd == bias.directions.end() || hd->second[i] == Direction::In))
      bound[head.args[i].var_id()] = true;

  std::vector<bool> placed(body.size(), false);
  std::size_t n_placed = 0;
  bool progress = true;
  while (progress && n_placed < body.size()) {
    progress = false;
    for (std::size_t j = 0; j < body.size(); ++j) {
      if (placed[j]) continue;
      const Atom& a = body[j];
      auto d = bias.directions.find(a.pred);
      bool ready = true;
      if (d != bias.directions.end())
        for (std::size_t i = 0; i < a.args.size() && ready; ++i)
          if (d->second[i] == Direction::In && a.args[i].is_var() && !bound[a.args[i].var_id()]) ready = false;
      if (!ready) continue;
      for (const auto& t : a.args)
        if (t.is_var()) bound[t.var_id()] = true;
      placed[j] = true;
      ++n_placed;
      progress = true;
    }
  }
  if (n_placed < body.size()) return false;
  return std::all_of(head.args.begin(), head.args.end(),
                     [&](const Term& t) { return !t.is_var() || bound[t.var_id()]; });
}

class ClauseBuilder {
 public:
  ClauseBuilder(const DeclarationBias& bias, const SearchBounds& bounds, const std::vector<PredSym>& preds,
                const PredSym& head, int k, std::vector<ClauseRef>& out)
      : bias_(bias), preds_(preds), k_(k), max_vars_(bounds.max_vars), out_(out) {
    head_.pred = head;
    for (int i = 0; i < head.arity; ++i) head_.args.push_back(Term::var(i));
    types_.assign(std::max(max_vars_, head.arity), std::nullopt);
    if (auto t = bias.types.find(head); t != bias.types.end())
      for (int i = 0; i < head.arity; ++i) types_[i] = t->second[i];
  }

  void run() {
    if (head_.pred.arity > max_vars_) return;
    extend(head_.pred.arity);
  }

 private:
  void extend(int nv) {
    if (static_cast<int>(body_.size()) == k_) {
      finish(nv);
      return;
    }
    for (const auto& p : preds_) {
      if (!body_.empty() && p < body_.back().pred) continue;
      const std::vector<Symbol>* ptypes = nullptr;
      if (auto t = bias_.types.find(p); t != bias_.types.end()) ptypes = &t->second;
      Atom a{p, std::vector<Term>(p.arity)};
      args(a, ptypes, 0, nv);
    }
  }

  void args(Atom& a, const std::vector<Symbol>* ptypes, int pos, int nv) {
    if (pos == a.pred.arity) {
      if (!body_.empty() && !(body_.back() < a)) return;
      body_.push_back(a);
      extend(nv);
      body_.pop_back();
      return;
    }
    std::optional<Symbol> want;
    if (ptypes) want = (*ptypes)[pos];
    for (int v = 0; v <= nv && v < max_vars_; ++v) {
      const bool fresh = v == nv;
      if (!fresh && want && types_[v] && *types_[v] != *want) continue;
      std::optional<Symbol> saved = types_[v];
      if (fresh || !types_[v]) types_[v] = want;
      a.args[pos] = Term::var(v);
      args(a, ptypes, pos + 1, fresh ? nv + 1 : nv);
      types_[v] = saved;
      if (fresh) types_[v] = std::nullopt;
    }
  }

  void finish(int nv) {
    std::vector<bool> seen(nv, false);
    for (const auto& a : body_)
      for (const auto& t : a.args) seen[t.var_id()] = true;
    for (int i = 0; i < head_.pred.arity; ++i)
      if (!seen[i]) return;
    if (!admissible(head_, body_, bias_, nv)) return;
    auto c = make_clause(head_, body_);
    if (c->body() == body_ && c->head() == head_) out_.push_back(std::move(c));
  }

  const DeclarationBias& bias_;
  const std::vector<PredSym>& preds_;
  int k_;
  int max_vars_;
  std::vector<ClauseRef>& out_;
  Atom head_;
  std::vector<Atom> body_;
  std::vector<std::optional<Symbol>> types_;
};

}  // namespace

Generator::Generator(DeclarationBias bias, SearchBounds bounds)
    : bias_(std::move(bias)), bounds_(bounds), body_preds_(bias_.body_preds.begin(), bias_.body_preds.end()) {}

void Generator::build_clauses(const PredSym& head, int k, std::vector<ClauseRef>& out) const {
  ClauseBuilder(bias_, bounds_, body_preds_, head, k, out).run();
}

const std::vector<ClauseRef>& Generator::clauses_of_size(int k) {
  auto it = by_size_.find(k);
  if (it != by_size_.end()) return it->second;
  std::vector<ClauseRef> out;
  if (k >= 1 && k <= bounds_.max_body_literals)
    for (const auto& h : bias_.head_preds) build_clauses(h, k, out);
  std::sort(out.begin(), out.end(), key_less);
  return by_size_.emplace(k, std::move(out)).first->second;
}

void Generator::start_size() {
  const int upto = std::min(size_, bounds_.max_body_literals);
  while (merged_upto_ < upto) {
    ++merged_upto_;
    const auto& add = clauses_of_size(merged_upto_);
    std::vector<ClauseRef> m;
    m.reserve(merged_.size() + add.size());
    std::merge(merged_.begin(), merged_.end(), add.begin(), add.end(), std::back_inserter(m), key_less);
    merged_ = std::move(m);
  }
  prefix_.clear();
  stack_.assign(1, Frame{0, size_});
  started_ = true;
}

bool Generator::compatible(const ClauseRef& c) const {
  for (const auto& p : prefix_)
    if (clause_subsumes(*p, *c) || clause_subsumes(*c, *p)) return false;
  return true;
}

void Generator::advance_size() {
  ++size_;
  started_ = false;
}

GenResult Generator::next(const ConstraintStore& store) {
  if (size_ > bounds_.total_literals()) return {GenStatus::FullyExhausted, {}};
  if (!started_) start_size();

  while (!stack_.empty()) {
    const std::size_t depth = stack_.size() - 1;
    const bool last_level = static_cast<int>(depth) + 1 >= bounds_.max_clauses;
    Frame& f = stack_.back();
    const int remaining = f.remaining;

    // At the last level only clauses of exactly the remaining size can close
    // the program; they live in their own sorted list.
    const std::vector<ClauseRef>& pool = last_level ? clauses_of_size(remaining) : merged_;
    if (last_level && f.next == 0 && !prefix_.empty())
      f.next = std::upper_bound(pool.begin(), pool.end(), prefix_.back(), key_less) - pool.begin();

    if (f.next >= pool.size()) {
      stack_.pop_back();
      if (!prefix_.empty()) prefix_.pop_back();
      continue;
    }
    const std::size_t i = f.next++;
    const ClauseRef& c = pool[i];
    if (c->size() > remaining) continue;
    if (!compatible(c)) continue;

    if (c->size() == remaining) {
      std::vector<ClauseRef> cs = prefix_;
      cs.push_back(c);
      Hypothesis h(std::move(cs));
      if (h.has_base_case() && store.permits(h)) return {GenStatus::Candidate, std::move(h)};
      continue;
    }
    if (last_level) continue;
    const bool child_last = static_cast<int>(depth) + 2 >= bounds_.max_clauses;
    prefix_.push_back(c);
    stack_.push_back(Frame{child_last ? 0 : i + 1, remaining - c->size()});
  }
  started_ = false;
  return {GenStatus::ExhaustedAtSize, {}};
}

FixedSpace::FixedSpace(std::vector<Hypothesis> space) : space_(std::move(space)) {
  std::sort(space_.begin(), space_.end(), [](const Hypothesis& a, const Hypothesis& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return a.key() < b.key();
  });
  for (const auto& h : space_) max_size_ = std::max(max_size_, h.size());
}

GenResult FixedSpace::next(const ConstraintStore& store) {
  if (size_ > max_size_) return {GenStatus::FullyExhausted, {}};
  while (pos_ < space_.size() && space_[pos_].size() < size_) ++pos_;
  while (pos_ < space_.size() && space_[pos_].size() == size_) {
    const Hypothesis& h = space_[pos_++];
    if (store.permits(h)) return {GenStatus::Candidate, h};
  }
  return {GenStatus::ExhaustedAtSize, {}};
}

void FixedSpace::advance_size() { ++size_; }

}  // namespace noisylff
