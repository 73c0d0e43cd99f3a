#include "noisylff/logic.hpp"

#include <algorithm>
#include <atomic>
#include <numeric>
#include <stdexcept>
#include <unordered_map>

namespace noisylff {

bool Term::operator==(const Term& o) const {
  if (var_ != o.var_) return false;
  return is_var() || value_ == o.value_;
}

std::strong_ordering Term::operator<=>(const Term& o) const {
  if (is_var() != o.is_var()) return is_var() ? std::strong_ordering::less : std::strong_ordering::greater;
  if (is_var()) return var_ <=> o.var_;
  return value_ <=> o.value_;
}

std::string var_name(int id) {
  if (id < 26) return std::string(1, static_cast<char>('A' + id));
  return "V" + std::to_string(id);
}

bool Atom::is_ground() const {
  return std::none_of(args.begin(), args.end(), [](const Term& t) { return t.is_var(); });
}

std::strong_ordering Atom::operator<=>(const Atom& o) const {
  if (auto c = pred <=> o.pred; c != 0) return c;
  return std::lexicographical_compare_three_way(args.begin(), args.end(), o.args.begin(),
                                                o.args.end());
}

std::string Atom::str() const {
  std::string s = pred.name.str();
  if (args.empty()) return s;
  s += '(';
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (i) s += ',';
    s += args[i].is_var() ? var_name(args[i].var_id()) : args[i].value().str();
  }
  return s + ')';
}

std::strong_ordering GroundAtom::operator<=>(const GroundAtom& o) const {
  if (auto c = pred <=> o.pred; c != 0) return c;
  return std::lexicographical_compare_three_way(args.begin(), args.end(), o.args.begin(),
                                                o.args.end());
}

std::size_t GroundAtom::hash() const {
  std::size_t h = pred.hash();
  for (const auto& v : args) h = hash_combine(h, v.hash());
  return h;
}

std::string GroundAtom::str() const {
  std::string s = pred.name.str();
  if (args.empty()) return s;
  s += '(';
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (i) s += ',';
    s += args[i].str();
  }
  return s + ')';
}

namespace {

std::atomic<std::uint64_t> next_serial{1};

void check_arity(const Atom& a) {
  if (static_cast<int>(a.args.size()) != a.pred.arity)
    throw std::invalid_argument("arity mismatch in atom " + a.str());
}

Atom rename(const Atom& a, const std::unordered_map<int, int>& m) {
  Atom out{a.pred, {}};
  out.args.reserve(a.args.size());
  for (const auto& t : a.args) out.args.push_back(t.is_var() ? Term::var(m.at(t.var_id())) : t);
  return out;
}

}  // namespace

Clause::Clause(Atom head, std::vector<Atom> body) : serial_(next_serial++) {
  check_arity(head);
  for (const auto& a : body) check_arity(a);

  std::unordered_map<int, int> head_map;
  for (const auto& t : head.args)
    if (t.is_var() && !head_map.count(t.var_id())) head_map.emplace(t.var_id(), static_cast<int>(head_map.size()));
  const int k = static_cast<int>(head_map.size());

  std::sort(body.begin(), body.end());
  body.erase(std::unique(body.begin(), body.end()), body.end());

  std::vector<int> free;
  std::unordered_map<int, bool> seen_in_body;
  for (const auto& a : body)
    for (const auto& t : a.args) {
      if (!t.is_var()) continue;
      seen_in_body[t.var_id()] = true;
      if (!head_map.count(t.var_id()) && std::find(free.begin(), free.end(), t.var_id()) == free.end())
        free.push_back(t.var_id());
    }
  for (const auto& [v, _] : head_map)
    if (!seen_in_body.count(v))
      throw std::invalid_argument("head variable missing from body in clause for " + head.pred.str());

  std::vector<int> perm(free.size());
  std::iota(perm.begin(), perm.end(), k);
  std::unordered_map<int, int> m = head_map;
  std::vector<Atom> best;
  std::vector<Atom> cur(body.size());
  do {
    for (std::size_t i = 0; i < free.size(); ++i) m[free[i]] = perm[i];
    for (std::size_t i = 0; i < body.size(); ++i) cur[i] = rename(body[i], m);
    std::sort(cur.begin(), cur.end());
    if (best.empty() || cur < best) best = cur;
  } while (std::next_permutation(perm.begin(), perm.end()));

  head_ = rename(head, head_map);
  body_ = body.empty() ? std::vector<Atom>{} : std::move(best);
  num_vars_ = k + static_cast<int>(free.size());

  key_ = head_.str() + ":-";
  for (std::size_t i = 0; i < body_.size(); ++i) {
    if (i) key_ += ',';
    key_ += body_[i].str();
    body_mask_ |= std::uint64_t{1} << (body_[i].pred.id() % 64);
  }
}

bool Clause::body_mentions(const PredSym& p) const {
  return std::any_of(body_.begin(), body_.end(), [&](const Atom& a) { return a.pred == p; });
}

std::string Clause::str() const {
  std::string s = head_.str();
  if (body_.empty()) return s + ".";
  s += " :- ";
  for (std::size_t i = 0; i < body_.size(); ++i) {
    if (i) s += ',';
    s += body_[i].str();
  }
  return s + ".";
}

ClauseRef make_clause(Atom head, std::vector<Atom> body) {
  return std::make_shared<const Clause>(std::move(head), std::move(body));
}

Hypothesis::Hypothesis(std::vector<ClauseRef> clauses) : clauses_(std::move(clauses)) {
  std::sort(clauses_.begin(), clauses_.end(),
            [](const ClauseRef& a, const ClauseRef& b) { return a->key() < b->key(); });
  clauses_.erase(std::unique(clauses_.begin(), clauses_.end(),
                             [](const ClauseRef& a, const ClauseRef& b) { return a->key() == b->key(); }),
                 clauses_.end());

  for (const auto& c : clauses_) {
    if (!key_.empty()) key_ += '\n';
    key_ += c->key();
    size_ += c->size();
    head_preds_.insert(c->head().pred);
  }
  for (const auto& c : clauses_)
    for (const auto& a : c->body())
      if (head_preds_.count(a.pred)) recursive_ = true;
  separable_ = !recursive_;

  for (const auto& p : head_preds_) {
    bool heads_recursive = false;
    bool has_base = false;
    for (const auto& c : clauses_) {
      if (c->head().pred != p) continue;
      bool rec = std::any_of(c->body().begin(), c->body().end(),
                             [&](const Atom& a) { return head_preds_.count(a.pred) > 0; });
      heads_recursive |= rec;
      has_base |= !c->body_mentions(p);
    }
    if (heads_recursive && !has_base) base_case_ = false;
  }
}

bool Hypothesis::contains_key(const CanonicalKey& clause_key) const {
  return std::any_of(clauses_.begin(), clauses_.end(),
                     [&](const ClauseRef& c) { return c->key() == clause_key; });
}

std::string Hypothesis::str() const {
  std::string s;
  for (const auto& c : clauses_) {
    if (!s.empty()) s += '\n';
    s += c->str();
  }
  return s;
}

}  // namespace noisylff
