#include "noisylff/constraints.hpp"

#include <algorithm>
#include <ostream>
#include <stdexcept>

#include "noisylff/subsumption.hpp"

namespace noisylff {

const char* kind_name(ConstraintKind k) {
  switch (k) {
    case ConstraintKind::Banish:
      return "BANISH";
    case ConstraintKind::Generalization:
      return "GEN";
    case ConstraintKind::Specialization:
      return "SPEC";
    case ConstraintKind::Elimination:
      return "ELIM";
  }
  return "?";
}

std::string HypothesisConstraint::key() const {
  std::string k = kind_name(kind);
  k += non_recursive_only ? "|n|" : "||";
  if (size_floor) k += std::to_string(*size_floor);
  k += '|';
  k += anchor.key();
  return k;
}

std::string HypothesisConstraint::str() const {
  std::string s = kind_name(kind);
  if (size_floor) s += " size>" + std::to_string(*size_floor);
  if (non_recursive_only) s += " nonrec";
  s += " :: ";
  std::string body = anchor.str();
  std::replace(body.begin(), body.end(), '\n', ' ');
  return s + body;
}

HypothesisConstraint make_constraint(ConstraintKind kind, const Hypothesis& anchor, bool non_rec,
                                     std::optional<int> size_floor) {
  HypothesisConstraint c;
  c.kind = kind;
  c.anchor = anchor;
  if (kind != ConstraintKind::Banish) c.non_recursive_only = non_rec;
  if (kind == ConstraintKind::Generalization || kind == ConstraintKind::Specialization) c.size_floor = size_floor;
  return c;
}

std::vector<HypothesisConstraint> learn_constraints(const Hypothesis& h, int tp, int tn, int n_pos, int n_neg,
                                                    bool non_rec, std::optional<int> size_floor) {
  if (tp < 0 || tp > n_pos || tn < 0 || tn > n_neg) throw std::out_of_range("learn_constraints: outcome out of bounds");
  std::vector<HypothesisConstraint> out;
  auto add = [&](ConstraintKind k) { out.push_back(make_constraint(k, h, non_rec, size_floor)); };
  if (tp == n_pos) {
    add(tn == n_neg ? ConstraintKind::Banish : ConstraintKind::Generalization);
    return out;
  }
  add(ConstraintKind::Specialization);
  if (tn < n_neg) add(ConstraintKind::Generalization);
  if (tp == 0) add(ConstraintKind::Elimination);
  return out;
}

namespace {

// Candidate-independent qualifier checks shared by both matching modes.
bool qualifies(const Hypothesis& cand, const HypothesisConstraint& c) {
  if (c.kind == ConstraintKind::Banish) return true;
  if (c.non_recursive_only && cand.is_recursive()) return false;
  if (c.kind == ConstraintKind::Elimination) return cand.is_separable();
  return !c.size_floor || cand.size() > *c.size_floor;
}

bool every_anchor_clause_covers_some(const Hypothesis& anchor, const Hypothesis& cand, auto&& rel) {
  return std::all_of(anchor.clauses().begin(), anchor.clauses().end(), [&](const ClauseRef& a) {
    return std::any_of(cand.clauses().begin(), cand.clauses().end(),
                       [&](const ClauseRef& c) { return rel(*a, *c); });
  });
}

// Injective assignment of anchor clauses to candidate clauses under `rel`.
bool assign(const Hypothesis& anchor, const Hypothesis& cand, std::size_t i, std::vector<bool>& used,
            auto&& rel) {
  if (i == anchor.clauses().size()) return true;
  for (std::size_t j = 0; j < cand.clauses().size(); ++j) {
    if (used[j] || !rel(*anchor.clauses()[i], *cand.clauses()[j])) continue;
    used[j] = true;
    if (assign(anchor, cand, i + 1, used, rel)) return true;
    used[j] = false;
  }
  return false;
}

bool match(const Hypothesis& cand, const HypothesisConstraint& c, Matching m, auto&& subsumes) {
  const Hypothesis& a = c.anchor;
  // The non-recursive generalization constraints only speak about programs
  // that add whole clauses to the anchor.
  if (c.kind == ConstraintKind::Generalization && c.non_recursive_only) return is_superset_modulo_renaming(cand, a);
  if (m == Matching::Semantic) {
    switch (c.kind) {
      case ConstraintKind::Banish:
        return cand.key() == a.key();
      case ConstraintKind::Generalization:
        return every_anchor_clause_covers_some(a, cand, [&](const Clause& x, const Clause& y) { return subsumes(y, x); });
      case ConstraintKind::Specialization:
        return every_anchor_clause_covers_some(cand, a, [&](const Clause& x, const Clause& y) { return subsumes(y, x); });
      case ConstraintKind::Elimination:
        return every_anchor_clause_covers_some(a, cand, subsumes);
    }
  }
  switch (c.kind) {
    case ConstraintKind::Banish:
      return cand.key() == a.key();
    case ConstraintKind::Generalization:
      return is_superset_modulo_renaming(cand, a);
    case ConstraintKind::Specialization: {
      if (cand.clauses().size() > a.clauses().size()) return false;
      std::vector<bool> used(cand.clauses().size(), false);
      return assign(a, cand, 0, used, [](const Clause& x, const Clause& y) { return clause_included(x, y); });
    }
    case ConstraintKind::Elimination:
      return every_anchor_clause_covers_some(a, cand, [](const Clause& x, const Clause& y) { return clause_included(x, y); });
  }
  return false;
}

}  // namespace

bool violates(const Hypothesis& candidate, const HypothesisConstraint& c, Matching m) {
  if (!qualifies(candidate, c)) return false;
  return match(candidate, c, m, [](const Clause& x, const Clause& y) { return clause_subsumes(x, y); });
}

bool ConstraintStore::add(HypothesisConstraint c) {
  if (!keys_.insert(c.key()).second) return false;
  if (c.kind == ConstraintKind::Banish) banished_.insert(c.anchor.key());
  constraints_.push_back(std::move(c));
  return true;
}

std::size_t ConstraintStore::add(const std::vector<HypothesisConstraint>& cs) {
  std::size_t n = 0;
  for (const auto& c : cs) n += add(c);
  return n;
}

bool ConstraintStore::subsumes(const Clause& a, const Clause& b) const {
  if (a.head().pred != b.head().pred || (a.body_mask() & ~b.body_mask()) != 0) return false;
  const std::uint64_t k = (a.serial() << 32) ^ b.serial();
  auto it = cache_.find(k);
  if (it != cache_.end()) return it->second;
  bool r = clause_subsumes(a, b);
  cache_.emplace(k, r);
  return r;
}

bool ConstraintStore::violated(const Hypothesis& cand, const HypothesisConstraint& c) const {
  if (!qualifies(cand, c)) return false;
  return match(cand, c, matching_, [this](const Clause& x, const Clause& y) { return subsumes(x, y); });
}

std::optional<std::size_t> ConstraintStore::first_violated(const Hypothesis& candidate) const {
  const bool banished = banished_.count(candidate.key()) > 0;
  for (std::size_t i = 0; i < constraints_.size(); ++i) {
    const auto& c = constraints_[i];
    if (c.kind == ConstraintKind::Banish) {
      if (banished && c.anchor.key() == candidate.key()) return i;
      continue;
    }
    if (violated(candidate, c)) return i;
  }
  return std::nullopt;
}

bool ConstraintStore::permits(const Hypothesis& candidate) const {
  if (banished_.count(candidate.key())) return false;
  for (const auto& c : constraints_)
    if (c.kind != ConstraintKind::Banish && violated(candidate, c)) return false;
  return true;
}

void ConstraintStore::dump(std::ostream& os) const {
  for (const auto& c : constraints_) os << c.str() << '\n';
}

}  // namespace noisylff
