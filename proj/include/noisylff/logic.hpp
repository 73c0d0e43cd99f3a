#pragma once

#include <cstdint>
#include <memory>
#include <set>
#include <string>
#include <vector>

#include "noisylff/value.hpp"

namespace noisylff {

class Term {
 public:
  Term() = default;
  static Term var(int id) {
    Term t;
    t.var_ = id;
    return t;
  }
  static Term constant(Value v) {
    Term t;
    t.value_ = std::move(v);
    return t;
  }

  bool is_var() const { return var_ >= 0; }
  int var_id() const { return var_; }
  const Value& value() const { return value_; }

  bool operator==(const Term& o) const;
  // Variables order before constants; variables by id.
  std::strong_ordering operator<=>(const Term& o) const;

 private:
  int var_ = -1;
  Value value_;
};

// Printable name for variable id: A..Z, then V26, V27, ...
std::string var_name(int id);

struct Atom {
  PredSym pred;
  std::vector<Term> args;

  bool is_ground() const;
  bool operator==(const Atom&) const = default;
  std::strong_ordering operator<=>(const Atom& o) const;
  std::string str() const;
};

struct GroundAtom {
  PredSym pred;
  std::vector<Value> args;

  bool operator==(const GroundAtom&) const = default;
  std::strong_ordering operator<=>(const GroundAtom& o) const;
  std::size_t hash() const;
  std::string str() const;
};

struct GroundAtomHash {
  std::size_t operator()(const GroundAtom& a) const { return a.hash(); }
};

// A definite clause kept in canonical form: head variables numbered by first
// occurrence, body sorted, body-only variables renamed to the permutation that
// gives the smallest sorted body.
class Clause {
 public:
  // Throws std::invalid_argument if a head variable is missing from the body or
  // an atom's argument count disagrees with its predicate arity.
  Clause(Atom head, std::vector<Atom> body);

  const Atom& head() const { return head_; }
  const std::vector<Atom>& body() const { return body_; }
  int size() const { return static_cast<int>(body_.size()); }
  int num_vars() const { return num_vars_; }
  const std::string& key() const { return key_; }
  // Bit (pred id mod 64) set for each body predicate.
  std::uint64_t body_mask() const { return body_mask_; }
  std::uint64_t serial() const { return serial_; }
  bool body_mentions(const PredSym& p) const;
  std::string str() const;

 private:
  Atom head_;
  std::vector<Atom> body_;
  int num_vars_ = 0;
  std::string key_;
  std::uint64_t body_mask_ = 0;
  std::uint64_t serial_ = 0;
};

using ClauseRef = std::shared_ptr<const Clause>;

ClauseRef make_clause(Atom head, std::vector<Atom> body);

using CanonicalKey = std::string;

// Set of clauses, ordered by canonical key, duplicates (up to renaming) dropped.
class Hypothesis {
 public:
  Hypothesis() = default;
  explicit Hypothesis(std::vector<ClauseRef> clauses);

  const std::vector<ClauseRef>& clauses() const { return clauses_; }
  bool empty() const { return clauses_.empty(); }
  const CanonicalKey& key() const { return key_; }
  // Total number of body literals.
  int size() const { return size_; }
  bool is_recursive() const { return recursive_; }
  bool is_separable() const { return separable_; }
  bool has_base_case() const { return base_case_; }
  const std::set<PredSym>& head_preds() const { return head_preds_; }
  bool contains_key(const CanonicalKey& clause_key) const;
  // One clause per line, "head :- b1,...,bn."
  std::string str() const;

  bool operator==(const Hypothesis& o) const { return key_ == o.key_; }

 private:
  std::vector<ClauseRef> clauses_;
  CanonicalKey key_;
  int size_ = 0;
  bool recursive_ = false;
  bool separable_ = true;
  bool base_case_ = true;
  std::set<PredSym> head_preds_;
};

inline const CanonicalKey& canonical_form(const Hypothesis& h) { return h.key(); }

}  // namespace noisylff
