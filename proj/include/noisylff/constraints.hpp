#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "noisylff/logic.hpp"

namespace noisylff {

enum class ConstraintKind { Banish, Generalization, Specialization, Elimination };

const char* kind_name(ConstraintKind k);

// How generalization / specialization / elimination are matched against a
// candidate. Semantic uses theta-subsumption; Syntactic uses exact clauses
// (generalization) and injective variable renamings (specialization,
// elimination).
enum class Matching { Semantic, Syntactic };

struct HypothesisConstraint {
  ConstraintKind kind = ConstraintKind::Banish;
  Hypothesis anchor;
  bool non_recursive_only = false;
  // Applies only to candidates whose size is strictly greater.
  std::optional<int> size_floor;

  // Identity used for deduplication: kind, anchor key, qualifiers.
  std::string key() const;
  // "KIND size>N nonrec :: <anchor>" with the anchor on one line.
  std::string str() const;
};

HypothesisConstraint make_constraint(ConstraintKind kind, const Hypothesis& anchor, bool non_rec = false,
                                     std::optional<int> size_floor = std::nullopt);

// Outcome-to-constraint table. Throws std::out_of_range unless
// 0 <= tp <= n_pos and 0 <= tn <= n_neg.
std::vector<HypothesisConstraint> learn_constraints(const Hypothesis& h, int tp, int tn, int n_pos, int n_neg,
                                                    bool non_rec = false,
                                                    std::optional<int> size_floor = std::nullopt);

bool violates(const Hypothesis& candidate, const HypothesisConstraint& c, Matching m = Matching::Semantic);

// Accumulated constraints. Single writer; permits() is const but fills a
// clause-pair cache, so concurrent readers need external locking.
class ConstraintStore {
 public:
  explicit ConstraintStore(Matching m = Matching::Semantic) : matching_(m) {}

  // Returns false when an identical constraint is already stored.
  bool add(HypothesisConstraint c);
  std::size_t add(const std::vector<HypothesisConstraint>& cs);
  bool permits(const Hypothesis& candidate) const;
  // Index of the first stored constraint violated by `candidate`, if any.
  std::optional<std::size_t> first_violated(const Hypothesis& candidate) const;

  std::size_t size() const { return constraints_.size(); }
  const std::vector<HypothesisConstraint>& constraints() const { return constraints_; }
  Matching matching() const { return matching_; }
  void dump(std::ostream& os) const;

 private:
  bool violated(const Hypothesis& cand, const HypothesisConstraint& c) const;
  bool subsumes(const Clause& a, const Clause& b) const;

  Matching matching_;
  std::vector<HypothesisConstraint> constraints_;
  std::unordered_set<std::string> keys_;
  std::unordered_set<CanonicalKey> banished_;
  mutable std::unordered_map<std::uint64_t, bool> cache_;
};

}  // namespace noisylff
