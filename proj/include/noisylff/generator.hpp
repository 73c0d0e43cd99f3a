#pragma once

#include <map>
#include <vector>

#include "noisylff/constraints.hpp"
#include "noisylff/logic.hpp"
#include "noisylff/task.hpp"

namespace noisylff {

enum class GenStatus { Candidate, ExhaustedAtSize, FullyExhausted };

struct GenResult {
  GenStatus status = GenStatus::FullyExhausted;
  Hypothesis hypothesis;
};

// Cursor over candidate hypotheses in order of size, then canonical key.
// next() reports ExhaustedAtSize once the current size is spent; the caller
// moves on with advance_size().
class CandidateSource {
 public:
  virtual ~CandidateSource() = default;
  virtual GenResult next(const ConstraintStore& store) = 0;
  virtual void advance_size() = 0;
  virtual int current_size() const = 0;
};

// Enumerates declaration-consistent programs: canonical clauses built from
// the bias, combined into sets of at most max_clauses clauses whose body
// literal counts sum to the current size. Programs where one clause subsumes
// another, or where a recursive predicate lacks a base case, are skipped.
class Generator : public CandidateSource {
 public:
  Generator(DeclarationBias bias, SearchBounds bounds);

  GenResult next(const ConstraintStore& store) override;
  void advance_size() override;
  int current_size() const override { return size_; }

  // Canonical clauses with exactly k body literals, over all head predicates,
  // sorted by key.
  const std::vector<ClauseRef>& clauses_of_size(int k);

 private:
  struct Frame {
    std::size_t next = 0;
    int remaining = 0;
  };

  void build_clauses(const PredSym& head, int k, std::vector<ClauseRef>& out) const;
  void start_size();
  bool compatible(const ClauseRef& c) const;

  DeclarationBias bias_;
  SearchBounds bounds_;
  std::vector<PredSym> body_preds_;
  std::map<int, std::vector<ClauseRef>> by_size_;
  std::vector<ClauseRef> merged_;
  int merged_upto_ = 0;
  int size_ = 1;
  bool started_ = false;
  std::vector<ClauseRef> prefix_;
  std::vector<Frame> stack_;
};

// Explicit list of hypotheses, served in (size, key) order.
class FixedSpace : public CandidateSource {
 public:
  explicit FixedSpace(std::vector<Hypothesis> space);

  GenResult next(const ConstraintStore& store) override;
  void advance_size() override;
  int current_size() const override { return size_; }

 private:
  std::vector<Hypothesis> space_;
  std::size_t pos_ = 0;
  int size_ = 1;
  int max_size_ = 0;
};

}  // namespace noisylff
