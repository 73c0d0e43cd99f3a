#pragma once

#include <set>
#include <stdexcept>
#include <string>
#include <string_view>

#include "noisylff/knowledge.hpp"
#include "noisylff/logic.hpp"
#include "noisylff/task.hpp"

namespace noisylff {

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& msg, int line, int column);
  int line() const { return line_; }
  int column() const { return column_; }

 private:
  int line_;
  int column_;
};

struct ParsedBias {
  DeclarationBias bias;
  SearchBounds bounds;
};

// Bias directives: head_pred/2, body_pred/2, max_vars/1, max_body/1,
// max_clauses/1, max_literals/1, max_programs/1, type(NAME,(t1,...)),
// direction(NAME,(in|out,...)). `builtins`, when given, are the enabled
// built-ins of the task's BK; a head predicate among them is an error.
ParsedBias parse_bias(std::string_view text, const std::set<PredSym>* builtins = nullptr);

ExampleSet parse_examples(std::string_view text);

BackgroundKnowledge parse_bk(std::string_view text);

// Clauses in `head :- body.` form; variables are clause-local.
Hypothesis parse_hypothesis(std::string_view text);

GroundAtom parse_ground_atom(std::string_view text);

std::string print_hypothesis(const Hypothesis& h);
std::string print_examples(const ExampleSet& ex);

}  // namespace noisylff
