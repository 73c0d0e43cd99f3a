#pragma once

#include <chrono>
#include <cstddef>
#include <limits>
#include <map>
#include <set>
#include <vector>

#include "noisylff/logic.hpp"

namespace noisylff {

enum class Direction : std::uint8_t { In, Out };

struct DeclarationBias {
  std::set<PredSym> head_preds;
  std::set<PredSym> body_preds;
  // Optional per-predicate argument types and directions.
  std::map<PredSym, std::vector<Symbol>> types;
  std::map<PredSym, std::vector<Direction>> directions;
};

struct SearchBounds {
  int max_vars = 6;
  int max_body_literals = 6;
  int max_clauses = 3;
  int max_total_literals = 0;  // 0 means max_body_literals * max_clauses
  std::size_t max_programs = std::numeric_limits<std::size_t>::max();
  long eval_step_limit = 100000;
  std::chrono::milliseconds wall_timeout{600000};

  int total_literals() const {
    return max_total_literals > 0 ? max_total_literals : max_body_literals * max_clauses;
  }
};

struct ExampleSet {
  std::vector<GroundAtom> pos;
  std::vector<GroundAtom> neg;
};

}  // namespace noisylff
