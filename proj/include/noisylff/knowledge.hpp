#pragma once

#include <memory>
#include <set>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "noisylff/logic.hpp"

namespace noisylff {

// Built-in relation. Arguments are passed as pointers; nullptr marks an unbound
// position. `call` appends one arity-sized row to `out` per solution.
struct Builtin {
  PredSym pred;
  bool (*callable)(const Value* const* args);
  void (*call)(const Value* const* args, std::vector<Value>& out);
};

const Builtin* find_builtin(const PredSym& p);
std::vector<PredSym> builtin_registry();

// Ground facts indexed by predicate and argument position, plus the enabled
// built-ins. Copies share the index.
class BackgroundKnowledge {
 public:
  struct Table {
    int arity = 0;
    std::vector<Value> rows;  // row-major, arity values per fact
    std::vector<std::unordered_map<Value, std::vector<std::uint32_t>, ValueHash>> by_arg;
    std::size_t n = 0;
  };

  BackgroundKnowledge();
  // Throws std::invalid_argument if a builtin is unknown or shares a predicate with a fact.
  BackgroundKnowledge(std::vector<GroundAtom> facts, std::set<PredSym> builtins);

  const std::vector<GroundAtom>& facts() const { return data_->facts; }
  const std::set<PredSym>& builtins() const { return data_->builtins; }
  const Table* table(const PredSym& p) const;
  bool has_fact(const GroundAtom& a) const;
  bool is_builtin(const PredSym& p) const { return data_->builtins.count(p) > 0; }

 private:
  struct Data {
    std::vector<GroundAtom> facts;
    std::set<PredSym> builtins;
    std::unordered_map<PredSym, Table, PredSymHash> tables;
  };
  std::shared_ptr<const Data> data_;
};

}  // namespace noisylff
