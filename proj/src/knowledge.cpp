#include "noisylff/knowledge.hpp"

#include <algorithm>
#include <array>
#include <stdexcept>

namespace noisylff {

namespace {

using Args = const Value* const*;

bool bound0(Args a) { return a[0] != nullptr; }
bool bound01(Args a) { return a[0] && a[1]; }
bool bound_either(Args a) { return a[0] || a[1]; }

bool is_nonempty_list(const Value* v) { return v->is_list() && !v->is_empty_list(); }

void emit1(std::vector<Value>& out, const Value& v) { out.push_back(v); }

void emit2(std::vector<Value>& out, const Value& a, const Value& b) {
  out.push_back(a);
  out.push_back(b);
}

void emit3(std::vector<Value>& out, const Value& a, const Value& b, const Value& c) {
  out.push_back(a);
  out.push_back(b);
  out.push_back(c);
}

template <bool (*Test)(const Value&)>
void unary(Args a, std::vector<Value>& out) {
  if (Test(*a[0])) emit1(out, *a[0]);
}

bool t_empty(const Value& v) { return v.is_empty_list(); }
bool t_even(const Value& v) { return v.is_int() && v.as_int() % 2 == 0; }
bool t_odd(const Value& v) { return v.is_int() && v.as_int() % 2 != 0; }
bool always(Args) { return true; }

// zero/1 and one/1 also generate their constant when called unbound.
template <int N>
void constant(Args a, std::vector<Value>& out) {
  if (!a[0] || (a[0]->is_int() && a[0]->as_int() == N)) emit1(out, Value(N));
}

void b_head(Args a, std::vector<Value>& out) {
  if (!is_nonempty_list(a[0])) return;
  const Value& h = a[0]->head();
  if (!a[1] || *a[1] == h) emit2(out, *a[0], h);
}

void b_tail(Args a, std::vector<Value>& out) {
  if (!is_nonempty_list(a[0])) return;
  Value t = a[0]->tail();
  if (!a[1] || *a[1] == t) emit2(out, *a[0], t);
}

void b_cons(Args a, std::vector<Value>& out) {
  if (!a[1]->is_list()) return;
  Value l = Value::cons(*a[0], *a[1]);
  if (!a[2] || *a[2] == l) emit3(out, *a[0], *a[1], l);
}

template <int Delta>
void b_step(Args a, std::vector<Value>& out) {
  if (a[0]) {
    if (!a[0]->is_int()) return;
    Value r(a[0]->as_int() + Delta);
    if (!a[1] || *a[1] == r) emit2(out, *a[0], r);
    return;
  }
  if (!a[1]->is_int()) return;
  emit2(out, Value(a[1]->as_int() - Delta), *a[1]);
}

void b_geq(Args a, std::vector<Value>& out) {
  if (a[0]->is_int() && a[1]->is_int() && a[0]->as_int() >= a[1]->as_int()) emit2(out, *a[0], *a[1]);
}

// member(List, Elem)
void b_member(Args a, std::vector<Value>& out) {
  if (!a[0]->is_list()) return;
  std::vector<Value> seen;
  for (const auto& v : a[0]->items()) {
    if (a[1] && !(*a[1] == v)) continue;
    if (std::find(seen.begin(), seen.end(), v) != seen.end()) continue;
    seen.push_back(v);
    emit2(out, *a[0], v);
  }
}

void b_append(Args a, std::vector<Value>& out) {
  if (!a[0]->is_list() || !a[1]->is_list()) return;
  Value r = *a[1];
  auto xs = a[0]->items();
  for (auto it = xs.rbegin(); it != xs.rend(); ++it) r = Value::cons(*it, r);
  if (!a[2] || *a[2] == r) emit3(out, *a[0], *a[1], r);
}

const std::vector<Builtin>& registry() {
  static const std::vector<Builtin> r = {
      {{Symbol("empty"), 1}, bound0, unary<t_empty>},
      {{Symbol("even"), 1}, bound0, unary<t_even>},
      {{Symbol("odd"), 1}, bound0, unary<t_odd>},
      {{Symbol("zero"), 1}, always, constant<0>},
      {{Symbol("one"), 1}, always, constant<1>},
      {{Symbol("head"), 2}, bound0, b_head},
      {{Symbol("tail"), 2}, bound0, b_tail},
      {{Symbol("cons"), 3}, bound01, b_cons},
      {{Symbol("increment"), 2}, bound_either, b_step<1>},
      {{Symbol("decrement"), 2}, bound_either, b_step<-1>},
      {{Symbol("geq"), 2}, bound01, b_geq},
      {{Symbol("member"), 2}, bound0, b_member},
      {{Symbol("append"), 3}, bound01, b_append},
  };
  return r;
}

}  // namespace

const Builtin* find_builtin(const PredSym& p) {
  for (const auto& b : registry())
    if (b.pred == p) return &b;
  return nullptr;
}

std::vector<PredSym> builtin_registry() {
  std::vector<PredSym> out;
  for (const auto& b : registry()) out.push_back(b.pred);
  return out;
}

BackgroundKnowledge::BackgroundKnowledge() : data_(std::make_shared<const Data>()) {}

BackgroundKnowledge::BackgroundKnowledge(std::vector<GroundAtom> facts, std::set<PredSym> builtins) {
  auto d = std::make_shared<Data>();
  for (const auto& b : builtins)
    if (!find_builtin(b)) throw std::invalid_argument("unknown builtin " + b.str());
  std::sort(facts.begin(), facts.end());
  facts.erase(std::unique(facts.begin(), facts.end()), facts.end());
  for (const auto& f : facts) {
    if (builtins.count(f.pred)) throw std::invalid_argument("fact uses builtin predicate " + f.pred.str());
    auto& t = d->tables[f.pred];
    t.arity = f.pred.arity;
    if (t.by_arg.size() != static_cast<std::size_t>(t.arity)) t.by_arg.resize(t.arity);
    auto row = static_cast<std::uint32_t>(t.n++);
    for (int i = 0; i < t.arity; ++i) {
      t.rows.push_back(f.args[i]);
      t.by_arg[i][f.args[i]].push_back(row);
    }
  }
  d->facts = std::move(facts);
  d->builtins = std::move(builtins);
  data_ = std::move(d);
}

const BackgroundKnowledge::Table* BackgroundKnowledge::table(const PredSym& p) const {
  auto it = data_->tables.find(p);
  return it == data_->tables.end() ? nullptr : &it->second;
}

bool BackgroundKnowledge::has_fact(const GroundAtom& a) const {
  return std::binary_search(data_->facts.begin(), data_->facts.end(), a);
}

}  // namespace noisylff
