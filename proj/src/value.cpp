#include "noisylff/value.hpp"

#include <mutex>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>

namespace noisylff {

namespace {

struct InternTable {
  std::mutex mu;
  std::unordered_set<std::string> names;
  std::unordered_map<PredSym, std::uint32_t, PredSymHash> pred_ids;
};

InternTable& table() {
  static InternTable* t = new InternTable();
  return *t;
}

const std::string* intern(std::string_view name) {
  auto& t = table();
  std::lock_guard lock(t.mu);
  return &*t.names.emplace(name).first;
}

}  // namespace

Symbol::Symbol() : name_(intern("")) {}

Symbol::Symbol(std::string_view name) : name_(intern(name)) {}

std::strong_ordering Symbol::operator<=>(const Symbol& o) const {
  if (name_ == o.name_) return std::strong_ordering::equal;
  int c = name_->compare(*o.name_);
  return c < 0 ? std::strong_ordering::less : std::strong_ordering::greater;
}

std::strong_ordering PredSym::operator<=>(const PredSym& o) const {
  if (auto c = name <=> o.name; c != 0) return c;
  return arity <=> o.arity;
}

std::string PredSym::str() const { return name.str() + "/" + std::to_string(arity); }

std::size_t PredSym::hash() const {
  return hash_combine(name.hash(), static_cast<std::size_t>(arity));
}

std::uint32_t PredSym::id() const {
  auto& t = table();
  std::lock_guard lock(t.mu);
  auto [it, _] = t.pred_ids.emplace(*this, static_cast<std::uint32_t>(t.pred_ids.size()));
  return it->second;
}

Value Value::empty_list() {
  Value v;
  v.kind_ = Kind::List;
  return v;
}

Value Value::cons(const Value& head, const Value& tail) {
  if (!tail.is_list()) throw std::invalid_argument("cons: tail is not a list");
  std::size_t len = tail.node_ ? tail.node_->length + 1 : 1;
  std::size_t h = hash_combine(tail.hash(), head.hash());
  Value v;
  v.kind_ = Kind::List;
  v.node_ = std::make_shared<const detail::ListNode>(detail::ListNode{head, tail.node_, len, h});
  return v;
}

Value Value::list(std::span<const Value> items) {
  Value v = empty_list();
  for (auto it = items.rbegin(); it != items.rend(); ++it) v = cons(*it, v);
  return v;
}

const Value& Value::head() const { return node_->head; }

Value Value::tail() const {
  Value v = empty_list();
  v.node_ = node_->tail;
  return v;
}

std::size_t Value::length() const { return node_ ? node_->length : 0; }

std::vector<Value> Value::items() const {
  std::vector<Value> out;
  for (auto n = node_.get(); n; n = n->tail.get()) out.push_back(n->head);
  return out;
}

bool Value::operator==(const Value& o) const {
  if (kind_ != o.kind_) return false;
  switch (kind_) {
    case Kind::Int:
      return int_ == o.int_;
    case Kind::Sym:
      return sym_ == o.sym_;
    case Kind::List:
      break;
  }
  const detail::ListNode* a = node_.get();
  const detail::ListNode* b = o.node_.get();
  while (a && b) {
    if (a == b) return true;
    if (a->length != b->length || a->hash != b->hash || !(a->head == b->head)) return false;
    a = a->tail.get();
    b = b->tail.get();
  }
  return a == b;
}

std::strong_ordering Value::operator<=>(const Value& o) const {
  if (kind_ != o.kind_) return kind_ <=> o.kind_;
  switch (kind_) {
    case Kind::Int:
      return int_ <=> o.int_;
    case Kind::Sym:
      return sym_ <=> o.sym_;
    case Kind::List:
      break;
  }
  const detail::ListNode* a = node_.get();
  const detail::ListNode* b = o.node_.get();
  while (a && b) {
    if (a == b) return std::strong_ordering::equal;
    if (auto c = a->head <=> b->head; c != 0) return c;
    a = a->tail.get();
    b = b->tail.get();
  }
  if (a) return std::strong_ordering::greater;
  if (b) return std::strong_ordering::less;
  return std::strong_ordering::equal;
}

std::size_t Value::hash() const {
  switch (kind_) {
    case Kind::Int:
      return std::hash<std::int64_t>{}(int_);
    case Kind::Sym:
      return sym_.hash();
    case Kind::List:
      break;
  }
  return node_ ? node_->hash : 0x51ed27;
}

std::string Value::str() const {
  switch (kind_) {
    case Kind::Int:
      return std::to_string(int_);
    case Kind::Sym:
      return sym_.str();
    case Kind::List:
      break;
  }
  std::string s = "[";
  for (auto n = node_.get(); n; n = n->tail.get()) {
    if (n != node_.get()) s += ',';
    s += n->head.str();
  }
  return s + "]";
}

}  // namespace noisylff
