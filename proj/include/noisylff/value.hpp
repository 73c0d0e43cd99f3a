#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace noisylff {

// Interned name. Two symbols are equal iff they point at the same string.
class Symbol {
 public:
  Symbol();
  explicit Symbol(std::string_view name);

  const std::string& str() const { return *name_; }
  bool operator==(const Symbol& o) const { return name_ == o.name_; }
  std::strong_ordering operator<=>(const Symbol& o) const;
  std::size_t hash() const { return std::hash<const void*>{}(name_); }

 private:
  const std::string* name_;
};

struct PredSym {
  Symbol name;
  int arity = 0;

  bool operator==(const PredSym&) const = default;
  std::strong_ordering operator<=>(const PredSym& o) const;
  std::string str() const;
  std::size_t hash() const;
  // Stable small id, assigned on first use; used for bitmask prefilters.
  std::uint32_t id() const;
};

class Value;

namespace detail {
struct ListNode;
}

// Ground object: integer, symbol, or list of values.
class Value {
 public:
  enum class Kind : std::uint8_t { Int, Sym, List };

  Value() : Value(std::int64_t{0}) {}
  explicit Value(std::int64_t i) : kind_(Kind::Int), int_(i) {}
  explicit Value(Symbol s) : kind_(Kind::Sym), sym_(s) {}
  static Value integer(std::int64_t i) { return Value(i); }
  static Value symbol(std::string_view s) { return Value(Symbol(s)); }
  static Value empty_list();
  static Value list(std::span<const Value> items);
  static Value cons(const Value& head, const Value& tail);  // tail must be a list

  Kind kind() const { return kind_; }
  bool is_int() const { return kind_ == Kind::Int; }
  bool is_sym() const { return kind_ == Kind::Sym; }
  bool is_list() const { return kind_ == Kind::List; }
  bool is_empty_list() const { return is_list() && !node_; }

  std::int64_t as_int() const { return int_; }
  Symbol as_sym() const { return sym_; }
  // List accessors; only valid on non-empty lists.
  const Value& head() const;
  Value tail() const;
  std::size_t length() const;
  std::vector<Value> items() const;

  bool operator==(const Value& o) const;
  std::strong_ordering operator<=>(const Value& o) const;
  std::size_t hash() const;
  std::string str() const;

 private:
  Kind kind_;
  std::int64_t int_ = 0;
  Symbol sym_;
  std::shared_ptr<const detail::ListNode> node_;
};

namespace detail {
struct ListNode {
  Value head;
  std::shared_ptr<const ListNode> tail;
  std::size_t length;
  std::size_t hash;
};
}  // namespace detail

inline std::size_t hash_combine(std::size_t seed, std::size_t v) {
  return seed ^ (v + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2));
}

struct ValueHash {
  std::size_t operator()(const Value& v) const { return v.hash(); }
};

struct ValuesHash {
  std::size_t operator()(const std::vector<Value>& vs) const {
    std::size_t h = vs.size();
    for (const auto& v : vs) h = hash_combine(h, v.hash());
    return h;
  }
};

struct PredSymHash {
  std::size_t operator()(const PredSym& p) const { return p.hash(); }
};

}  // namespace noisylff

template <>
struct std::hash<noisylff::Symbol> {
  std::size_t operator()(const noisylff::Symbol& s) const { return s.hash(); }
};
template <>
struct std::hash<noisylff::PredSym> {
  std::size_t operator()(const noisylff::PredSym& p) const { return p.hash(); }
};
template <>
struct std::hash<noisylff::Value> {
  std::size_t operator()(const noisylff::Value& v) const { return v.hash(); }
};
