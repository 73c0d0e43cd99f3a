#include "noisylff/parser.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <map>
#include <optional>
#include <unordered_map>

namespace noisylff {

ParseError::ParseError(const std::string& msg, int line, int column)
    : std::runtime_error(std::to_string(line) + ":" + std::to_string(column) + ": " + msg),
      line_(line),
      column_(column) {}

namespace {

struct Pos {
  int line = 1;
  int col = 1;
};

// Generic term read from text before interpretation.
struct PTerm {
  enum class Kind { Var, Int, Name, Compound, List, Tuple } kind;
  std::string name;
  std::int64_t ival = 0;
  std::vector<PTerm> args;
  Pos pos;
};

struct Statement {
  PTerm head;
  std::vector<PTerm> body;
  bool is_rule = false;
  Pos pos;
};

enum class Tok { Name, Var, Int, LParen, RParen, LBrack, RBrack, Comma, Dot, Neck, Bar, End };

struct Token {
  Tok kind;
  std::string text;
  Pos pos;
};

class Lexer {
 public:
  explicit Lexer(std::string_view s) : s_(s) {}

  Token next() {
    skip();
    Token t{Tok::End, "", pos_};
    if (i_ >= s_.size()) return t;
    char c = s_[i_];
    if (std::islower(static_cast<unsigned char>(c))) {
      t.kind = Tok::Name;
      t.text = ident();
    } else if (std::isupper(static_cast<unsigned char>(c)) || c == '_') {
      t.kind = Tok::Var;
      t.text = ident();
    } else if (std::isdigit(static_cast<unsigned char>(c)) ||
               (c == '-' && i_ + 1 < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_ + 1])))) {
      t.kind = Tok::Int;
      t.text += c;
      advance();
      while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) {
        t.text += s_[i_];
        advance();
      }
    } else if (c == ':' && i_ + 1 < s_.size() && s_[i_ + 1] == '-') {
      t.kind = Tok::Neck;
      advance();
      advance();
    } else {
      switch (c) {
        case '(': t.kind = Tok::LParen; break;
        case ')': t.kind = Tok::RParen; break;
        case '[': t.kind = Tok::LBrack; break;
        case ']': t.kind = Tok::RBrack; break;
        case ',': t.kind = Tok::Comma; break;
        case '.': t.kind = Tok::Dot; break;
        case '|': t.kind = Tok::Bar; break;
        default:
          throw ParseError(std::string("unexpected character '") + c + "'", pos_.line, pos_.col);
      }
      t.text = c;
      advance();
    }
    return t;
  }

 private:
  void advance() {
    if (s_[i_] == '\n') {
      ++pos_.line;
      pos_.col = 1;
    } else {
      ++pos_.col;
    }
    ++i_;
  }

  void skip() {
    while (i_ < s_.size()) {
      if (std::isspace(static_cast<unsigned char>(s_[i_]))) {
        advance();
      } else if (s_[i_] == '%') {
        while (i_ < s_.size() && s_[i_] != '\n') advance();
      } else {
        break;
      }
    }
  }

  std::string ident() {
    std::string out;
    while (i_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[i_])) || s_[i_] == '_')) {
      out += s_[i_];
      advance();
    }
    return out;
  }

  std::string_view s_;
  std::size_t i_ = 0;
  Pos pos_;
};

class Reader {
 public:
  explicit Reader(std::string_view s) : lex_(s) { tok_ = lex_.next(); }

  std::vector<Statement> statements() {
    std::vector<Statement> out;
    while (tok_.kind != Tok::End) out.push_back(statement());
    return out;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, tok_.pos.line, tok_.pos.col); }

  void expect(Tok k, const char* what) {
    if (tok_.kind != k) fail(std::string("expected ") + what + (tok_.text.empty() ? "" : " near '" + tok_.text + "'"));
    tok_ = lex_.next();
  }

  Statement statement() {
    Statement st;
    st.pos = tok_.pos;
    st.head = term();
    if (tok_.kind == Tok::Neck) {
      st.is_rule = true;
      tok_ = lex_.next();
      if (tok_.kind != Tok::Dot) {
        st.body.push_back(term());
        while (tok_.kind == Tok::Comma) {
          tok_ = lex_.next();
          st.body.push_back(term());
        }
      }
    }
    expect(Tok::Dot, "'.'");
    return st;
  }

  std::vector<PTerm> arglist(Tok close, const char* what) {
    std::vector<PTerm> args;
    if (tok_.kind == close) fail("empty argument list");
    args.push_back(term());
    while (tok_.kind == Tok::Comma) {
      tok_ = lex_.next();
      args.push_back(term());
    }
    expect(close, what);
    return args;
  }

  PTerm term() {
    PTerm t;
    t.pos = tok_.pos;
    switch (tok_.kind) {
      case Tok::Var:
        t.kind = PTerm::Kind::Var;
        t.name = tok_.text;
        tok_ = lex_.next();
        return t;
      case Tok::Int: {
        t.kind = PTerm::Kind::Int;
        auto [p, ec] = std::from_chars(tok_.text.data(), tok_.text.data() + tok_.text.size(), t.ival);
        if (ec != std::errc()) fail("integer out of range");
        tok_ = lex_.next();
        return t;
      }
      case Tok::Name:
        t.name = tok_.text;
        tok_ = lex_.next();
        if (tok_.kind == Tok::LParen) {
          tok_ = lex_.next();
          t.kind = PTerm::Kind::Compound;
          t.args = arglist(Tok::RParen, "')'");
        } else {
          t.kind = PTerm::Kind::Name;
        }
        return t;
      case Tok::LBrack:
        t.kind = PTerm::Kind::List;
        tok_ = lex_.next();
        if (tok_.kind == Tok::RBrack) {
          tok_ = lex_.next();
          return t;
        }
        t.args = arglist(Tok::RBrack, "']'");
        return t;
      case Tok::LParen:
        t.kind = PTerm::Kind::Tuple;
        tok_ = lex_.next();
        t.args = arglist(Tok::RParen, "')'");
        return t;
      default:
        fail(tok_.kind == Tok::End ? "unexpected end of input" : "unexpected '" + tok_.text + "'");
    }
  }

  Lexer lex_;
  Token tok_;
};

[[noreturn]] void fail_at(const Pos& p, const std::string& msg) { throw ParseError(msg, p.line, p.col); }

Value to_value(const PTerm& t) {
  switch (t.kind) {
    case PTerm::Kind::Int:
      return Value(t.ival);
    case PTerm::Kind::Name:
      return Value::symbol(t.name);
    case PTerm::Kind::List: {
      std::vector<Value> items;
      for (const auto& a : t.args) items.push_back(to_value(a));
      return Value::list(items);
    }
    case PTerm::Kind::Var:
      fail_at(t.pos, "non-ground term " + t.name);
    default:
      fail_at(t.pos, "compound terms are not supported as arguments");
  }
}

GroundAtom to_ground_atom(const PTerm& t) {
  if (t.kind == PTerm::Kind::Name) return GroundAtom{{Symbol(t.name), 0}, {}};
  if (t.kind != PTerm::Kind::Compound) fail_at(t.pos, "expected an atom");
  GroundAtom a{{Symbol(t.name), static_cast<int>(t.args.size())}, {}};
  for (const auto& arg : t.args) a.args.push_back(to_value(arg));
  return a;
}

Atom to_atom(const PTerm& t, std::unordered_map<std::string, int>& vars) {
  if (t.kind == PTerm::Kind::Name) return Atom{{Symbol(t.name), 0}, {}};
  if (t.kind != PTerm::Kind::Compound) fail_at(t.pos, "expected an atom");
  Atom a{{Symbol(t.name), static_cast<int>(t.args.size())}, {}};
  for (const auto& arg : t.args) {
    if (arg.kind == PTerm::Kind::Var) {
      int id;
      if (arg.name == "_") {
        id = static_cast<int>(vars.size());
        vars.emplace("_#" + std::to_string(id), id);
      } else {
        id = vars.emplace(arg.name, static_cast<int>(vars.size())).first->second;
      }
      a.args.push_back(Term::var(id));
    } else {
      a.args.push_back(Term::constant(to_value(arg)));
    }
  }
  return a;
}

const PTerm& expect_fact(const Statement& st) {
  if (st.is_rule) fail_at(st.pos, "rules are not allowed here");
  return st.head;
}

std::int64_t int_arg(const PTerm& t) {
  if (t.kind != PTerm::Kind::Int) fail_at(t.pos, "expected an integer");
  return t.ival;
}

std::string name_arg(const PTerm& t) {
  if (t.kind != PTerm::Kind::Name) fail_at(t.pos, "expected a name");
  return t.name;
}

int positive(const PTerm& t) {
  auto v = int_arg(t);
  if (v <= 0 || v > 1'000'000) fail_at(t.pos, "expected a positive integer");
  return static_cast<int>(v);
}

std::vector<std::string> name_tuple(const PTerm& t) {
  if (t.kind == PTerm::Kind::Name) return {t.name};
  if (t.kind != PTerm::Kind::Tuple) fail_at(t.pos, "expected a tuple of names");
  std::vector<std::string> out;
  for (const auto& a : t.args) out.push_back(name_arg(a));
  return out;
}

PredSym pred_decl(const PTerm& d) {
  auto a = int_arg(d.args[1]);
  if (a < 0 || a > 64) fail_at(d.args[1].pos, "bad arity");
  return PredSym{Symbol(name_arg(d.args[0])), static_cast<int>(a)};
}

}  // namespace

ParsedBias parse_bias(std::string_view text, const std::set<PredSym>* builtins) {
  ParsedBias out;
  auto& b = out.bias;
  auto& bounds = out.bounds;
  std::map<std::string, int> set_bounds;

  auto set_bound = [&](const PTerm& d, int& field) {
    int v = positive(d.args[0]);
    auto [it, fresh] = set_bounds.emplace(d.name, v);
    if (!fresh && it->second != v) fail_at(d.pos, "conflicting " + d.name + " declarations");
    field = v;
  };

  for (const auto& st : Reader(text).statements()) {
    const PTerm& d = expect_fact(st);
    if (d.kind != PTerm::Kind::Compound) fail_at(d.pos, "unknown directive " + d.name);
    const auto n = d.args.size();
    if ((d.name == "head_pred" || d.name == "body_pred") && n == 2) {
      auto p = pred_decl(d);
      (d.name == "head_pred" ? b.head_preds : b.body_preds).insert(p);
    } else if (d.name == "max_vars" && n == 1) {
      set_bound(d, bounds.max_vars);
    } else if (d.name == "max_body" && n == 1) {
      set_bound(d, bounds.max_body_literals);
    } else if (d.name == "max_clauses" && n == 1) {
      set_bound(d, bounds.max_clauses);
    } else if (d.name == "max_literals" && n == 1) {
      set_bound(d, bounds.max_total_literals);
    } else if (d.name == "max_programs" && n == 1) {
      int v = 0;
      set_bound(d, v);
      bounds.max_programs = static_cast<std::size_t>(v);
    } else if (d.name == "type" && n == 2) {
      auto names = name_tuple(d.args[1]);
      PredSym p{Symbol(name_arg(d.args[0])), static_cast<int>(names.size())};
      std::vector<Symbol> ts;
      for (const auto& s : names) ts.emplace_back(s);
      auto [it, fresh] = b.types.emplace(p, ts);
      if (!fresh && it->second != ts) fail_at(d.pos, "conflicting type declarations for " + p.str());
    } else if (d.name == "direction" && n == 2) {
      auto names = name_tuple(d.args[1]);
      PredSym p{Symbol(name_arg(d.args[0])), static_cast<int>(names.size())};
      std::vector<Direction> ds;
      for (const auto& s : names) {
        if (s != "in" && s != "out") fail_at(d.args[1].pos, "direction must be in or out");
        ds.push_back(s == "in" ? Direction::In : Direction::Out);
      }
      auto [it, fresh] = b.directions.emplace(p, ds);
      if (!fresh && it->second != ds) fail_at(d.pos, "conflicting direction declarations for " + p.str());
    } else {
      fail_at(d.pos, "unknown directive " + d.name + "/" + std::to_string(n));
    }
  }

  if (b.head_preds.empty()) throw ParseError("no head declaration", 1, 1);
  if (builtins)
    for (const auto& p : b.head_preds)
      if (builtins->count(p)) throw ParseError("head predicate " + p.str() + " is also a builtin", 1, 1);
  auto declared = [&](const PredSym& p) { return b.head_preds.count(p) || b.body_preds.count(p); };
  for (const auto& [p, _] : b.types)
    if (!declared(p)) throw ParseError("type declared for undeclared predicate " + p.str(), 1, 1);
  for (const auto& [p, _] : b.directions)
    if (!declared(p)) throw ParseError("direction declared for undeclared predicate " + p.str(), 1, 1);
  return out;
}

ExampleSet parse_examples(std::string_view text) {
  ExampleSet ex;
  std::optional<PredSym> target;
  std::map<GroundAtom, bool> seen;
  for (const auto& st : Reader(text).statements()) {
    const PTerm& d = expect_fact(st);
    if (d.kind != PTerm::Kind::Compound || d.args.size() != 1 || (d.name != "pos" && d.name != "neg"))
      fail_at(d.pos, "expected pos(ATOM) or neg(ATOM)");
    GroundAtom a = to_ground_atom(d.args[0]);
    if (target && *target != a.pred) fail_at(d.pos, "examples use more than one predicate");
    target = a.pred;
    bool positive = d.name == "pos";
    auto [it, fresh] = seen.emplace(a, positive);
    if (!fresh) {
      if (it->second != positive) fail_at(d.pos, "example is both positive and negative: " + a.str());
      continue;
    }
    (positive ? ex.pos : ex.neg).push_back(std::move(a));
  }
  return ex;
}

BackgroundKnowledge parse_bk(std::string_view text) {
  std::vector<GroundAtom> facts;
  std::set<PredSym> builtins;
  for (const auto& st : Reader(text).statements()) {
    const PTerm& d = expect_fact(st);
    if (d.kind == PTerm::Kind::Compound && d.name == "builtin" && d.args.size() == 2) {
      auto p = pred_decl(d);
      if (!find_builtin(p)) fail_at(d.pos, "unknown builtin " + p.str());
      builtins.insert(p);
      continue;
    }
    facts.push_back(to_ground_atom(d));
  }
  try {
    return BackgroundKnowledge(std::move(facts), std::move(builtins));
  } catch (const std::invalid_argument& e) {
    throw ParseError(e.what(), 1, 1);
  }
}

Hypothesis parse_hypothesis(std::string_view text) {
  std::vector<ClauseRef> clauses;
  for (const auto& st : Reader(text).statements()) {
    std::unordered_map<std::string, int> vars;
    Atom head = to_atom(st.head, vars);
    std::vector<Atom> body;
    for (const auto& b : st.body) body.push_back(to_atom(b, vars));
    try {
      clauses.push_back(make_clause(std::move(head), std::move(body)));
    } catch (const std::invalid_argument& e) {
      fail_at(st.pos, e.what());
    }
  }
  return Hypothesis(std::move(clauses));
}

GroundAtom parse_ground_atom(std::string_view text) {
  std::string s(text);
  s += '.';
  auto sts = Reader(s).statements();
  if (sts.size() != 1) throw ParseError("expected a single atom", 1, 1);
  return to_ground_atom(expect_fact(sts[0]));
}

std::string print_hypothesis(const Hypothesis& h) { return h.str(); }

std::string print_examples(const ExampleSet& ex) {
  std::string s;
  for (const auto& a : ex.pos) s += "pos(" + a.str() + ").\n";
  for (const auto& a : ex.neg) s += "neg(" + a.str() + ").\n";
  return s;
}

}  // namespace noisylff
