#include <gtest/gtest.h>

#include <random>

#include "noisylff/parser.hpp"
#include "oracles.hpp"

using namespace noisylff;

TEST(Parser, HypothesisRoundTripsOnRandomPrograms) {
  std::mt19937_64 rng(11);
  const PredSym head{Symbol("target"), 2};
  const std::vector<PredSym> preds = {{Symbol("edge"), 2}, {Symbol("odd"), 1}, {Symbol("r"), 3}, head};
  for (int i = 0; i < 500; ++i) {
    Hypothesis h = oracle::random_hypothesis(rng, head, preds, 6, 4, 3);
    Hypothesis back = parse_hypothesis(print_hypothesis(h));
    ASSERT_EQ(back, h) << print_hypothesis(h);
    ASSERT_EQ(print_hypothesis(back), print_hypothesis(h));
  }
}

TEST(Parser, HypothesisVariablesAreClauseLocal) {
  Hypothesis h = parse_hypothesis("f(X) :- q(X).\nf(Y) :- p(Y,Z), q(Z).");
  EXPECT_EQ(h.clauses().size(), 2u);
  EXPECT_EQ(h.str(), "f(A) :- p(A,B),q(B).\nf(A) :- q(A).");
}

TEST(Parser, GroundAtomsWithListsAndIntegers) {
  GroundAtom a = parse_ground_atom("last([1,2,3],3)");
  EXPECT_EQ(a.pred.arity, 2);
  EXPECT_EQ(a.args[0].str(), "[1,2,3]");
  EXPECT_EQ(a.args[1], Value(3));
  EXPECT_EQ(parse_ground_atom("e([])").args[0], Value::empty_list());
}

TEST(Parser, BiasDirectives) {
  auto pb = parse_bias(
      "% comment\n"
      "head_pred(f,2). body_pred(p,2). body_pred(f,2).\n"
      "type(f,(list,int)). direction(f,(in,out)).\n"
      "max_vars(4). max_body(3). max_clauses(2). max_literals(5). max_programs(99).\n");
  EXPECT_EQ(pb.bias.head_preds.size(), 1u);
  EXPECT_EQ(pb.bias.body_preds.size(), 2u);
  EXPECT_EQ(pb.bounds.max_vars, 4);
  EXPECT_EQ(pb.bounds.max_body_literals, 3);
  EXPECT_EQ(pb.bounds.max_clauses, 2);
  EXPECT_EQ(pb.bounds.total_literals(), 5);
  EXPECT_EQ(pb.bounds.max_programs, 99u);
  const PredSym f{Symbol("f"), 2};
  ASSERT_TRUE(pb.bias.directions.count(f));
  EXPECT_EQ(pb.bias.directions.at(f)[1], Direction::Out);
  EXPECT_EQ(pb.bias.types.at(f)[0], Symbol("list"));
}

TEST(Parser, BiasErrors) {
  EXPECT_THROW(parse_bias("body_pred(p,2)."), ParseError);
  EXPECT_THROW(parse_bias("head_pred(f,1). max_vars(3). max_vars(4)."), ParseError);
  EXPECT_THROW(parse_bias("head_pred(f,1). frobnicate(3)."), ParseError);
  EXPECT_THROW(parse_bias("head_pred(f,1). type(g,(x))."), ParseError);
  EXPECT_THROW(parse_bias("head_pred(f,1). direction(f,(sideways))."), ParseError);
  const std::set<PredSym> builtins{{Symbol("head"), 2}};
  EXPECT_THROW(parse_bias("head_pred(head,2).", &builtins), ParseError);
  EXPECT_NO_THROW(parse_bias("head_pred(head,2)."));
}

TEST(Parser, ErrorPositions) {
  try {
    parse_bias("head_pred(f,1).\nbody_pred(p,2)\nbody_pred(q,1).");
    FAIL() << "expected a parse error";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 3);
    EXPECT_GE(e.column(), 1);
  }
}

TEST(Parser, Examples) {
  ExampleSet ex = parse_examples("pos(f(a)). neg(f(b)).\npos(f(c)).");
  EXPECT_EQ(ex.pos.size(), 2u);
  EXPECT_EQ(ex.neg.size(), 1u);
  EXPECT_EQ(parse_examples(print_examples(ex)).pos, ex.pos);
  EXPECT_THROW(parse_examples("pos(f(X))."), ParseError);
  EXPECT_THROW(parse_examples("pos(f(a)). neg(f(a))."), ParseError);
  EXPECT_THROW(parse_examples("pos(f(a)). neg(g(a))."), ParseError);
  EXPECT_THROW(parse_examples("maybe(f(a))."), ParseError);
}

TEST(Parser, BackgroundKnowledge) {
  BackgroundKnowledge bk = parse_bk("edge(a,b). edge(b,c).\nbuiltin(head,2). builtin(tail,2).");
  EXPECT_EQ(bk.facts().size(), 2u);
  EXPECT_EQ(bk.builtins().size(), 2u);
  EXPECT_TRUE(bk.has_fact(parse_ground_atom("edge(a,b)")));
  EXPECT_FALSE(bk.has_fact(parse_ground_atom("edge(a,c)")));
  EXPECT_THROW(parse_bk("builtin(frob,2)."), ParseError);
  EXPECT_THROW(parse_bk("edge(a,X)."), ParseError);
  EXPECT_THROW(parse_bk("head([1],1). builtin(head,2)."), ParseError);
}
