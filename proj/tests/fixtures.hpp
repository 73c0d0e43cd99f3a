#pragma once

#include <string>
#include <vector>

#include "noisylff/engine.hpp"
#include "noisylff/parser.hpp"

namespace fixtures {

inline constexpr const char* kTrainsBk = R"(
has_car(t1,c1). short(c1). two_wheels(c1). roof_closed(c1).
has_car(t2,c2). short(c2). two_wheels(c2). jagged_roof(c2).
has_car(t2,c3). three_wheels(c3). roof_closed(c3).
has_car(t3,c4). roof_closed(c4). three_wheels(c4). short(c4).
has_car(t4,c5). has_load(c5,l1). circle(l1). two_wheels(c5).
)";

// Train t5 is labelled eastbound although it has no short car.
inline constexpr const char* kTrainsBkNoisy = R"(
has_car(t5,c6). two_wheels(c6). roof_closed(c6).
)";

inline constexpr const char* kTrainsBias = R"(
head_pred(eastbound,1).
body_pred(has_car,2). body_pred(long,1). body_pred(short,1). body_pred(two_wheels,1).
body_pred(three_wheels,1). body_pred(roof_closed,1). body_pred(has_load,2). body_pred(triangle,1).
body_pred(long,2). body_pred(three_wheels,2).
)";

inline const std::vector<std::string>& normal_space() {
  static const std::vector<std::string> s = {
      "eastbound(A) :- has_car(A,B),long(B).",
      "eastbound(A) :- has_car(A,B),long(B),two_wheels(B).",
      "eastbound(A) :- has_car(A,B),roof_closed(B).",
      "eastbound(A) :- has_car(A,B),short(B),two_wheels(B).",
      "eastbound(A) :- has_car(A,B),long(B),roof_closed(B).",
      "eastbound(A) :- has_car(A,B),roof_closed(B).\neastbound(A) :- has_car(A,B),short(B).",
      "eastbound(A) :- has_car(A,B),roof_closed(B).\neastbound(A) :- has_car(A,B),long(C,D),three_wheels(B).",
      "eastbound(B) :- has_car(A,B),short(B),three_wheels(B).\n"
      "eastbound(A) :- has_car(A,B),has_load(B,C),triangle(C).",
      "eastbound(A) :- has_car(A,B),long(B).\neastbound(A) :- has_car(A,B),short(B),three_wheels(D,B).\n"
      "eastbound(A) :- has_car(A,B),short(B),two_wheels(B).",
  };
  return s;
}

inline const std::vector<std::string>& noisy_space() {
  static const std::vector<std::string> s = {
      "eastbound(A) :- has_car(A,B),long(B).",
      "eastbound(A) :- has_car(A,B),long(B),two_wheels(B).",
      "eastbound(A) :- has_car(A,B),short(B).",
      "eastbound(A) :- has_car(A,B),short(B),two_wheels(B).",
      "eastbound(A) :- has_car(A,B),long(B),roof_closed(B).",
      "eastbound(A) :- has_car(A,B),roof_closed(B),three_wheels(B).\neastbound(A) :- has_car(A,B),short(B).",
      "eastbound(A) :- has_car(A,B),short(B),two_wheels(B).\n"
      "eastbound(A) :- has_car(A,B),roof_closed(B),two_wheels(B).",
      "eastbound(A) :- has_car(A,B),long(B).\neastbound(A) :- has_car(A,B),short(B),three_wheels(D,B).\n"
      "eastbound(A) :- has_car(A,B),short(B),two_wheels(B).",
  };
  return s;
}

inline std::vector<noisylff::Hypothesis> parse_space(const std::vector<std::string>& texts) {
  std::vector<noisylff::Hypothesis> out;
  for (const auto& t : texts) out.push_back(noisylff::parse_hypothesis(t));
  return out;
}

inline noisylff::LearningTask trains_task(bool noisy) {
  noisylff::LearningTask t;
  t.bias = noisylff::parse_bias(kTrainsBias).bias;
  t.bk = noisylff::parse_bk(std::string(kTrainsBk) + (noisy ? kTrainsBkNoisy : ""));
  t.examples = noisylff::parse_examples(noisy ? "pos(eastbound(t1)). pos(eastbound(t2)). pos(eastbound(t5)).\n"
                                                "neg(eastbound(t3)). neg(eastbound(t4))."
                                              : "pos(eastbound(t1)). pos(eastbound(t2)).\n"
                                                "neg(eastbound(t3)). neg(eastbound(t4)).");
  return t;
}

}  // namespace fixtures
