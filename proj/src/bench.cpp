#include "noisylff/bench.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <ostream>
#include <random>
#include <set>
#include <sstream>
#include <stdexcept>

#include "noisylff/parser.hpp"

namespace noisylff {

namespace {

using Rng = std::mt19937_64;

int uniform(Rng& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }
bool coin(Rng& rng, double p) { return std::uniform_real_distribution<double>(0.0, 1.0)(rng) < p; }

GroundAtom atom(const std::string& pred, std::vector<Value> args) {
  return GroundAtom{PredSym{Symbol(pred), static_cast<int>(args.size())}, std::move(args)};
}

// Samples distinct atoms from `draw` until `n` have been collected.
template <typename Draw>
std::vector<GroundAtom> distinct(int n, std::set<GroundAtom>& used, Draw&& draw) {
  std::vector<GroundAtom> out;
  int misses = 0;
  while (static_cast<int>(out.size()) < n) {
    GroundAtom a = draw();
    if (used.insert(a).second) {
      out.push_back(std::move(a));
      misses = 0;
    } else if (++misses > 100000) {
      throw std::runtime_error("could not sample enough distinct examples");
    }
  }
  return out;
}

// ---- trains ----------------------------------------------------------------

constexpr const char* kTrainsBias = R"(
head_pred(eastbound,1).
body_pred(has_car,2). body_pred(has_load,2).
body_pred(short,1). body_pred(long,1). body_pred(two_wheels,1). body_pred(three_wheels,1).
body_pred(roof_open,1). body_pred(roof_closed,1).
body_pred(circle,1). body_pred(triangle,1). body_pred(rectangle,1).
type(eastbound,(train)). type(has_car,(train,car)). type(has_load,(car,load)).
type(short,(car)). type(long,(car)). type(two_wheels,(car)). type(three_wheels,(car)).
type(roof_open,(car)). type(roof_closed,(car)).
type(circle,(load)). type(triangle,(load)). type(rectangle,(load)).
direction(eastbound,(in)). direction(has_car,(in,out)). direction(has_load,(in,out)).
direction(short,(in)). direction(long,(in)). direction(two_wheels,(in)). direction(three_wheels,(in)).
direction(roof_open,(in)). direction(roof_closed,(in)).
direction(circle,(in)). direction(triangle,(in)). direction(rectangle,(in)).
max_vars(3). max_body(5). max_clauses(1).
)";

void add_train(std::vector<GroundAtom>& facts, int id, Rng& rng) {
  const Value train(Symbol("t" + std::to_string(id)));
  const int cars = uniform(rng, 1, 4);
  for (int c = 0; c < cars; ++c) {
    const Value car(Symbol("c" + std::to_string(id) + "_" + std::to_string(c)));
    facts.push_back(atom("has_car", {train, car}));
    facts.push_back(atom(coin(rng, 0.5) ? "long" : "short", {car}));
    facts.push_back(atom(coin(rng, 0.3) ? "three_wheels" : "two_wheels", {car}));
    facts.push_back(atom(coin(rng, 0.5) ? "roof_closed" : "roof_open", {car}));
    const int loads = uniform(rng, 0, 3);
    for (int l = 0; l < loads; ++l) {
      const Value load(Symbol("l" + std::to_string(id) + "_" + std::to_string(c) + "_" + std::to_string(l)));
      static const char* shapes[] = {"circle", "triangle", "rectangle"};
      facts.push_back(atom("has_load", {car, load}));
      facts.push_back(atom(shapes[uniform(rng, 0, 2)], {load}));
    }
  }
}

// ---- lists -----------------------------------------------------------------

struct ListTaskDef {
  std::string bias;
  std::set<std::string> builtins;
};

constexpr const char* kListBounds = "max_vars(5). max_body(5). max_clauses(2).\n";

const std::map<std::string, ListTaskDef>& list_defs() {
  static const std::map<std::string, ListTaskDef> defs = {
      {"addhead",
       {"head_pred(addhead,2). type(addhead,(list,list)). direction(addhead,(in,out)).\n"
        "body_pred(head,2). body_pred(tail,2). body_pred(cons,3).\n",
        {"head", "tail", "cons"}}},
      {"droplast",
       {"head_pred(droplast,2). body_pred(droplast,2). type(droplast,(list,list)). direction(droplast,(in,out)).\n"
        "body_pred(head,2). body_pred(tail,2). body_pred(empty,1). body_pred(cons,3).\n",
        {"head", "tail", "empty", "cons"}}},
      {"evens",
       {"head_pred(evens,1). body_pred(evens,1). type(evens,(list)). direction(evens,(in)).\n"
        "body_pred(head,2). body_pred(tail,2). body_pred(empty,1). body_pred(even,1). body_pred(odd,1).\n",
        {"head", "tail", "empty", "even", "odd"}}},
      {"finddup",
       {"head_pred(finddup,2). body_pred(finddup,2). type(finddup,(list,int)). direction(finddup,(in,out)).\n"
        "body_pred(head,2). body_pred(tail,2). body_pred(member,2).\n",
        {"head", "tail", "member"}}},
      {"last",
       {"head_pred(last,2). body_pred(last,2). type(last,(list,int)). direction(last,(in,out)).\n"
        "body_pred(head,2). body_pred(tail,2). body_pred(empty,1).\n",
        {"head", "tail", "empty"}}},
      {"len",
       {"head_pred(len,2). body_pred(len,2). type(len,(list,int)). direction(len,(in,out)).\n"
        "body_pred(tail,2). body_pred(empty,1). body_pred(zero,1). body_pred(increment,2).\n",
        {"tail", "empty", "zero", "increment"}}},
      {"member",
       {"head_pred(member,2). body_pred(member,2). type(member,(list,int)). direction(member,(in,out)).\n"
        "body_pred(head,2). body_pred(tail,2). body_pred(empty,1).\n",
        {"head", "tail", "empty"}}},
      {"sorted",
       {"head_pred(sorted,1). body_pred(sorted,1). type(sorted,(list)). direction(sorted,(in)).\n"
        "body_pred(head,2). body_pred(tail,2). body_pred(empty,1). body_pred(geq,2).\n",
        {"head", "tail", "empty", "geq"}}},
      {"threesame",
       {"head_pred(threesame,1). type(threesame,(list)). direction(threesame,(in)).\n"
        "body_pred(head,2). body_pred(tail,2). body_pred(empty,1).\n",
        {"head", "tail", "empty"}}},
  };
  return defs;
}

// Types and directions shared by the list built-ins.
constexpr const char* kBuiltinDecls = R"(
type(head,(list,int)). direction(head,(in,out)).
type(tail,(list,list)). direction(tail,(in,out)).
type(empty,(list)). direction(empty,(in)).
type(even,(int)). direction(even,(in)).
type(odd,(int)). direction(odd,(in)).
type(zero,(int)). direction(zero,(out)).
type(increment,(int,int)). direction(increment,(in,out)).
type(cons,(int,list,list)). direction(cons,(in,in,out)).
type(member,(list,int)). direction(member,(in,out)).
type(geq,(int,int)). direction(geq,(in,in)).
)";

std::string builtin_decls_for(const std::set<std::string>& used) {
  std::istringstream in(kBuiltinDecls);
  std::string line, out;
  while (std::getline(in, line)) {
    auto open = line.find('(');
    auto comma = line.find(',');
    if (open == std::string::npos || comma == std::string::npos) continue;
    if (used.count(line.substr(open + 1, comma - open - 1))) out += line + "\n";
  }
  return out;
}

Value make_list(const std::vector<std::int64_t>& xs) {
  std::vector<Value> vs;
  for (auto x : xs) vs.emplace_back(x);
  return Value::list(vs);
}

std::vector<std::int64_t> ints(const Value& l) {
  std::vector<std::int64_t> out;
  for (const auto& v : l.items()) out.push_back(v.as_int());
  return out;
}

std::vector<std::int64_t> random_list(Rng& rng, int lo, int hi) {
  std::vector<std::int64_t> xs(uniform(rng, lo, hi));
  for (auto& x : xs) x = uniform(rng, 1, 100);
  return xs;
}

bool has_dup(const std::vector<std::int64_t>& xs, std::int64_t e) { return std::count(xs.begin(), xs.end(), e) >= 2; }

std::int64_t odd_value(Rng& rng) { return 2 * uniform(rng, 0, 49) + 1; }
std::int64_t even_value(Rng& rng) { return 2 * uniform(rng, 1, 50); }

GroundAtom draw_positive(const std::string& t, Rng& rng) {
  if (t == "member") {
    auto xs = random_list(rng, 1, 10);
    return atom(t, {make_list(xs), Value(xs[uniform(rng, 0, static_cast<int>(xs.size()) - 1)])});
  }
  if (t == "last") {
    auto xs = random_list(rng, 1, 10);
    return atom(t, {make_list(xs), Value(xs.back())});
  }
  if (t == "len") {
    auto xs = random_list(rng, 0, 10);
    return atom(t, {make_list(xs), Value(static_cast<std::int64_t>(xs.size()))});
  }
  if (t == "evens") {
    std::vector<std::int64_t> xs(uniform(rng, 0, 10));
    for (auto& x : xs) x = even_value(rng);
    return atom(t, {make_list(xs)});
  }
  if (t == "threesame") {
    auto xs = random_list(rng, 3, 10);
    xs[1] = xs[2] = xs[0];
    return atom(t, {make_list(xs)});
  }
  if (t == "finddup") {
    auto xs = random_list(rng, 2, 10);
    const int i = uniform(rng, 0, static_cast<int>(xs.size()) - 1);
    int j = uniform(rng, 0, static_cast<int>(xs.size()) - 2);
    if (j >= i) ++j;
    xs[j] = xs[i];
    return atom(t, {make_list(xs), Value(xs[i])});
  }
  if (t == "addhead") {
    auto xs = random_list(rng, 1, 10);
    auto ys = xs;
    ys.insert(ys.begin(), 3, xs[0]);
    return atom(t, {make_list(xs), make_list(ys)});
  }
  if (t == "droplast") {
    auto xs = random_list(rng, 1, 10);
    auto ys = xs;
    ys.pop_back();
    return atom(t, {make_list(xs), make_list(ys)});
  }
  if (t == "sorted") {
    auto xs = random_list(rng, 0, 10);
    std::sort(xs.begin(), xs.end());
    return atom(t, {make_list(xs)});
  }
  throw std::invalid_argument("unknown list task: " + t);
}

// Negatives are mostly near misses of positives; the oracle filters any that
// happen to be positive.
GroundAtom draw_negative(const std::string& t, Rng& rng) {
  if (t == "member") {
    auto xs = random_list(rng, 0, 10);
    return atom(t, {make_list(xs), Value(static_cast<std::int64_t>(uniform(rng, 1, 100)))});
  }
  if (t == "last") {
    auto xs = random_list(rng, 1, 10);
    std::int64_t e = coin(rng, 0.5) ? xs[uniform(rng, 0, static_cast<int>(xs.size()) - 1)] : uniform(rng, 1, 100);
    return atom(t, {make_list(xs), Value(e)});
  }
  if (t == "len") {
    auto xs = random_list(rng, 0, 10);
    return atom(t, {make_list(xs), Value(static_cast<std::int64_t>(uniform(rng, 0, 11)))});
  }
  if (t == "evens") {
    std::vector<std::int64_t> xs(uniform(rng, 1, 10));
    for (auto& x : xs) x = coin(rng, 0.8) ? even_value(rng) : odd_value(rng);
    xs[uniform(rng, 0, static_cast<int>(xs.size()) - 1)] = odd_value(rng);
    return atom(t, {make_list(xs)});
  }
  if (t == "threesame") {
    auto xs = random_list(rng, 0, 10);
    if (xs.size() >= 3 && coin(rng, 0.5)) {
      xs[1] = xs[2] = xs[0];
      xs[uniform(rng, 0, 2)] = uniform(rng, 1, 100);
    }
    return atom(t, {make_list(xs)});
  }
  if (t == "finddup") {
    auto xs = random_list(rng, 1, 10);
    return atom(t, {make_list(xs), Value(xs[uniform(rng, 0, static_cast<int>(xs.size()) - 1)])});
  }
  if (t == "addhead") {
    auto xs = random_list(rng, 1, 10);
    auto ys = xs;
    ys.insert(ys.begin(), uniform(rng, 0, 4), coin(rng, 0.7) ? xs[0] : uniform(rng, 1, 100));
    return atom(t, {make_list(xs), make_list(ys)});
  }
  if (t == "droplast") {
    auto xs = random_list(rng, 1, 10);
    auto ys = xs;
    if (coin(rng, 0.5)) {
      ys.erase(ys.begin() + uniform(rng, 0, static_cast<int>(ys.size()) - 1));
    } else {
      ys = random_list(rng, 0, 9);
    }
    return atom(t, {make_list(xs), make_list(ys)});
  }
  if (t == "sorted") {
    auto xs = random_list(rng, 2, 10);
    if (coin(rng, 0.5)) {
      std::sort(xs.begin(), xs.end());
      std::swap(xs[uniform(rng, 0, static_cast<int>(xs.size()) - 2)], xs.back());
    }
    return atom(t, {make_list(xs)});
  }
  throw std::invalid_argument("unknown list task: " + t);
}

std::string csv_quote(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c == '\n' ? ' ' : c;
  }
  return out + "\"";
}

std::string fmt_double(double v, int precision) {
  std::ostringstream os;
  os.setf(std::ios::fixed);
  os.precision(precision);
  os << v;
  return os.str();
}

}  // namespace

std::size_t noise_count(double rate, std::size_t n) {
  // Tolerance for rates like 0.1 whose product is a hair above an integer.
  return static_cast<std::size_t>(std::ceil(rate * static_cast<double>(n) - 1e-9));
}

std::size_t flip_labels(ExampleSet& train, double rate, std::uint64_t seed) {
  const std::size_t n = train.pos.size() + train.neg.size();
  const std::size_t k = std::min(n, noise_count(rate, n));
  if (k == 0) return 0;
  Rng rng(seed ^ 0x9e3779b97f4a7c15ULL);
  std::vector<std::size_t> idx(n);
  std::iota(idx.begin(), idx.end(), 0);
  std::shuffle(idx.begin(), idx.end(), rng);
  std::set<std::size_t> chosen(idx.begin(), idx.begin() + static_cast<std::ptrdiff_t>(k));

  ExampleSet out;
  for (std::size_t i = 0; i < n; ++i) {
    const bool was_pos = i < train.pos.size();
    const GroundAtom& a = was_pos ? train.pos[i] : train.neg[i - train.pos.size()];
    ((was_pos != (chosen.count(i) > 0)) ? out.pos : out.neg).push_back(a);
  }
  train = std::move(out);
  return k;
}

Hypothesis trains_truth(int which) {
  if (which == 1)
    return parse_hypothesis(
        "eastbound(A) :- has_car(A,C),long(C),roof_closed(C),has_car(A,B),three_wheels(B).");
  if (which == 2) return parse_hypothesis("eastbound(A) :- has_car(A,C),roof_open(C),has_car(A,B),roof_closed(B).");
  throw std::invalid_argument("trains ground truth must be 1 or 2");
}

TaskSpec gen_trains_task(const Hypothesis& ground_truth, int n_train_pos, int n_train_neg, int n_test_pos,
                         int n_test_neg, double noise_rate, std::uint64_t seed) {
  const int need_pos = n_train_pos + n_test_pos;
  const int need_neg = n_train_neg + n_test_neg;
  for (int pool = 1000;; pool *= 2) {
    Rng rng(seed);
    std::vector<GroundAtom> facts;
    for (int i = 0; i < pool; ++i) add_train(facts, i, rng);
    BackgroundKnowledge all(facts, {});

    std::vector<int> pos, neg;
    const PredSym eastbound{Symbol("eastbound"), 1};
    for (int i = 0; i < pool; ++i) {
      GroundAtom e{eastbound, {Value(Symbol("t" + std::to_string(i)))}};
      (entails(ground_truth, all, e) ? pos : neg).push_back(i);
    }
    if (static_cast<int>(pos.size()) < need_pos || static_cast<int>(neg.size()) < need_neg) {
      if (pool > 64000) throw std::runtime_error("ground truth too rare or too common for balanced sampling");
      continue;
    }
    std::shuffle(pos.begin(), pos.end(), rng);
    std::shuffle(neg.begin(), neg.end(), rng);

    // Keep only the facts of sampled trains.
    std::set<std::string> keep;
    auto ex = [&](int i) {
      keep.insert("t" + std::to_string(i));
      return GroundAtom{eastbound, {Value(Symbol("t" + std::to_string(i)))}};
    };
    TaskSpec t;
    t.name = "trains";
    for (int i = 0; i < n_train_pos; ++i) t.train.pos.push_back(ex(pos[i]));
    for (int i = 0; i < n_train_neg; ++i) t.train.neg.push_back(ex(neg[i]));
    for (int i = 0; i < n_test_pos; ++i) t.test.pos.push_back(ex(pos[n_train_pos + i]));
    for (int i = 0; i < n_test_neg; ++i) t.test.neg.push_back(ex(neg[n_train_neg + i]));

    std::vector<GroundAtom> kept;
    std::set<std::string> cars;
    for (const auto& f : facts)
      if (f.pred.name.str() == "has_car" && keep.count(f.args[0].as_sym().str())) cars.insert(f.args[1].as_sym().str());
    std::set<std::string> loads;
    for (const auto& f : facts)
      if (f.pred.name.str() == "has_load" && cars.count(f.args[0].as_sym().str())) loads.insert(f.args[1].as_sym().str());
    for (const auto& f : facts) {
      const std::string a0 = f.args[0].as_sym().str();
      if (keep.count(a0) || cars.count(a0) || loads.count(a0)) kept.push_back(f);
    }
    t.bk = BackgroundKnowledge(std::move(kept), {});
    auto parsed = parse_bias(kTrainsBias);
    t.bias = parsed.bias;
    t.bounds = parsed.bounds;
    t.bounds.max_programs = 200;
    t.noise_rate = noise_rate;
    t.seed = seed;
    t.flipped = flip_labels(t.train, noise_rate, seed);
    return t;
  }
}

const std::vector<std::string>& list_task_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> n;
    for (const auto& [k, _] : list_defs()) n.push_back(k);
    return n;
  }();
  return names;
}

bool list_oracle(const std::string& t, const GroundAtom& e) {
  if (!list_defs().count(t)) throw std::invalid_argument("unknown list task: " + t);
  const auto xs = ints(e.args[0]);
  if (t == "member") return std::find(xs.begin(), xs.end(), e.args[1].as_int()) != xs.end();
  if (t == "last") return !xs.empty() && xs.back() == e.args[1].as_int();
  if (t == "len") return static_cast<std::int64_t>(xs.size()) == e.args[1].as_int();
  if (t == "evens") return std::all_of(xs.begin(), xs.end(), [](std::int64_t x) { return x % 2 == 0; });
  if (t == "threesame") return xs.size() >= 3 && xs[0] == xs[1] && xs[1] == xs[2];
  if (t == "finddup") return has_dup(xs, e.args[1].as_int());
  if (t == "sorted") return std::is_sorted(xs.begin(), xs.end());
  const auto ys = ints(e.args[1]);
  if (t == "addhead") {
    if (xs.empty()) return false;
    auto want = xs;
    want.insert(want.begin(), 3, xs[0]);
    return ys == want;
  }
  // droplast
  if (xs.empty()) return false;
  return ys == std::vector<std::int64_t>(xs.begin(), xs.end() - 1);
}

TaskSpec gen_list_task(const std::string& name, int n_train_pos, int n_train_neg, int n_test_pos, int n_test_neg,
                       double noise_rate, std::uint64_t seed) {
  auto it = list_defs().find(name);
  if (it == list_defs().end()) throw std::invalid_argument("unknown list task: " + name);
  const ListTaskDef& def = it->second;

  Rng rng(seed);
  std::set<GroundAtom> used;
  auto pos = [&] {
    for (;;) {
      auto a = draw_positive(name, rng);
      if (list_oracle(name, a)) return a;
    }
  };
  auto neg = [&] {
    for (;;) {
      auto a = draw_negative(name, rng);
      if (!list_oracle(name, a)) return a;
    }
  };

  TaskSpec t;
  t.name = name;
  t.train.pos = distinct(n_train_pos, used, pos);
  t.train.neg = distinct(n_train_neg, used, neg);
  t.test.pos = distinct(n_test_pos, used, pos);
  t.test.neg = distinct(n_test_neg, used, neg);

  std::set<PredSym> builtins;
  for (const auto& b : builtin_registry())
    if (def.builtins.count(b.name.str())) builtins.insert(b);
  t.bk = BackgroundKnowledge({}, builtins);
  auto parsed = parse_bias(def.bias + builtin_decls_for(def.builtins) + kListBounds, &builtins);
  t.bias = parsed.bias;
  t.bounds = parsed.bounds;
  t.bounds.max_programs = 500;
  t.noise_rate = noise_rate;
  t.seed = seed;
  t.flipped = flip_labels(t.train, noise_rate, seed);
  return t;
}

double predictive_accuracy(const std::optional<Hypothesis>& h, const BackgroundKnowledge& bk, const ExampleSet& test,
                           const EvalLimits& lim) {
  const std::size_t n = test.pos.size() + test.neg.size();
  if (n == 0) return 0.0;
  if (!h) return static_cast<double>(test.pos.size()) / static_cast<double>(n);
  const Outcome o = count_outcomes(*h, bk, test, lim);
  return static_cast<double>(o.tp + o.tn) / static_cast<double>(n);
}

TrialRecord run_trial(const TaskSpec& task, const std::string& config_label, const EngineConfig& cfg) {
  EngineConfig c = cfg;
  c.bounds = task.bounds;
  TrialRecord rec;
  rec.task = task.name;
  rec.config = config_label;
  rec.noise = task.noise_rate;
  rec.seed = task.seed;
  rec.run = run(task.learning_task(), c);
  rec.accuracy = predictive_accuracy(rec.run.returned, task.bk, task.test, c.eval);
  rec.time_s = rec.run.wall_time.count();
  rec.programs = rec.run.programs_generated;
  rec.solution_found = rec.run.returned.has_value();
  rec.program_text = rec.run.returned ? rec.run.returned->str() : "";

  // Walk the best-so-far sequence backwards to the first program that already
  // had the final accuracy.
  rec.programs_to_final = rec.programs;
  if (rec.run.returned) {
    std::vector<const TraceRecord*> bests;
    int best = -1;
    for (const auto& t : rec.run.trace)
      if (t.score.s_acc > best) {
        best = t.score.s_acc;
        bests.push_back(&t);
      }
    for (auto it = bests.rbegin(); it != bests.rend(); ++it) {
      if (predictive_accuracy((*it)->program, task.bk, task.test, c.eval) != rec.accuracy) break;
      rec.programs_to_final = (*it)->index;
    }
  } else {
    rec.programs_to_final = 0;
  }
  return rec;
}

std::vector<TrialRecord> run_suite(const std::vector<SuiteTask>& tasks, const std::vector<SuiteConfig>& configs,
                                   const std::vector<double>& noise_levels, int trials, std::uint64_t base_seed) {
  std::vector<TrialRecord> out;
  for (const auto& task : tasks)
    for (const auto& cfg : configs)
      for (double noise : noise_levels)
        for (int i = 0; i < trials; ++i) {
          TaskSpec spec = task.make(noise, base_seed + static_cast<std::uint64_t>(i));
          spec.name = task.name;
          out.push_back(run_trial(spec, cfg.label, cfg.engine));
        }
  return out;
}

Summary summarize(const std::vector<double>& xs) {
  Summary s;
  if (xs.empty()) return s;
  const double n = static_cast<double>(xs.size());
  s.mean = std::accumulate(xs.begin(), xs.end(), 0.0) / n;
  if (xs.size() < 2) return s;
  double ss = 0.0;
  for (double x : xs) ss += (x - s.mean) * (x - s.mean);
  s.stderr_ = std::sqrt(ss / (n - 1.0)) / std::sqrt(n);
  return s;
}

void write_csv(std::ostream& os, const std::vector<TrialRecord>& records, bool zero_time) {
  os << "task,config,noise,seed,accuracy,time_s,programs,solution_found,program_text\n";
  auto time_of = [&](double t) { return zero_time ? 0.0 : t; };
  std::vector<std::tuple<std::string, std::string, double>> order;
  std::map<std::tuple<std::string, std::string, double>, std::vector<const TrialRecord*>> groups;
  for (const auto& r : records) {
    os << r.task << ',' << r.config << ',' << fmt_double(r.noise, 2) << ',' << r.seed << ','
       << fmt_double(r.accuracy, 4) << ',' << fmt_double(time_of(r.time_s), 3) << ',' << r.programs << ','
       << (r.solution_found ? 1 : 0) << ',' << csv_quote(r.program_text) << '\n';
    auto key = std::make_tuple(r.task, r.config, r.noise);
    if (!groups.count(key)) order.push_back(key);
    groups[key].push_back(&r);
  }
  for (const auto& key : order) {
    std::vector<double> acc, time, progs, found;
    for (const auto* r : groups[key]) {
      acc.push_back(r->accuracy);
      time.push_back(time_of(r->time_s));
      progs.push_back(static_cast<double>(r->programs));
      found.push_back(r->solution_found ? 1.0 : 0.0);
    }
    const auto a = summarize(acc), t = summarize(time), p = summarize(progs), f = summarize(found);
    os << std::get<0>(key) << ',' << std::get<1>(key) << ',' << fmt_double(std::get<2>(key), 2) << ",mean,"
       << fmt_double(a.mean, 4) << ',' << fmt_double(t.mean, 3) << ',' << fmt_double(p.mean, 1) << ','
       << fmt_double(f.mean, 2) << ','
       << csv_quote("stderr accuracy=" + fmt_double(a.stderr_, 4) + " time_s=" + fmt_double(t.stderr_, 3) +
                    " programs=" + fmt_double(p.stderr_, 1))
       << '\n';
  }
}

}  // namespace noisylff
