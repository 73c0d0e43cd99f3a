#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>
#include <string>

#include "CLI11.hpp"
#include "noisylff/bench.hpp"
#include "noisylff/engine.hpp"
#include "noisylff/parser.hpp"

using namespace noisylff;

namespace {

constexpr int kUsage = 1;
constexpr int kTaskError = 2;

struct EngineFlags {
  std::string mode = "noisy";
  double t = 0.0;
  bool anytime = false;
  bool no_minimal = false;
  bool no_sound = false;
  bool no_size = false;
  bool syntactic = false;
  long max_programs = -1;
  double timeout_s = -1;
};

void add_engine_flags(CLI::App* app, EngineFlags& f) {
  app->add_option("--mode", f.mode, "normal | noisy | enumerate")
      ->check(CLI::IsMember({"normal", "noisy", "enumerate"}));
  app->add_option("--t", f.t, "minimal constraint threshold")->check(CLI::Range(0.0, 1.0));
  app->add_flag("--anytime", f.anytime, "normal mode returns the best program seen");
  app->add_flag("--no-minimal", f.no_minimal, "disable minimal constraints");
  app->add_flag("--no-sound", f.no_sound, "disable sound constraints");
  app->add_flag("--no-size", f.no_size, "disable size constraints");
  app->add_flag("--syntactic-constraints", f.syntactic, "match constraints syntactically");
  app->add_option("--max-programs", f.max_programs, "program limit")->check(CLI::PositiveNumber);
  app->add_option("--timeout", f.timeout_s, "wall-clock limit in seconds")->check(CLI::PositiveNumber);
}

EngineConfig engine_config(const EngineFlags& f) {
  EngineConfig c;
  c.mode = f.mode == "normal" ? Mode::Normal : f.mode == "enumerate" ? Mode::Enumerate : Mode::Noisy;
  c.threshold_t = f.t;
  c.anytime = f.anytime;
  c.enable_minimal = !f.no_minimal;
  c.enable_sound = !f.no_sound;
  c.enable_size = !f.no_size;
  c.matching = f.syntactic ? Matching::Syntactic : Matching::Semantic;
  return c;
}

void apply_limits(const EngineFlags& f, SearchBounds& b) {
  if (f.max_programs > 0) b.max_programs = static_cast<std::size_t>(f.max_programs);
  if (f.timeout_s > 0) b.wall_timeout = std::chrono::milliseconds(static_cast<long>(f.timeout_s * 1000));
}

std::string config_label(const EngineFlags& f) {
  std::string s = f.mode;
  if (f.anytime) s += "-anytime";
  if (f.no_minimal) s += "-no-minimal";
  if (f.no_sound) s += "-no-sound";
  if (f.no_size) s += "-no-size";
  if (f.syntactic) s += "-syntactic";
  return s;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

int cmd_learn(const std::string& bias_path, const std::string& bk_path, const std::string& exs_path,
              const std::string& trace_path, const EngineFlags& f) {
  LearningTask task;
  task.bk = parse_bk(slurp(bk_path));
  ParsedBias pb = parse_bias(slurp(bias_path), &task.bk.builtins());
  task.bias = pb.bias;
  task.examples = parse_examples(slurp(exs_path));

  EngineConfig cfg = engine_config(f);
  cfg.bounds = pb.bounds;
  apply_limits(f, cfg.bounds);
  RunResult r = run(task, cfg);

  if (r.returned) {
    std::cout << r.returned->str() << '\n';
  } else {
    std::cout << "% no program returned\n";
  }
  std::printf("%% lff_solution=%d programs=%zu constraints=%zu time_s=%.3f", r.is_lff_solution ? 1 : 0,
              r.programs_generated, r.constraints_added, r.wall_time.count());
  if (r.best_train_score)
    std::printf(" tp=%d tn=%d s_acc=%d", r.best_train_score->outcome.tp, r.best_train_score->outcome.tn,
                r.best_train_score->s_acc);
  std::printf("%s%s\n", r.timed_out ? " timed_out" : "", r.space_exhausted ? " space_exhausted" : "");

  if (!trace_path.empty()) {
    std::ofstream out(trace_path);
    if (!out) throw std::runtime_error("cannot write " + trace_path);
    write_trace_csv(out, r);
  }
  return 0;
}

TaskFactory task_factory(const std::string& name) {
  if (name == "trains" || name == "trains1" || name == "trains2") {
    const int which = name == "trains2" ? 2 : 1;
    return [which](double noise, std::uint64_t seed) {
      return gen_trains_task(trains_truth(which), 50, 50, 200, 200, noise, seed);
    };
  }
  const auto& names = list_task_names();
  if (std::find(names.begin(), names.end(), name) == names.end())
    throw std::invalid_argument("unknown task " + name);
  return [name](double noise, std::uint64_t seed) { return gen_list_task(name, 20, 20, 1000, 1000, noise, seed); };
}

int cmd_bench(const std::vector<std::string>& tasks, const std::vector<double>& noise, int trials, std::uint64_t seed,
              const std::string& out_path, bool deterministic, const EngineFlags& f) {
  std::vector<SuiteTask> suite;
  for (const auto& t : tasks) {
    auto make = task_factory(t);
    suite.push_back({t, [make, f](double n, std::uint64_t s) {
                       TaskSpec spec = make(n, s);
                       apply_limits(f, spec.bounds);
                       return spec;
                     }});
  }
  auto records = run_suite(suite, {{config_label(f), engine_config(f)}}, noise, trials, seed);
  if (out_path.empty() || out_path == "-") {
    write_csv(std::cout, records, deterministic);
  } else {
    std::ofstream out(out_path);
    if (!out) throw std::runtime_error("cannot write " + out_path);
    write_csv(out, records, deterministic);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Noise-tolerant learning of logic programs from failures"};
  app.require_subcommand(1);

  EngineFlags learn_flags;
  std::string bias_path, bk_path, exs_path, trace_path;
  auto* learn = app.add_subcommand("learn", "learn a program from files");
  learn->add_option("--bias", bias_path, "bias file")->required();
  learn->add_option("--bk", bk_path, "background knowledge file")->required();
  learn->add_option("--exs", exs_path, "examples file")->required();
  learn->add_option("--trace", trace_path, "write a per-program CSV trace");
  add_engine_flags(learn, learn_flags);

  EngineFlags bench_flags;
  std::vector<std::string> tasks;
  std::vector<double> noise{0.0};
  int trials = 1;
  std::uint64_t seed = 1;
  std::string out_path;
  bool deterministic = false;
  auto* bench = app.add_subcommand("bench", "run generated benchmark tasks");
  bench->add_option("--task", tasks, "trains1, trains2 or a list task; repeat or comma-separate")
      ->required()
      ->delimiter(',');
  bench->add_option("--noise", noise, "training noise rates, comma-separated")->delimiter(',');
  bench->add_option("--trials", trials, "trials per setting")->check(CLI::PositiveNumber);
  bench->add_option("--seed", seed, "seed of the first trial");
  bench->add_option("--out", out_path, "CSV output path (default stdout)");
  bench->add_flag("--deterministic", deterministic, "write 0 in the time column");
  add_engine_flags(bench, bench_flags);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kUsage;
  }

  for (double n : noise)
    if (n < 0.0 || n > 1.0) {
      std::cerr << "noise rates must lie in [0, 1]\n";
      return kUsage;
    }

  try {
    if (*learn) return cmd_learn(bias_path, bk_path, exs_path, trace_path, learn_flags);
    return cmd_bench(tasks, noise, trials, seed, out_path, deterministic, bench_flags);
  } catch (const ParseError& e) {
    std::cerr << "parse error at " << e.line() << ':' << e.column() << ": " << e.what() << '\n';
    return kTaskError;
  } catch (const std::invalid_argument& e) {
    std::cerr << "invalid task: " << e.what() << '\n';
    return kTaskError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kTaskError;
  }
}
