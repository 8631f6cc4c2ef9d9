#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "rru/bench.hpp"
#include "rru/engine.hpp"
#include "rru/errors.hpp"
#include "rru/interp.hpp"
#include "rru/meta.hpp"
#include "rru/parser.hpp"
#include "rru/printer.hpp"
#include "rru/schemes.hpp"
#include "rru/unfold.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitParse = 2;
constexpr int kExitRuntime = 3;
constexpr int kExitVerification = 4;

int exit_code_for(const rru::EngineError& e) {
  switch (e.kind()) {
    case rru::ErrorKind::Syntax:
    case rru::ErrorKind::InvalidProgram:
    case rru::ErrorKind::MultipleRecursiveRules:
    case rru::ErrorKind::NonLinearRecursion:
    case rru::ErrorKind::HeadNotVariables:
    case rru::ErrorKind::UnknownBuiltin:
      return kExitParse;
    case rru::ErrorKind::VerificationMismatch:
      return kExitVerification;
    default:
      return kExitRuntime;
  }
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in)
    throw rru::EngineError(rru::ErrorKind::BadGoal,
                           "cannot open file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

struct LoadedProgram {
  rru::Program program;
  const rru::schemes::Example* example = nullptr;  // set for built-ins
};

LoadedProgram load_program(const std::string& program_path,
                           const std::string& example_name, rru::VarGen& gen) {
  LoadedProgram out;
  if (!example_name.empty()) {
    out.example = rru::schemes::find_example(example_name);
    if (out.example == nullptr)
      throw rru::EngineError(rru::ErrorKind::BadGoal,
                             "unknown example '" + example_name + "'");
    out.program = rru::parse_program(out.example->program_text, gen);
  } else {
    out.program = rru::parse_program(read_file(program_path), gen);
  }
  return out;
}

/// Built-in examples accept the outer constraint name as a goal alias
/// (sum/2 for the s/2 rules, rev/2 for r/2, sort/2).
rru::Term resolve_alias(const rru::Term& goal, const LoadedProgram& loaded) {
  if (loaded.example == nullptr || !goal.is_compound()) return goal;
  if (goal.arity() != loaded.program.arity) return goal;
  for (const std::string& alias : loaded.example->goal_aliases) {
    if (goal.functor().str() == alias) {
      std::vector<rru::Term> args;
      for (std::size_t i = 0; i < goal.arity(); ++i) args.push_back(goal.arg(i));
      return rru::Term::compound(loaded.program.predicate, std::move(args));
    }
  }
  return goal;
}

void print_answer(const rru::ParsedGoal& parsed, const rru::Answer& answer) {
  rru::VarNamer namer;
  for (const auto& [name, id] : parsed.vars) {
    for (const auto& [var, value] : answer.bindings) {
      if (var == id)
        std::cout << name << " = " << rru::to_string(value, namer) << '\n';
    }
  }
  const rru::StepStats& s = answer.stats;
  std::cout << "rule applications: " << s.rule_applications << '\n';
  std::cout << "rules generated:   " << s.rules_generated << '\n';
  std::cout << "guard checks:      " << s.guard_checks << '\n';
  std::cout << "builtin work:      " << s.builtin_work << '\n';
  if (!s.applied_rule_indices.empty()) {
    std::cout << "applied indices:   [";
    for (std::size_t i = 0; i < s.applied_rule_indices.size(); ++i) {
      if (i > 0) std::cout << ',';
      std::cout << s.applied_rule_indices[i];
    }
    std::cout << "]\n";
  }
  if (s.cache_extended) std::cout << "cache extended\n";
}

struct RunArgs {
  std::string program_path;
  std::string example;
  std::string goal;
  std::string mode = "original";
  bool no_cache = false;
  std::uint64_t max_steps = rru::EngineCaps{}.max_steps;
  std::uint64_t unfold_cap = rru::EngineCaps{}.unfold_cap;
};

int cmd_run(const RunArgs& args) {
  rru::Engine engine;
  LoadedProgram loaded =
      load_program(args.program_path, args.example, engine.gen());
  rru::ParsedGoal parsed = rru::parse_goal(args.goal, engine.gen());
  rru::Term goal = resolve_alias(parsed.term, loaded);

  rru::Answer answer;
  if (args.mode == "original") {
    rru::BindingStore store;
    rru::RunLimits limits{args.max_steps};
    answer = rru::run_original(goal, loaded.program, limits, store,
                               engine.gen());
  } else {
    rru::UnfoldingScheme scheme;
    if (loaded.example != nullptr) {
      scheme = loaded.example->scheme;
    } else {
      auto detected = rru::schemes::detect_scheme(loaded.program);
      if (!detected)
        throw rru::EngineError(
            rru::ErrorKind::TemplateMismatch,
            "no unfolding scheme matches this program; run it with --mode "
            "original");
      scheme = *detected;
    }
    engine.register_recursion(loaded.program, scheme,
                              rru::EngineCaps{args.unfold_cap, args.max_steps});
    rru::CallOptions opts;
    opts.use_cache = !args.no_cache;
    answer = engine.call(goal, opts);
  }
  print_answer(parsed, answer);
  return kExitOk;
}

struct RulesArgs {
  std::string example;
  std::string goal;
  std::uint64_t unfold_cap = rru::EngineCaps{}.unfold_cap;
};

int cmd_rules(const RulesArgs& args) {
  rru::VarGen gen;
  LoadedProgram loaded = load_program("", args.example, gen);
  rru::ParsedGoal parsed = rru::parse_goal(args.goal, gen);
  rru::Term goal = resolve_alias(parsed.term, loaded);
  rru::BindingStore store;
  rru::StepStats stats;
  rru::RuleLadder ladder =
      rru::unfold_runtime(goal, loaded.program, loaded.example->scheme,
                          args.unfold_cap, store, gen, stats);
  for (const rru::Rule& r : ladder.rules) std::cout << rru::to_string(r) << '\n';
  std::cerr << ladder.recursive_count << " recursive rule(s), "
            << stats.rules_generated << " generated by unfolding\n";
  return kExitOk;
}

struct BenchArgs {
  std::string example;
  std::string mode = "both";
  std::vector<std::string> sizes;
  std::uint32_t reps = 1;
  std::uint64_t seed = 1;
  std::string format = "csv";
  std::string out_path;
  bool cache = false;
  bool parallel = false;
  std::uint64_t max_steps = rru::EngineCaps{}.max_steps;
  std::uint64_t unfold_cap = rru::EngineCaps{}.unfold_cap;
};

int cmd_bench(const BenchArgs& args) {
  rru::bench::BenchConfig config;
  config.example = args.example;
  if (args.mode == "original") {
    config.mode = rru::bench::Mode::Original;
  } else if (args.mode == "unfolded") {
    config.mode = rru::bench::Mode::Unfolded;
  } else {
    config.mode = rru::bench::Mode::Both;
  }
  config.size_exprs = args.sizes;
  config.repetitions = args.reps;
  config.seed = args.seed;
  config.format = args.format == "md" ? rru::bench::Format::Markdown
                                      : rru::bench::Format::Csv;
  config.use_cache = args.cache;
  config.parallel = args.parallel;
  config.max_steps = args.max_steps;
  config.unfold_cap = args.unfold_cap;

  std::vector<rru::bench::MeasurementRow> rows = rru::bench::run_bench(config);

  std::ostream* out = &std::cout;
  std::ofstream file;
  if (!args.out_path.empty()) {
    std::filesystem::path path(args.out_path);
    if (path.is_relative()) {
      if (const char* dir = std::getenv("RECUNFOLD_OUT_DIR"))
        path = std::filesystem::path(dir) / path;
    }
    file.open(path);
    if (!file)
      throw rru::EngineError(rru::ErrorKind::BadGoal,
                             "cannot open output file '" + path.string() + "'");
    out = &file;
  }
  if (config.format == rru::bench::Format::Csv) {
    rru::bench::write_csv(rows, *out);
  } else {
    rru::bench::write_markdown(rows, *out);
  }
  rru::bench::write_ratios(rows, std::cerr);
  for (const auto& row : rows)
    std::cerr << "min total " << row.example << ' ' << row.size_label << ' '
              << row.mode << ": " << row.min_total_s << " s\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Rule engine with runtime repeated recursion unfolding"};
  app.require_subcommand(1);

  RunArgs run_args;
  CLI::App* run = app.add_subcommand(
      "run", "Run a goal against a program, original or unfolded");
  auto* prog_opt =
      run->add_option("--program", run_args.program_path, "Program file");
  auto* example_opt =
      run->add_option("--example", run_args.example,
                      "Built-in example (summation|reversal|sorting|nonterm)");
  prog_opt->excludes(example_opt);
  run->add_option("--goal", run_args.goal, "Goal text, e.g. \"sum(10,S)\"")
      ->required();
  run->add_option("--mode", run_args.mode, "original|unfolded")
      ->check(CLI::IsMember({"original", "unfolded"}))
      ->required();
  run->add_flag("--no-cache", run_args.no_cache,
                "Rebuild unfolded rules instead of reusing the cache");
  run->add_option("--max-steps", run_args.max_steps, "Rule application limit");
  run->add_option("--unfold-cap", run_args.unfold_cap,
                  "Maximum number of generated rules");

  RulesArgs rules_args;
  CLI::App* rules = app.add_subcommand(
      "rules", "Print the unfolded rule ladder for a goal");
  rules->add_option("--example", rules_args.example, "Built-in example")
      ->required();
  rules->add_option("--goal", rules_args.goal, "Goal text")->required();
  rules->add_option("--unfold-cap", rules_args.unfold_cap,
                    "Maximum number of generated rules");

  BenchArgs bench_args;
  CLI::App* bench = app.add_subcommand(
      "bench", "Benchmark an example across input sizes");
  bench->add_option("--example", bench_args.example, "Built-in example")
      ->required();
  bench->add_option("--mode", bench_args.mode, "original|unfolded|both")
      ->check(CLI::IsMember({"original", "unfolded", "both"}));
  bench->add_option("--sizes", bench_args.sizes,
                    "Size expressions (decimal, 2^k, 2^k+1, 2^k-1)")
      ->required()
      ->delimiter(',');
  bench->add_option("--reps", bench_args.reps, "Repetitions per case");
  bench->add_option("--seed", bench_args.seed, "Seed for sorting inputs");
  bench->add_option("--format", bench_args.format, "csv|md")
      ->check(CLI::IsMember({"csv", "md"}));
  bench->add_option("--out", bench_args.out_path,
                    "Output file (relative paths resolve against "
                    "RECUNFOLD_OUT_DIR)");
  bench->add_flag("--cache", bench_args.cache,
                  "Reuse unfolded rules across repetitions");
  bench->add_flag("--parallel", bench_args.parallel,
                  "Run cases on separate engines in parallel (correctness "
                  "sweeps; timings get noisy)");
  bench->add_option("--max-steps", bench_args.max_steps,
                    "Rule application limit");
  bench->add_option("--unfold-cap", bench_args.unfold_cap,
                    "Maximum number of generated rules");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (run->parsed()) {
      if (run_args.program_path.empty() && run_args.example.empty()) {
        std::cerr << "run: either --program or --example is required\n";
        return kExitUsage;
      }
      return cmd_run(run_args);
    }
    if (rules->parsed()) return cmd_rules(rules_args);
    if (bench->parsed()) return cmd_bench(bench_args);
  } catch (const rru::EngineError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return exit_code_for(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitRuntime;
  }
  return kExitUsage;
}
