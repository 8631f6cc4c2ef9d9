#include "rru/bench.hpp"

#include <algorithm>
#include <cctype>
#include <chrono>
#include <future>
#include <iomanip>
#include <numeric>
#include <ostream>
#include <random>
#include <sstream>

#include "rru/engine.hpp"
#include "rru/errors.hpp"
#include "rru/interp.hpp"
#include "rru/meta.hpp"
#include "rru/parser.hpp"
#include "rru/printer.hpp"
#include "rru/schemes.hpp"

namespace rru::bench {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

constexpr std::size_t kMaxListSize = std::size_t{1} << 26;

std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

std::string checksum_of(const Term& t) {
  std::ostringstream hex;
  hex << std::hex << std::setw(16) << std::setfill('0') << fnv1a(to_string(t));
  return hex.str();
}

std::size_t to_list_size(const BigInt& n, const std::string& label) {
  if (n <= 0 || n > BigInt(kMaxListSize))
    throw EngineError(ErrorKind::BadGoal,
                      "list size " + label + " out of supported range");
  return n.convert_to<std::size_t>();
}

struct CaseData {
  Term input;     // first goal argument
  Term expected;  // required resolved output
};

CaseData summation_case(const BigInt& n) {
  return {Term::integer(n), Term::integer(n * (n + 1) / 2)};
}

CaseData reversal_case(std::size_t n) {
  std::vector<Term> fwd;
  fwd.reserve(n);
  for (std::size_t i = 1; i <= n; ++i) fwd.push_back(Term::integer(BigInt(i)));
  std::vector<Term> rev(fwd.rbegin(), fwd.rend());
  return {Term::list(fwd, Term::nil()), Term::list(rev, Term::nil())};
}

CaseData sorting_case(std::size_t n, std::uint64_t seed) {
  std::vector<Term> sorted;
  sorted.reserve(n);
  for (std::size_t i = 1; i <= n; ++i)
    sorted.push_back(Term::integer(BigInt(i)));
  std::vector<Term> perm = sorted;
  std::mt19937_64 rng(seed * 0x9E3779B97F4A7C15ull + n);
  std::shuffle(perm.begin(), perm.end(), rng);
  return {Term::list(perm, Term::nil()), Term::list(sorted, Term::nil())};
}

CaseData make_case(const std::string& example, const BigInt& size,
                   const std::string& label, std::uint64_t seed) {
  if (example == "summation") return summation_case(size);
  if (example == "reversal") return reversal_case(to_list_size(size, label));
  if (example == "sorting")
    return sorting_case(to_list_size(size, label), seed);
  throw EngineError(ErrorKind::BadGoal, "unknown example '" + example + "'");
}

void verify_answer(const Answer& answer, const CaseData& data,
                   const std::string& example, const std::string& label,
                   const std::string& mode) {
  if (answer.bindings.size() != 1 ||
      !answer.bindings.front().second.equals(data.expected))
    throw EngineError(ErrorKind::VerificationMismatch,
                      example + " size " + label + " mode " + mode +
                          ": answer does not match the oracle");
}

MeasurementRow run_case(const schemes::Example& example, Mode mode,
                        const BigInt& size, const std::string& label,
                        const BenchConfig& config) {
  MeasurementRow row;
  row.example = example.name;
  row.size_label = label;
  row.size_value = size;
  row.mode = mode == Mode::Original ? "original" : "unfolded";

  CaseData data = make_case(example.name, size, label, config.seed);
  Engine engine;
  Program program = parse_program(example.program_text, engine.gen());
  Symbol predicate = program.predicate;
  RunLimits limits{config.max_steps};
  CallOptions opts;
  opts.use_cache = config.use_cache;
  opts.max_steps = config.max_steps;
  opts.unfold_cap = config.unfold_cap;

  if (mode == Mode::Unfolded)
    engine.register_recursion(program, example.scheme,
                              EngineCaps{config.unfold_cap, config.max_steps});

  double unfolder_total = 0.0;
  double interp_total = 0.0;
  row.min_total_s = -1.0;
  bool recorded = false;
  for (std::uint32_t rep = 0; rep < config.repetitions; ++rep) {
    Term goal = Term::compound(predicate, {data.input, engine.gen().fresh()});
    Answer answer;
    double unfolder_s = 0.0;
    double interp_s = 0.0;
    if (mode == Mode::Original) {
      BindingStore store;
      auto t0 = Clock::now();
      answer = run_original(goal, program, limits, store, engine.gen());
      interp_s = seconds_since(t0);
    } else {
      StepStats stats;
      auto t0 = Clock::now();
      RuleLadder ladder = engine.prepare(goal, opts, stats);
      unfolder_s = seconds_since(t0);
      BindingStore store;
      auto t1 = Clock::now();
      answer = run_unfolded(goal, ladder, limits, store, engine.gen(),
                            std::move(stats));
      interp_s = seconds_since(t1);
    }
    verify_answer(answer, data, example.name, label, row.mode);
    unfolder_total += unfolder_s;
    interp_total += interp_s;
    double total = unfolder_s + interp_s;
    if (row.min_total_s < 0.0 || total < row.min_total_s)
      row.min_total_s = total;
    if (!recorded) {
      recorded = true;
      row.rules_generated = answer.stats.rules_generated;
      row.applied_indices = answer.stats.applied_rule_indices;
      row.checksum = checksum_of(answer.bindings.front().second);
    }
  }
  row.unfolder_s = unfolder_total / config.repetitions;
  row.interpreter_s = interp_total / config.repetitions;
  row.total_s = row.unfolder_s + row.interpreter_s;
  return row;
}

}  // namespace

BigInt parse_size_expr(const std::string& expr) {
  try {
    if (expr.rfind("2^", 0) == 0) {
      std::size_t pos = 2;
      std::size_t end = pos;
      while (end < expr.size() &&
             std::isdigit(static_cast<unsigned char>(expr[end])))
        ++end;
      if (end == pos) throw std::invalid_argument(expr);
      unsigned exponent = static_cast<unsigned>(std::stoul(expr.substr(pos, end - pos)));
      if (exponent > 1u << 20) throw std::invalid_argument(expr);
      BigInt n = BigInt(1) << exponent;
      if (end == expr.size()) return n;
      std::string rest = expr.substr(end);
      if (rest == "+1") return n + 1;
      if (rest == "-1") return n - 1;
      throw std::invalid_argument(expr);
    }
    if (expr.empty() ||
        !std::all_of(expr.begin(), expr.end(), [](unsigned char c) {
          return std::isdigit(c);
        }))
      throw std::invalid_argument(expr);
    return BigInt(expr);
  } catch (const std::exception&) {
    throw EngineError(ErrorKind::BadGoal,
                      "size expression '" + expr +
                          "' is not decimal, 2^k, 2^k+1 or 2^k-1");
  }
}

std::vector<MeasurementRow> run_bench(const BenchConfig& config) {
  const schemes::Example* example = schemes::find_example(config.example);
  if (example == nullptr)
    throw EngineError(ErrorKind::BadGoal,
                      "unknown example '" + config.example + "'");
  if (config.repetitions == 0)
    throw EngineError(ErrorKind::BadGoal, "repetitions must be at least 1");

  std::vector<std::pair<BigInt, std::string>> sizes;
  for (const std::string& expr : config.size_exprs)
    sizes.emplace_back(parse_size_expr(expr), expr);

  std::vector<Mode> modes;
  if (config.mode == Mode::Both) {
    modes = {Mode::Original, Mode::Unfolded};
  } else {
    modes = {config.mode};
  }

  struct Case {
    Mode mode;
    BigInt size;
    std::string label;
  };
  std::vector<Case> cases;
  for (Mode m : modes)
    for (const auto& [size, label] : sizes) cases.push_back({m, size, label});

  std::vector<MeasurementRow> rows(cases.size());
  if (config.parallel) {
    std::vector<std::future<MeasurementRow>> futures;
    futures.reserve(cases.size());
    for (const Case& c : cases)
      futures.push_back(std::async(std::launch::async, [&, c] {
        return run_case(*example, c.mode, c.size, c.label, config);
      }));
    for (std::size_t i = 0; i < futures.size(); ++i) rows[i] = futures[i].get();
  } else {
    for (std::size_t i = 0; i < cases.size(); ++i)
      rows[i] =
          run_case(*example, cases[i].mode, cases[i].size, cases[i].label,
                   config);
  }
  return rows;
}

const char* kCsvHeader =
    "example,size,mode,unfolder_s,interpreter_s,total_s,rules_generated,"
    "applied_indices,checksum";

namespace {

std::string indices_field(const std::vector<std::size_t>& indices) {
  std::string out;
  for (std::size_t i = 0; i < indices.size(); ++i) {
    if (i > 0) out += ';';
    out += std::to_string(indices[i]);
  }
  return out;
}

std::string format_seconds(double s) {
  std::ostringstream os;
  os << std::fixed << std::setprecision(6) << s;
  return os.str();
}

}  // namespace

void write_csv(const std::vector<MeasurementRow>& rows, std::ostream& out) {
  out << kCsvHeader << '\n';
  for (const MeasurementRow& r : rows) {
    out << r.example << ',' << r.size_label << ',' << r.mode << ','
        << format_seconds(r.unfolder_s) << ',' << format_seconds(r.interpreter_s)
        << ',' << format_seconds(r.total_s) << ',' << r.rules_generated << ','
        << indices_field(r.applied_indices) << ',' << r.checksum << '\n';
  }
}

void write_markdown(const std::vector<MeasurementRow>& rows,
                    std::ostream& out) {
  out << "| example | size | mode | unfolder (s) | interpreter (s) | total "
         "(s) | rules | applied | checksum |\n";
  out << "|---|---|---|---|---|---|---|---|---|\n";
  for (const MeasurementRow& r : rows) {
    out << "| " << r.example << " | " << r.size_label << " | " << r.mode
        << " | " << format_seconds(r.unfolder_s) << " | "
        << format_seconds(r.interpreter_s) << " | " << format_seconds(r.total_s)
        << " | " << r.rules_generated << " | "
        << indices_field(r.applied_indices) << " | " << r.checksum << " |\n";
  }
}

void write_ratios(const std::vector<MeasurementRow>& rows, std::ostream& out) {
  out << "adjacent-size total-time ratios (size doubled):\n";
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (std::size_t j = 0; j < rows.size(); ++j) {
      if (i == j) continue;
      const MeasurementRow& a = rows[i];
      const MeasurementRow& b = rows[j];
      if (a.example != b.example || a.mode != b.mode) continue;
      if (b.size_value != a.size_value * 2) continue;
      if (a.total_s <= 0.0) continue;
      std::ostringstream ratio;
      ratio << std::fixed << std::setprecision(2) << b.total_s / a.total_s;
      out << "  " << a.example << ' ' << a.mode << ' ' << a.size_label
          << " -> " << b.size_label << ": " << ratio.str() << '\n';
    }
  }
}

}  // namespace rru::bench
