#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "rru/rule.hpp"
#include "rru/term.hpp"

namespace rru::bench {

enum class Mode { Original, Unfolded, Both };
enum class Format { Csv, Markdown };

struct BenchConfig {
  std::string example;  // summation | reversal | sorting
  Mode mode = Mode::Both;
  std::vector<std::string> size_exprs;  // decimal, 2^k, 2^k+1, 2^k-1
  std::uint32_t repetitions = 1;
  std::uint64_t seed = 1;  // random permutations for sorting inputs
  Format format = Format::Csv;
  bool use_cache = false;  // off: rebuild rules every call, per-call timings
  bool parallel = false;   // correctness sweeps only; timings get noisy
  std::uint64_t max_steps = 10'000'000;
  std::uint64_t unfold_cap = 4096;
};

struct MeasurementRow {
  std::string example;
  std::string size_label;
  BigInt size_value;
  std::string mode;  // "original" | "unfolded"
  double unfolder_s = 0.0;
  double interpreter_s = 0.0;
  double total_s = 0.0;
  double min_total_s = 0.0;  // fastest repetition (reported alongside means)
  std::uint64_t rules_generated = 0;
  std::vector<std::size_t> applied_indices;
  std::string checksum;
};

/// Parses a size expression: plain decimal, "2^k", "2^k+1" or "2^k-1".
BigInt parse_size_expr(const std::string& expr);

/// Runs every size x mode case. Each answer is verified against the
/// example's independent oracle (closed form / reference reverse / reference
/// sort); a mismatch raises VerificationMismatch. Timing covers the
/// unfolder and interpreter phases separately, measured with a monotonic
/// clock, and excludes parsing and verification.
std::vector<MeasurementRow> run_bench(const BenchConfig& config);

extern const char* kCsvHeader;
void write_csv(const std::vector<MeasurementRow>& rows, std::ostream& out);
void write_markdown(const std::vector<MeasurementRow>& rows,
                    std::ostream& out);

/// Adjacent-size total-time ratios per example/mode for trend checking
/// (pairs where one size is exactly double the other).
void write_ratios(const std::vector<MeasurementRow>& rows, std::ostream& out);

}  // namespace rru::bench
