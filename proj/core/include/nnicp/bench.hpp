#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "nnicp/etcs.hpp"
#include "nnicp/normalize.hpp"
#include "nnicp/solver.hpp"

namespace nnicp {

/// y = sum_{i=0..n} (1/n) x_i with every variable in [0, 1]. Throws
/// std::invalid_argument for n < 1.
[[nodiscard]] ConstraintSystem gen_sum(int n);
[[nodiscard]] std::string gen_sum_text(int n);

/// Property reference as used on the command line and in manifests:
///   etcs:A | etcs:B | etcs:C | etcs:D | etcs:severe
///   mnist:<samples.csv>:<sample index>:<rival digit>
/// Throws std::invalid_argument on malformed references.
[[nodiscard]] ConstraintSystem build_property(std::string_view ref, const Network& net,
                                              const SigmoidOptions& opts = {});

struct BenchRow {
  std::string instance;
  std::string encoding;
  /// UNSAT, CANDIDATE, TIMEOUT, RESOURCE_OUT or error.
  std::string verdict;
  double wall_s = 0.0;
  std::uint64_t decisions = 0;
  std::uint64_t propagations = 0;
  std::uint64_t conflicts = 0;
};

inline constexpr std::string_view kBenchCsvHeader =
    "instance,encoding,verdict,wall_s,decisions,propagations,conflicts";

void write_csv_row(std::ostream& os, const BenchRow& row);

struct MatrixSpec {
  std::vector<std::filesystem::path> networks;
  std::vector<std::string> properties;
  std::vector<SigmoidEncoding> encodings;
  SigmoidOptions sigmoid;
  SumForm sums = SumForm::nary;
  SolverConfig solver;
  unsigned jobs = 1;
};

/// Manifest JSON:
///   {"networks": [path, ...], "properties": [ref, ...],
///    "encodings": ["dedicated" | "compositional" | "approx", ...],
///    "approx_width": 0.5, "approx_range": [-8, 8], "sums": "nary",
///    "jobs": 1,
///    "solver": {"msw": 1e-4, "timeout_s": 60, "split": "round_robin",
///               "branch": "lower_first", "max_decisions": 0}}
/// Relative network paths resolve against `base_dir`.
[[nodiscard]] MatrixSpec parse_matrix(std::string_view json_text, const std::filesystem::path& base_dir = {});
[[nodiscard]] MatrixSpec load_matrix(const std::filesystem::path& path);

/// Solves every network x property x encoding cell, in that nesting order.
/// Cells run on up to `spec.jobs` threads with their own solver and
/// deadline; rows are written to `csv` (header first) in cell order as
/// soon as every earlier cell has finished. A cell whose network or
/// property cannot be loaded yields an "error" row.
std::vector<BenchRow> run_matrix(const MatrixSpec& spec, std::ostream* csv = nullptr);

[[nodiscard]] SigmoidEncoding parse_encoding(std::string_view s);
[[nodiscard]] SplitHeuristic parse_split(std::string_view s);
[[nodiscard]] BranchOrder parse_branch(std::string_view s);

struct EtcsDataRow {
  double v;
  double x_head;
  double x_rear;
  bool braking;
};

/// Uniform samples of v in [0, v_max] and positions in [0, track_length],
/// rejecting those with a negative braking distance, labelled by
/// etcs_ground_truth.
[[nodiscard]] std::vector<EtcsDataRow> gen_etcs_data(std::size_t count, std::uint64_t seed,
                                                     const EtcsParams& params = {});
void write_etcs_data(std::ostream& os, const std::vector<EtcsDataRow>& rows);

}  // namespace nnicp
