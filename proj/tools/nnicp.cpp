#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <sstream>

#include "nnicp/bench.hpp"
#include "nnicp/parser.hpp"

using namespace nnicp;

namespace {

constexpr int kExitInputError = 4;

int exit_code(Outcome o) {
  switch (o) {
    case Outcome::unsat: return 0;
    case Outcome::candidate: return 1;
    case Outcome::timeout: return 2;
    case Outcome::resource_out: return 3;
  }
  return kExitInputError;
}

struct SolveFlags {
  double msw = 1e-4;
  double timeout = 60.0;
  std::string split = "round_robin";
  std::string branch = "lower_first";
  std::string sums = "nary";
  std::uint64_t max_decisions = 0;
  bool quiet = false;
};

void add_solve_flags(CLI::App* app, SolveFlags& f) {
  app->add_option("--msw", f.msw, "Minimum splitting width")->capture_default_str();
  app->add_option("--timeout", f.timeout, "Wall clock limit in seconds")->capture_default_str();
  app->add_option("--split", f.split, "round_robin | widest_first")->capture_default_str();
  app->add_option("--branch", f.branch, "lower_first | upper_first")->capture_default_str();
  app->add_option("--sums", f.sums, "nary | balanced | chain")->capture_default_str();
  app->add_option("--max-decisions", f.max_decisions, "0 = unlimited")->capture_default_str();
  app->add_flag("-q,--quiet", f.quiet, "Print only the verdict");
}

SolverConfig solver_config(const SolveFlags& f) {
  SolverConfig c;
  c.msw = f.msw;
  c.timeout_s = f.timeout;
  c.split = parse_split(f.split);
  c.branch = parse_branch(f.branch);
  c.max_decisions = f.max_decisions;
  c.validate();
  return c;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

int report(const ConstraintSystem& sys, const Verdict& v, bool quiet) {
  std::cout << to_string(v.outcome) << '\n';
  if (quiet) return exit_code(v.outcome);
  const auto& s = v.stats;
  std::cout << "decisions " << s.decisions << "\npropagations " << s.propagations << "\nconflicts " << s.conflicts
            << "\nmax_depth " << s.max_depth << "\nwall_s " << s.wall_s << '\n';
  if (v.candidate) {
    for (std::size_t i = 0; i < sys.num_vars(); ++i) {
      const Variable& var = sys.variables()[i];
      if (!var.auxiliary) std::cout << var.name << " in " << (*v.candidate)[var_id(i)] << '\n';
    }
  }
  return exit_code(v.outcome);
}

SigmoidOptions sigmoid_options(const std::string& encoding, double width, const std::string& range) {
  SigmoidOptions o;
  o.encoding = parse_encoding(encoding);
  o.approx_width = width;
  const auto colon = range.find(':', 1);
  if (colon == std::string::npos) throw std::invalid_argument("--approx-range expects lo:hi");
  o.approx_lo = std::stod(range.substr(0, colon));
  o.approx_hi = std::stod(range.substr(colon + 1));
  o.validate();
  return o;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Interval constraint propagation verifier for sigmoid networks"};
  app.require_subcommand(1);

  SolveFlags flags;
  std::string encoding = "dedicated";
  double approx_width = 0.5;
  std::string approx_range = "-8:8";

  auto* solve_cmd = app.add_subcommand("solve", "Solve a constraint system file");
  std::string system_file;
  solve_cmd->add_option("file", system_file, "Constraint system")->required();
  solve_cmd->add_option("--encoding", encoding, "Sigmoid lowering: dedicated | compositional | approx")
      ->capture_default_str();
  solve_cmd->add_option("--approx-width", approx_width)->capture_default_str();
  solve_cmd->add_option("--approx-range", approx_range)->capture_default_str();
  add_solve_flags(solve_cmd, flags);

  auto* verify_cmd = app.add_subcommand("verify", "Check a property of a network");
  std::string net_file;
  std::string property;
  bool dump = false;
  verify_cmd->add_option("--net", net_file, "Network JSON")->required();
  verify_cmd->add_option("--property", property, "etcs:A|B|C|D|severe or mnist:<csv>:<index>:<rival>")->required();
  verify_cmd->add_option("--encoding", encoding, "dedicated | compositional | approx")->capture_default_str();
  verify_cmd->add_option("--approx-width", approx_width)->capture_default_str();
  verify_cmd->add_option("--approx-range", approx_range)->capture_default_str();
  verify_cmd->add_flag("--dump", dump, "Print the constraint system instead of solving");
  add_solve_flags(verify_cmd, flags);

  auto* bench_cmd = app.add_subcommand("bench", "Run a benchmark matrix");
  std::string matrix_file;
  std::string out_file;
  bench_cmd->add_option("--matrix", matrix_file, "JSON manifest")->required();
  bench_cmd->add_option("--out", out_file, "CSV output (stdout if omitted)");

  auto* gen_cmd = app.add_subcommand("gen", "Generate benchmark inputs");
  gen_cmd->require_subcommand(1);
  auto* gen_sum_cmd = gen_cmd->add_subcommand("sum", "Print the sum_n system");
  int sum_n = 1;
  gen_sum_cmd->add_option("n", sum_n)->required();
  auto* gen_etcs_cmd = gen_cmd->add_subcommand("etcs-data", "Print labelled ETCS samples as CSV");
  std::size_t count = 0;
  std::uint64_t seed = 1;
  gen_etcs_cmd->add_option("count", count)->required();
  gen_etcs_cmd->add_option("--seed", seed)->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kExitInputError;
  }

  try {
    if (solve_cmd->parsed()) {
      const auto opts = sigmoid_options(encoding, approx_width, approx_range);
      const auto cfg = solver_config(flags);
      const auto sys = apply_sum_form(parse_system(read_file(system_file), opts), parse_sum_form(flags.sums));
      return report(sys, solve(sys, cfg), flags.quiet);
    }
    if (verify_cmd->parsed()) {
      const auto opts = sigmoid_options(encoding, approx_width, approx_range);
      const auto cfg = solver_config(flags);
      const auto net = load_network(net_file);
      const auto sys = apply_sum_form(build_property(property, net, opts), parse_sum_form(flags.sums));
      if (dump) {
        std::cout << to_text(sys);
        return 0;
      }
      return report(sys, solve(sys, cfg), flags.quiet);
    }
    if (bench_cmd->parsed()) {
      const auto spec = load_matrix(matrix_file);
      if (out_file.empty()) {
        run_matrix(spec, &std::cout);
      } else {
        std::ofstream out(out_file);
        if (!out) throw std::runtime_error("cannot write " + out_file);
        run_matrix(spec, &out);
      }
      return 0;
    }
    if (gen_sum_cmd->parsed()) {
      std::cout << gen_sum_text(sum_n);
      return 0;
    }
    if (gen_etcs_cmd->parsed()) {
      write_etcs_data(std::cout, gen_etcs_data(count, seed));
      return 0;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInputError;
  }
  return kExitInputError;
}
