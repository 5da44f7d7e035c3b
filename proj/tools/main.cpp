// jtplan — command-line front end for the jump-table planning toolkit.
//
// Exit codes: 0 success, 1 runtime/data error, 2 usage error.

#include <charconv>
#include <chrono>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include <CLI11.hpp>

#include "jtplan/jtplan.hpp"

namespace {

using namespace jtplan;

// Flag combinations CLI11 cannot express are reported through this; main
// maps it to exit code 2 like any other usage problem.
class usage_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string read_input(const std::string& path) {
  if (path == "-") {
    std::ostringstream buffer;
    buffer << std::cin.rdbuf();
    return buffer.str();
  }
  std::ifstream in(path, std::ios::binary);
  if (!in)
    throw std::runtime_error("cannot open '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

CasesInput load_cases(const std::string& path) {
  CasesInput input = parse_cases(read_input(path));
  if (input.duplicates_dropped > 0)
    std::cerr << "note: dropped " << input.duplicates_dropped
              << " duplicate case value(s)\n";
  return input;
}

Fraction parse_density_flag(const std::string& text) {
  const Fraction f = parse_fraction(text);
  if (f.num == 0 || f.num > f.den || f.den > (std::uint64_t{1} << 32))
    throw std::invalid_argument("density must be in (0, 1]");
  return f;
}

const CLI::Validator density_validator(
    [](std::string& s) -> std::string {
      try {
        parse_density_flag(s);
      } catch (const std::exception& e) {
        return e.what();
      }
      return {};
    },
    "DENSITY");

PredictorModel parse_model_flag(const std::string& kind,
                                const std::string& cond) {
  PredictorModel model;
  if (kind == "last_target") {
    model.kind = PredictorModel::Kind::last_target;
    model.k = 1;
  } else if (kind == "capacity_k" || kind.rfind("capacity_k:", 0) == 0) {
    model.kind = PredictorModel::Kind::capacity_k;
    if (kind.size() > 11)
      model.k = static_cast<std::uint32_t>(
          detail::parse_u64(kind.substr(11), "model k"));
    if (model.k == 0)
      throw std::invalid_argument("model k must be >= 1");
  } else {
    throw std::invalid_argument(
        "model must be last_target or capacity_k[:K], got '" + kind + "'");
  }
  if (cond == "always_correct")
    model.cond_model = PredictorModel::CondModel::always_correct;
  else if (cond == "bimodal_2bit")
    model.cond_model = PredictorModel::CondModel::bimodal_2bit;
  else
    throw std::invalid_argument(
        "cond model must be always_correct or bimodal_2bit, got '" + cond + "'");
  return model;
}

const CLI::Validator model_validator(
    [](std::string& s) -> std::string {
      try {
        parse_model_flag(s, "bimodal_2bit");
      } catch (const std::exception& e) {
        return e.what();
      }
      return {};
    },
    "MODEL");

Penalties parse_penalties_flag(const std::string& text) {
  std::vector<double> parts;
  std::stringstream ss{std::string(text)};
  std::string item;
  while (std::getline(ss, item, ','))
    parts.push_back(std::stod(item));
  if (parts.size() != 3)
    throw std::invalid_argument(
        "penalties must be three comma-separated numbers: "
        "indirect_miss,cond_miss,compare");
  return Penalties{parts[0], parts[1], parts[2]};
}

std::pair<std::int64_t, std::int64_t> parse_range_flag(const std::string& text) {
  const auto colon = text.find(':');
  if (colon == std::string::npos)
    throw std::invalid_argument("range must be LO:HI");
  std::int64_t lo = 0;
  std::int64_t hi = 0;
  const auto a = std::from_chars(text.data(), text.data() + colon, lo);
  const auto b =
      std::from_chars(text.data() + colon + 1, text.data() + text.size(), hi);
  if (a.ec != std::errc{} || a.ptr != text.data() + colon ||
      b.ec != std::errc{} || b.ptr != text.data() + text.size())
    throw std::invalid_argument("range must be LO:HI with integer bounds");
  return {lo, hi};
}

std::string mode_string(const ClusterParams& p) {
  std::string out = p.paper_literal_range ? "literal-range" : "entry-count";
  out += p.strict_density ? ",strict-density" : ",inclusive-density";
  return out;
}

void print_params_header(std::ostream& os, const ClusterParams& p) {
  os << "# params: density=" << p.density_min.to_string()
     << " max=" << p.max_entries << " mode=" << mode_string(p) << "\n";
}

// ---------------------------------------------------------------------------
// cluster / oracle

struct ClusterOpts {
  std::string input = "-";
  std::string density = "2/5";
  std::uint64_t max_entries = 64;
  bool strict_density = false;
  bool paper_literal_range = false;
  std::string algo = "windowed";
  std::uint64_t quadratic_limit = 50000;
  bool json = false;
  std::string emit_plan;
  std::uint32_t entry_width = 4;
};

ClusterParams to_params(const ClusterOpts& o) {
  ClusterParams params;
  params.density_min = parse_density_flag(o.density);
  params.max_entries = o.max_entries;
  params.strict_density = o.strict_density;
  params.paper_literal_range = o.paper_literal_range;
  return params;
}

int run_cluster(const ClusterOpts& o) {
  const CasesInput input = load_cases(o.input);
  const ClusterParams params = to_params(o);
  const Partition partition =
      o.algo == "quadratic"
          ? cluster_quadratic(input.cases, params, o.quadratic_limit)
          : cluster_windowed(input.cases, params);
  if (!o.emit_plan.empty()) {
    const LoweringPlan plan = build_plan(input.cases, partition, o.entry_width);
    std::ofstream out(o.emit_plan, std::ios::binary);
    if (!out)
      throw std::runtime_error("cannot write '" + o.emit_plan + "'");
    out << plan_to_json(plan).dump(2) << "\n";
  }
  if (o.json) {
    std::cout << partition_to_json(input.cases, params, partition).dump(2)
              << "\n";
    return 0;
  }
  std::cout << "# jtplan cluster algo=" << o.algo << "\n";
  print_params_header(std::cout, params);
  std::cout << "# input: " << input.cases.size() << " cases\n";
  const std::vector<ClusterStats> stats = cluster_stats(input.cases, partition);
  for (std::size_t k = 0; k < partition.ranges.size(); ++k) {
    const IndexRange& r = partition.ranges[k];
    std::cout << "cluster " << k << ": indices [" << r.lo << ", " << r.hi
              << "] values [" << input.cases[r.lo] << ", " << input.cases[r.hi]
              << "] count " << stats[k].count << " span " << stats[k].span
              << " density " << stats[k].density.to_string() << " "
              << (stats[k].kind == ClusterKind::singleton ? "singleton"
                                                          : "table")
              << "\n";
  }
  std::cout << "clusters: " << partition.cluster_count() << "\n";
  return 0;
}

int run_oracle(const ClusterOpts& o) {
  const CasesInput input = load_cases(o.input);
  const ClusterParams params = to_params(o);
  const OracleResult result = cluster_oracle(input.cases, params);
  if (o.json) {
    ordered_json j;
    j["params"] = params_to_json(params);
    j["min_clusters"] = result.min_clusters;
    ordered_json witness = ordered_json::array();
    for (const IndexRange& r : result.witness.ranges)
      witness.push_back({r.lo, r.hi});
    j["witness"] = std::move(witness);
    std::cout << j.dump(2) << "\n";
    return 0;
  }
  std::cout << "# jtplan oracle\n";
  print_params_header(std::cout, params);
  std::cout << "minimum clusters: " << result.min_clusters << "\nwitness:";
  for (const IndexRange& r : result.witness.ranges)
    std::cout << " [" << r.lo << ", " << r.hi << "]";
  std::cout << "\n";
  return 0;
}

// ---------------------------------------------------------------------------
// gen

struct GenCasesOpts {
  std::string kind = "sparse_uniform";
  std::uint64_t n = 0;
  std::string range = "0:1099511627776";
  std::uint64_t groups = 0;
  std::uint64_t group_span = 0;
  std::uint64_t seed = 0;
  bool json = false;
};

int run_gen_cases(const GenCasesOpts& o) {
  GeneratorSpec spec;
  if (o.kind == "dense_opcode")
    spec.kind = GeneratorSpec::Kind::dense_opcode;
  else if (o.kind == "sparse_uniform")
    spec.kind = GeneratorSpec::Kind::sparse_uniform;
  else
    spec.kind = GeneratorSpec::Kind::grouped;
  spec.group_count = o.groups;
  spec.group_span = o.group_span;
  spec.n = o.n;
  if (spec.kind == GeneratorSpec::Kind::grouped && spec.n == 0)
    spec.n = o.groups * o.group_span;
  if (spec.n == 0)
    throw usage_error("--n is required (or --groups with --group-span)");
  std::tie(spec.lo, spec.hi) = parse_range_flag(o.range);
  spec.seed = o.seed;
  const CaseSet cases = generate_cases(spec);
  if (o.json)
    std::cout << cases_to_json(cases).dump() << "\n";
  else
    std::cout << serialize_cases_lines(cases);
  return 0;
}

struct GenTraceOpts {
  std::string cases_path;
  std::string dist = "uniform";
  std::uint64_t length = 0;
  std::uint64_t seed = 0;
  bool json = false;
};

int run_gen_trace(const GenTraceOpts& o) {
  const CasesInput input = load_cases(o.cases_path);
  TraceDistribution dist = TraceDistribution::uniform;
  double zipf_s = 1.0;
  if (o.dist == "uniform") {
    dist = TraceDistribution::uniform;
  } else if (o.dist == "cyclic") {
    dist = TraceDistribution::cyclic;
  } else if (o.dist == "zipf" || o.dist.rfind("zipf:", 0) == 0) {
    dist = TraceDistribution::zipf;
    if (o.dist.size() > 5)
      zipf_s = std::stod(o.dist.substr(5));
  } else {
    throw usage_error("--dist must be uniform, cyclic or zipf[:S]");
  }
  const Trace trace =
      generate_trace(input.cases, dist, o.length, o.seed, zipf_s);
  if (o.json) {
    std::cout << trace_to_json(trace).dump() << "\n";
  } else {
    for (const std::int64_t s : trace.selectors)
      std::cout << s << "\n";
  }
  return 0;
}

// ---------------------------------------------------------------------------
// simulate

struct SimulateOpts {
  std::string input;
  std::string plan_path;
  std::string trace_path;
  ClusterOpts clustering;
  std::uint32_t entry_width = 4;
  std::string model = "capacity_k:64";
  std::string cond_model = "bimodal_2bit";
  std::string penalties = "20,15,1";
};

int run_simulate(const SimulateOpts& o) {
  if (o.plan_path.empty() == o.input.empty())
    throw usage_error("provide exactly one of an input path or --plan");
  LoweringPlan plan;
  if (!o.plan_path.empty()) {
    plan = plan_from_json(nlohmann::json::parse(read_input(o.plan_path)));
  } else {
    const CasesInput input = load_cases(o.input);
    const ClusterParams params = to_params(o.clustering);
    plan = build_plan(input.cases, cluster_windowed(input.cases, params),
                      o.entry_width);
  }
  const Trace trace = parse_trace(read_input(o.trace_path));
  const PredictorModel model = parse_model_flag(o.model, o.cond_model);
  const Penalties penalties = parse_penalties_flag(o.penalties);
  const SimReport report = simulate(plan, trace, model, penalties);
  std::cout << report_to_json(report, model, penalties).dump(2) << "\n";
  return 0;
}

// ---------------------------------------------------------------------------
// compare

struct CompareOpts {
  std::string input = "-";
  std::vector<std::string> densities{"2/5"};
  std::vector<std::uint64_t> maxes{64};
  bool strict_density = false;
  bool paper_literal_range = false;
  std::vector<std::string> traces;
  std::uint32_t entry_width = 4;
  std::string model = "capacity_k:64";
  std::string cond_model = "bimodal_2bit";
  std::string penalties = "20,15,1";
  std::string format = "csv";
};

int run_compare(const CompareOpts& o) {
  const CasesInput input = load_cases(o.input);
  std::vector<Trace> traces;
  traces.reserve(o.traces.size());
  for (const std::string& path : o.traces)
    traces.push_back(parse_trace(read_input(path)));

  std::vector<ClusterParams> grid;
  for (const std::string& d : o.densities) {
    for (const std::uint64_t m : o.maxes) {
      ClusterParams p;
      p.density_min = parse_density_flag(d);
      p.max_entries = m;
      p.strict_density = o.strict_density;
      p.paper_literal_range = o.paper_literal_range;
      grid.push_back(p);
    }
  }
  const PredictorModel model = parse_model_flag(o.model, o.cond_model);
  const Penalties penalties = parse_penalties_flag(o.penalties);
  const std::vector<CompareRow> rows = compare_plans(
      input.cases, traces, grid, model, penalties, o.entry_width);
  if (o.format == "json") {
    ordered_json j;
    j["model"] = model_to_json(model);
    ordered_json pen;
    pen["indirect_miss"] = penalties.indirect_miss;
    pen["cond_miss"] = penalties.cond_miss;
    pen["compare"] = penalties.compare;
    j["penalties"] = std::move(pen);
    j["entry_width_bytes"] = o.entry_width;
    j["rows"] = compare_rows_to_json(rows)["rows"];
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << "# jtplan compare model=" << o.model
              << " cond_model=" << o.cond_model << " penalties=" << o.penalties
              << " entry_width=" << o.entry_width << " traces=" << traces.size()
              << "\n";
    std::cout << compare_rows_to_csv(rows);
  }
  return 0;
}

// ---------------------------------------------------------------------------
// bench

struct BenchOpts {
  std::vector<std::uint64_t> sizes;
  std::uint32_t repeats = 3;
  std::string density = "2/5";
  std::uint64_t max_entries = 64;
  std::uint64_t quadratic_limit = 50000;
  std::uint64_t seed = 1;
};

double time_seconds(const std::function<std::size_t()>& work) {
  const auto start = std::chrono::steady_clock::now();
  volatile std::size_t sink = work();
  const auto stop = std::chrono::steady_clock::now();
  (void)sink;
  return std::chrono::duration<double>(stop - start).count();
}

int run_bench(const BenchOpts& o) {
  ClusterParams params;
  params.density_min = parse_density_flag(o.density);
  params.max_entries = o.max_entries;
  std::cout << "# jtplan bench seed=" << o.seed << " repeats=" << o.repeats
            << " quadratic_limit=" << o.quadratic_limit << "\n";
  print_params_header(std::cout, params);
  std::cout << "n,algo,rep,seconds\n";
  char buffer[64];
  for (const std::uint64_t n : o.sizes) {
    GeneratorSpec spec;
    spec.kind = GeneratorSpec::Kind::sparse_uniform;
    spec.n = static_cast<std::size_t>(n);
    spec.lo = 0;
    spec.hi = static_cast<std::int64_t>(8 * n);
    spec.seed = o.seed;
    const CaseSet cases = generate_cases(spec);
    for (std::uint32_t rep = 0; rep < o.repeats; ++rep) {
      const double s = time_seconds(
          [&] { return cluster_windowed(cases, params).cluster_count(); });
      std::snprintf(buffer, sizeof buffer, "%.6f", s);
      std::cout << n << ",windowed," << rep << "," << buffer << "\n";
    }
    if (n <= o.quadratic_limit) {
      for (std::uint32_t rep = 0; rep < o.repeats; ++rep) {
        const double s = time_seconds([&] {
          return cluster_quadratic(cases, params, o.quadratic_limit)
              .cluster_count();
        });
        std::snprintf(buffer, sizeof buffer, "%.6f", s);
        std::cout << n << ",quadratic," << rep << "," << buffer << "\n";
      }
    }
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "jtplan: plan switch lowerings by clustering case values into "
      "bounded-size, minimum-density jump tables, and estimate the "
      "branch-prediction consequences by trace simulation"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "jtplan 1.0.0");

  ClusterOpts cluster_opts;
  CLI::App* cluster_cmd = app.add_subcommand(
      "cluster", "Partition case values into jump-table clusters");
  cluster_cmd->add_option("input", cluster_opts.input,
                          "Case values file, or - for stdin");
  cluster_cmd
      ->add_option("--density", cluster_opts.density,
                   "Minimum table density as a fraction (2/5) or decimal (0.4)")
      ->check(density_validator)
      ->capture_default_str();
  cluster_cmd
      ->add_option("--max", cluster_opts.max_entries,
                   "Maximum jump-table entries")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  cluster_cmd->add_flag("--strict-density", cluster_opts.strict_density,
                        "Require density strictly above the threshold");
  cluster_cmd->add_flag(
      "--paper-literal-range", cluster_opts.paper_literal_range,
      "Bound the value span (hi-lo) instead of the entry count (hi-lo+1)");
  cluster_cmd->add_option("--algo", cluster_opts.algo, "Clustering algorithm")
      ->check(CLI::IsMember({"windowed", "quadratic"}))
      ->capture_default_str();
  cluster_cmd
      ->add_option("--quadratic-limit", cluster_opts.quadratic_limit,
                   "Input size cap for --algo quadratic")
      ->capture_default_str();
  cluster_cmd->add_flag("--json", cluster_opts.json, "Emit JSON");
  cluster_cmd->add_option("--emit-plan", cluster_opts.emit_plan,
                          "Also write the materialized lowering plan JSON here");
  cluster_cmd
      ->add_option("--entry-width", cluster_opts.entry_width,
                   "Table entry width in bytes for --emit-plan")
      ->check(CLI::IsMember({2, 4, 8}))
      ->capture_default_str();

  ClusterOpts oracle_opts;
  CLI::App* oracle_cmd = app.add_subcommand(
      "oracle", "Exhaustive minimum-cluster search (n <= 20)");
  oracle_cmd->add_option("input", oracle_opts.input,
                         "Case values file, or - for stdin");
  oracle_cmd
      ->add_option("--density", oracle_opts.density,
                   "Minimum table density as a fraction or decimal")
      ->check(density_validator)
      ->capture_default_str();
  oracle_cmd
      ->add_option("--max", oracle_opts.max_entries,
                   "Maximum jump-table entries")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  oracle_cmd->add_flag("--strict-density", oracle_opts.strict_density,
                       "Require density strictly above the threshold");
  oracle_cmd->add_flag(
      "--paper-literal-range", oracle_opts.paper_literal_range,
      "Bound the value span (hi-lo) instead of the entry count (hi-lo+1)");
  oracle_cmd->add_flag("--json", oracle_opts.json, "Emit JSON");

  CLI::App* gen_cmd = app.add_subcommand("gen", "Generate case sets or traces");
  gen_cmd->require_subcommand(1);

  GenCasesOpts gen_cases_opts;
  CLI::App* gen_cases_cmd =
      gen_cmd->add_subcommand("cases", "Generate a synthetic case-value set");
  gen_cases_cmd->add_option("--kind", gen_cases_opts.kind, "Set shape")
      ->check(CLI::IsMember({"dense_opcode", "sparse_uniform", "grouped"}))
      ->capture_default_str();
  gen_cases_cmd->add_option("--n", gen_cases_opts.n, "Number of case values");
  gen_cases_cmd
      ->add_option("--range", gen_cases_opts.range, "Value range LO:HI")
      ->capture_default_str();
  gen_cases_cmd->add_option("--groups", gen_cases_opts.groups,
                            "Group count (grouped kind)");
  gen_cases_cmd->add_option("--group-span", gen_cases_opts.group_span,
                            "Values per group (grouped kind)");
  gen_cases_cmd->add_option("--seed", gen_cases_opts.seed, "RNG seed")
      ->capture_default_str();
  gen_cases_cmd->add_flag("--json", gen_cases_opts.json, "Emit JSON");

  GenTraceOpts gen_trace_opts;
  CLI::App* gen_trace_cmd =
      gen_cmd->add_subcommand("trace", "Generate a selector trace");
  gen_trace_cmd
      ->add_option("--cases", gen_trace_opts.cases_path,
                   "Case values file to draw selectors from")
      ->required();
  gen_trace_cmd
      ->add_option("--dist", gen_trace_opts.dist,
                   "Distribution: uniform, cyclic, or zipf[:S]")
      ->capture_default_str();
  gen_trace_cmd->add_option("--length", gen_trace_opts.length, "Trace length")
      ->required()
      ->check(CLI::PositiveNumber);
  gen_trace_cmd->add_option("--seed", gen_trace_opts.seed, "RNG seed")
      ->capture_default_str();
  gen_trace_cmd->add_flag("--json", gen_trace_opts.json, "Emit JSON");

  SimulateOpts sim_opts;
  CLI::App* sim_cmd = app.add_subcommand(
      "simulate", "Replay a trace against a lowering plan");
  sim_cmd->add_option("input", sim_opts.input,
                      "Case values file (clustered with the flags below)");
  sim_cmd->add_option("--plan", sim_opts.plan_path,
                      "Lowering plan JSON produced elsewhere");
  sim_cmd->add_option("--trace", sim_opts.trace_path, "Selector trace file")
      ->required();
  sim_cmd
      ->add_option("--density", sim_opts.clustering.density,
                   "Minimum table density")
      ->check(density_validator)
      ->capture_default_str();
  sim_cmd
      ->add_option("--max", sim_opts.clustering.max_entries,
                   "Maximum jump-table entries")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  sim_cmd->add_flag("--strict-density", sim_opts.clustering.strict_density,
                    "Require density strictly above the threshold");
  sim_cmd->add_flag("--paper-literal-range",
                    sim_opts.clustering.paper_literal_range,
                    "Bound the value span instead of the entry count");
  sim_cmd->add_option("--entry-width", sim_opts.entry_width,
                      "Table entry width in bytes")
      ->check(CLI::IsMember({2, 4, 8}))
      ->capture_default_str();
  sim_cmd->add_option("--model", sim_opts.model,
                      "Indirect predictor: last_target or capacity_k[:K]")
      ->check(model_validator)
      ->capture_default_str();
  sim_cmd
      ->add_option("--cond-model", sim_opts.cond_model,
                   "Conditional predictor: bimodal_2bit or always_correct")
      ->check(CLI::IsMember({"bimodal_2bit", "always_correct"}))
      ->capture_default_str();
  sim_cmd
      ->add_option("--penalties", sim_opts.penalties,
                   "indirect_miss,cond_miss,compare cost weights")
      ->capture_default_str();

  CompareOpts compare_opts;
  CLI::App* compare_cmd = app.add_subcommand(
      "compare", "Cluster under a parameter grid and simulate each plan");
  compare_cmd->add_option("input", compare_opts.input,
                          "Case values file, or - for stdin");
  compare_cmd
      ->add_option("--densities", compare_opts.densities,
                   "Density grid, comma separated")
      ->delimiter(',')
      ->capture_default_str();
  compare_cmd
      ->add_option("--maxes", compare_opts.maxes,
                   "Max-entry grid, comma separated")
      ->delimiter(',')
      ->capture_default_str();
  compare_cmd->add_flag("--strict-density", compare_opts.strict_density,
                        "Require density strictly above the threshold");
  compare_cmd->add_flag("--paper-literal-range",
                        compare_opts.paper_literal_range,
                        "Bound the value span instead of the entry count");
  compare_cmd
      ->add_option("--trace", compare_opts.traces,
                   "Selector trace file (repeatable)")
      ->required();
  compare_cmd
      ->add_option("--entry-width", compare_opts.entry_width,
                   "Table entry width in bytes")
      ->check(CLI::IsMember({2, 4, 8}))
      ->capture_default_str();
  compare_cmd
      ->add_option("--model", compare_opts.model,
                   "Indirect predictor: last_target or capacity_k[:K]")
      ->check(model_validator)
      ->capture_default_str();
  compare_cmd
      ->add_option("--cond-model", compare_opts.cond_model,
                   "Conditional predictor: bimodal_2bit or always_correct")
      ->check(CLI::IsMember({"bimodal_2bit", "always_correct"}))
      ->capture_default_str();
  compare_cmd
      ->add_option("--penalties", compare_opts.penalties,
                   "indirect_miss,cond_miss,compare cost weights")
      ->capture_default_str();
  compare_cmd->add_option("--format", compare_opts.format, "Output format")
      ->check(CLI::IsMember({"csv", "json"}))
      ->capture_default_str();

  BenchOpts bench_opts;
  CLI::App* bench_cmd = app.add_subcommand(
      "bench", "Time windowed vs quadratic clustering on generated inputs");
  bench_cmd
      ->add_option("--sizes", bench_opts.sizes,
                   "Input sizes, comma separated")
      ->delimiter(',')
      ->required();
  bench_cmd->add_option("--repeats", bench_opts.repeats, "Repetitions per size")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  bench_cmd->add_option("--density", bench_opts.density, "Minimum table density")
      ->check(density_validator)
      ->capture_default_str();
  bench_cmd
      ->add_option("--max", bench_opts.max_entries, "Maximum jump-table entries")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  bench_cmd
      ->add_option("--quadratic-limit", bench_opts.quadratic_limit,
                   "Largest size the quadratic baseline is timed at")
      ->capture_default_str();
  bench_cmd->add_option("--seed", bench_opts.seed, "RNG seed")
      ->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (cluster_cmd->parsed())
      return run_cluster(cluster_opts);
    if (oracle_cmd->parsed())
      return run_oracle(oracle_opts);
    if (gen_cmd->parsed()) {
      if (gen_cases_cmd->parsed())
        return run_gen_cases(gen_cases_opts);
      return run_gen_trace(gen_trace_opts);
    }
    if (sim_cmd->parsed())
      return run_simulate(sim_opts);
    if (compare_cmd->parsed())
      return run_compare(compare_opts);
    if (bench_cmd->parsed())
      return run_bench(bench_opts);
  } catch (const usage_error& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
