// knapfeat command-line tool: compute, verify, generate, hcurve,
// normalize and project workflows over 0-1 knapsack instance files.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "knapfeat/knapfeat.hpp"

namespace {

namespace fs = std::filesystem;
using namespace knapfeat;

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;  // one or more instances failed to process
constexpr int kExitUsage = 2;    // bad flags or unparsable command line

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw MalformedInput("cannot open '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

/// Stream sink: --out file when given, stdout otherwise.
class OutputTarget {
public:
  explicit OutputTarget(const std::string& path) {
    if (!path.empty()) {
      file_.open(path, std::ios::binary);
      if (!file_) throw MalformedInput("cannot open '" + path + "' for writing");
    }
  }
  std::ostream& stream() { return file_.is_open() ? file_ : std::cout; }

private:
  std::ofstream file_;
};

struct CommonOptions {
  double alpha = 0.9;
  std::uint64_t seed = 1;
  unsigned threads = std::max(1u, std::thread::hardware_concurrency());
  std::int64_t capacity_budget = kDefaultCapacityBudget;
  std::string format = "canonical";
  std::string out;

  InstanceFormat instance_format() const {
    return format == "literature" ? InstanceFormat::literature : InstanceFormat::canonical;
  }
};

const CLI::Validator kOpenUnitInterval(
    [](std::string& value) -> std::string {
      try {
        const double v = std::stod(value);
        if (v > 0.0 && v < 1.0) return {};
      } catch (...) {
      }
      return "must lie strictly between 0 and 1";
    },
    "(0,1)");

void add_common_flags(CLI::App& cmd, CommonOptions& opts, bool with_format = true) {
  cmd.add_option("--alpha", opts.alpha, "Elbow threshold in (0,1)")
      ->check(kOpenUnitInterval);
  cmd.add_option("--seed", opts.seed, "Master seed; all randomness derives from it");
  cmd.add_option("--threads", opts.threads, "Worker threads for per-instance work")
      ->check(CLI::PositiveNumber);
  cmd.add_option("--capacity-budget", opts.capacity_budget,
                 "Largest allowed capacity-indexed table, in entries")
      ->check(CLI::PositiveNumber);
  if (with_format)
    cmd.add_option("--format", opts.format, "Instance file format")
        ->check(CLI::IsMember({"canonical", "literature"}));
  cmd.add_option("--out", opts.out, "Output file (stdout when omitted)");
}

int run_compute(const std::vector<std::string>& files, const CommonOptions& opts,
                bool diag_solve) {
  ExtractConfig config;
  config.alpha = opts.alpha;
  config.capacity_budget = opts.capacity_budget;
  config.solver_diagnostic = diag_solve;

  std::vector<std::optional<FeatureVector>> results(files.size());
  std::vector<std::string> errors(files.size());
  parallel_for(files.size(), opts.threads, [&](std::size_t i) {
    try {
      const KnapsackInstance inst =
          KnapsackInstance::parse(read_file(files[i]), opts.instance_format());
      results[i] = extract(inst, config);
    } catch (const std::exception& e) {
      errors[i] = e.what();
    }
  });

  std::vector<std::pair<std::string, FeatureVector>> rows;
  bool any_failed = false;
  for (std::size_t i = 0; i < files.size(); ++i) {
    if (results[i]) {
      rows.emplace_back(files[i], *results[i]);
    } else {
      any_failed = true;
      std::cerr << files[i] << ": " << errors[i] << '\n';
    }
  }

  OutputTarget target(opts.out);
  write_feature_csv(target.stream(), rows, diag_solve);
  return any_failed ? kExitFailure : kExitOk;
}

int run_verify(std::size_t count, std::int64_t c_max, const CommonOptions& opts) {
  const std::vector<KnapsackInstance> instances = generate_control(count, opts.seed, c_max);
  std::vector<VerifyReport> reports(instances.size());
  parallel_for(instances.size(), opts.threads, [&](std::size_t i) {
    char id[32];
    std::snprintf(id, sizeof id, "control_%06zu", i + 1);
    try {
      reports[i] = verify_instance(instances[i], derive_seed(opts.seed, i), opts.alpha, id,
                                   opts.capacity_budget);
    } catch (const std::exception& e) {
      // An exception must not escape the worker; report it as a failure.
      reports[i].instance_id = id;
      reports[i].checks.push_back({"verification_ran", false, e.what()});
    }
  });

  OutputTarget target(opts.out);
  std::ostream& os = target.stream();
  const bool csv = !opts.out.empty();
  if (csv) os << "instance,check,pass\n";
  std::size_t failures = 0;
  for (const VerifyReport& report : reports) {
    for (const CheckResult& check : report.checks) {
      if (!check.pass) ++failures;
      if (csv) {
        os << report.instance_id << ',' << check.name << ',' << (check.pass ? 1 : 0) << '\n';
      } else {
        os << report.instance_id << ' ' << check.name << ' '
           << (check.pass ? "PASS" : "FAIL");
        if (!check.detail.empty()) os << ' ' << check.detail;
        os << '\n';
      }
    }
  }
  std::cerr << "verified " << instances.size() << " instances (seed " << opts.seed
            << "), " << failures << " failing checks\n";
  return failures == 0 ? kExitOk : kExitFailure;
}

int run_generate(std::size_t count, std::int64_t c_max, const std::string& out_dir,
                 const CommonOptions& opts) {
  const std::vector<KnapsackInstance> instances = generate_control(count, opts.seed, c_max);
  fs::create_directories(out_dir);
  for (std::size_t i = 0; i < instances.size(); ++i) {
    char name[32];
    std::snprintf(name, sizeof name, "control_%06zu.txt", i + 1);
    std::ofstream out(fs::path(out_dir) / name, std::ios::binary);
    if (!out) throw MalformedInput("cannot write into '" + out_dir + "'");
    out << instances[i].serialize();
  }
  std::cerr << "wrote " << instances.size() << " instances to " << out_dir << '\n';
  return kExitOk;
}

int run_hcurve(const std::string& file, std::size_t g_max, const CommonOptions& opts) {
  const KnapsackInstance inst =
      KnapsackInstance::parse(read_file(file), opts.instance_format());
  const std::vector<std::int64_t> weights = inst.sorted_weights();
  const std::vector<double> curve = h_curve(weights, std::min(g_max, weights.size()));
  OutputTarget target(opts.out);
  std::ostream& os = target.stream();
  os << "g,h\n";
  for (std::size_t g = 1; g <= curve.size(); ++g)
    os << g << ',' << format_double(curve[g - 1]) << '\n';
  return kExitOk;
}

int run_normalize(const std::string& input, const std::string& params_in,
                  const std::string& params_out, const CommonOptions& opts) {
  std::ifstream in(input, std::ios::binary);
  if (!in) throw MalformedInput("cannot open '" + input + "'");
  const CsvTable table = read_csv(in);

  std::array<std::size_t, kFeatureCount> columns{};
  for (std::size_t idx = 0; idx < kFeatureCount; ++idx)
    columns[idx] = table.column(kFeatureNames[idx]);
  const bool has_instance = table.has_column("instance");
  const std::size_t instance_column = has_instance ? table.column("instance") : 0;

  std::vector<std::array<std::optional<double>, kFeatureCount>> values;
  values.reserve(table.rows.size());
  for (const std::vector<std::string>& row : table.rows) {
    std::array<std::optional<double>, kFeatureCount> entry;
    for (std::size_t idx = 0; idx < kFeatureCount; ++idx)
      entry[idx] = parse_csv_value(row[columns[idx]]);
    values.push_back(entry);
  }

  NormalizationParams params = [&] {
    if (!params_in.empty()) {
      std::ifstream pin(params_in, std::ios::binary);
      if (!pin) throw MalformedInput("cannot open '" + params_in + "'");
      return NormalizationParams::load(pin);
    }
    return NormalizationParams::fit(values);
  }();
  if (!params_out.empty()) {
    std::ofstream pout(params_out, std::ios::binary);
    if (!pout) throw MalformedInput("cannot open '" + params_out + "' for writing");
    params.save(pout);
  }

  OutputTarget target(opts.out);
  std::ostream& os = target.stream();
  if (has_instance) os << "instance,";
  for (std::size_t idx = 0; idx < kFeatureCount; ++idx)
    os << kFeatureNames[idx] << (idx + 1 < kFeatureCount ? ',' : '\n');
  for (std::size_t r = 0; r < values.size(); ++r) {
    if (has_instance) os << table.rows[r][instance_column] << ',';
    for (std::size_t idx = 0; idx < kFeatureCount; ++idx) {
      const std::optional<double>& raw = values[r][idx];
      os << (raw ? format_double(params.apply_one(idx, *raw)) : "NA")
         << (idx + 1 < kFeatureCount ? ',' : '\n');
    }
  }
  return kExitOk;
}

int run_project(const std::string& input, const CommonOptions& opts) {
  std::ifstream in(input, std::ios::binary);
  if (!in) throw MalformedInput("cannot open '" + input + "'");
  const CsvTable table = read_csv(in);

  // The last four inputs come from an external feature set; their absence
  // is its own error so callers know what to merge in.
  for (std::size_t idx = 5; idx < kProjectionInputCount; ++idx)
    if (!table.has_column(kProjectionInputNames[idx]))
      throw MissingExternalFeature(std::string("externally supplied column '") +
                                   kProjectionInputNames[idx] + "' is missing");
  std::array<std::size_t, kProjectionInputCount> columns{};
  for (std::size_t idx = 0; idx < kProjectionInputCount; ++idx)
    columns[idx] = table.column(kProjectionInputNames[idx]);
  const bool has_instance = table.has_column("instance");
  const std::size_t instance_column = has_instance ? table.column("instance") : 0;

  OutputTarget target(opts.out);
  std::ostream& os = target.stream();
  if (has_instance) os << "instance,";
  os << "z1,z2\n";
  bool any_failed = false;
  for (std::size_t r = 0; r < table.rows.size(); ++r) {
    std::array<double, kProjectionInputCount> inputs{};
    bool complete = true;
    for (std::size_t idx = 0; idx < kProjectionInputCount; ++idx) {
      const std::optional<double> value = parse_csv_value(table.rows[r][columns[idx]]);
      if (!value) {
        complete = false;
        break;
      }
      inputs[idx] = *value;
    }
    if (!complete) {
      any_failed = true;
      std::cerr << "row " << r + 1 << ": absent projection input\n";
      continue;
    }
    const ProjectionPoint point = project(inputs);
    if (has_instance) os << table.rows[r][instance_column] << ',';
    os << format_double(point.z1) << ',' << format_double(point.z2) << '\n';
  }
  return any_failed ? kExitFailure : kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact 0-1 knapsack instance features from inclusionwise maximal solutions"};
  app.require_subcommand(1);
  app.option_defaults()->always_capture_default();  // show defaults in --help
  CommonOptions opts;

  auto* compute = app.add_subcommand("compute", "Extract the feature CSV for instance files");
  std::vector<std::string> compute_files;
  bool diag_solve = false;
  compute->add_option("files", compute_files, "Instance files")->required();
  add_common_flags(*compute, opts);
  compute->add_flag("--diag-solve", diag_solve,
                    "Also time the exact solver (extra non-canonical column)");

  auto* verify = app.add_subcommand(
      "verify", "Cross-check the fast algorithms against brute force on random instances");
  std::size_t verify_count = 1000;
  std::int64_t verify_c_max = 100000;
  verify->add_option("--count", verify_count, "Number of random instances")
      ->check(CLI::PositiveNumber);
  verify->add_option("--c-max", verify_c_max, "Largest random capacity")
      ->check(CLI::Range(std::int64_t{2}, kMaxCapacity));
  add_common_flags(*verify, opts, /*with_format=*/false);

  auto* generate = app.add_subcommand("generate", "Write random control instances to a directory");
  std::size_t generate_count = 100;
  std::int64_t generate_c_max = 100000;
  std::string out_dir;
  generate->add_option("--count", generate_count, "Number of instances")
      ->check(CLI::PositiveNumber);
  generate->add_option("--c-max", generate_c_max, "Largest random capacity")
      ->check(CLI::Range(std::int64_t{2}, kMaxCapacity));
  generate->add_option("--out-dir", out_dir, "Target directory")->required();
  add_common_flags(*generate, opts, /*with_format=*/false);

  auto* hcurve = app.add_subcommand("hcurve", "Emit the clustering cost curve h(g) as CSV");
  std::string hcurve_file;
  std::size_t g_max = 40;
  hcurve->add_option("file", hcurve_file, "Instance file")->required();
  hcurve->add_option("--g-max", g_max, "Largest group count to evaluate")
      ->check(CLI::PositiveNumber);
  add_common_flags(*hcurve, opts);

  auto* normalize = app.add_subcommand(
      "normalize", "Normalize a feature CSV (log for count and timings, min-max otherwise)");
  std::string normalize_input, params_in, params_out;
  normalize->add_option("features", normalize_input, "Feature CSV from 'compute'")->required();
  normalize->add_option("--params", params_in, "Apply previously fitted parameters");
  normalize->add_option("--params-out", params_out, "Write the fitted parameters here");
  add_common_flags(*normalize, opts, /*with_format=*/false);

  auto* project = app.add_subcommand(
      "project", "Project normalized features to the 2D instance space");
  std::string project_input;
  project->add_option("features", project_input,
                      "CSV with the 9 projection inputs (4 of them externally supplied)")
      ->required();
  add_common_flags(*project, opts, /*with_format=*/false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return e.get_exit_code() == static_cast<int>(CLI::ExitCodes::Success) ? kExitOk
                                                                          : kExitUsage;
  }

  try {
    if (*compute) return run_compute(compute_files, opts, diag_solve);
    if (*verify) return run_verify(verify_count, verify_c_max, opts);
    if (*generate) return run_generate(generate_count, generate_c_max, out_dir, opts);
    if (*hcurve) return run_hcurve(hcurve_file, g_max, opts);
    if (*normalize) return run_normalize(normalize_input, params_in, params_out, opts);
    if (*project) return run_project(project_input, opts);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitFailure;
  }
  return kExitUsage;
}
