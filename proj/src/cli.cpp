#include "hddist/cli.hpp"

#include <CLI11.hpp>
#include <charconv>
#include <iostream>
#include <optional>

#include "hddist/boxplot.hpp"
#include "hddist/distance.hpp"
#include "hddist/error.hpp"
#include "hddist/evaluate.hpp"
#include "hddist/harness.hpp"
#include "hddist/io.hpp"
#include "hddist/learn.hpp"
#include "hddist/parallel.hpp"
#include "hddist/simgen.hpp"
#include "hddist/standardise.hpp"

namespace hddist {

namespace {

// Header detection for --header auto: the first non-empty line is a header if
// any of its cells is not a number.
bool looks_like_header(const std::string& text) {
  std::size_t start = 0;
  while (start < text.size()) {
    auto end = text.find('\n', start);
    if (end == std::string::npos) end = text.size();
    std::string line = text.substr(start, end - start);
    start = end + 1;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    std::size_t pos = 0;
    while (true) {
      const auto comma = line.find(',', pos);
      std::string cell = line.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
      const auto b = cell.find_first_not_of(" \t\r+");
      const auto e = cell.find_last_not_of(" \t\r");
      if (b == std::string::npos) return true;
      double v = 0.0;
      const auto [ptr, ec] = std::from_chars(cell.data() + b, cell.data() + e + 1, v);
      if (ec != std::errc() || ptr != cell.data() + e + 1) return true;
      if (comma == std::string::npos) break;
      pos = comma + 1;
    }
    return false;
  }
  return false;
}

DataMatrix load_matrix(const std::string& path, const std::string& header_mode) {
  const std::string text = read_file(path);
  bool header = false;
  if (header_mode == "yes") {
    header = true;
  } else if (header_mode == "auto") {
    header = looks_like_header(text);
  }
  return parse_matrix_csv(text, header);
}

// Fit a standardisation on `fit_data` and apply it to `data`. Boxplot output
// is capped when the two differ (new observations).
DataMatrix standardise_with(const DataMatrix& fit_data, const DataMatrix& data, StandardisationMethod method,
                            const LabelVector* labels, bool is_new_data, std::optional<BoxplotParams>* fitted = nullptr) {
  if (method == StandardisationMethod::boxplot) {
    auto params = fit_boxplot(fit_data);
    auto out = apply_boxplot(data, params, is_new_data);
    if (fitted) *fitted = std::move(params);
    return out;
  }
  const auto scaling = fit_linear_scaling(fit_data, method, labels);
  for (std::size_t j : scaling.zero_scale_columns)
    std::cerr << "warning: variable " << j + 1 << " has zero " << to_string(method) << " scale; set to 0\n";
  return apply_linear_scaling(data, scaling);
}

Interval parse_interval(const std::vector<double>& v, const char* what) {
  if (v.size() == 1) return {v[0], v[0]};
  if (v.size() == 2) return {v[0], v[1]};
  throw UsageError(std::string(what) + " takes one value or lo,hi");
}

struct SetupFlags {
  std::string setup = "simple_normal";
  std::size_t p = 0;
  std::size_t n_per_class = 0;
  double p_t = -1.0;
  double p_n = -1.0;
  std::vector<double> mean_diff;
  std::vector<double> sd_range;
  CLI::Option* setup_opt = nullptr;

  void add_to(CLI::App* app) {
    setup_opt = app->add_option("--setup", setup, "Named setup: simple_normal, simple_normal_099, ntn_01, ntn_05, ntn_09");
    app->add_option("--p", p, "Number of variables (overrides the setup)");
    app->add_option("--n-per-class", n_per_class, "Observations per class (overrides the setup)");
    app->add_option("--p-t", p_t, "Probability a variable is t2-distributed");
    app->add_option("--p-n", p_n, "Probability a variable is noise");
    app->add_option("--mean-diff", mean_diff, "Class mean difference: value or lo,hi")->delimiter(',');
    app->add_option("--sd-range", sd_range, "Standard deviation range lo,hi")->delimiter(',');
  }

  bool customised() const { return p_t >= 0.0 || p_n >= 0.0 || !mean_diff.empty() || !sd_range.empty(); }

  void apply(SetupSpec& spec) const {
    if (p > 0) spec.p = p;
    if (n_per_class > 0) spec.n_per_class = n_per_class;
    if (customised() && (setup_opt == nullptr || setup_opt->count() == 0)) spec.name = "custom";
    if (p_t >= 0.0) spec.p_t = p_t;
    if (p_n >= 0.0) spec.p_n = p_n;
    if (!mean_diff.empty()) spec.mean_diff = parse_interval(mean_diff, "--mean-diff");
    if (!sd_range.empty()) spec.sd_range = parse_interval(sd_range, "--sd-range");
  }
};

std::filesystem::path default_summary_path(const std::filesystem::path& out) {
  auto s = out;
  s.replace_extension();
  s += ".summary.json";
  return s;
}

}  // namespace

int run_cli(int argc, const char* const* argv) {
  CLI::App app{"Minkowski distances with per-variable standardisation for high-dimensional clustering and classification"};
  app.fallthrough();
  app.require_subcommand(1);
  app.set_version_flag("--version", "hddist 1.0.0");
  int threads = 0;
  app.add_option("--threads", threads, "Worker threads (default: HDDIST_NUM_THREADS or all cores)");

  // simulate
  auto* sim = app.add_subcommand("simulate", "Generate a train/test dataset from a simulation setup");
  SetupFlags sim_setup;
  sim_setup.add_to(sim);
  std::uint64_t sim_seed = 1;
  std::optional<std::size_t> sim_replicate;
  std::string sim_prefix;
  sim->add_option("--seed", sim_seed, "Seed");
  sim->add_option("--replicate", sim_replicate, "Derive the seed of this experiment replicate from --seed");
  sim->add_option("--out", sim_prefix, "Output prefix")->required();

  // standardise
  auto* stdz = app.add_subcommand("standardise", "Standardise the variables of a CSV matrix");
  std::string stdz_method, stdz_in, stdz_out, stdz_labels, stdz_fit, stdz_params_out, stdz_params_in;
  std::string stdz_header = "auto";
  stdz->add_option("--method", stdz_method, "Standardisation method")->required();
  stdz->add_option("--labels", stdz_labels, "Class labels of the fitting data (pooled methods)");
  stdz->add_option("--fit", stdz_fit, "Fit on this CSV instead of the input (boxplot output is then capped)");
  stdz->add_option("--params-out", stdz_params_out, "Write fitted boxplot parameters as JSON");
  stdz->add_option("--params-in", stdz_params_in, "Apply stored boxplot parameters (capped)");
  stdz->add_option("--header", stdz_header, "Input header line: auto, yes, no")->check(CLI::IsMember({"auto", "yes", "no"}));
  stdz->add_option("input", stdz_in, "Input CSV")->required();
  stdz->add_option("output", stdz_out, "Output CSV")->required();

  // distmat
  auto* dm = app.add_subcommand("distmat", "Compute a condensed Minkowski distance matrix from a CSV");
  std::string dm_q = "2", dm_method = "none", dm_in, dm_out, dm_labels, dm_header = "auto";
  dm->add_option("--q", dm_q, "Minkowski order: a number >= 1 or inf");
  dm->add_option("--standardise", dm_method, "Standardisation applied first");
  dm->add_option("--labels", dm_labels, "Class labels (pooled standardisation)");
  dm->add_option("--header", dm_header, "Input header line: auto, yes, no")->check(CLI::IsMember({"auto", "yes", "no"}));
  dm->add_option("input", dm_in, "Input CSV")->required();
  dm->add_option("output", dm_out, "Output condensed matrix file")->required();

  // cluster
  auto* cl = app.add_subcommand("cluster", "Cluster objects of a condensed distance matrix");
  std::string cl_method = "pam", cl_in, cl_out, cl_truth;
  std::size_t cl_k = 2;
  cl->add_option("--method", cl_method, "pam, complete or average")->check(CLI::IsMember({"pam", "complete", "average"}));
  cl->add_option("--k", cl_k, "Number of clusters");
  cl->add_option("--out", cl_out, "Write labels here instead of stdout");
  cl->add_option("--truth", cl_truth, "True labels; prints the adjusted Rand index to stderr");
  cl->add_option("input", cl_in, "Condensed matrix file")->required();

  // classify
  auto* cf = app.add_subcommand("classify", "k-nearest-neighbour classification of test rows");
  std::string cf_train, cf_train_labels, cf_test, cf_test_labels, cf_q = "1", cf_method = "none", cf_out,
                                                                     cf_header = "auto";
  std::size_t cf_k = 3;
  cf->add_option("--train", cf_train, "Training CSV")->required();
  cf->add_option("--train-labels", cf_train_labels, "Training labels")->required();
  cf->add_option("--test", cf_test, "Test CSV")->required();
  cf->add_option("--test-labels", cf_test_labels, "Test labels; prints the misclassification rate to stderr");
  cf->add_option("--q", cf_q, "Minkowski order: a number >= 1 or inf");
  cf->add_option("--standardise", cf_method, "Standardisation fitted on the training data");
  cf->add_option("--k", cf_k, "Neighbours");
  cf->add_option("--out", cf_out, "Write predictions here instead of stdout");
  cf->add_option("--header", cf_header, "Input header line: auto, yes, no")->check(CLI::IsMember({"auto", "yes", "no"}));

  // experiment
  auto* ex = app.add_subcommand("experiment", "Run the standardisation x aggregation x method simulation grid");
  std::string ex_config;
  SetupFlags ex_setup;
  std::size_t ex_reps = 0;
  std::uint64_t ex_seed = 0;
  std::vector<std::string> ex_stdz, ex_q, ex_methods;
  bool ex_oracle = false, ex_timing = false;
  std::string ex_out, ex_summary;
  ex->add_option("--config", ex_config, "JSON config file; flags override its fields");
  ex_setup.add_to(ex);
  auto* reps_opt = ex->add_option("--replicates", ex_reps, "Replicates");
  auto* seed_opt = ex->add_option("--seed", ex_seed, "Master seed");
  ex->add_option("--standardise", ex_stdz, "Standardisations (comma list or 'all')")->delimiter(',');
  ex->add_option("--q", ex_q, "Minkowski orders (comma list, 'inf' allowed)")->delimiter(',');
  ex->add_option("--methods", ex_methods, "pam, complete, average, knn3 (comma list)")->delimiter(',');
  auto* oracle_opt = ex->add_flag("--oracle-pooling", ex_oracle, "Pool with true labels in clustering runs");
  auto* timing_opt = ex->add_flag("--timing", ex_timing, "Record learner wall time (results no longer byte-reproducible)");
  ex->add_option("--out", ex_out, "Results CSV path");
  ex->add_option("--summary", ex_summary, "Summary JSON path (default <out>.summary.json)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  try {
    if (threads > 0) set_thread_count(threads);

    if (*sim) {
      SetupSpec spec = find_setup(sim_setup.setup);
      sim_setup.apply(spec);
      const std::uint64_t seed = sim_replicate ? rng::replicate_seed(sim_seed, *sim_replicate) : sim_seed;
      const auto data = generate(spec, seed);
      write_matrix_csv(sim_prefix + ".train.csv", data.x_train);
      write_matrix_csv(sim_prefix + ".test.csv", data.x_test);
      write_labels(sim_prefix + ".train.labels", data.y_train);
      write_labels(sim_prefix + ".test.labels", data.y_test);
      write_file_atomic(sim_prefix + ".meta.json", dataset_metadata_json(data) + "\n");
      return 0;
    }

    if (*stdz) {
      const auto method = parse_standardisation(stdz_method);
      const DataMatrix input = load_matrix(stdz_in, stdz_header);
      if (!stdz_params_in.empty()) {
        if (method != StandardisationMethod::boxplot) throw UsageError("--params-in applies to --method boxplot only");
        const auto params = BoxplotParams::from_json(read_file(stdz_params_in));
        write_matrix_csv(stdz_out, apply_boxplot(input, params, true));
        return 0;
      }
      const bool separate_fit = !stdz_fit.empty();
      const DataMatrix fit_data = separate_fit ? load_matrix(stdz_fit, stdz_header) : input;
      std::optional<LabelVector> labels;
      if (!stdz_labels.empty()) labels = read_labels(stdz_labels);
      std::optional<BoxplotParams> fitted;
      const auto out = standardise_with(fit_data, input, method, labels ? &*labels : nullptr, separate_fit, &fitted);
      if (!stdz_params_out.empty()) {
        if (!fitted) throw UsageError("--params-out applies to --method boxplot only");
        write_file_atomic(stdz_params_out, fitted->to_json() + "\n");
      }
      write_matrix_csv(stdz_out, out);
      return 0;
    }

    if (*dm) {
      const auto method = parse_standardisation(dm_method);
      const auto q = AggregationOrder::parse(dm_q);
      const DataMatrix input = load_matrix(dm_in, dm_header);
      std::optional<LabelVector> labels;
      if (!dm_labels.empty()) labels = read_labels(dm_labels);
      const auto x = standardise_with(input, input, method, labels ? &*labels : nullptr, false);
      write_condensed(dm_out, pairwise(x, q));
      return 0;
    }

    if (*cl) {
      const auto d = read_condensed(cl_in);
      LabelVector labels;
      if (cl_method == "pam") {
        labels = pam(d, cl_k).labels;
      } else {
        labels = cut_tree(linkage(d, parse_linkage(cl_method)), cl_k);
      }
      if (!cl_truth.empty()) std::cerr << "ari=" << format_double(adjusted_rand_index(labels, read_labels(cl_truth))) << "\n";
      if (cl_out.empty()) {
        for (int l : labels.labels()) std::cout << l << '\n';
      } else {
        write_labels(cl_out, labels);
      }
      return 0;
    }

    if (*cf) {
      const auto method = parse_standardisation(cf_method);
      const auto q = AggregationOrder::parse(cf_q);
      const DataMatrix train = load_matrix(cf_train, cf_header);
      const DataMatrix test = load_matrix(cf_test, cf_header);
      const LabelVector train_labels = read_labels(cf_train_labels);
      const auto train_std = standardise_with(train, train, method, &train_labels, false);
      const auto test_std = standardise_with(train, test, method, &train_labels, true);
      const auto pred = knn_classify(cross(test_std, train_std, q), train_labels, cf_k);
      if (!cf_test_labels.empty()) {
        std::cerr << "misclassification=" << format_double(misclassification_rate(pred, read_labels(cf_test_labels)))
                  << "\n";
      }
      if (cf_out.empty()) {
        for (int l : pred.labels()) std::cout << l << '\n';
      } else {
        write_labels(cf_out, pred);
      }
      return 0;
    }

    if (*ex) {
      ExperimentConfig cfg;
      if (!ex_config.empty()) cfg = ExperimentConfig::from_json(read_file(ex_config));
      if (ex_setup.setup_opt->count() > 0) cfg.setup = find_setup(ex_setup.setup);
      ex_setup.apply(cfg.setup);
      if (reps_opt->count() > 0) cfg.replicates = ex_reps;
      if (seed_opt->count() > 0) cfg.seed = ex_seed;
      if (!ex_stdz.empty()) {
        if (ex_stdz.size() == 1 && ex_stdz.front() == "all") {
          cfg.standardisations.reset();
        } else {
          std::vector<StandardisationMethod> list;
          for (const auto& s : ex_stdz) list.push_back(parse_standardisation(s));
          cfg.standardisations = std::move(list);
        }
      }
      if (!ex_q.empty()) {
        cfg.orders.clear();
        for (const auto& q : ex_q) cfg.orders.push_back(AggregationOrder::parse(q));
      }
      if (!ex_methods.empty()) {
        cfg.methods.clear();
        for (const auto& m : ex_methods) cfg.methods.push_back(parse_method(m));
      }
      if (oracle_opt->count() > 0) cfg.oracle_pooling = ex_oracle;
      if (timing_opt->count() > 0) cfg.timing = ex_timing;
      if (!ex_out.empty()) cfg.out = ex_out;
      if (!ex_summary.empty()) cfg.summary = ex_summary;
      if (cfg.out.empty()) throw UsageError("experiment: --out (or \"out\" in the config) is required");
      if (cfg.summary.empty()) cfg.summary = default_summary_path(cfg.out);
      cfg.validate();

      const auto records = run_experiment(cfg);
      const auto rows = summarise(records);
      const std::string csv = results_csv(records);
      const std::string summary = summary_json(cfg, rows);
      write_file_atomic(cfg.out, csv);
      write_file_atomic(cfg.summary, summary);
      return 0;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}

}  // namespace hddist
