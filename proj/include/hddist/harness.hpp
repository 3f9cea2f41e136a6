#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "hddist/distance.hpp"
#include "hddist/simgen.hpp"
#include "hddist/standardise.hpp"

namespace hddist {

enum class ExperimentMethod { pam, complete, average, knn3 };

std::string_view to_string(ExperimentMethod m);
ExperimentMethod parse_method(std::string_view name);
bool is_clustering(ExperimentMethod m);

struct ExperimentConfig {
  SetupSpec setup = find_setup("simple_normal");
  std::size_t replicates = 100;
  std::uint64_t seed = 1;
  // nullopt: every applicable method (pooled ones are used for clustering only
  // with oracle_pooling).
  std::optional<std::vector<StandardisationMethod>> standardisations;
  std::vector<AggregationOrder> orders = {AggregationOrder(1), AggregationOrder(2), AggregationOrder(3),
                                          AggregationOrder(4), AggregationOrder::infinity()};
  std::vector<ExperimentMethod> methods = {ExperimentMethod::pam, ExperimentMethod::complete,
                                           ExperimentMethod::average, ExperimentMethod::knn3};
  // Pool scale statistics with the true labels in clustering runs too.
  bool oracle_pooling = false;
  // Record wall-clock seconds per learner; otherwise the column is 0 and the
  // results file is byte-reproducible.
  bool timing = false;
  std::filesystem::path out;
  std::filesystem::path summary;  // defaults to <out stem>.summary.json

  // Throws UsageError for zero replicates, empty lists, or an explicitly
  // requested pooled standardisation combined with a clustering method when
  // oracle_pooling is off.
  void validate() const;

  std::vector<StandardisationMethod> resolved_standardisations() const;

  // JSON config documents; unknown keys are rejected with FormatError.
  static ExperimentConfig from_json(const std::string& text);
  std::string to_json() const;
};

struct ResultRecord {
  std::string setup;
  std::size_t replicate = 0;
  std::uint64_t seed = 0;
  std::string standardisation;  // "<method>:oracle" for label-pooled clustering rows
  std::string q;
  std::string method;
  std::string metric;  // "ari" or "misclassification"
  double value = 0.0;
  double seconds = 0.0;
};

// One replicate: generate data with replicate_seed(cfg.seed, r), then for every
// (standardisation, q, method) combination in config order produce one record.
// Scale statistics and boxplot parameters come from training data only; the
// test data is boxplot-transformed with capping. Clustering is scored by ARI on
// the training data, 3-NN by test misclassification.
std::vector<ResultRecord> run_replicate(const ExperimentConfig& cfg, std::size_t replicate);

// All replicates (OpenMP across replicates), merged in replicate order.
std::vector<ResultRecord> run_experiment(const ExperimentConfig& cfg);

struct SummaryRow {
  std::string standardisation;
  std::string q;
  std::string method;
  std::string metric;
  std::size_t count = 0;
  double mean = 0.0;
  double std_error = 0.0;  // sample sd / sqrt(count); 0 for a single record
};

// Means and standard errors per (standardisation, q, method, metric), in order
// of first appearance. Throws UsageError on empty input.
std::vector<SummaryRow> summarise(const std::vector<ResultRecord>& records);

// Header: setup,replicate,seed,standardisation,q,method,metric,value,seconds
std::string results_csv(const std::vector<ResultRecord>& records);
std::string summary_json(const ExperimentConfig& cfg, const std::vector<SummaryRow>& rows);

// Looks up one summary row; nullptr if absent.
const SummaryRow* find_row(const std::vector<SummaryRow>& rows, std::string_view standardisation, std::string_view q,
                           std::string_view method, std::string_view metric);

}  // namespace hddist
