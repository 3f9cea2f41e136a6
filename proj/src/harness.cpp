#include "hddist/harness.hpp"

#include <chrono>
#include <cmath>
#include <exception>
#include <json.hpp>
#include <set>

#include "hddist/boxplot.hpp"
#include "hddist/error.hpp"
#include "hddist/evaluate.hpp"
#include "hddist/io.hpp"
#include "hddist/learn.hpp"
#include "hddist/parallel.hpp"

namespace hddist {

namespace {

constexpr std::size_t kNeighbours = 3;
constexpr std::size_t kClusters = 2;

using json = nlohmann::json;

struct Transformed {
  DataMatrix train;
  DataMatrix test;
};

Transformed transform(const GeneratedDataset& data, StandardisationMethod method) {
  if (method == StandardisationMethod::boxplot) {
    const auto params = fit_boxplot(data.x_train);
    return {apply_boxplot(data.x_train, params, false), apply_boxplot(data.x_test, params, true)};
  }
  const LabelVector* labels = is_pooled(method) ? &data.y_train : nullptr;
  const auto scaling = fit_linear_scaling(data.x_train, method, labels);
  return {apply_linear_scaling(data.x_train, scaling), apply_linear_scaling(data.x_test, scaling)};
}

LabelVector cluster_labels(const CondensedDistanceMatrix& d, ExperimentMethod m) {
  switch (m) {
    case ExperimentMethod::pam:
      return pam(d, kClusters).labels;
    case ExperimentMethod::complete:
      return cut_tree(linkage(d, Linkage::complete), kClusters);
    case ExperimentMethod::average:
      return cut_tree(linkage(d, Linkage::average), kClusters);
    case ExperimentMethod::knn3:
      break;
  }
  throw UsageError("cluster_labels: not a clustering method");
}

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

SetupSpec setup_from_json(const json& j) {
  static const std::set<std::string> known = {"name", "n_per_class", "p", "p_t", "p_n", "mean_diff", "sd_range", "base"};
  for (const auto& [key, _] : j.items())
    if (!known.count(key)) throw FormatError("config: unknown setup key '" + key + "'");
  SetupSpec s;
  if (j.contains("base")) s = find_setup(j.at("base").get<std::string>());
  s.name = j.value("name", s.name.empty() ? std::string("custom") : s.name);
  if (j.contains("n_per_class")) s.n_per_class = j.at("n_per_class").get<std::size_t>();
  if (j.contains("p")) s.p = j.at("p").get<std::size_t>();
  if (j.contains("p_t")) s.p_t = j.at("p_t").get<double>();
  if (j.contains("p_n")) s.p_n = j.at("p_n").get<double>();
  auto interval = [](const json& v) {
    if (v.is_number()) return Interval{v.get<double>(), v.get<double>()};
    if (!v.is_array() || v.size() != 2) throw FormatError("config: intervals are a number or [lo, hi]");
    return Interval{v.at(0).get<double>(), v.at(1).get<double>()};
  };
  if (j.contains("mean_diff")) s.mean_diff = interval(j.at("mean_diff"));
  if (j.contains("sd_range")) s.sd_range = interval(j.at("sd_range"));
  return s;
}

}  // namespace

std::string_view to_string(ExperimentMethod m) {
  switch (m) {
    case ExperimentMethod::pam:
      return "pam";
    case ExperimentMethod::complete:
      return "complete";
    case ExperimentMethod::average:
      return "average";
    case ExperimentMethod::knn3:
      return "knn3";
  }
  return "unknown";
}

ExperimentMethod parse_method(std::string_view name) {
  if (name == "pam") return ExperimentMethod::pam;
  if (name == "complete") return ExperimentMethod::complete;
  if (name == "average") return ExperimentMethod::average;
  if (name == "knn3" || name == "knn") return ExperimentMethod::knn3;
  throw UsageError("unknown method '" + std::string(name) + "' (pam, complete, average, knn3)");
}

bool is_clustering(ExperimentMethod m) { return m != ExperimentMethod::knn3; }

void ExperimentConfig::validate() const {
  setup.validate();
  if (replicates < 1) throw UsageError("replicates must be >= 1");
  if (orders.empty()) throw UsageError("q list is empty");
  if (methods.empty()) throw UsageError("method list is empty");
  if (standardisations) {
    if (standardisations->empty()) throw UsageError("standardisation list is empty");
    bool clustering = false;
    for (auto m : methods) clustering = clustering || is_clustering(m);
    if (clustering && !oracle_pooling) {
      for (auto s : *standardisations) {
        if (is_pooled(s)) {
          throw UsageError("pooled standardisation '" + std::string(to_string(s)) +
                           "' needs class labels, which clustering does not have; pass --oracle-pooling to use the "
                           "true labels anyway");
        }
      }
    }
  }
}

std::vector<StandardisationMethod> ExperimentConfig::resolved_standardisations() const {
  if (standardisations) return *standardisations;
  return {std::begin(kAllStandardisations), std::end(kAllStandardisations)};
}

std::vector<ResultRecord> run_replicate(const ExperimentConfig& cfg, std::size_t replicate) {
  const std::uint64_t seed = rng::replicate_seed(cfg.seed, replicate);
  const GeneratedDataset data = generate(cfg.setup, seed);
  std::vector<ResultRecord> records;

  for (const auto method : cfg.resolved_standardisations()) {
    const bool pooled = is_pooled(method);
    std::vector<ExperimentMethod> active;
    for (auto m : cfg.methods)
      if (!(pooled && is_clustering(m) && !cfg.oracle_pooling)) active.push_back(m);
    if (active.empty()) continue;

    const Transformed t = transform(data, method);
    bool any_clustering = false, any_knn = false;
    for (auto m : active) (is_clustering(m) ? any_clustering : any_knn) = true;

    for (const auto& q : cfg.orders) {
      std::optional<CondensedDistanceMatrix> d;
      std::optional<CrossDistanceMatrix> dx;
      if (any_clustering) d = pairwise(t.train, q);
      if (any_knn) dx = cross(t.test, t.train, q);
      for (auto m : active) {
        ResultRecord rec;
        rec.setup = cfg.setup.name;
        rec.replicate = replicate;
        rec.seed = seed;
        rec.standardisation = std::string(to_string(method));
        rec.q = q.to_string();
        rec.method = std::string(to_string(m));
        const auto start = std::chrono::steady_clock::now();
        if (is_clustering(m)) {
          if (pooled) rec.standardisation += ":oracle";
          rec.metric = "ari";
          rec.value = adjusted_rand_index(cluster_labels(*d, m), data.y_train);
        } else {
          rec.metric = "misclassification";
          rec.value = misclassification_rate(knn_classify(*dx, data.y_train, kNeighbours), data.y_test);
        }
        rec.seconds = cfg.timing ? seconds_since(start) : 0.0;
        records.push_back(std::move(rec));
      }
    }
  }
  return records;
}

std::vector<ResultRecord> run_experiment(const ExperimentConfig& cfg) {
  cfg.validate();
  std::vector<std::vector<ResultRecord>> per_replicate(cfg.replicates);
  std::exception_ptr failure;
  const auto reps = static_cast<std::ptrdiff_t>(cfg.replicates);
#pragma omp parallel for schedule(dynamic) num_threads(thread_count())
  for (std::ptrdiff_t r = 0; r < reps; ++r) {
    try {
      per_replicate[static_cast<std::size_t>(r)] = run_replicate(cfg, static_cast<std::size_t>(r));
    } catch (...) {
#pragma omp critical(hddist_experiment_failure)
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
  std::vector<ResultRecord> all;
  for (auto& rep : per_replicate)
    for (auto& rec : rep) all.push_back(std::move(rec));
  return all;
}

std::vector<SummaryRow> summarise(const std::vector<ResultRecord>& records) {
  if (records.empty()) throw UsageError("summarise: no records");
  std::vector<SummaryRow> rows;
  std::vector<std::vector<double>> values;
  for (const auto& rec : records) {
    std::size_t idx = 0;
    while (idx < rows.size() &&
           !(rows[idx].standardisation == rec.standardisation && rows[idx].q == rec.q &&
             rows[idx].method == rec.method && rows[idx].metric == rec.metric)) {
      ++idx;
    }
    if (idx == rows.size()) {
      rows.push_back({rec.standardisation, rec.q, rec.method, rec.metric});
      values.emplace_back();
    }
    values[idx].push_back(rec.value);
  }
  for (std::size_t r = 0; r < rows.size(); ++r) {
    const auto& v = values[r];
    const auto count = static_cast<double>(v.size());
    double mean = 0.0;
    for (double x : v) mean += x;
    mean /= count;
    double ss = 0.0;
    for (double x : v) ss += (x - mean) * (x - mean);
    rows[r].count = v.size();
    rows[r].mean = mean;
    rows[r].std_error = v.size() > 1 ? std::sqrt(ss / (count - 1.0)) / std::sqrt(count) : 0.0;
  }
  return rows;
}

const SummaryRow* find_row(const std::vector<SummaryRow>& rows, std::string_view standardisation, std::string_view q,
                           std::string_view method, std::string_view metric) {
  for (const auto& r : rows)
    if (r.standardisation == standardisation && r.q == q && r.method == method && r.metric == metric) return &r;
  return nullptr;
}

std::string results_csv(const std::vector<ResultRecord>& records) {
  std::string out = "setup,replicate,seed,standardisation,q,method,metric,value,seconds\n";
  for (const auto& r : records) {
    out += csv_field(r.setup) + ',' + std::to_string(r.replicate) + ',' + std::to_string(r.seed) + ',' +
           csv_field(r.standardisation) + ',' + r.q + ',' + r.method + ',' + r.metric + ',' + format_double(r.value) +
           ',' + format_double(r.seconds) + '\n';
  }
  return out;
}

std::string summary_json(const ExperimentConfig& cfg, const std::vector<SummaryRow>& rows) {
  json doc;
  doc["config"] = json::parse(cfg.to_json());
  auto& arr = doc["summary"] = json::array();
  for (const auto& r : rows) {
    arr.push_back({{"standardisation", r.standardisation},
                   {"q", r.q},
                   {"method", r.method},
                   {"metric", r.metric},
                   {"count", r.count},
                   {"mean", r.mean},
                   {"std_error", r.std_error}});
  }
  return doc.dump(1) + "\n";
}

ExperimentConfig ExperimentConfig::from_json(const std::string& text) {
  static const std::set<std::string> known = {"setup", "n_per_class", "p", "replicates", "seed",
                                              "standardisations", "q", "methods", "oracle_pooling",
                                              "timing", "out", "summary"};
  ExperimentConfig cfg;
  try {
    const json j = json::parse(text);
    if (!j.is_object()) throw FormatError("config: top level must be an object");
    for (const auto& [key, _] : j.items())
      if (!known.count(key)) throw FormatError("config: unknown key '" + key + "'");
    if (j.contains("setup")) {
      const auto& s = j.at("setup");
      cfg.setup = s.is_string() ? find_setup(s.get<std::string>()) : setup_from_json(s);
    }
    if (j.contains("n_per_class")) cfg.setup.n_per_class = j.at("n_per_class").get<std::size_t>();
    if (j.contains("p")) cfg.setup.p = j.at("p").get<std::size_t>();
    if (j.contains("replicates")) cfg.replicates = j.at("replicates").get<std::size_t>();
    if (j.contains("seed")) cfg.seed = j.at("seed").get<std::uint64_t>();
    if (j.contains("standardisations")) {
      const auto& s = j.at("standardisations");
      if (s.is_string() && s.get<std::string>() == "all") {
        cfg.standardisations.reset();
      } else {
        std::vector<StandardisationMethod> list;
        for (const auto& name : s) list.push_back(parse_standardisation(name.get<std::string>()));
        cfg.standardisations = std::move(list);
      }
    }
    if (j.contains("q")) {
      cfg.orders.clear();
      for (const auto& q : j.at("q"))
        cfg.orders.push_back(q.is_string() ? AggregationOrder::parse(q.get<std::string>()) : AggregationOrder(q.get<double>()));
    }
    if (j.contains("methods")) {
      cfg.methods.clear();
      for (const auto& m : j.at("methods")) cfg.methods.push_back(parse_method(m.get<std::string>()));
    }
    if (j.contains("oracle_pooling")) cfg.oracle_pooling = j.at("oracle_pooling").get<bool>();
    if (j.contains("timing")) cfg.timing = j.at("timing").get<bool>();
    if (j.contains("out")) cfg.out = j.at("out").get<std::string>();
    if (j.contains("summary")) cfg.summary = j.at("summary").get<std::string>();
  } catch (const json::exception& e) {
    throw FormatError(std::string("config: ") + e.what());
  }
  return cfg;
}

std::string ExperimentConfig::to_json() const {
  json j;
  j["setup"] = json::parse(setup_to_json(setup));
  j["replicates"] = replicates;
  j["seed"] = seed;
  if (standardisations) {
    auto& arr = j["standardisations"] = json::array();
    for (auto s : *standardisations) arr.push_back(std::string(to_string(s)));
  } else {
    j["standardisations"] = "all";
  }
  auto& qs = j["q"] = json::array();
  for (const auto& q : orders) qs.push_back(q.to_string());
  auto& ms = j["methods"] = json::array();
  for (auto m : methods) ms.push_back(std::string(to_string(m)));
  j["oracle_pooling"] = oracle_pooling;
  j["timing"] = timing;
  return j.dump();
}

}  // namespace hddist
