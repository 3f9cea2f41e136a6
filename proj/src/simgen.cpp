#include "hddist/simgen.hpp"

#include <cmath>
#include <json.hpp>
#include <numbers>
#include <random>

#include "hddist/error.hpp"
#include "hddist/parallel.hpp"

namespace hddist {

namespace rng {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

std::uint64_t substream_seed(std::uint64_t seed, std::uint64_t variable, std::uint64_t purpose) {
  return splitmix64(splitmix64(splitmix64(seed) ^ variable) ^ purpose);
}

std::uint64_t replicate_seed(std::uint64_t master, std::uint64_t replicate) {
  return splitmix64(master + (replicate + 1) * 0x9E3779B97F4A7C15ULL);
}

double t2_from_uniform(double u) { return (2.0 * u - 1.0) / std::sqrt(2.0 * u * (1.0 - u)); }

}  // namespace rng

namespace {

// mt19937_64 output mapped to doubles with fixed, portable arithmetic.
class Stream {
 public:
  explicit Stream(std::uint64_t seed) : engine_(seed) {}

  // [0, 1)
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  // (0, 1)
  double open_uniform() { return (static_cast<double>(engine_() >> 11) + 0.5) * 0x1.0p-53; }
  double uniform(const Interval& iv) { return iv.lo + (iv.hi - iv.lo) * uniform(); }

  // Box-Muller; the second variate of each pair is kept for the next call.
  double normal() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    const double u1 = open_uniform();
    const double u2 = uniform();
    const double radius = std::sqrt(-2.0 * std::log(u1));
    const double angle = 2.0 * std::numbers::pi * u2;
    spare_ = radius * std::sin(angle);
    has_spare_ = true;
    return radius * std::cos(angle);
  }

  double t2() { return rng::t2_from_uniform(open_uniform()); }

 private:
  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

void fill_column(std::span<double> column, std::size_t n_per_class, const VariableMeta& meta, Stream& s) {
  for (std::size_t i = 0; i < column.size(); ++i) {
    const bool second = i >= n_per_class;
    const double z = meta.is_t ? s.t2() : s.normal();
    column[i] = (second ? meta.mean_diff : 0.0) + (second ? meta.sd_class2 : meta.sd_class1) * z;
  }
}

LabelVector two_class_labels(std::size_t n_per_class) {
  std::vector<int> labels(2 * n_per_class, 1);
  for (std::size_t i = n_per_class; i < labels.size(); ++i) labels[i] = 2;
  return LabelVector::from_complete(std::move(labels));
}

}  // namespace

void SetupSpec::validate() const {
  auto prob_ok = [](double v) { return v >= 0.0 && v <= 1.0; };
  if (!prob_ok(p_t) || !prob_ok(p_n)) throw UsageError("setup '" + name + "': probabilities must lie in [0, 1]");
  if (!(mean_diff.lo <= mean_diff.hi)) throw UsageError("setup '" + name + "': mean_diff lo > hi");
  if (!(sd_range.lo <= sd_range.hi)) throw UsageError("setup '" + name + "': sd_range lo > hi");
  if (!(sd_range.lo > 0.0)) throw UsageError("setup '" + name + "': sd_range lo must be > 0");
  if (n_per_class < 2) throw UsageError("setup '" + name + "': n_per_class must be >= 2");
  if (p < 1) throw UsageError("setup '" + name + "': p must be >= 1");
}

std::vector<SetupSpec> setup_catalog() {
  std::vector<SetupSpec> out;
  out.push_back({"simple_normal", 50, 2000, 0.0, 0.0, {0.1, 0.1}, {0.5, 1.5}});
  out.push_back({"simple_normal_099", 50, 2000, 0.0, 0.99, {12.0, 12.0}, {0.5, 2.0}});
  out.push_back({"ntn_01", 50, 2000, 0.1, 0.1, {0.0, 0.3}, {0.5, 10.0}});
  out.push_back({"ntn_05", 50, 2000, 0.5, 0.5, {0.0, 2.0}, {0.5, 10.0}});
  out.push_back({"ntn_09", 50, 2000, 0.9, 0.9, {0.0, 10.0}, {0.5, 10.0}});
  return out;
}

SetupSpec find_setup(std::string_view name) {
  for (auto& s : setup_catalog())
    if (s.name == name) return s;
  throw UsageError("unknown setup '" + std::string(name) +
                   "' (known: simple_normal, simple_normal_099, ntn_01, ntn_05, ntn_09)");
}

GeneratedDataset generate(const SetupSpec& spec, std::uint64_t seed) {
  spec.validate();
  const std::size_t n = 2 * spec.n_per_class;
  GeneratedDataset out;
  out.spec = spec;
  out.seed = seed;
  out.variables.resize(spec.p);
  out.x_train = DataMatrix(n, spec.p);
  out.x_test = DataMatrix(n, spec.p);

  const auto p = static_cast<std::ptrdiff_t>(spec.p);
#pragma omp parallel for schedule(static) num_threads(thread_count())
  for (std::ptrdiff_t jj = 0; jj < p; ++jj) {
    const auto j = static_cast<std::size_t>(jj);
    Stream params(rng::substream_seed(seed, j, 0));
    VariableMeta meta;
    meta.is_t = params.uniform() < spec.p_t;
    meta.is_noise = params.uniform() < spec.p_n;
    const double delta = params.uniform(spec.mean_diff);
    const double sd1 = params.uniform(spec.sd_range);
    const double sd2 = params.uniform(spec.sd_range);
    meta.mean_diff = meta.is_noise ? 0.0 : delta;
    meta.sd_class1 = sd1;
    meta.sd_class2 = meta.is_noise ? sd1 : sd2;
    out.variables[j] = meta;

    Stream train(rng::substream_seed(seed, j, 1));
    fill_column(out.x_train.column(j), spec.n_per_class, meta, train);
    Stream test(rng::substream_seed(seed, j, 2));
    fill_column(out.x_test.column(j), spec.n_per_class, meta, test);
  }
  out.y_train = two_class_labels(spec.n_per_class);
  out.y_test = out.y_train;
  return out;
}

std::string setup_to_json(const SetupSpec& spec) {
  nlohmann::json j = {
      {"name", spec.name},
      {"n_per_class", spec.n_per_class},
      {"p", spec.p},
      {"p_t", spec.p_t},
      {"p_n", spec.p_n},
      {"mean_diff", {spec.mean_diff.lo, spec.mean_diff.hi}},
      {"sd_range", {spec.sd_range.lo, spec.sd_range.hi}},
  };
  return j.dump();
}

std::string dataset_metadata_json(const GeneratedDataset& data) {
  nlohmann::json doc;
  doc["seed"] = data.seed;
  doc["setup"] = nlohmann::json::parse(setup_to_json(data.spec));
  doc["rng"] = "mt19937_64 substreams seeded via splitmix64(seed, variable, purpose); Box-Muller normals; t2 by inverse CDF";
  auto& vars = doc["variables"] = nlohmann::json::array();
  for (const auto& v : data.variables) {
    vars.push_back({{"is_noise", v.is_noise},
                    {"is_t", v.is_t},
                    {"mean_diff", v.mean_diff},
                    {"sd_class1", v.sd_class1},
                    {"sd_class2", v.sd_class2}});
  }
  return doc.dump(1);
}

}  // namespace hddist
