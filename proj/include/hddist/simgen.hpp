#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "hddist/core.hpp"

namespace hddist {

struct Interval {
  double lo = 0.0;
  double hi = 0.0;

  bool fixed() const { return lo == hi; }
  bool operator==(const Interval&) const = default;
};

// Two-class simulation regime with independent variables.
struct SetupSpec {
  std::string name;
  std::size_t n_per_class = 50;
  std::size_t p = 2000;
  double p_t = 0.0;        // probability a variable is t2-distributed
  double p_n = 0.0;        // probability a variable carries no class difference
  Interval mean_diff;      // class-2 mean offset, uniform on [lo, hi] (fixed if lo == hi)
  Interval sd_range;       // per-class standard deviations, uniform on [lo, hi]

  // Throws UsageError for probabilities outside [0,1], lo > hi, sd lo <= 0 or zero sizes.
  void validate() const;
  bool operator==(const SetupSpec&) const = default;
};

// The five regimes: simple_normal, simple_normal_099, ntn_01, ntn_05, ntn_09
// (n_per_class 50, p 2000).
std::vector<SetupSpec> setup_catalog();
// Throws UsageError for an unknown name.
SetupSpec find_setup(std::string_view name);

struct VariableMeta {
  bool is_noise = false;
  bool is_t = false;
  double mean_diff = 0.0;  // 0 for noise variables
  double sd_class1 = 0.0;
  double sd_class2 = 0.0;  // equals sd_class1 for noise variables

  bool operator==(const VariableMeta&) const = default;
};

struct GeneratedDataset {
  SetupSpec spec;
  std::uint64_t seed = 0;
  DataMatrix x_train;
  LabelVector y_train;
  DataMatrix x_test;
  LabelVector y_test;
  std::vector<VariableMeta> variables;
};

// Deterministic in (spec, seed). Every variable j draws its parameters, its
// training observations and its test observations from three separate
// substreams keyed by (seed, j), so changing p or the sample size leaves the
// parameters of the other variables unchanged. Class 1 occupies the first
// n_per_class rows, class 2 the rest.
GeneratedDataset generate(const SetupSpec& spec, std::uint64_t seed);

// JSON sidecar: seed, setup and per-variable metadata.
std::string dataset_metadata_json(const GeneratedDataset& data);

std::string setup_to_json(const SetupSpec& spec);

namespace rng {

std::uint64_t splitmix64(std::uint64_t x);

// Seed of substream `purpose` (0 params, 1 train, 2 test) of variable j.
std::uint64_t substream_seed(std::uint64_t seed, std::uint64_t variable, std::uint64_t purpose);

// Seed of replicate r derived from a master seed.
std::uint64_t replicate_seed(std::uint64_t master, std::uint64_t replicate);

// Standard t with 2 degrees of freedom from u in (0, 1) by inverse CDF.
double t2_from_uniform(double u);

}  // namespace rng

}  // namespace hddist
