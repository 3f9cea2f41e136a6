#pragma once

// Single-threaded versions of the OpenMP kernels. They share the per-entry
// arithmetic with the parallel code and exist so tests can check that the
// parallel kernels are bit-identical, and so the benchmark has a baseline.

#include "hddist/boxplot.hpp"
#include "hddist/core.hpp"
#include "hddist/distance.hpp"
#include "hddist/standardise.hpp"

namespace hddist::reference {

CondensedDistanceMatrix pairwise_serial(const DataMatrix& x, AggregationOrder q);
CrossDistanceMatrix cross_serial(const DataMatrix& test, const DataMatrix& train, AggregationOrder q);

LinearScaling fit_linear_scaling_serial(const DataMatrix& x, StandardisationMethod method,
                                        const LabelVector* labels = nullptr);
BoxplotParams fit_boxplot_serial(const DataMatrix& x);
DataMatrix apply_boxplot_serial(const DataMatrix& x, const BoxplotParams& params, bool cap);

}  // namespace hddist::reference
