#pragma once

#include <optional>
#include <string_view>
#include <vector>

#include "hddist/core.hpp"

namespace hddist {

struct Clustering {
  LabelVector labels;
  // PAM only: medoid object index of cluster c at position c - 1.
  std::vector<std::size_t> medoids;
  // PAM only: sum over objects of the distance to their medoid.
  std::optional<double> objective;
  // PAM only: number of improving swaps performed.
  std::size_t swaps = 0;
};

// Partitioning around medoids: greedy BUILD followed by best-improvement SWAP
// until no single (medoid, non-medoid) exchange lowers the objective.
// Deterministic, ties go to the lowest object index. Clusters are numbered by
// ascending medoid index; an object equidistant to several medoids joins the
// lowest-numbered cluster, and every medoid belongs to its own cluster.
// Throws UsageError unless 2 <= k < n.
Clustering pam(const CondensedDistanceMatrix& d, std::size_t k);

// Objective of a given medoid set (each object to its nearest medoid).
double medoid_cost(const CondensedDistanceMatrix& d, const std::vector<std::size_t>& medoids);

enum class Linkage { complete, average };

std::string_view to_string(Linkage l);
Linkage parse_linkage(std::string_view name);

// One agglomeration step. Leaves are 0..n-1; the node created by step s is n + s.
struct Merge {
  std::size_t left;   // smaller node id
  std::size_t right;  // larger node id
  double height;
  std::size_t size;   // leaves below the new node

  bool operator==(const Merge&) const = default;
};

struct Dendrogram {
  std::size_t n = 0;
  std::vector<Merge> merges;  // n - 1 entries, in construction order
};

// Agglomerative clustering. complete: max pairwise distance between clusters;
// average: unweighted mean pairwise distance (UPGMA). Equal inter-cluster
// distances are resolved by the smallest (left, right) node-id pair.
// Throws UsageError for n < 2.
Dendrogram linkage(const CondensedDistanceMatrix& d, Linkage method);

// Undo the last k - 1 merges; components are labelled 1..k in order of their
// smallest member. Throws UsageError unless 1 <= k <= n.
LabelVector cut_tree(const Dendrogram& dendrogram, std::size_t k);

// Majority vote among the k nearest training objects of each test object.
// Neighbours at equal distance are taken in training-index order. Vote ties go
// to the class with the smaller summed distance over its voting neighbours,
// then to the smaller label. Returned labels range over 1..train_labels.k().
// Throws UsageError on size mismatches or k outside 1..n_train.
LabelVector knn_classify(const CrossDistanceMatrix& dx, const LabelVector& train_labels, std::size_t k);

}  // namespace hddist
