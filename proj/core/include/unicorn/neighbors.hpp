#pragma once

#include <cstdint>
#include <vector>

#include "unicorn/types.hpp"

namespace unicorn {

/// Immutable kd-tree over embedded points answering exact Euclidean kNN
/// queries. The self point is excluded from results; there is deliberately
/// no temporal exclusion window around the query, because temporal closeness
/// of spatial neighbors is exactly the signal TOF measures.
///
/// Equidistant candidates are ordered by ascending time index, which makes
/// results deterministic and identical to brute_force_knn.
///
/// Build is single-threaded; queries on the built index are const and safe
/// to run concurrently.
class SpatialIndex {
 public:
  explicit SpatialIndex(const EmbeddedSeries& embedded);

  std::size_t size() const { return n_; }
  int dim() const { return dim_; }

  /// Exact k nearest neighbors of point i (self excluded), sorted by
  /// ascending (distance, index). out_idx/out_dist must hold k entries.
  void query(std::size_t i, int k, std::int32_t* out_idx, double* out_dist) const;

 private:
  struct Node {
    // leaf: [begin, end) into perm_; internal: split axis/value + children
    std::int32_t begin = 0;
    std::int32_t end = 0;
    std::int32_t left = -1;
    std::int32_t right = -1;
    int axis = -1;
    double split = 0.0;
    bool is_leaf() const { return left < 0; }
  };

  std::int32_t build(std::int32_t begin, std::int32_t end);
  const double* point(std::int32_t i) const { return pts_.data() + static_cast<std::size_t>(i) * dim_; }

  std::size_t n_ = 0;
  int dim_ = 1;
  std::vector<double> pts_;
  std::vector<std::int32_t> perm_;
  std::vector<Node> nodes_;
  std::int32_t root_ = -1;
};

/// Builds the spatial index; N_e >= 2 required.
SpatialIndex build_index(const EmbeddedSeries& embedded);

/// Exact kNN table for every point via the spatial index. 1 <= k <= N_e - 1.
NeighborTable knn_all(const SpatialIndex& index, int k);

/// O(N^2) full-scan oracle; same contract and same tie-breaking as knn_all.
NeighborTable brute_force_knn(const EmbeddedSeries& embedded, int k);

}  // namespace unicorn
