#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "unicorn/types.hpp"

namespace unicorn {

/// Indices within the k-distance of point i: every table column whose
/// distance is <= the k-th neighbor distance of i. May exceed k under ties
/// when the table carries more than k columns. k defaults to table.k.
std::vector<std::int32_t> k_distance_neighborhood(const NeighborTable& table, std::size_t i,
                                                  int k = 0);

/// Local reachability density:
///   lrd_k(i) = 1 / mean_{o in N_k(i)} max(k-distance(o), dist(i, o))
/// Returns +infinity when every reach distance is zero (duplicate cluster);
/// consumers treat the ratio of two infinities as 1.
double local_reachability_density(const NeighborTable& table, std::size_t i, int k = 0);

/// Local Outlier Factor per point:
///   LOF_k(i) = mean_{o in N_k(i)} lrd_k(o) / lrd_k(i)
/// Values near 1 are normal, larger values mark density outliers. The table
/// may be built with more than k columns to resolve ties at the k-th radius.
ScoreSeries lof_score(const NeighborTable& table, std::span<const std::int64_t> time_index,
                      double dt, int k = 0);

/// Flags the ceil(top_fraction * N_e) highest-scoring rows, mapped to
/// original indices without padding. Ties are resolved toward lower time
/// indices.
DetectionMask lof_detect(const ScoreSeries& scores, double top_fraction,
                         std::size_t n_original);

}  // namespace unicorn
