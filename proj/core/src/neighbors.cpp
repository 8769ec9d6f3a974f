#include "unicorn/neighbors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "unicorn/errors.hpp"

namespace unicorn {

namespace {

constexpr std::int32_t kLeafSize = 16;

inline double sq_dist(const double* a, const double* b, int dim) {
  double s = 0.0;
  for (int j = 0; j < dim; ++j) {
    const double d = a[j] - b[j];
    s += d * d;
  }
  return s;
}

struct Candidate {
  double d2;
  std::int32_t idx;
};

// max-heap ordering: the "worst" candidate (largest distance, then largest
// index) sits on top
inline bool heap_less(const Candidate& a, const Candidate& b) {
  if (a.d2 != b.d2) return a.d2 < b.d2;
  return a.idx < b.idx;
}

inline bool better_than(double d2, std::int32_t idx, const Candidate& worst) {
  if (d2 != worst.d2) return d2 < worst.d2;
  return idx < worst.idx;
}

void check_k(int k, std::size_t n) {
  if (k < 1 || static_cast<std::size_t>(k) >= n) {
    throw ParameterError("k must satisfy 1 <= k <= N_e - 1, got k=" + std::to_string(k) +
                         " for N_e=" + std::to_string(n));
  }
}

}  // namespace

SpatialIndex::SpatialIndex(const EmbeddedSeries& embedded)
    : n_(embedded.size()), dim_(embedded.dim), pts_(embedded.points) {
  if (n_ < 2) throw ParameterError("spatial index needs at least 2 points");
  perm_.resize(n_);
  std::iota(perm_.begin(), perm_.end(), 0);
  nodes_.reserve(2 * n_ / kLeafSize + 2);
  root_ = build(0, static_cast<std::int32_t>(n_));
}

std::int32_t SpatialIndex::build(std::int32_t begin, std::int32_t end) {
  const std::int32_t node_id = static_cast<std::int32_t>(nodes_.size());
  nodes_.push_back({});
  if (end - begin <= kLeafSize) {
    nodes_[node_id].begin = begin;
    nodes_[node_id].end = end;
    return node_id;
  }

  // split along the axis with the widest extent
  int axis = 0;
  double best_spread = -1.0;
  for (int j = 0; j < dim_; ++j) {
    double lo = std::numeric_limits<double>::infinity();
    double hi = -std::numeric_limits<double>::infinity();
    for (std::int32_t i = begin; i < end; ++i) {
      const double v = point(perm_[i])[j];
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
    if (hi - lo > best_spread) {
      best_spread = hi - lo;
      axis = j;
    }
  }
  if (best_spread <= 0.0) {
    // all points in this subset coincide; keep them as one leaf
    nodes_[node_id].begin = begin;
    nodes_[node_id].end = end;
    return node_id;
  }

  const std::int32_t mid = begin + (end - begin) / 2;
  std::nth_element(perm_.begin() + begin, perm_.begin() + mid, perm_.begin() + end,
                   [&](std::int32_t a, std::int32_t b) {
                     const double va = point(a)[axis];
                     const double vb = point(b)[axis];
                     if (va != vb) return va < vb;
                     return a < b;
                   });

  nodes_[node_id].axis = axis;
  nodes_[node_id].split = point(perm_[mid])[axis];
  const std::int32_t left = build(begin, mid);
  const std::int32_t right = build(mid, end);
  nodes_[node_id].left = left;
  nodes_[node_id].right = right;
  return node_id;
}

void SpatialIndex::query(std::size_t i, int k, std::int32_t* out_idx, double* out_dist) const {
  check_k(k, n_);
  const double* q = point(static_cast<std::int32_t>(i));
  const std::int32_t self = static_cast<std::int32_t>(i);

  std::vector<Candidate> heap;
  heap.reserve(static_cast<std::size_t>(k));

  const auto consider = [&](std::int32_t j) {
    if (j == self) return;
    const double d2 = sq_dist(q, point(j), dim_);
    if (heap.size() < static_cast<std::size_t>(k)) {
      heap.push_back({d2, j});
      std::push_heap(heap.begin(), heap.end(), heap_less);
    } else if (better_than(d2, j, heap.front())) {
      std::pop_heap(heap.begin(), heap.end(), heap_less);
      heap.back() = {d2, j};
      std::push_heap(heap.begin(), heap.end(), heap_less);
    }
  };

  // iterative depth-first traversal, nearer child first
  std::vector<std::int32_t> stack;
  stack.push_back(root_);
  while (!stack.empty()) {
    const std::int32_t node_id = stack.back();
    stack.pop_back();
    const Node& node = nodes_[static_cast<std::size_t>(node_id)];
    if (node.is_leaf()) {
      for (std::int32_t p = node.begin; p < node.end; ++p) consider(perm_[p]);
      continue;
    }
    const double diff = q[node.axis] - node.split;
    const std::int32_t near = diff < 0.0 ? node.left : node.right;
    const std::int32_t far = diff < 0.0 ? node.right : node.left;
    // the far side may still hold an equidistant candidate with a smaller
    // index, so prune only on a strictly larger plane distance
    if (heap.size() < static_cast<std::size_t>(k) || diff * diff <= heap.front().d2) {
      stack.push_back(far);
    }
    stack.push_back(near);
  }

  std::sort(heap.begin(), heap.end(), heap_less);
  for (int j = 0; j < k; ++j) {
    out_idx[j] = heap[static_cast<std::size_t>(j)].idx;
    out_dist[j] = std::sqrt(heap[static_cast<std::size_t>(j)].d2);
  }
}

SpatialIndex build_index(const EmbeddedSeries& embedded) { return SpatialIndex(embedded); }

NeighborTable knn_all(const SpatialIndex& index, int k) {
  check_k(k, index.size());
  NeighborTable table;
  table.rows = index.size();
  table.k = k;
  table.indices.resize(table.rows * static_cast<std::size_t>(k));
  table.distances.resize(table.rows * static_cast<std::size_t>(k));
  for (std::size_t i = 0; i < table.rows; ++i) {
    index.query(i, k, table.indices.data() + i * static_cast<std::size_t>(k),
                table.distances.data() + i * static_cast<std::size_t>(k));
  }
  return table;
}

NeighborTable brute_force_knn(const EmbeddedSeries& embedded, int k) {
  const std::size_t n = embedded.size();
  if (n < 2) throw ParameterError("brute_force_knn needs at least 2 points");
  check_k(k, n);

  NeighborTable table;
  table.rows = n;
  table.k = k;
  table.indices.resize(n * static_cast<std::size_t>(k));
  table.distances.resize(n * static_cast<std::size_t>(k));

  std::vector<Candidate> all(n - 1);
  for (std::size_t i = 0; i < n; ++i) {
    const double* q = embedded.points.data() + i * static_cast<std::size_t>(embedded.dim);
    std::size_t m = 0;
    for (std::size_t j = 0; j < n; ++j) {
      if (j == i) continue;
      all[m++] = {sq_dist(q, embedded.points.data() + j * static_cast<std::size_t>(embedded.dim),
                          embedded.dim),
                  static_cast<std::int32_t>(j)};
    }
    std::partial_sort(all.begin(), all.begin() + k, all.end(), heap_less);
    for (int j = 0; j < k; ++j) {
      table.indices[i * static_cast<std::size_t>(k) + static_cast<std::size_t>(j)] = all[static_cast<std::size_t>(j)].idx;
      table.distances[i * static_cast<std::size_t>(k) + static_cast<std::size_t>(j)] =
          std::sqrt(all[static_cast<std::size_t>(j)].d2);
    }
  }
  return table;
}

}  // namespace unicorn
