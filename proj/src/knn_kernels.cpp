#include "affexp/knn_kernels.hpp"

#include <omp.h>

#include <algorithm>
#include <cmath>
#include <queue>

#include "affexp/embedding_store.hpp"

namespace affexp {

void set_worker_count(int workers) {
  if (workers > 0) omp_set_num_threads(workers);
}

}  // namespace affexp

namespace affexp::kernels {

namespace {

struct Ranker {
  const EmbeddingSpace* space;
  // true when a ranks strictly before b
  bool operator()(const ScoredRow& a, const ScoredRow& b) const {
    if (a.similarity != b.similarity) return a.similarity > b.similarity;
    return space->term(a.row) < space->term(b.row);
  }
};

// Max-heap on rank position: top() is the worst retained row.
using BoundedHeap = std::priority_queue<ScoredRow, std::vector<ScoredRow>, Ranker>;

void offer(BoundedHeap& heap, const ScoredRow& candidate, std::size_t k, const Ranker& better) {
  if (heap.size() < k) {
    heap.push(candidate);
  } else if (better(candidate, heap.top())) {
    heap.pop();
    heap.push(candidate);
  }
}

std::vector<ScoredRow> drain_sorted(BoundedHeap& heap, const Ranker& better) {
  std::vector<ScoredRow> out;
  out.reserve(heap.size());
  while (!heap.empty()) {
    out.push_back(heap.top());
    heap.pop();
  }
  std::sort(out.begin(), out.end(), better);
  return out;
}

inline bool admissible(const EmbeddingSpace& space, std::uint32_t row, std::optional<std::uint32_t> exclude) {
  return !space.is_degenerate(row) && (!exclude || *exclude != row);
}

}  // namespace

double vector_norm(std::span<const double> v) {
  double sq = 0.0;
  for (double x : v) sq += x * x;
  return std::sqrt(sq);
}

double row_similarity(const EmbeddingSpace& space, std::size_t row, const Query& query) {
  const double n = space.norm(row);
  if (n == 0.0 || query.norm == 0.0) return 0.0;
  const auto v = space.row(row);
  double dot = 0.0;
  for (std::size_t j = 0; j < v.size(); ++j) dot += static_cast<double>(v[j]) * query.vector[j];
  // not clamped: a clamp would merge values the ranking must keep apart
  return dot / (n * query.norm);
}

std::vector<ScoredRow> top_k_serial(const EmbeddingSpace& space, const Query& query,
                                    std::span<const std::uint32_t> rows, std::size_t k, double min_sim,
                                    std::optional<std::uint32_t> exclude) {
  const Ranker better{&space};
  BoundedHeap heap(better);
  if (k == 0) return {};
  const std::size_t n = rows.empty() ? space.size() : rows.size();
  for (std::size_t i = 0; i < n; ++i) {
    const auto row = rows.empty() ? static_cast<std::uint32_t>(i) : rows[i];
    if (!admissible(space, row, exclude)) continue;
    const double sim = row_similarity(space, row, query);
    if (sim < min_sim) continue;
    offer(heap, {sim, row}, k, better);
  }
  return drain_sorted(heap, better);
}

std::vector<ScoredRow> top_k_parallel(const EmbeddingSpace& space, const Query& query,
                                      std::span<const std::uint32_t> rows, std::size_t k, double min_sim,
                                      std::optional<std::uint32_t> exclude) {
  const Ranker better{&space};
  BoundedHeap merged(better);
  if (k == 0) return {};
  const auto n = static_cast<std::int64_t>(rows.empty() ? space.size() : rows.size());

#pragma omp parallel
  {
    BoundedHeap local(better);
#pragma omp for schedule(static) nowait
    for (std::int64_t i = 0; i < n; ++i) {
      const auto row = rows.empty() ? static_cast<std::uint32_t>(i) : rows[static_cast<std::size_t>(i)];
      if (!admissible(space, row, exclude)) continue;
      const double sim = row_similarity(space, row, query);
      if (sim < min_sim) continue;
      offer(local, {sim, row}, k, better);
    }
#pragma omp critical(affexp_topk_merge)
    {
      while (!local.empty()) {
        offer(merged, local.top(), k, better);
        local.pop();
      }
    }
  }
  return drain_sorted(merged, better);
}

}  // namespace affexp::kernels
