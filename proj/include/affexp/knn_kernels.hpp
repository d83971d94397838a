#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "affexp/execution.hpp"

namespace affexp {
class EmbeddingSpace;
}

namespace affexp::kernels {

struct ScoredRow {
  double similarity;
  std::uint32_t row;
};

/// Query vector with its norm precomputed (see vector_norm).
struct Query {
  std::span<const double> vector;
  double norm;
};

/// sqrt of the sum of squares accumulated in component order.
double vector_norm(std::span<const double> v);

/// dot(v, q) / (||q|| * ||v||), 0 for degenerate rows. Evaluated exactly in
/// this form so that equal cosines compare equal and ties fall to the term.
double row_similarity(const EmbeddingSpace& space, std::size_t row, const Query& query);

/// Top-k rows by cosine similarity against `query`, ordered by similarity
/// descending then term ascending. Rows below `min_sim`, degenerate rows and
/// `exclude` are skipped. `rows` limits the scan to a subset (empty = all
/// rows).
std::vector<ScoredRow> top_k_serial(const EmbeddingSpace& space, const Query& query,
                                    std::span<const std::uint32_t> rows, std::size_t k, double min_sim,
                                    std::optional<std::uint32_t> exclude);

/// OpenMP version of top_k_serial: per-thread bounded heaps merged with the
/// same total order, so the output is identical.
std::vector<ScoredRow> top_k_parallel(const EmbeddingSpace& space, const Query& query,
                                      std::span<const std::uint32_t> rows, std::size_t k, double min_sim,
                                      std::optional<std::uint32_t> exclude);

inline std::vector<ScoredRow> top_k(Execution exec, const EmbeddingSpace& space, const Query& query,
                                    std::span<const std::uint32_t> rows, std::size_t k, double min_sim,
                                    std::optional<std::uint32_t> exclude) {
  return exec == Execution::serial ? top_k_serial(space, query, rows, k, min_sim, exclude)
                                   : top_k_parallel(space, query, rows, k, min_sim, exclude);
}

}  // namespace affexp::kernels
