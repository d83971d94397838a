#pragma once

#include <chrono>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "affexp/execution.hpp"

namespace affexp {

using Vector = std::vector<double>;

/// Immutable vocabulary -> dense vector map. Rows are stored as float; the
/// per-row L2 norm is cached in double so similarities are computed
/// in double precision without keeping a second normalized matrix.
class EmbeddingSpace {
 public:
  EmbeddingSpace() = default;
  /// `data` is row-major with `terms.size() * dimension` values. Duplicate
  /// terms keep their first row. Throws ValidationError on shape mismatch or
  /// non-finite values.
  EmbeddingSpace(std::vector<std::string> terms, std::vector<float> data, std::size_t dimension);

  std::size_t dimension() const noexcept { return dimension_; }
  std::size_t size() const noexcept { return terms_.size(); }
  bool empty() const noexcept { return terms_.empty(); }

  const std::string& term(std::size_t row) const { return terms_[row]; }
  const std::vector<std::string>& terms() const noexcept { return terms_; }
  std::optional<std::size_t> index_of(std::string_view term) const;
  bool contains(std::string_view term) const { return index_of(term).has_value(); }

  std::span<const float> row(std::size_t row) const {
    return {data_.data() + row * dimension_, dimension_};
  }
  std::optional<std::span<const float>> lookup(std::string_view term) const;
  Vector vector_of(std::size_t row) const;

  /// ||v||, accumulated in double in component order; 0 for a zero row.
  double norm(std::size_t row) const { return norms_[row]; }
  bool is_degenerate(std::size_t row) const { return norms_[row] == 0.0; }

  /// Unit-length copy of a row; all zeros for a degenerate row.
  Vector normalized(std::size_t row) const;

  friend bool operator==(const EmbeddingSpace& a, const EmbeddingSpace& b) {
    return a.dimension_ == b.dimension_ && a.terms_ == b.terms_ && a.data_ == b.data_;
  }

 private:
  std::size_t dimension_ = 0;
  std::vector<std::string> terms_;
  std::vector<float> data_;
  std::vector<double> norms_;
  std::unordered_map<std::string, std::size_t> index_;
};

struct EmbeddingLoadReport {
  std::size_t lines_read = 0;
  std::size_t duplicates = 0;
  std::size_t degenerate_rows = 0;
  std::vector<std::string> warnings;
};

/// Reads the GloVe text format (`token v1 ... vd`, space separated, no
/// header). Keeps the first occurrence of duplicate tokens and records a
/// warning. Throws ParseError (with line number) on inconsistent arity or
/// unparsable/non-finite values, IoError when the file cannot be opened.
EmbeddingSpace load_embeddings(const std::filesystem::path& path, std::optional<std::size_t> limit = std::nullopt,
                               EmbeddingLoadReport* report = nullptr);
EmbeddingSpace read_embeddings(std::istream& in, std::optional<std::size_t> limit = std::nullopt,
                               EmbeddingLoadReport* report = nullptr);

struct CosineResult {
  double value = 0.0;
  bool degenerate = false;  // one side was a zero vector; value is 0
};

CosineResult cosine(std::span<const double> a, std::span<const double> b);
CosineResult cosine(std::span<const float> a, std::span<const float> b);

struct Neighbor {
  std::string term;
  double similarity = 0.0;

  friend bool operator==(const Neighbor&, const Neighbor&) = default;
};

/// A k-NN query: a vocabulary term (excluded from its own results) or a raw
/// vector with an optional term to exclude.
struct NearestQuery {
  std::optional<std::string> term;
  Vector vector;
  std::optional<std::string> exclude;

  static NearestQuery of_term(std::string t) { return {std::move(t), {}, std::nullopt}; }
  static NearestQuery of_vector(Vector v, std::optional<std::string> exclude = std::nullopt) {
    return {std::nullopt, std::move(v), std::move(exclude)};
  }
};

/// Exact full-scan k-NN over cosine similarity. Results are sorted by
/// similarity descending, ties by term ascending; all similarities are
/// >= min_sim; degenerate rows are never returned. `rows` restricts the scan
/// to a subset of row indices (empty = whole vocabulary). Throws
/// OutOfVocabularyError for an unknown query term, ConfigError for k == 0 or
/// a dimension mismatch.
std::vector<Neighbor> nearest(const EmbeddingSpace& space, const NearestQuery& query, std::size_t k,
                              double min_sim, std::span<const std::uint32_t> rows = {},
                              Execution exec = Execution::parallel);

// ---------------------------------------------------------------------------
// Token embedding providers

struct TokenEmbeddingRequest {
  std::vector<std::string> tokens;
  std::size_t target_index = 0;
};

/// Throws ValidationError unless 0 <= target_index < tokens.size().
void validate(const TokenEmbeddingRequest& request);

/// Source of token vectors: static lookups or a context-aware remote model.
/// Implementations must be callable concurrently.
class TokenEmbeddingProvider {
 public:
  virtual ~TokenEmbeddingProvider() = default;

  /// nullopt means out-of-vocabulary.
  virtual std::optional<Vector> embed(const TokenEmbeddingRequest& request) const = 0;
  virtual std::size_t dimension() const = 0;
  virtual bool contextual() const = 0;
  virtual std::string describe() const = 0;
};

/// Ignores context: returns the vocabulary vector of tokens[target_index].
class StaticEmbeddingProvider final : public TokenEmbeddingProvider {
 public:
  explicit StaticEmbeddingProvider(std::shared_ptr<const EmbeddingSpace> space);

  std::optional<Vector> embed(const TokenEmbeddingRequest& request) const override;
  std::size_t dimension() const override { return space_->dimension(); }
  bool contextual() const override { return false; }
  std::string describe() const override { return "static"; }

  const EmbeddingSpace& space() const { return *space_; }

 private:
  std::shared_ptr<const EmbeddingSpace> space_;
};

struct ProviderInfo {
  std::size_t dim = 0;
  std::string model;
};

/// HTTP client for the contextual embedding wire contract:
///   GET  /v1/info  -> {"dim": d, "model": "..."}
///   POST /v1/embed {"tokens": [...], "target_index": i} -> {"vector": [...], "dim": d}
/// The handshake runs in the constructor. When the service is unreachable or
/// times out and a fallback provider is set, requests go to the fallback;
/// otherwise ProviderUnavailableError is thrown. A response whose dimension
/// differs from the handshake raises ProtocolError (never falls back).
class RemoteEmbeddingProvider final : public TokenEmbeddingProvider {
 public:
  RemoteEmbeddingProvider(std::string base_url, std::chrono::milliseconds timeout = std::chrono::seconds(5),
                          std::shared_ptr<const TokenEmbeddingProvider> fallback = nullptr);

  std::optional<Vector> embed(const TokenEmbeddingRequest& request) const override;
  std::size_t dimension() const override;
  bool contextual() const override { return true; }
  std::string describe() const override;

  /// False when the handshake failed and every request goes to the fallback.
  bool connected() const noexcept { return info_.has_value(); }
  const std::optional<ProviderInfo>& info() const noexcept { return info_; }

 private:
  std::string base_url_;
  std::chrono::milliseconds timeout_;
  std::shared_ptr<const TokenEmbeddingProvider> fallback_;
  std::optional<ProviderInfo> info_;
};

/// Validates the request, then delegates to the provider.
std::optional<Vector> embed_token(const TokenEmbeddingProvider& provider, const TokenEmbeddingRequest& request);

/// Builds a provider from a CLI value: "static" (or empty) gives the static
/// provider over `space`; an http:// URL gives a remote provider that falls
/// back to static when unreachable.
std::shared_ptr<const TokenEmbeddingProvider> make_provider(std::string_view spec,
                                                            std::shared_ptr<const EmbeddingSpace> space,
                                                            std::chrono::milliseconds timeout = std::chrono::seconds(5));

}  // namespace affexp
