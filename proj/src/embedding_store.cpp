#include "affexp/embedding_store.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>

#include "affexp/error.hpp"
#include "affexp/knn_kernels.hpp"
#include "affexp/log.hpp"
#include "httplib.h"
#include "json.hpp"

namespace affexp {

// ---------------------------------------------------------------------------
// EmbeddingSpace

EmbeddingSpace::EmbeddingSpace(std::vector<std::string> terms, std::vector<float> data, std::size_t dimension)
    : dimension_(dimension) {
  if (terms.size() * dimension != data.size()) {
    throw ValidationError("embedding data holds " + std::to_string(data.size()) + " values, expected " +
                          std::to_string(terms.size() * dimension));
  }
  if (dimension == 0 && !terms.empty()) throw ValidationError("embedding dimension must be positive");
  terms_.reserve(terms.size());
  data_.reserve(data.size());
  norms_.reserve(terms.size());
  for (std::size_t i = 0; i < terms.size(); ++i) {
    if (index_.contains(terms[i])) continue;
    double sq = 0.0;
    for (std::size_t j = 0; j < dimension; ++j) {
      const float v = data[i * dimension + j];
      if (!std::isfinite(v)) throw ValidationError("non-finite value in vector for '" + terms[i] + "'");
      sq += static_cast<double>(v) * v;
      data_.push_back(v);
    }
    norms_.push_back(std::sqrt(sq));
    index_.emplace(terms[i], terms_.size());
    terms_.push_back(std::move(terms[i]));
  }
}

std::optional<std::size_t> EmbeddingSpace::index_of(std::string_view term) const {
  auto it = index_.find(std::string(term));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::optional<std::span<const float>> EmbeddingSpace::lookup(std::string_view term) const {
  const auto idx = index_of(term);
  if (!idx) return std::nullopt;
  return row(*idx);
}

Vector EmbeddingSpace::vector_of(std::size_t r) const {
  const auto v = row(r);
  return Vector(v.begin(), v.end());
}

Vector EmbeddingSpace::normalized(std::size_t r) const {
  Vector out = vector_of(r);
  const double n = norms_[r];
  if (n == 0.0) return out;
  for (double& x : out) x /= n;
  return out;
}

// ---------------------------------------------------------------------------
// GloVe text loader

EmbeddingSpace read_embeddings(std::istream& in, std::optional<std::size_t> limit, EmbeddingLoadReport* report) {
  EmbeddingLoadReport local;
  EmbeddingLoadReport& rep = report != nullptr ? *report : local;

  std::vector<std::string> terms;
  std::vector<float> data;
  std::unordered_map<std::string, std::size_t> seen;
  std::size_t dimension = 0;
  std::string line;
  std::size_t line_no = 0;

  while ((!limit || terms.size() < *limit) && std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos) continue;
    ++rep.lines_read;

    const char* p = line.data();
    const char* end = p + line.size();
    const char* tok_end = std::find(p, end, ' ');
    std::string token(p, tok_end);
    if (token.empty()) throw ParseError("line starts with a space (missing token)", line_no, 1);

    std::vector<float> values;
    values.reserve(dimension > 0 ? dimension : 64);
    const char* cur = tok_end;
    std::size_t column = 1;
    while (cur < end) {
      while (cur < end && *cur == ' ') ++cur;
      if (cur >= end) break;
      ++column;
      double v = 0.0;
      const auto [next, ec] = std::from_chars(cur, end, v);
      if (ec != std::errc() || (next < end && *next != ' ')) {
        throw ParseError("unparsable vector component", line_no, column);
      }
      if (!std::isfinite(v)) throw ParseError("non-finite vector component", line_no, column);
      values.push_back(static_cast<float>(v));
      cur = next;
    }
    if (values.empty()) throw ParseError("line has a token but no vector", line_no, 2);
    if (dimension == 0) {
      dimension = values.size();
    } else if (values.size() != dimension) {
      throw ParseError("expected " + std::to_string(dimension) + " components, found " +
                           std::to_string(values.size()),
                       line_no);
    }
    if (seen.contains(token)) {
      ++rep.duplicates;
      rep.warnings.push_back("line " + std::to_string(line_no) + ": duplicate token '" + token +
                             "' ignored (first occurrence kept)");
      log::warn("duplicate embedding token ignored", {{"token", token}, {"line", line_no}});
      continue;
    }
    seen.emplace(token, terms.size());
    terms.push_back(std::move(token));
    data.insert(data.end(), values.begin(), values.end());
  }

  EmbeddingSpace space(std::move(terms), std::move(data), dimension);
  for (std::size_t i = 0; i < space.size(); ++i) {
    if (space.is_degenerate(i)) ++rep.degenerate_rows;
  }
  return space;
}

EmbeddingSpace load_embeddings(const std::filesystem::path& path, std::optional<std::size_t> limit,
                               EmbeddingLoadReport* report) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open embeddings file '" + path.string() + "'");
  return read_embeddings(in, limit, report);
}

// ---------------------------------------------------------------------------
// Similarity

namespace {

template <typename T>
CosineResult cosine_impl(std::span<const T> a, std::span<const T> b) {
  if (a.size() != b.size()) throw ConfigError("cosine of vectors with different dimensions");
  double dot = 0.0, aa = 0.0, bb = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double x = a[i], y = b[i];
    dot += x * y;
    aa += x * x;
    bb += y * y;
  }
  if (aa == 0.0 || bb == 0.0) return {0.0, true};
  return {std::clamp(dot / (std::sqrt(aa) * std::sqrt(bb)), -1.0, 1.0), false};
}

}  // namespace

CosineResult cosine(std::span<const double> a, std::span<const double> b) { return cosine_impl(a, b); }
CosineResult cosine(std::span<const float> a, std::span<const float> b) { return cosine_impl(a, b); }

std::vector<Neighbor> nearest(const EmbeddingSpace& space, const NearestQuery& query, std::size_t k,
                              double min_sim, std::span<const std::uint32_t> rows, Execution exec) {
  if (k == 0) throw ConfigError("k must be at least 1");
  Vector q;
  double q_norm = 0.0;
  std::optional<std::uint32_t> exclude;
  if (query.term) {
    const auto idx = space.index_of(*query.term);
    if (!idx) throw OutOfVocabularyError(*query.term);
    q = space.vector_of(*idx);
    q_norm = space.norm(*idx);
    exclude = static_cast<std::uint32_t>(*idx);
  } else {
    if (query.vector.size() != space.dimension()) {
      throw ConfigError("query vector has dimension " + std::to_string(query.vector.size()) + ", space has " +
                        std::to_string(space.dimension()));
    }
    q = query.vector;
    q_norm = kernels::vector_norm(q);
    if (q_norm == 0.0) return {};
    if (query.exclude) {
      if (const auto idx = space.index_of(*query.exclude)) exclude = static_cast<std::uint32_t>(*idx);
    }
  }
  if (query.term && space.is_degenerate(*exclude)) return {};

  const auto scored = kernels::top_k(exec, space, {q, q_norm}, rows, k, min_sim, exclude);
  std::vector<Neighbor> out;
  out.reserve(scored.size());
  for (const auto& s : scored) out.push_back({space.term(s.row), s.similarity});
  return out;
}

// ---------------------------------------------------------------------------
// Providers

void validate(const TokenEmbeddingRequest& request) {
  if (request.tokens.empty()) throw ValidationError("embedding request has no tokens");
  if (request.target_index >= request.tokens.size()) {
    throw ValidationError("target_index " + std::to_string(request.target_index) + " out of range for " +
                          std::to_string(request.tokens.size()) + " tokens");
  }
}

std::optional<Vector> embed_token(const TokenEmbeddingProvider& provider, const TokenEmbeddingRequest& request) {
  validate(request);
  return provider.embed(request);
}

StaticEmbeddingProvider::StaticEmbeddingProvider(std::shared_ptr<const EmbeddingSpace> space)
    : space_(std::move(space)) {
  if (!space_) throw ConfigError("static provider needs an embedding space");
}

std::optional<Vector> StaticEmbeddingProvider::embed(const TokenEmbeddingRequest& request) const {
  validate(request);
  const auto idx = space_->index_of(request.tokens[request.target_index]);
  if (!idx) return std::nullopt;
  return space_->vector_of(*idx);
}

namespace {

httplib::Client make_client(const std::string& url, std::chrono::milliseconds timeout) {
  httplib::Client cli(url);
  const auto secs = static_cast<time_t>(timeout.count() / 1000);
  const auto usecs = static_cast<time_t>((timeout.count() % 1000) * 1000);
  cli.set_connection_timeout(secs, usecs);
  cli.set_read_timeout(secs, usecs);
  cli.set_write_timeout(secs, usecs);
  return cli;
}

}  // namespace

RemoteEmbeddingProvider::RemoteEmbeddingProvider(std::string base_url, std::chrono::milliseconds timeout,
                                                 std::shared_ptr<const TokenEmbeddingProvider> fallback)
    : base_url_(std::move(base_url)), timeout_(timeout), fallback_(std::move(fallback)) {
  auto cli = make_client(base_url_, timeout_);
  auto res = cli.Get("/v1/info");
  if (!res || res->status == 503) {
    const std::string why = res ? "HTTP 503" : httplib::to_string(res.error());
    if (!fallback_) throw ProviderUnavailableError("embedding provider " + base_url_ + " unavailable: " + why);
    log::warn("embedding provider unavailable; using fallback",
              {{"url", base_url_}, {"reason", why}, {"fallback", fallback_->describe()}});
    return;
  }
  if (res->status != 200) {
    throw ProtocolError("GET /v1/info returned HTTP " + std::to_string(res->status));
  }
  try {
    const auto j = nlohmann::json::parse(res->body);
    ProviderInfo info;
    info.dim = j.at("dim").get<std::size_t>();
    info.model = j.value("model", std::string());
    if (info.dim == 0) throw ProtocolError("provider declared dimension 0");
    info_ = info;
  } catch (const nlohmann::json::exception& e) {
    throw ProtocolError(std::string("malformed /v1/info response: ") + e.what());
  }
}

std::size_t RemoteEmbeddingProvider::dimension() const {
  if (info_) return info_->dim;
  return fallback_ ? fallback_->dimension() : 0;
}

std::string RemoteEmbeddingProvider::describe() const {
  if (info_) return "remote:" + base_url_ + " (" + info_->model + ")";
  return "remote:" + base_url_ + " (fallback " + (fallback_ ? fallback_->describe() : "none") + ")";
}

std::optional<Vector> RemoteEmbeddingProvider::embed(const TokenEmbeddingRequest& request) const {
  validate(request);
  if (!info_) return fallback_->embed(request);

  nlohmann::json body;
  body["tokens"] = request.tokens;
  body["target_index"] = request.target_index;
  auto cli = make_client(base_url_, timeout_);
  auto res = cli.Post("/v1/embed", body.dump(), "application/json");
  if (!res || res->status == 503) {
    const std::string why = res ? "HTTP 503" : httplib::to_string(res.error());
    if (fallback_ && fallback_->dimension() == info_->dim) return fallback_->embed(request);
    throw ProviderUnavailableError("embedding request to " + base_url_ + " failed: " + why);
  }
  if (res->status == 422) throw ValidationError("provider rejected request: " + res->body);
  if (res->status != 200) throw ProtocolError("POST /v1/embed returned HTTP " + std::to_string(res->status));

  try {
    const auto j = nlohmann::json::parse(res->body);
    auto vec = j.at("vector").get<Vector>();
    const auto dim = j.value("dim", vec.size());
    if (vec.size() != info_->dim || dim != info_->dim) {
      throw ProtocolError("provider returned dimension " + std::to_string(vec.size()) + ", handshake declared " +
                          std::to_string(info_->dim));
    }
    for (double x : vec) {
      if (!std::isfinite(x)) throw ProtocolError("provider returned a non-finite component");
    }
    return vec;
  } catch (const nlohmann::json::exception& e) {
    throw ProtocolError(std::string("malformed /v1/embed response: ") + e.what());
  }
}

std::shared_ptr<const TokenEmbeddingProvider> make_provider(std::string_view spec,
                                                            std::shared_ptr<const EmbeddingSpace> space,
                                                            std::chrono::milliseconds timeout) {
  std::shared_ptr<const TokenEmbeddingProvider> fallback;
  if (space) fallback = std::make_shared<StaticEmbeddingProvider>(space);
  if (spec.empty() || spec == "static") {
    if (!fallback) throw ConfigError("static provider requires --embeddings");
    return fallback;
  }
  if (spec.starts_with("http://")) {
    return std::make_shared<RemoteEmbeddingProvider>(std::string(spec), timeout, fallback);
  }
  throw ConfigError("unknown provider '" + std::string(spec) + "' (expected 'static' or http://host:port)");
}

}  // namespace affexp
