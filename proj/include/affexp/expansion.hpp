#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "affexp/core_model.hpp"
#include "affexp/embedding_store.hpp"
#include "affexp/execution.hpp"
#include "affexp/lexical_kb.hpp"
#include "json.hpp"

namespace affexp {

/// Lexicon members that have a vector in a given space, with their scores
/// laid out in model category order. This is the search domain of the
/// proximity lookup: only terms that carry scores can contribute evidence.
class LexiconIndex {
 public:
  LexiconIndex(const AffectiveModel& model, std::shared_ptr<const EmbeddingSpace> space);

  const EmbeddingSpace& space() const noexcept { return *space_; }
  const std::shared_ptr<const EmbeddingSpace>& space_ptr() const noexcept { return space_; }
  const std::vector<std::string>& categories() const noexcept { return categories_; }

  /// Space rows of lexicon members, ascending.
  std::span<const std::uint32_t> rows() const noexcept { return rows_; }
  /// Scores of the lexicon member stored at `row`, in category order.
  std::span<const double> scores_of_row(std::uint32_t row) const;
  std::size_t size() const noexcept { return rows_.size(); }

 private:
  std::shared_ptr<const EmbeddingSpace> space_;
  std::vector<std::string> categories_;
  std::vector<std::uint32_t> rows_;
  std::vector<double> scores_;  // rows_.size() x categories_.size()
};

struct ReasoningConfig {
  std::size_t k = 50;
  double min_sim = 0.35;
  bool weighted = true;  // false = plain mean (strict mode)
};

struct ReasoningResult {
  CategoryScores scores;
  bool no_evidence = false;
  std::vector<Neighbor> similar;
  std::vector<Neighbor> antonyms;
};

/// Proximity lookup plus antonym-aware averaging for a vocabulary term. The
/// term itself is never its own evidence. Throws OutOfVocabularyError when the
/// term has no vector.
ReasoningResult reason_scores(const LexiconIndex& index, std::string_view term, const LexicalKB& kb,
                              const ReasoningConfig& config = {}, Execution exec = Execution::parallel);

/// Vector mode. Antonyms are identified relative to `anchor`, which is also
/// excluded from the evidence; without an anchor the antonym set is empty.
ReasoningResult reason_scores(const LexiconIndex& index, std::span<const double> vector,
                              const std::optional<std::string>& anchor, const LexicalKB& kb,
                              const ReasoningConfig& config = {}, Execution exec = Execution::parallel);

// ---------------------------------------------------------------------------
// Sense disambiguation

struct SenseEmbedding {
  std::string sense_id;
  Vector vector;
  std::size_t example_count = 0;
};

struct SenseEmbeddingReport {
  std::size_t examples_used = 0;
  std::size_t examples_skipped = 0;  // lemma not found or token out of vocabulary
};

/// Finds the occurrence of `lemma` in a tokenized sentence. Inflected forms
/// are accepted through a short suffix list; multi-word lemmas match their
/// token sequence and target its first word.
std::optional<std::size_t> find_lemma(const std::vector<std::string>& tokens, std::string_view lemma);

/// Mean of the provider vectors of the lemma occurrence in every usage
/// example. With a non-contextual provider the matched token is replaced by
/// the lemma itself, so the result is the lemma's static vector. Returns
/// nullopt when no example is usable.
std::optional<SenseEmbedding> embed_sense(const Sense& sense, const TokenEmbeddingProvider& provider,
                                          SenseEmbeddingReport* report = nullptr);

struct DisambiguationConfig {
  double threshold_multiplier = 1.3;
  ReasoningConfig reasoning;
  std::size_t max_corpus_examples = 5;
};

struct DisambiguationResult {
  std::string term;
  std::map<std::string, CategoryScores> per_sense;
  std::map<std::string, double> centroid_distance;
  std::map<std::string, bool> inherited;  // false = scored by proximity reasoning
  double avg_sense_distance = 0.0;
  double threshold = 0.0;
  bool from_corpus = false;
  std::vector<std::string> skipped;  // sense ids without a usable example
};

/// Corpus sentences that contain `term`, at most `limit`, as pseudo-senses
/// with ids "corpus:<1-based line>".
std::vector<Sense> corpus_pseudo_senses(std::string_view term, const std::vector<std::string>& corpus,
                                        std::size_t limit);

/// Splits a term into senses. Senses within threshold_multiplier times the
/// average centroid distance inherit `seed_scores`; outliers are scored by
/// proximity reasoning on their own vector. Terms without KB senses fall back
/// to corpus sentences when a corpus is given. `index` may be null, in which
/// case outliers get all-zero scores.
DisambiguationResult disambiguate(std::string_view term, const CategoryScores& seed_scores, const LexicalKB& kb,
                                  const TokenEmbeddingProvider& provider, const LexiconIndex* index,
                                  const DisambiguationConfig& config = {},
                                  const std::vector<std::string>* corpus = nullptr);

/// Embeds every lexicon surface through `provider` (the phrase itself is the
/// context; multi-word surfaces average their word vectors). Used when the
/// provider's space differs from the static vocabulary.
std::shared_ptr<const EmbeddingSpace> build_lexicon_space(const AffectiveModel& model,
                                                          const TokenEmbeddingProvider& provider,
                                                          Execution exec = Execution::parallel);

// ---------------------------------------------------------------------------
// Iterative expansion

struct ExpansionConfig {
  int iterations = 1;
  ReasoningConfig reasoning;
  std::size_t candidate_k = 10;           // embedding neighbors gathered per frontier term
  double admission_threshold = 0.1;       // minimum max|score| of a new entry
  double membership_threshold = 0.1;      // |score| counted as category membership
  std::size_t per_category_target = 400;  // 0 disables the cap
  bool disambiguate = true;
  DisambiguationConfig disambiguation;
  RelationDiscounts discounts;
};

struct CategoryMembership {
  std::size_t positive = 0;
  std::size_t negative = 0;
  std::size_t total() const noexcept { return positive + negative; }
};

struct IterationReport {
  int iteration = 0;
  std::size_t candidates = 0;
  std::size_t admitted = 0;
  std::size_t admitted_from_kb_rules = 0;  // out-of-vocabulary KB candidates
  std::size_t below_threshold = 0;
  std::size_t over_target = 0;
  std::size_t disambiguated_terms = 0;
  std::size_t sense_entries = 0;
};

struct ExpansionReport {
  std::size_t initial_size = 0;
  std::size_t final_size = 0;
  std::vector<IterationReport> iterations;
  std::map<std::string, CategoryMembership> membership;
  std::map<std::string, std::string> skipped;  // term -> reason
};

struct ExpansionResult {
  AffectiveModel model;
  ExpansionReport report;
};

struct CandidateScore {
  std::string surface;
  ReasoningResult result;
};

/// Scores each candidate against the snapshot. Out-of-vocabulary candidates
/// come back with no_evidence set. Output order follows the input.
std::vector<CandidateScore> score_candidates_serial(const LexiconIndex& index, const LexicalKB& kb,
                                                    const std::vector<std::string>& candidates,
                                                    const ReasoningConfig& config);
std::vector<CandidateScore> score_candidates_parallel(const LexiconIndex& index, const LexicalKB& kb,
                                                      const std::vector<std::string>& candidates,
                                                      const ReasoningConfig& config);

/// Surfaces counted per category pole at |score| >= threshold.
std::map<std::string, CategoryMembership> category_membership(const AffectiveModel& model, double threshold);

/// Grows the model. Each iteration optionally disambiguates seed terms, then
/// gathers candidates (KB neighbors and embedding neighbors of the frontier),
/// scores them by proximity reasoning and admits those above the admission
/// threshold while every category they join is below per_category_target.
/// Existing entries are never modified. `provider` defaults to static lookups
/// in `space`.
ExpansionResult expand(const AffectiveModel& model, const LexicalKB& kb,
                       std::shared_ptr<const EmbeddingSpace> space, const ExpansionConfig& config = {},
                       const TokenEmbeddingProvider* provider = nullptr,
                       const std::vector<std::string>* corpus = nullptr, Execution exec = Execution::parallel);

nlohmann::ordered_json to_json(const ExpansionReport& report);
nlohmann::ordered_json to_json(const DisambiguationResult& result);

}  // namespace affexp
