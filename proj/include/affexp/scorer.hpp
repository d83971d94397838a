#pragma once

#include <cstddef>
#include <filesystem>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "affexp/core_model.hpp"
#include "affexp/dependency_tree.hpp"
#include "affexp/embedding_store.hpp"
#include "affexp/expansion.hpp"
#include "affexp/lexical_kb.hpp"
#include "json.hpp"

namespace affexp {

/// Negation, intensity and trigger-filter rules applied to dependency trees.
struct GrammarConfig {
  std::set<std::string, std::less<>> negators{"not", "never", "no", "n't", "neither", "nor"};
  std::map<std::string, double, std::less<>> intensifiers{
      {"very", 1.5}, {"extremely", 1.8}, {"slightly", 0.5}, {"somewhat", 0.7}, {"a-bit", 0.7}};
  double modifier_min = 0.25;
  double modifier_max = 2.0;
  std::set<std::string, std::less<>> complement_relations{"obj", "dobj", "xcomp", "ccomp", "acomp", "attr"};
  std::set<std::string, std::less<>> function_upos{"DET", "ADP", "PUNCT", "AUX", "PART", "CCONJ", "SCONJ", "PRON"};
  double neutral_epsilon = 0.05;
};

/// Reads a JSON grammar file; keys: negators, intensifiers, modifier_range
/// ([min, max]), complement_relations, function_upos, neutral_epsilon.
/// Unknown keys and out-of-range values raise ConfigError.
GrammarConfig load_grammar_config(const std::filesystem::path& path);
GrammarConfig parse_grammar_config(const nlohmann::json& j);
nlohmann::ordered_json to_json(const GrammarConfig& config);

bool is_negator(const DepToken& token, const GrammarConfig& config);

/// -1 per negator attached to token i (or to the verb it complements),
/// composed recursively so that a negated negator cancels.
double negation_factor(const DependencyTree& tree, std::size_t i, const GrammarConfig& config = {});

/// Product of the intensity weights of i's adverbial modifiers, clamped to
/// [modifier_min, modifier_max]; 1 without modifiers.
double modifier_factor(const DependencyTree& tree, std::size_t i, const GrammarConfig& config = {});

struct ScoreFlags {
  bool use_reasoning = false;  // +AR: proximity reasoning for tokens missing from the lexicon
  bool use_grammar = false;    // +GR: negation and modifier factors
  bool use_lemmas = false;     // +L: look tokens up by lemma

  std::string label() const;  // "plain", "+AR", "+AR+L+GR", ...
};

/// Parses a configuration label such as "+AR+GR" or "plain". Throws ConfigError.
ScoreFlags parse_flags(std::string_view label);

struct TokenContribution {
  std::size_t index = 0;  // first token of the match
  std::size_t length = 1;
  std::string key;
  std::string source;  // lexicon | reasoning | oov
  std::vector<double> scores;  // per category, before factors
  double negation = 1.0;
  double modifier = 1.0;
};

struct SentenceScore {
  std::string id;
  std::vector<std::string> categories;
  std::vector<double> raw;  // unclamped sums
  CategoryScores scores;    // clamped to [-1, 1]
  std::optional<std::string> dominant_category;
  bool dominant_positive = true;
  std::vector<TokenContribution> contributions;

  /// "T+", "I-", ... (first letter of the category), or "None".
  std::string dominant_label() const;
};

/// Pole label of a category: uppercase initial plus sign.
std::string pole_label(std::string_view category, bool positive);

/// Scores sentences against an immutable model. Reasoning needs `index`
/// (lexicon members embedded in the provider's space) and a provider.
class SentenceScorer {
 public:
  SentenceScorer(const AffectiveModel& model, ScoreFlags flags, GrammarConfig grammar = {},
                 std::shared_ptr<const TokenEmbeddingProvider> provider = nullptr,
                 std::shared_ptr<const LexiconIndex> index = nullptr, const LexicalKB* kb = nullptr,
                 ReasoningConfig reasoning = {});

  SentenceScore score(const DependencyTree& tree) const;

  const ScoreFlags& flags() const noexcept { return flags_; }
  const GrammarConfig& grammar() const noexcept { return grammar_; }
  const AffectiveModel& model() const noexcept { return *model_; }

 private:
  const AffectiveModel* model_;
  ScoreFlags flags_;
  GrammarConfig grammar_;
  std::shared_ptr<const TokenEmbeddingProvider> provider_;
  std::shared_ptr<const LexiconIndex> index_;
  const LexicalKB* kb_;
  LexicalKB empty_kb_;
  ReasoningConfig reasoning_;
  std::vector<std::string> categories_;
  std::map<std::string, std::vector<std::vector<std::string>>, std::less<>> phrases_;  // first word -> longest first
};

/// Picks the dominant pole from per-category values in declaration order.
/// Returns the category index, or nullopt when every |value| < epsilon.
std::optional<std::size_t> dominant_index(const std::vector<double>& values, double epsilon);

/// Single-category desirability scoring; the scorer's model must declare
/// only the "desirability" category.
SentenceScore score_desirability(const DependencyTree& tree, const SentenceScorer& scorer);

std::vector<SentenceScore> score_corpus_serial(const SentenceScorer& scorer, const std::vector<DependencyTree>& trees);
std::vector<SentenceScore> score_corpus_parallel(const SentenceScorer& scorer,
                                                 const std::vector<DependencyTree>& trees);

nlohmann::ordered_json to_json(const SentenceScore& score, const DependencyTree* tree = nullptr);

}  // namespace affexp
