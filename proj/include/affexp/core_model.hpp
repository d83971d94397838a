#pragma once

#include <cstddef>
#include <filesystem>
#include <functional>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace affexp {

/// A bipolar affective category such as temper (calmness / anger).
struct AffectiveCategory {
  std::string name;
  std::string positive_pole;
  std::string negative_pole;

  friend bool operator==(const AffectiveCategory&, const AffectiveCategory&) = default;
};

/// Per-category scores, each in [-1, 1]. Setters reject out-of-range or
/// non-finite values with ValidationError.
class CategoryScores {
 public:
  using Map = std::map<std::string, double, std::less<>>;

  CategoryScores() = default;
  CategoryScores(std::initializer_list<std::pair<const std::string, double>> init);

  void set(std::string_view category, double value);
  std::optional<double> get(std::string_view category) const;
  /// Returns 0 for absent categories.
  double value_or_zero(std::string_view category) const;

  const Map& values() const noexcept { return values_; }
  bool empty() const noexcept { return values_.empty(); }
  std::size_t size() const noexcept { return values_.size(); }
  bool contains(std::string_view category) const { return values_.find(category) != values_.end(); }

  /// Largest absolute score, 0 when empty.
  double max_abs() const;

  /// Equality after rounding every score to the persisted precision (1e-6).
  bool equal_at_stored_precision(const CategoryScores& other) const;

  friend bool operator==(const CategoryScores&, const CategoryScores&) = default;

 private:
  Map values_;
};

enum class Origin { seed, enriched, disambiguated, expanded };

std::string_view to_string(Origin origin);
std::optional<Origin> parse_origin(std::string_view text);

struct Provenance {
  Origin origin = Origin::seed;
  int iteration = 0;

  friend bool operator==(const Provenance&, const Provenance&) = default;
};

struct LexiconEntry {
  std::string surface;
  std::string sense_id;  // empty = sense-averaged entry
  CategoryScores scores;
  Provenance provenance;

  friend bool operator==(const LexiconEntry&, const LexiconEntry&) = default;
};

struct ModelMetadata {
  std::string name;
  std::map<std::string, std::string> params;

  friend bool operator==(const ModelMetadata&, const ModelMetadata&) = default;
};

/// Immutable affective model: categories plus a lexicon of term and sense
/// entries. Construction normalizes surfaces, fills missing category scores
/// with 0 and rejects unknown categories, duplicate (surface, sense_id)
/// pairs and duplicate category names or poles.
class AffectiveModel {
 public:
  AffectiveModel() = default;
  AffectiveModel(std::vector<AffectiveCategory> categories, std::vector<LexiconEntry> entries,
                 ModelMetadata metadata = {});

  const std::vector<AffectiveCategory>& categories() const noexcept { return categories_; }
  const std::vector<LexiconEntry>& entries() const noexcept { return entries_; }
  const ModelMetadata& metadata() const noexcept { return metadata_; }
  std::size_t size() const noexcept { return entries_.size(); }

  std::vector<std::string> category_names() const;
  bool has_category(std::string_view name) const;
  std::optional<std::size_t> category_index(std::string_view name) const;

  const LexiconEntry* find(std::string_view surface, std::string_view sense_id = {}) const;
  std::vector<const LexiconEntry*> entries_for(std::string_view surface) const;
  bool contains_surface(std::string_view surface) const;

  /// Scores used when a surface is looked up without sense information: the
  /// sense-averaged entry when present, otherwise the mean over its senses.
  std::optional<CategoryScores> surface_scores(std::string_view surface) const;

  /// Distinct surfaces in lexicographic order.
  std::vector<std::string> surfaces() const;

  /// Same categories and entry set, scores compared at stored precision.
  bool equivalent_to(const AffectiveModel& other) const;

  /// Copy with replaced metadata.
  AffectiveModel with_metadata(ModelMetadata metadata) const;

 private:
  std::vector<AffectiveCategory> categories_;
  std::vector<LexiconEntry> entries_;
  ModelMetadata metadata_;
  std::unordered_map<std::string, std::vector<std::size_t>> by_surface_;
};

inline constexpr std::string_view kLexiconHeader = "# affexp-lexicon v1";

AffectiveModel load_model(const std::filesystem::path& path);
AffectiveModel read_model(std::istream& in);
void save_model(const AffectiveModel& model, const std::filesystem::path& path);
void write_model(const AffectiveModel& model, std::ostream& out);

/// Renames categories: each mapped source score is copied verbatim to its
/// target; unmapped categories are dropped. Throws ConfigError when a mapping
/// key is not a source category or a value is not in `target_categories`
/// (an empty `target_categories` skips the target check).
CategoryScores map_categories(const CategoryScores& scores,
                              const std::map<std::string, std::string>& mapping,
                              const std::vector<std::string>& target_categories = {});

/// The four categories of the revisited Hourglass of Emotions, in the fixed
/// dominant tie-break order (temper, introspection, attitude, sensitivity).
std::vector<AffectiveCategory> hourglass_categories();

/// Single bipolar category used by desired/undesired domain models.
AffectiveCategory desirability_category();

/// Mapping from the revisited Hourglass categories to the original
/// (SenticNet 5) Hourglass categories.
std::map<std::string, std::string> hourglass_to_sentic5_mapping();

}  // namespace affexp
