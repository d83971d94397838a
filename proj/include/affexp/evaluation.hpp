#pragma once

#include <array>
#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "affexp/scorer.hpp"
#include "json.hpp"

namespace affexp {

/// Gold-file column order of the eight pole labels.
const std::array<std::string, 8>& gold_pole_labels();
/// Report row order: T+, T-, I+, I-, A+, A-, S+, S-.
const std::array<std::string, 8>& report_pole_order();
bool is_pole_label(std::string_view label);

struct GoldSentence {
  std::string id;
  std::string text;
  std::map<std::string, double> poles;  // pole label -> strength; > 0 means present
  std::optional<std::string> dominant;  // nullopt = None class
  double polarity = 0.0;
  std::vector<std::string> annotator_labels;  // per-annotator dominant labels ("None" allowed)

  friend bool operator==(const GoldSentence&, const GoldSentence&) = default;
};

struct GoldRejection {
  std::size_t line = 0;
  std::string id;
  std::string reason;
};

struct GoldLoadReport {
  std::size_t data_rows = 0;
  std::vector<GoldRejection> rejected;
};

/// Reads the normalized gold TSV:
///   id, text, A+, A-, I+, I-, S+, S-, T+, T-, dominant, polarity [, annotator...]
/// An optional header row starts with "id". Invalid rows are skipped and
/// listed in the report.
std::vector<GoldSentence> read_gold(std::istream& in, GoldLoadReport* report = nullptr);
std::vector<GoldSentence> load_gold(const std::filesystem::path& path, GoldLoadReport* report = nullptr);
void write_gold(const std::vector<GoldSentence>& gold, std::ostream& out);

struct GoldConversionReport {
  std::size_t rows = 0;
  std::size_t converted = 0;
  std::vector<std::string> column_roles;  // role assigned to each input column
  std::vector<GoldRejection> rejected;
};

/// Converts a CSV or TSV gold-standard export to the normalized rows. Columns
/// are recognized by header name (ids, text, pole or emotion names,
/// dominant, polarity, annotator columns, or a single list-of-emotions
/// column); values may be numbers, yes/no marks or emotion names.
std::vector<GoldSentence> convert_gold(std::istream& in, GoldConversionReport* report = nullptr);

/// Maps an emotion or pole name ("joy", "anger", "I+", "none", ...) to a pole
/// label; "None" for the neutral class; nullopt when unrecognized.
std::optional<std::string> normalize_pole_name(std::string_view name);

/// Splits one delimited line honoring double quotes.
std::vector<std::string> split_delimited(std::string_view line, char delim);

// ---------------------------------------------------------------------------
// Predictions and metrics

struct Prediction {
  std::string id;
  std::string dominant = "None";
  std::map<std::string, double> poles;  // pole label -> |score| of present poles
};

/// Converts a sentence score to pole space. `mapping` renames model
/// categories to the gold categories (empty = identity); a pole is present
/// when its clamped |score| >= presence_epsilon.
Prediction to_prediction(const SentenceScore& score, const std::map<std::string, std::string>& mapping,
                         double presence_epsilon, double neutral_epsilon);

struct PoleRecall {
  std::size_t gold = 0;
  std::size_t hit = 0;
  double recall() const noexcept { return gold == 0 ? 0.0 : static_cast<double>(hit) / static_cast<double>(gold); }
};

struct DominantRecall {
  std::map<std::string, PoleRecall> per_pole;
  PoleRecall overall;  // micro over gold sentences with a dominant pole
  double macro = 0.0;  // mean over poles with gold support
  std::size_t missing_predictions = 0;
};

DominantRecall dominant_recall(const std::vector<Prediction>& predictions, const std::vector<GoldSentence>& gold);

struct Counts {
  std::size_t tp = 0;
  std::size_t fp = 0;
  std::size_t fn = 0;
};

struct Prf {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
};

/// P = tp/(tp+fp), R = tp/(tp+fn), F1 = harmonic mean; each 0 when undefined.
Prf prf_from_counts(const Counts& counts);
/// Harmonic mean, 0 when p + r == 0.
double f1_score(double precision, double recall);

struct CategoryPrf {
  std::map<std::string, Counts> counts;
  std::map<std::string, Prf> per_pole;
  Prf overall;  // micro
  Prf macro;
  std::size_t missing_predictions = 0;
};

CategoryPrf category_prf(const std::vector<Prediction>& predictions, const std::vector<GoldSentence>& gold);

struct FleissKappa {
  std::optional<double> overall;  // nullopt when undefined (chance agreement 1)
  std::map<std::string, std::optional<double>> per_class;
  std::size_t items_used = 0;
  std::size_t items_excluded = 0;  // fewer annotators than the rest
  std::size_t annotators = 0;
};

/// Fleiss' kappa over items x annotator labels. The annotator count is the
/// largest row length; shorter rows are excluded. Per-class values use a
/// one-vs-rest binarization.
FleissKappa fleiss_kappa(const std::vector<std::vector<std::string>>& labels);

// ---------------------------------------------------------------------------
// Reports

struct ConfigResult {
  std::string label;
  DominantRecall dominant;
  CategoryPrf categories;
};

struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};

/// Rows T+..S- and "overall" (plus "macro"); one column per configuration.
Table dominant_recall_table(const std::vector<ConfigResult>& results, bool with_macro = false);
/// Cells are "P/R/F1" with two decimals.
Table category_prf_table(const std::vector<ConfigResult>& results, bool with_macro = false);

std::string render_csv(const Table& table);
std::string render_markdown(const Table& table);
std::string format_2dp(double value);

nlohmann::ordered_json to_json(const ConfigResult& result);
nlohmann::ordered_json to_json(const FleissKappa& kappa);

}  // namespace affexp
