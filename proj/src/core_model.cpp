#include "affexp/core_model.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "affexp/error.hpp"
#include "affexp/text.hpp"
#include "json.hpp"

namespace affexp {

namespace {

std::string format_value(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

void check_score(std::string_view category, double value) {
  if (!std::isfinite(value) || value < -1.0 || value > 1.0) {
    throw ValidationError("score " + format_value(value) + " for category '" + std::string(category) +
                          "' outside [-1, 1]");
  }
}

}  // namespace

// ---------------------------------------------------------------------------
// CategoryScores

CategoryScores::CategoryScores(std::initializer_list<std::pair<const std::string, double>> init) {
  for (const auto& [k, v] : init) set(k, v);
}

void CategoryScores::set(std::string_view category, double value) {
  if (category.empty()) throw ValidationError("empty category name");
  check_score(category, value);
  auto it = values_.find(category);
  if (it == values_.end()) {
    values_.emplace(std::string(category), value);
  } else {
    it->second = value;
  }
}

std::optional<double> CategoryScores::get(std::string_view category) const {
  auto it = values_.find(category);
  if (it == values_.end()) return std::nullopt;
  return it->second;
}

double CategoryScores::value_or_zero(std::string_view category) const {
  return get(category).value_or(0.0);
}

double CategoryScores::max_abs() const {
  double m = 0.0;
  for (const auto& [_, v] : values_) m = std::max(m, std::abs(v));
  return m;
}

bool CategoryScores::equal_at_stored_precision(const CategoryScores& other) const {
  if (values_.size() != other.values_.size()) return false;
  auto a = values_.begin();
  auto b = other.values_.begin();
  for (; a != values_.end(); ++a, ++b) {
    if (a->first != b->first) return false;
    if (text::quantize_score(a->second) != text::quantize_score(b->second)) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Origin

std::string_view to_string(Origin origin) {
  switch (origin) {
    case Origin::seed: return "seed";
    case Origin::enriched: return "enriched";
    case Origin::disambiguated: return "disambiguated";
    case Origin::expanded: return "expanded";
  }
  return "seed";
}

std::optional<Origin> parse_origin(std::string_view text) {
  if (text == "seed") return Origin::seed;
  if (text == "enriched") return Origin::enriched;
  if (text == "disambiguated") return Origin::disambiguated;
  if (text == "expanded") return Origin::expanded;
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// AffectiveModel

AffectiveModel::AffectiveModel(std::vector<AffectiveCategory> categories, std::vector<LexiconEntry> entries,
                               ModelMetadata metadata)
    : categories_(std::move(categories)), entries_(std::move(entries)), metadata_(std::move(metadata)) {
  std::set<std::string> names;
  std::set<std::string> poles;
  for (const auto& c : categories_) {
    if (c.name.empty() || c.positive_pole.empty() || c.negative_pole.empty()) {
      throw ValidationError("category declarations need a name and two pole labels");
    }
    if (!names.insert(c.name).second) throw ValidationError("duplicate category '" + c.name + "'");
    if (!poles.insert(c.positive_pole).second || !poles.insert(c.negative_pole).second) {
      throw ValidationError("duplicate pole label in category '" + c.name + "'");
    }
  }

  std::set<std::pair<std::string, std::string>> seen;
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    auto& e = entries_[i];
    e.surface = text::normalize_surface(e.surface);
    if (e.surface.empty()) throw ValidationError("lexicon entry with empty surface");
    for (const auto& [cat, _] : e.scores.values()) {
      if (!names.contains(cat)) {
        throw ValidationError("entry '" + e.surface + "' scores unknown category '" + cat + "'");
      }
    }
    for (const auto& c : categories_) {
      if (!e.scores.contains(c.name)) e.scores.set(c.name, 0.0);
    }
    if (!seen.emplace(e.surface, e.sense_id).second) {
      throw ValidationError("duplicate lexicon entry '" + e.surface + "'" +
                            (e.sense_id.empty() ? std::string() : " sense '" + e.sense_id + "'"));
    }
    by_surface_[e.surface].push_back(i);
  }
}

std::vector<std::string> AffectiveModel::category_names() const {
  std::vector<std::string> out;
  out.reserve(categories_.size());
  for (const auto& c : categories_) out.push_back(c.name);
  return out;
}

bool AffectiveModel::has_category(std::string_view name) const { return category_index(name).has_value(); }

std::optional<std::size_t> AffectiveModel::category_index(std::string_view name) const {
  for (std::size_t i = 0; i < categories_.size(); ++i) {
    if (categories_[i].name == name) return i;
  }
  return std::nullopt;
}

const LexiconEntry* AffectiveModel::find(std::string_view surface, std::string_view sense_id) const {
  auto it = by_surface_.find(std::string(surface));
  if (it == by_surface_.end()) return nullptr;
  for (auto idx : it->second) {
    if (entries_[idx].sense_id == sense_id) return &entries_[idx];
  }
  return nullptr;
}

std::vector<const LexiconEntry*> AffectiveModel::entries_for(std::string_view surface) const {
  std::vector<const LexiconEntry*> out;
  auto it = by_surface_.find(std::string(surface));
  if (it == by_surface_.end()) return out;
  for (auto idx : it->second) out.push_back(&entries_[idx]);
  return out;
}

bool AffectiveModel::contains_surface(std::string_view surface) const {
  return by_surface_.contains(std::string(surface));
}

std::optional<CategoryScores> AffectiveModel::surface_scores(std::string_view surface) const {
  const auto entries = entries_for(surface);
  if (entries.empty()) return std::nullopt;
  for (const auto* e : entries) {
    if (e->sense_id.empty()) return e->scores;
  }
  CategoryScores mean;
  for (const auto& c : categories_) {
    double sum = 0.0;
    for (const auto* e : entries) sum += e->scores.value_or_zero(c.name);
    mean.set(c.name, std::clamp(sum / static_cast<double>(entries.size()), -1.0, 1.0));
  }
  return mean;
}

std::vector<std::string> AffectiveModel::surfaces() const {
  std::vector<std::string> out;
  out.reserve(by_surface_.size());
  for (const auto& [s, _] : by_surface_) out.push_back(s);
  std::sort(out.begin(), out.end());
  return out;
}

bool AffectiveModel::equivalent_to(const AffectiveModel& other) const {
  if (categories_ != other.categories_ || entries_.size() != other.entries_.size()) return false;
  for (const auto& e : entries_) {
    const auto* o = other.find(e.surface, e.sense_id);
    if (o == nullptr || o->provenance != e.provenance) return false;
    if (!e.scores.equal_at_stored_precision(o->scores)) return false;
  }
  return true;
}

AffectiveModel AffectiveModel::with_metadata(ModelMetadata metadata) const {
  AffectiveModel copy = *this;
  copy.metadata_ = std::move(metadata);
  return copy;
}

// ---------------------------------------------------------------------------
// Lexicon file format

namespace {

constexpr std::string_view kMetaPrefix = "# meta\t";
constexpr std::string_view kCategoriesPrefix = "categories\t";

std::vector<AffectiveCategory> parse_categories(std::string_view spec, std::size_t line_no) {
  std::vector<AffectiveCategory> out;
  if (text::trim(spec).empty()) return out;
  for (const auto& decl : text::split(spec, ',')) {
    const auto parts = text::split(text::trim(decl), ':');
    if (parts.size() != 3) {
      throw ParseError("category declaration '" + decl + "' is not name:positive_pole:negative_pole", line_no,
                       2);
    }
    out.push_back({std::string(text::trim(parts[0])), std::string(text::trim(parts[1])),
                   std::string(text::trim(parts[2]))});
  }
  return out;
}

CategoryScores parse_scores(const std::string& field, std::size_t line_no) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(field);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("scores are not valid JSON: ") + e.what(), line_no, 3);
  }
  if (!j.is_object()) throw ParseError("scores must be a JSON object", line_no, 3);
  CategoryScores scores;
  for (const auto& [k, v] : j.items()) {
    if (!v.is_number()) throw ParseError("score for '" + k + "' is not a number", line_no, 3);
    const double value = v.get<double>();
    try {
      scores.set(k, value);
    } catch (const ValidationError& e) {
      throw ValidationError("line " + std::to_string(line_no) + ", column 3: " + e.what());
    }
  }
  return scores;
}

}  // namespace

AffectiveModel read_model(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;
  bool saw_header = false;
  bool saw_categories = false;
  ModelMetadata metadata;
  std::vector<AffectiveCategory> categories;
  std::vector<LexiconEntry> entries;

  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (!saw_header) {
      if (text::trim(line).empty()) continue;
      if (line != kLexiconHeader) {
        throw ParseError("expected header '" + std::string(kLexiconHeader) + "'", line_no, 1);
      }
      saw_header = true;
      continue;
    }
    if (line.starts_with(kMetaPrefix)) {
      try {
        const auto j = nlohmann::json::parse(line.substr(kMetaPrefix.size()));
        metadata.name = j.value("name", std::string());
        if (j.contains("params")) {
          for (const auto& [k, v] : j.at("params").items()) {
            metadata.params[k] = v.is_string() ? v.get<std::string>() : v.dump();
          }
        }
      } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("malformed metadata: ") + e.what(), line_no, 2);
      }
      continue;
    }
    if (line.starts_with('#') || text::trim(line).empty()) continue;

    if (!saw_categories) {
      if (!line.starts_with(kCategoriesPrefix)) {
        throw ParseError("expected category declaration line 'categories\\t...'", line_no, 1);
      }
      categories = parse_categories(std::string_view(line).substr(kCategoriesPrefix.size()), line_no);
      saw_categories = true;
      continue;
    }

    const auto fields = text::split(line, '\t');
    if (fields.size() != 5) {
      throw ParseError("expected 5 tab-separated fields, found " + std::to_string(fields.size()), line_no,
                       std::min<std::size_t>(fields.size() + 1, 6));
    }
    LexiconEntry e;
    e.surface = text::normalize_surface(fields[0]);
    if (e.surface.empty()) throw ParseError("empty surface", line_no, 1);
    e.sense_id = std::string(text::trim(fields[1]));
    e.scores = parse_scores(fields[2], line_no);
    const auto origin = parse_origin(text::trim(fields[3]));
    if (!origin) throw ParseError("unknown provenance '" + fields[3] + "'", line_no, 4);
    e.provenance.origin = *origin;
    try {
      std::size_t consumed = 0;
      const std::string it(text::trim(fields[4]));
      e.provenance.iteration = std::stoi(it, &consumed);
      if (consumed != it.size() || e.provenance.iteration < 0) throw std::invalid_argument("iteration");
    } catch (const std::exception&) {
      throw ParseError("iteration must be a non-negative integer", line_no, 5);
    }
    for (const auto& [cat, _] : e.scores.values()) {
      const bool known = std::any_of(categories.begin(), categories.end(),
                                     [&](const AffectiveCategory& c) { return c.name == cat; });
      if (!known) throw ParseError("score for undeclared category '" + cat + "'", line_no, 3);
    }
    entries.push_back(std::move(e));
  }
  if (!saw_header) throw ParseError("empty lexicon file (missing header)", 1, 1);
  if (!saw_categories) throw ParseError("missing category declaration line", line_no + 1, 1);
  try {
    return AffectiveModel(std::move(categories), std::move(entries), std::move(metadata));
  } catch (const ValidationError& e) {
    throw ParseError(e.what(), line_no);
  }
}

AffectiveModel load_model(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open lexicon file '" + path.string() + "'");
  return read_model(in);
}

void write_model(const AffectiveModel& model, std::ostream& out) {
  out << kLexiconHeader << '\n';
  const auto& meta = model.metadata();
  if (!meta.name.empty() || !meta.params.empty()) {
    nlohmann::json j;
    j["name"] = meta.name;
    j["params"] = nlohmann::json::object();
    for (const auto& [k, v] : meta.params) j["params"][k] = v;
    out << kMetaPrefix << j.dump() << '\n';
  }
  out << kCategoriesPrefix;
  const auto& cats = model.categories();
  for (std::size_t i = 0; i < cats.size(); ++i) {
    if (i > 0) out << ',';
    out << cats[i].name << ':' << cats[i].positive_pole << ':' << cats[i].negative_pole;
  }
  out << '\n';
  for (const auto& e : model.entries()) {
    out << e.surface << '\t' << e.sense_id << '\t' << '{';
    for (std::size_t i = 0; i < cats.size(); ++i) {
      if (i > 0) out << ',';
      out << nlohmann::json(cats[i].name).dump() << ':' << text::format_score(e.scores.value_or_zero(cats[i].name));
    }
    out << '}' << '\t' << to_string(e.provenance.origin) << '\t' << e.provenance.iteration << '\n';
  }
}

void save_model(const AffectiveModel& model, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write lexicon file '" + path.string() + "'");
  write_model(model, out);
  out.flush();
  if (!out) throw IoError("write failed for '" + path.string() + "'");
}

// ---------------------------------------------------------------------------

CategoryScores map_categories(const CategoryScores& scores, const std::map<std::string, std::string>& mapping,
                              const std::vector<std::string>& target_categories) {
  CategoryScores out;
  for (const auto& [source, target] : mapping) {
    if (!target_categories.empty() &&
        std::find(target_categories.begin(), target_categories.end(), target) == target_categories.end()) {
      throw ConfigError("mapping target '" + target + "' is not a known category");
    }
    const auto value = scores.get(source);
    if (!value) throw ConfigError("mapping source '" + source + "' is not a category of the scores");
    if (out.contains(target)) throw ConfigError("mapping assigns category '" + target + "' twice");
    out.set(target, *value);
  }
  return out;
}

std::vector<AffectiveCategory> hourglass_categories() {
  return {
      {"temper", "calmness", "anger"},
      {"introspection", "joy", "sadness"},
      {"attitude", "pleasantness", "disgust"},
      {"sensitivity", "eagerness", "fear"},
  };
}

AffectiveCategory desirability_category() { return {"desirability", "desired", "undesired"}; }

std::map<std::string, std::string> hourglass_to_sentic5_mapping() {
  return {
      {"sensitivity", "sensitivity"},
      {"attitude", "aptitude"},
      {"introspection", "pleasantness"},
      {"temper", "attention"},
  };
}

}  // namespace affexp
