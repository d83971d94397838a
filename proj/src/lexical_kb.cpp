#include "affexp/lexical_kb.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <ostream>

#include "affexp/error.hpp"
#include "affexp/log.hpp"
#include "affexp/text.hpp"
#include "json.hpp"

namespace affexp {

std::string_view to_string(Relation relation) {
  switch (relation) {
    case Relation::synonym: return "synonym";
    case Relation::antonym: return "antonym";
    case Relation::related: return "related";
  }
  return "related";
}

std::optional<Relation> parse_relation(std::string_view text) {
  if (text == "synonym") return Relation::synonym;
  if (text == "antonym") return Relation::antonym;
  if (text == "related") return Relation::related;
  return std::nullopt;
}

LexicalKB::LexicalKB(std::vector<Sense> senses, std::vector<RelationEdge> edges) {
  for (auto& s : senses) {
    s.lemma = text::normalize_surface(s.lemma);
    if (s.lemma.empty() || s.sense_id.empty()) throw ValidationError("sense needs a lemma and a sense_id");
    if (senses_.contains(s.sense_id)) throw ValidationError("duplicate sense_id '" + s.sense_id + "'");
    senses_by_lemma_[s.lemma].push_back(s.sense_id);
    senses_.emplace(s.sense_id, std::move(s));
  }
  for (auto& [_, ids] : senses_by_lemma_) std::sort(ids.begin(), ids.end());

  auto add = [this](const std::string& from, Relation rel, const std::string& to, double w) {
    auto& out = edges_[from];
    if (out.emplace(std::make_pair(rel, to), w).second) ++edge_count_;
  };
  for (auto& e : edges) {
    const auto source = text::normalize_surface(e.source);
    const auto target = text::normalize_surface(e.target);
    if (source.empty() || target.empty() || source == target) continue;
    if (!(e.weight >= 0.0)) throw ValidationError("edge " + source + " -> " + target + " has a negative weight");
    add(source, e.relation, target, e.weight);
    if (e.relation != Relation::related) add(target, e.relation, source, e.weight);
  }
}

std::vector<Sense> LexicalKB::senses(std::string_view term) const {
  std::vector<Sense> out;
  auto it = senses_by_lemma_.find(text::normalize_surface(term));
  if (it == senses_by_lemma_.end()) return out;
  for (const auto& id : it->second) out.push_back(senses_.at(id));
  return out;
}

const Sense* LexicalKB::sense(std::string_view sense_id) const {
  auto it = senses_.find(sense_id);
  return it == senses_.end() ? nullptr : &it->second;
}

std::vector<RelationEdge> LexicalKB::edges_from(std::string_view term) const {
  std::vector<RelationEdge> out;
  const auto key = text::normalize_surface(term);
  auto it = edges_.find(key);
  if (it == edges_.end()) return out;
  for (const auto& [rt, w] : it->second) out.push_back({key, rt.first, rt.second, w});
  return out;
}

std::vector<std::string> LexicalKB::related_terms(std::string_view term, Relation relation) const {
  std::vector<std::string> out;
  auto it = edges_.find(text::normalize_surface(term));
  if (it == edges_.end()) return out;
  for (const auto& [rt, _] : it->second) {
    if (rt.first == relation) out.push_back(rt.second);
  }
  return out;
}

bool LexicalKB::is_antonym(std::string_view a, std::string_view b) const {
  auto it = edges_.find(a);
  if (it == edges_.end()) return false;
  return it->second.contains(std::make_pair(Relation::antonym, std::string(b)));
}

// ---------------------------------------------------------------------------
// JSONL

namespace {

template <typename Fn>
void for_each_json_line(std::istream& in, const char* what, Fn&& fn) {
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (text::trim(line).empty()) continue;
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(line);
    } catch (const nlohmann::json::parse_error& e) {
      throw ParseError(std::string(what) + ": invalid JSON: " + e.what(), line_no);
    }
    if (!j.is_object()) throw ParseError(std::string(what) + ": expected a JSON object", line_no);
    try {
      fn(j, line_no);
    } catch (const nlohmann::json::exception& e) {
      throw ParseError(std::string(what) + ": " + e.what(), line_no);
    }
  }
}

}  // namespace

LexicalKB read_kb(std::istream* senses_in, std::istream* edges_in, KbLoadReport* report) {
  KbLoadReport local;
  KbLoadReport& rep = report != nullptr ? *report : local;
  std::vector<Sense> senses;
  std::vector<RelationEdge> edges;

  if (senses_in != nullptr) {
    for_each_json_line(*senses_in, "senses", [&](const nlohmann::json& j, std::size_t) {
      Sense s;
      s.lemma = j.at("lemma").get<std::string>();
      s.sense_id = j.at("sense_id").get<std::string>();
      s.gloss = j.value("gloss", std::string());
      if (j.contains("examples")) s.examples = j.at("examples").get<std::vector<std::string>>();
      if (s.examples.empty()) ++rep.senses_without_examples;
      senses.push_back(std::move(s));
    });
  }
  if (edges_in != nullptr) {
    for_each_json_line(*edges_in, "edges", [&](const nlohmann::json& j, std::size_t line_no) {
      const auto label = j.at("relation").get<std::string>();
      const auto rel = parse_relation(label);
      if (!rel) {
        ++rep.edges_rejected;
        rep.warnings.push_back("edges line " + std::to_string(line_no) + ": unknown relation '" + label + "'");
        return;
      }
      RelationEdge e;
      e.source = j.at("source").get<std::string>();
      e.target = j.at("target").get<std::string>();
      e.relation = *rel;
      e.weight = j.value("weight", 1.0);
      edges.push_back(std::move(e));
    });
  }
  if (rep.edges_rejected > 0) log::warn("edges with unknown relation rejected", {{"count", rep.edges_rejected}});
  rep.senses_loaded = senses.size();
  rep.edges_loaded = edges.size();
  return LexicalKB(std::move(senses), std::move(edges));
}

LexicalKB load_kb(const std::filesystem::path& senses_path, const std::filesystem::path& edges_path,
                  KbLoadReport* report) {
  std::ifstream senses_in;
  std::ifstream edges_in;
  if (!senses_path.empty()) {
    senses_in.open(senses_path);
    if (!senses_in) throw IoError("cannot open senses file '" + senses_path.string() + "'");
  }
  if (!edges_path.empty()) {
    edges_in.open(edges_path);
    if (!edges_in) throw IoError("cannot open edges file '" + edges_path.string() + "'");
  }
  return read_kb(senses_path.empty() ? nullptr : &senses_in, edges_path.empty() ? nullptr : &edges_in, report);
}

void write_senses_jsonl(const std::vector<Sense>& senses, std::ostream& out) {
  for (const auto& s : senses) {
    nlohmann::ordered_json j;
    j["lemma"] = s.lemma;
    j["sense_id"] = s.sense_id;
    j["gloss"] = s.gloss;
    j["examples"] = s.examples;
    out << j.dump() << '\n';
  }
}

void write_edges_jsonl(const std::vector<RelationEdge>& edges, std::ostream& out) {
  for (const auto& e : edges) {
    nlohmann::ordered_json j;
    j["source"] = e.source;
    j["relation"] = to_string(e.relation);
    j["target"] = e.target;
    j["weight"] = e.weight;
    out << j.dump() << '\n';
  }
}

// ---------------------------------------------------------------------------
// Enrichment

double RelationDiscounts::factor(Relation relation) const {
  switch (relation) {
    case Relation::synonym: return synonym;
    case Relation::related: return related;
    case Relation::antonym: return -antonym;
  }
  return 0.0;
}

AffectiveModel enrich(const LexicalKB& kb, const AffectiveModel& model, const EnrichOptions& options) {
  for (double d : {options.discounts.synonym, options.discounts.related, options.discounts.antonym}) {
    if (!(d >= 0.0 && d <= 1.0)) throw ConfigError("relation discounts must lie in [0, 1]");
  }
  const auto categories = model.category_names();

  struct Accumulator {
    std::vector<double> sum;
    std::size_t count = 0;
  };
  std::map<std::string, Accumulator> candidates;

  for (const auto& surface : model.surfaces()) {
    const auto scores = model.surface_scores(surface);
    for (const auto& edge : kb.edges_from(surface)) {
      if (model.contains_surface(edge.target)) continue;
      auto& acc = candidates[edge.target];
      if (acc.sum.empty()) acc.sum.assign(categories.size(), 0.0);
      const double f = options.discounts.factor(edge.relation);
      for (std::size_t c = 0; c < categories.size(); ++c) acc.sum[c] += f * scores->value_or_zero(categories[c]);
      ++acc.count;
    }
  }

  std::vector<LexiconEntry> entries = model.entries();
  for (const auto& [surface, acc] : candidates) {
    LexiconEntry e;
    e.surface = surface;
    for (std::size_t c = 0; c < categories.size(); ++c) {
      e.scores.set(categories[c], std::clamp(acc.sum[c] / static_cast<double>(acc.count), -1.0, 1.0));
    }
    e.provenance = {Origin::enriched, options.iteration};
    entries.push_back(std::move(e));
  }

  ModelMetadata meta = model.metadata();
  meta.params["enrich.discount.synonym"] = text::format_score(options.discounts.synonym);
  meta.params["enrich.discount.related"] = text::format_score(options.discounts.related);
  meta.params["enrich.discount.antonym"] = text::format_score(options.discounts.antonym);
  return AffectiveModel(model.categories(), std::move(entries), std::move(meta));
}

}  // namespace affexp
