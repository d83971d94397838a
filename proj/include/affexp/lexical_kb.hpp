#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "affexp/core_model.hpp"

namespace affexp {

/// One word sense from a lexical knowledge base dump.
struct Sense {
  std::string lemma;
  std::string sense_id;
  std::string gloss;
  std::vector<std::string> examples;

  bool embeddable_from_kb() const noexcept { return !examples.empty(); }

  friend bool operator==(const Sense&, const Sense&) = default;
};

enum class Relation { synonym, antonym, related };

std::string_view to_string(Relation relation);
std::optional<Relation> parse_relation(std::string_view text);

struct RelationEdge {
  std::string source;
  Relation relation = Relation::related;
  std::string target;
  double weight = 1.0;

  friend bool operator==(const RelationEdge&, const RelationEdge&) = default;
};

struct KbLoadReport {
  std::size_t senses_loaded = 0;
  std::size_t senses_without_examples = 0;
  std::size_t edges_loaded = 0;  // rows accepted, before the symmetric closure
  std::size_t edges_rejected = 0;  // unknown relation label
  std::vector<std::string> warnings;
};

/// Normalized, immutable store of senses and relation edges. Synonym and
/// antonym edges are stored in both directions.
class LexicalKB {
 public:
  LexicalKB() = default;
  /// Throws ValidationError on duplicate sense ids or negative edge weights.
  LexicalKB(std::vector<Sense> senses, std::vector<RelationEdge> edges);

  /// Senses of a lemma ordered by sense_id; empty when unknown.
  std::vector<Sense> senses(std::string_view term) const;
  const Sense* sense(std::string_view sense_id) const;

  /// Outgoing edges of a term in (relation, target) order.
  std::vector<RelationEdge> edges_from(std::string_view term) const;
  std::vector<std::string> related_terms(std::string_view term, Relation relation) const;
  bool is_antonym(std::string_view a, std::string_view b) const;

  std::size_t sense_count() const noexcept { return senses_.size(); }
  std::size_t edge_count() const noexcept { return edge_count_; }
  bool empty() const noexcept { return senses_.empty() && edge_count_ == 0; }

 private:
  std::map<std::string, Sense, std::less<>> senses_;                              // by sense_id
  std::map<std::string, std::vector<std::string>, std::less<>> senses_by_lemma_;  // sense ids, sorted
  std::map<std::string, std::map<std::pair<Relation, std::string>, double>, std::less<>> edges_;
  std::size_t edge_count_ = 0;
};

/// Loads senses.jsonl and edges.jsonl. Rows with an unknown relation label
/// are skipped and counted in the report; malformed JSON raises ParseError
/// with the line number. Either path may be empty to skip that file.
LexicalKB load_kb(const std::filesystem::path& senses_path, const std::filesystem::path& edges_path,
                  KbLoadReport* report = nullptr);
LexicalKB read_kb(std::istream* senses, std::istream* edges, KbLoadReport* report = nullptr);

void write_senses_jsonl(const std::vector<Sense>& senses, std::ostream& out);
void write_edges_jsonl(const std::vector<RelationEdge>& edges, std::ostream& out);

/// Score multipliers applied when a relation carries a seed's scores to a
/// neighbor term. The antonym factor is applied with a sign flip.
struct RelationDiscounts {
  double synonym = 0.9;
  double related = 0.6;
  double antonym = 0.9;

  double factor(Relation relation) const;
};

struct EnrichOptions {
  RelationDiscounts discounts;
  int iteration = 1;  // provenance iteration of the new entries
};

/// Adds a candidate entry for every KB neighbor of every lexicon surface:
/// synonym/related targets get s * discount, antonym targets get
/// -s * discount. Candidates reaching the same surface from several sources
/// are averaged; existing surfaces are never overwritten. New entries carry
/// provenance `enriched`.
AffectiveModel enrich(const LexicalKB& kb, const AffectiveModel& model, const EnrichOptions& options = {});

}  // namespace affexp
