#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "affexp/lexical_kb.hpp"

// Offline converters from public lexical resources to senses/edges JSONL.
namespace affexp::kbconvert {

struct Conversion {
  std::vector<Sense> senses;        // sorted by sense_id
  std::vector<RelationEdge> edges;  // sorted, deduplicated
  std::size_t skipped_lines = 0;
};

/// One synset record of a WordNet data.<pos> file.
struct WndbPointer {
  std::string symbol;
  std::string offset;
  char pos = 'n';
  int source_word = 0;  // 1-based, 0 = whole synset
  int target_word = 0;
};

struct WndbSynset {
  std::string offset;
  char pos = 'n';
  std::vector<std::string> words;  // normalized lemmas
  std::vector<WndbPointer> pointers;
  std::string gloss;                  // definition part
  std::vector<std::string> examples;  // quoted usage examples
};

/// Parses one data-file line; nullopt for license/comment lines. Throws
/// ParseError on truncated records.
std::optional<WndbSynset> parse_wndb_data_line(std::string_view line);

struct WndbIndexEntry {
  std::string lemma;
  char pos = 'n';
  std::vector<std::string> offsets;  // in sense-number order
};

std::optional<WndbIndexEntry> parse_wndb_index_line(std::string_view line);

/// Reads index.{noun,verb,adj,adv} and data.* from a WordNet dict directory.
/// Sense ids are "<lemma>.<pos>.<NN>" with NN the sense number. Pointers "!"
/// become antonym edges, "&" and "^" related edges; synset co-members are
/// synonyms. Throws IoError when no part-of-speech pair is present.
Conversion convert_wordnet(const std::filesystem::path& dict_dir);

/// ConceptNet assertion dump (tab-separated: uri, relation, start, end,
/// JSON info). Synonym, Antonym, RelatedTo and SimilarTo between two concepts
/// of `language` are kept; everything else is counted as skipped.
Conversion convert_conceptnet(std::istream& in, std::string_view language = "en");

}  // namespace affexp::kbconvert
