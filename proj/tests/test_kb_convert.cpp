#include <algorithm>
#include <sstream>

#include "affexp/error.hpp"
#include "affexp/kb_convert.hpp"
#include "doctest.h"
#include "support.hpp"

using namespace affexp;
using namespace affexp::kbconvert;

namespace {

const std::filesystem::path kWordnet = std::filesystem::path(AFFEXP_TEST_DATA) / "wordnet";

bool has_edge(const Conversion& c, const std::string& a, Relation r, const std::string& b) {
  return std::any_of(c.edges.begin(), c.edges.end(), [&](const RelationEdge& e) {
    return e.relation == r && ((e.source == a && e.target == b) || (e.source == b && e.target == a));
  });
}

}  // namespace

TEST_CASE("WNDB data line with examples") {
  const auto s = parse_wndb_data_line(
      "05853946 09 n 02 like 0 ilk 0 001 @ 05847533 n 0000 | a kind of person; \"We'll not see his like again\"; "
      "\"I can't tolerate people of his ilk\"  ");
  REQUIRE(s.has_value());
  CHECK(s->offset == "05853946");
  CHECK(s->words == std::vector<std::string>{"like", "ilk"});
  REQUIRE(s->pointers.size() == 1);
  CHECK(s->pointers[0].symbol == "@");
  CHECK(s->gloss == "a kind of person");
  CHECK(s->examples == std::vector<std::string>{"We'll not see his like again", "I can't tolerate people of his ilk"});
}

TEST_CASE("WNDB pointer source/target words are hex") {
  const auto s = parse_wndb_data_line(
      "01152997 00 a 01 unhappy 0 002 ! 01151786 a 0101 & 01153566 a 0000 | experiencing sadness; \"unhappy news\"");
  REQUIRE(s);
  CHECK(s->pointers[0].source_word == 1);
  CHECK(s->pointers[0].target_word == 1);
  CHECK(s->pointers[1].source_word == 0);
}

TEST_CASE("WNDB verb frames and multiword lemmas") {
  const auto s = parse_wndb_data_line(
      "01828678 30 v 02 like 0 care_for 0 001 @ 01827745 v 0000 01 + 08 00 | find enjoyable; \"I like jazz\"");
  REQUIRE(s);
  CHECK(s->words == std::vector<std::string>{"like", "care for"});
  CHECK(s->examples == std::vector<std::string>{"I like jazz"});
}

TEST_CASE("WNDB license lines and truncated records") {
  CHECK_FALSE(parse_wndb_data_line("  1 This software and database is being provided").has_value());
  CHECK_THROWS_AS(parse_wndb_data_line("05853946 09 n 02 like 0"), ParseError);
  const auto idx = parse_wndb_index_line("like n 2 1 @ 2 0 05854415 05853946  ");
  REQUIRE(idx);
  CHECK(idx->offsets == std::vector<std::string>{"05854415", "05853946"});
}

TEST_CASE("WordNet fixture conversion") {
  const auto c = convert_wordnet(kWordnet);
  std::vector<std::string> like_ids, probe_ids;
  for (const auto& s : c.senses) {
    if (s.lemma == "like") like_ids.push_back(s.sense_id);
    if (s.lemma == "probe") probe_ids.push_back(s.sense_id);
  }
  CHECK(like_ids == std::vector<std::string>{"like.n.01", "like.n.02"});
  CHECK(probe_ids.size() == 2);
  const auto it = std::find_if(c.senses.begin(), c.senses.end(), [](const Sense& s) { return s.sense_id == "like.n.01"; });
  REQUIRE(it != c.senses.end());
  CHECK(it->gloss == "a similar kind");
  CHECK(it->examples.size() == 2);

  CHECK(has_edge(c, "happy", Relation::antonym, "unhappy"));
  CHECK(has_edge(c, "like", Relation::synonym, "ilk"));
  CHECK(has_edge(c, "felicitous", Relation::synonym, "happy"));
  CHECK(has_edge(c, "happy", Relation::related, "blessed"));  // similar-to pointer
  CHECK(std::is_sorted(c.senses.begin(), c.senses.end(),
                       [](const Sense& a, const Sense& b) { return a.sense_id < b.sense_id; }));

  // the converted dump loads into a KB
  testsupport::TempDir dir;
  {
    std::ofstream s(dir / "senses.jsonl"), e(dir / "edges.jsonl");
    write_senses_jsonl(c.senses, s);
    write_edges_jsonl(c.edges, e);
  }
  const auto kb = load_kb(dir / "senses.jsonl", dir / "edges.jsonl");
  CHECK(kb.senses("like").size() >= 2);
  CHECK(kb.is_antonym("unhappy", "happy"));
}

TEST_CASE("convert_wordnet on a directory without dumps") {
  testsupport::TempDir dir;
  CHECK_THROWS_AS(convert_wordnet(dir.path()), IoError);
}

TEST_CASE("ConceptNet assertions") {
  std::istringstream in(
      "/a/[/r/Antonym/,/c/en/happy/,/c/en/sad/]\t/r/Antonym\t/c/en/happy\t/c/en/sad\t{\"weight\": 2.5}\n"
      "/a/x\t/r/Synonym\t/c/en/glad/a\t/c/en/happy/a/wn\t{\"weight\": 1.0}\n"
      "/a/y\t/r/RelatedTo\t/c/en/ice_cream\t/c/en/joy\t{}\n"
      "/a/z\t/r/Synonym\t/c/fr/heureux\t/c/en/happy\t{\"weight\": 1.0}\n"
      "/a/w\t/r/IsA\t/c/en/dog\t/c/en/animal\t{\"weight\": 1.0}\n"
      "broken line\n");
  const auto c = convert_conceptnet(in, "en");
  CHECK(c.edges.size() == 3);
  CHECK(has_edge(c, "happy", Relation::antonym, "sad"));
  CHECK(has_edge(c, "glad", Relation::synonym, "happy"));
  CHECK(has_edge(c, "ice cream", Relation::related, "joy"));
  CHECK(c.skipped_lines == 3);
  const auto ant = std::find_if(c.edges.begin(), c.edges.end(),
                                [](const RelationEdge& e) { return e.relation == Relation::antonym; });
  CHECK(ant->weight == 2.5);
}
