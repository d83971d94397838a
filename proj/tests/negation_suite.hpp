#pragma once

// Twenty single-trigger sentences, each in a plain and a negated parse.
// Negators attach the way UD parsers attach them: as advmod (or neg) of the
// trigger, or of the verb whose complement the trigger is.

#include <string>
#include <vector>

#include "affexp/core_model.hpp"
#include "affexp/dependency_tree.hpp"
#include "support.hpp"

namespace negation_suite {

using testsupport::Tok;

struct Pair {
  std::string name;
  affexp::DependencyTree plain;
  affexp::DependencyTree negated;
};

inline affexp::AffectiveModel model() {
  using affexp::CategoryScores;
  const std::vector<std::pair<std::string, CategoryScores>> triggers{
      {"good", {{"attitude", 0.6}, {"introspection", 0.3}}},
      {"like", {{"attitude", 0.5}}},
      {"smiles", {{"introspection", 0.7}}},
      {"happy", {{"introspection", 0.8}, {"sensitivity", 0.1}}},
      {"love", {{"attitude", 0.9}, {"introspection", 0.4}}},
      {"joy", {{"introspection", 0.9}}},
      {"calm", {{"temper", 0.8}}},
      {"enjoy", {{"introspection", 0.5}, {"attitude", 0.4}}},
      {"angry", {{"temper", -0.9}}},
      {"pleasant", {{"attitude", 0.7}}},
      {"afraid", {{"sensitivity", -0.8}}},
      {"disaster", {{"sensitivity", -0.6}, {"introspection", -0.5}}},
      {"hate", {{"attitude", -0.9}, {"temper", -0.4}}},
      {"trust", {{"attitude", 0.5}, {"sensitivity", 0.3}}},
      {"cried", {{"introspection", -0.7}}},
      {"terrible", {{"attitude", -0.8}}},
      {"sad", {{"introspection", -0.8}}},
      {"lonely", {{"introspection", -0.6}}},
      {"wonderful", {{"introspection", 0.7}, {"attitude", 0.6}}},
      {"eager", {{"sensitivity", 0.7}}},
  };
  std::vector<affexp::LexiconEntry> entries;
  for (const auto& [t, s] : triggers) entries.push_back(testsupport::entry(t, s));
  return affexp::AffectiveModel(affexp::hourglass_categories(), entries);
}

inline std::vector<Pair> pairs() {
  std::vector<Pair> out;
  auto add = [&](std::string name, std::vector<Tok> plain, std::vector<Tok> negated) {
    out.push_back({name, testsupport::tree(plain, name + "-plain"), testsupport::tree(negated, name + "-neg")});
  };
  add("not-good", {{"good", -1, "root"}}, {{"not", 1, "advmod", "PART"}, {"good", -1, "root"}});
  add("copula", {{"this", 2, "nsubj", "PRON"}, {"is", 2, "cop", "AUX"}, {"good", -1, "root"}},
      {{"this", 3, "nsubj", "PRON"}, {"is", 3, "cop", "AUX"}, {"not", 3, "advmod", "PART"}, {"good", -1, "root"}});
  add("clitic", {{"i", 1, "nsubj", "PRON"}, {"like", -1, "root", "VERB"}, {"it", 1, "obj", "PRON"}},
      {{"i", 3, "nsubj", "PRON"},
       {"do", 3, "aux", "AUX"},
       {"n't", 3, "advmod", "PART", "not"},
       {"like", -1, "root", "VERB"},
       {"it", 3, "obj", "PRON"}});
  add("never-verb", {{"she", 1, "nsubj", "PRON"}, {"smiles", -1, "root", "VERB"}},
      {{"she", 2, "nsubj", "PRON"}, {"never", 2, "advmod", "ADV"}, {"smiles", -1, "root", "VERB"}});
  add("not-happy", {{"he", 2, "nsubj", "PRON"}, {"is", 2, "cop", "AUX"}, {"happy", -1, "root"}},
      {{"he", 3, "nsubj", "PRON"}, {"is", 3, "cop", "AUX"}, {"not", 3, "advmod", "PART"}, {"happy", -1, "root"}});
  add("dont-love", {{"i", 1, "nsubj", "PRON"}, {"love", -1, "root", "VERB"}, {"this", 1, "obj", "PRON"}},
      {{"i", 3, "nsubj", "PRON"},
       {"do", 3, "aux", "AUX"},
       {"not", 3, "advmod", "PART"},
       {"love", -1, "root", "VERB"},
       {"this", 3, "obj", "PRON"}});
  add("neg-relation", {{"there", 1, "expl", "PRON"}, {"is", -1, "root", "VERB"}, {"joy", 1, "nsubj", "NOUN"}},
      {{"there", 1, "expl", "PRON"}, {"is", -1, "root", "VERB"}, {"no", 3, "neg", "DET"}, {"joy", 1, "nsubj", "NOUN"}});
  add("complement", {{"i", 1, "nsubj", "PRON"}, {"feel", -1, "root", "VERB"}, {"calm", 1, "xcomp"}},
      {{"i", 3, "nsubj", "PRON"},
       {"do", 3, "aux", "AUX"},
       {"not", 3, "advmod", "PART"},
       {"feel", -1, "root", "VERB"},
       {"calm", 3, "xcomp"}});
  add("did-not-enjoy",
      {{"they", 1, "nsubj", "PRON"}, {"enjoy", -1, "root", "VERB"}, {"the", 3, "det", "DET"}, {"show", 1, "obj", "NOUN"}},
      {{"they", 3, "nsubj", "PRON"},
       {"did", 3, "aux", "AUX"},
       {"not", 3, "advmod", "PART"},
       {"enjoy", -1, "root", "VERB"},
       {"the", 5, "det", "DET"},
       {"show", 3, "obj", "NOUN"}});
  add("never-angry", {{"she", 2, "nsubj", "PRON"}, {"was", 2, "cop", "AUX"}, {"angry", -1, "root"}},
      {{"she", 3, "nsubj", "PRON"}, {"was", 3, "cop", "AUX"}, {"never", 3, "advmod", "ADV"}, {"angry", -1, "root"}});
  add("not-pleasant", {{"a", 2, "det", "DET"}, {"pleasant", 2, "amod"}, {"day", -1, "root", "NOUN"}},
      {{"not", 2, "advmod", "PART"}, {"a", 3, "det", "DET"}, {"pleasant", 3, "amod"}, {"day", -1, "root", "NOUN"}});
  add("not-afraid", {{"we", 2, "nsubj", "PRON"}, {"are", 2, "cop", "AUX"}, {"afraid", -1, "root"}},
      {{"we", 3, "nsubj", "PRON"}, {"are", 3, "cop", "AUX"}, {"not", 3, "advmod", "PART"}, {"afraid", -1, "root"}});
  add("nominal",
      {{"it", 3, "nsubj", "PRON"}, {"was", 3, "cop", "AUX"}, {"a", 3, "det", "DET"}, {"disaster", -1, "root", "NOUN"}},
      {{"it", 4, "nsubj", "PRON"},
       {"was", 4, "cop", "AUX"},
       {"not", 4, "advmod", "PART"},
       {"a", 4, "det", "DET"},
       {"disaster", -1, "root", "NOUN"}});
  add("didnt-hate", {{"he", 1, "nsubj", "PRON"}, {"hate", -1, "root", "VERB"}, {"it", 1, "obj", "PRON"}},
      {{"he", 3, "nsubj", "PRON"},
       {"did", 3, "aux", "AUX"},
       {"n't", 3, "advmod", "PART", "not"},
       {"hate", -1, "root", "VERB"},
       {"it", 3, "obj", "PRON"}});
  add("cannot-trust", {{"i", 1, "nsubj", "PRON"}, {"trust", -1, "root", "VERB"}, {"them", 1, "obj", "PRON"}},
      {{"i", 3, "nsubj", "PRON"},
       {"can", 3, "aux", "AUX"},
       {"not", 3, "advmod", "PART"},
       {"trust", -1, "root", "VERB"},
       {"them", 3, "obj", "PRON"}});
  add("never-cried", {{"they", 1, "nsubj", "PRON"}, {"cried", -1, "root", "VERB"}},
      {{"they", 2, "nsubj", "PRON"}, {"never", 2, "advmod", "ADV"}, {"cried", -1, "root", "VERB"}});
  add("not-terrible",
      {{"the", 1, "det", "DET"}, {"food", 3, "nsubj", "NOUN"}, {"is", 3, "cop", "AUX"}, {"terrible", -1, "root"}},
      {{"the", 1, "det", "DET"},
       {"food", 4, "nsubj", "NOUN"},
       {"is", 4, "cop", "AUX"},
       {"not", 4, "advmod", "PART"},
       {"terrible", -1, "root"}});
  add("seem-sad", {{"you", 1, "nsubj", "PRON"}, {"seem", -1, "root", "VERB"}, {"sad", 1, "xcomp"}},
      {{"you", 3, "nsubj", "PRON"},
       {"do", 3, "aux", "AUX"},
       {"n't", 3, "advmod", "PART", "not"},
       {"seem", -1, "root", "VERB"},
       {"sad", 3, "xcomp"}});
  add("never-lonely", {{"i", 1, "nsubj", "PRON"}, {"feel", -1, "root", "VERB"}, {"lonely", 1, "xcomp"}},
      {{"i", 2, "nsubj", "PRON"}, {"never", 2, "advmod", "ADV"}, {"feel", -1, "root", "VERB"}, {"lonely", 2, "xcomp"}});
  add("isnt-wonderful", {{"this", 2, "nsubj", "PRON"}, {"is", 2, "cop", "AUX"}, {"wonderful", -1, "root"}},
      {{"this", 3, "nsubj", "PRON"},
       {"is", 3, "cop", "AUX"},
       {"n't", 3, "advmod", "PART", "not"},
       {"wonderful", -1, "root"}});
  return out;
}

}  // namespace negation_suite
