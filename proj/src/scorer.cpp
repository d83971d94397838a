#include "affexp/scorer.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <exception>
#include <fstream>

#include "affexp/error.hpp"
#include "affexp/text.hpp"

namespace affexp {

// ---------------------------------------------------------------------------
// Grammar configuration

GrammarConfig parse_grammar_config(const nlohmann::json& j) {
  if (!j.is_object()) throw ConfigError("grammar config must be a JSON object");
  GrammarConfig g;
  try {
    for (const auto& [key, value] : j.items()) {
      if (key == "negators") {
        g.negators.clear();
        for (const auto& s : value) g.negators.insert(text::to_lower(s.get<std::string>()));
      } else if (key == "intensifiers") {
        g.intensifiers.clear();
        for (const auto& [w, v] : value.items()) {
          const double x = v.get<double>();
          if (!(x > 0.0)) throw ConfigError("intensifier weight for '" + w + "' must be positive");
          g.intensifiers[text::to_lower(w)] = x;
        }
      } else if (key == "modifier_range") {
        const auto r = value.get<std::vector<double>>();
        if (r.size() != 2 || !(r[0] > 0.0 && r[0] <= r[1])) {
          throw ConfigError("modifier_range must be [min, max] with 0 < min <= max");
        }
        g.modifier_min = r[0];
        g.modifier_max = r[1];
      } else if (key == "complement_relations") {
        g.complement_relations.clear();
        for (const auto& s : value) g.complement_relations.insert(s.get<std::string>());
      } else if (key == "function_upos") {
        g.function_upos.clear();
        for (const auto& s : value) g.function_upos.insert(s.get<std::string>());
      } else if (key == "neutral_epsilon") {
        g.neutral_epsilon = value.get<double>();
        if (!(g.neutral_epsilon >= 0.0 && g.neutral_epsilon < 1.0)) {
          throw ConfigError("neutral_epsilon must lie in [0, 1)");
        }
      } else {
        throw ConfigError("unknown grammar config key '" + key + "'");
      }
    }
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("invalid grammar config: ") + e.what());
  }
  return g;
}

GrammarConfig load_grammar_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open grammar config '" + path.string() + "'");
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError("grammar config '" + path.string() + "': " + e.what());
  }
  return parse_grammar_config(j);
}

nlohmann::ordered_json to_json(const GrammarConfig& g) {
  nlohmann::ordered_json j;
  j["negators"] = std::vector<std::string>(g.negators.begin(), g.negators.end());
  auto& in = j["intensifiers"] = nlohmann::ordered_json::object();
  for (const auto& [w, v] : g.intensifiers) in[w] = v;
  j["modifier_range"] = {g.modifier_min, g.modifier_max};
  j["complement_relations"] = std::vector<std::string>(g.complement_relations.begin(), g.complement_relations.end());
  j["function_upos"] = std::vector<std::string>(g.function_upos.begin(), g.function_upos.end());
  j["neutral_epsilon"] = g.neutral_epsilon;
  return j;
}

// ---------------------------------------------------------------------------
// Factors

bool is_negator(const DepToken& token, const GrammarConfig& config) {
  if (token.deprel == "neg") return true;
  return token.deprel == "advmod" && config.negators.contains(text::to_lower(token.lemma));
}

namespace {

double negators_below(const DependencyTree& tree, std::size_t i, const GrammarConfig& config, int depth) {
  // depth guards against pathological inputs; trees are acyclic so it only
  // bounds very deep negator chains
  if (depth > static_cast<int>(tree.size())) return 1.0;
  double f = 1.0;
  for (const auto c : tree.children(i)) {
    if (is_negator(tree.token(c), config)) f *= -negators_below(tree, c, config, depth + 1);
  }
  return f;
}

bool is_verb(const DepToken& t) { return t.upos == "VERB" || t.upos == "AUX"; }

}  // namespace

double negation_factor(const DependencyTree& tree, std::size_t i, const GrammarConfig& config) {
  if (i >= tree.size()) throw ConfigError("token index out of range");
  double f = negators_below(tree, i, config, 0);
  const auto& tok = tree.token(i);
  if (tok.head && config.complement_relations.contains(tok.deprel) && is_verb(tree.token(*tok.head))) {
    f *= negators_below(tree, *tok.head, config, 0);
  }
  return f;
}

double modifier_factor(const DependencyTree& tree, std::size_t i, const GrammarConfig& config) {
  if (i >= tree.size()) throw ConfigError("token index out of range");
  double m = 1.0;
  for (const auto c : tree.children(i)) {
    const auto& mod = tree.token(c);
    if (mod.deprel != "advmod") continue;
    const auto lemma = text::to_lower(mod.lemma);
    std::optional<double> weight;
    for (const auto d : tree.children(c)) {
      const auto it = config.intensifiers.find(text::to_lower(tree.token(d).lemma) + "-" + lemma);
      if (it != config.intensifiers.end()) {
        weight = it->second;
        break;
      }
    }
    if (!weight) {
      const auto it = config.intensifiers.find(lemma);
      if (it != config.intensifiers.end()) weight = it->second;
    }
    if (weight) m *= *weight;
  }
  return std::clamp(m, config.modifier_min, config.modifier_max);
}

// ---------------------------------------------------------------------------
// Flags and labels

std::string ScoreFlags::label() const {
  std::string s;
  if (use_reasoning) s += "+AR";
  if (use_lemmas) s += "+L";
  if (use_grammar) s += "+GR";
  return s.empty() ? "plain" : s;
}

ScoreFlags parse_flags(std::string_view label) {
  ScoreFlags f;
  const auto l = text::trim(label);
  if (l == "plain") return f;
  std::size_t i = 0;
  while (i < l.size()) {
    if (l[i] != '+') throw ConfigError("invalid configuration label '" + std::string(label) + "'");
    const auto next = l.find('+', i + 1);
    const auto part = l.substr(i + 1, next == std::string_view::npos ? std::string_view::npos : next - i - 1);
    if (part == "AR") f.use_reasoning = true;
    else if (part == "GR") f.use_grammar = true;
    else if (part == "L") f.use_lemmas = true;
    else throw ConfigError("invalid configuration label '" + std::string(label) + "'");
    if (next == std::string_view::npos) break;
    i = next;
  }
  if (l.empty()) throw ConfigError("empty configuration label");
  return f;
}

std::string pole_label(std::string_view category, bool positive) {
  std::string s;
  s.push_back(category.empty() ? '?' : static_cast<char>(std::toupper(static_cast<unsigned char>(category[0]))));
  s.push_back(positive ? '+' : '-');
  return s;
}

std::string SentenceScore::dominant_label() const {
  return dominant_category ? pole_label(*dominant_category, dominant_positive) : "None";
}

std::optional<std::size_t> dominant_index(const std::vector<double>& values, double epsilon) {
  std::optional<std::size_t> best;
  double best_abs = 0.0;
  for (std::size_t c = 0; c < values.size(); ++c) {
    const double a = std::abs(values[c]);
    if (a < epsilon) continue;
    if (!best || a > best_abs) {
      best = c;
      best_abs = a;
    }
  }
  return best;
}

// ---------------------------------------------------------------------------
// Sentence scoring

SentenceScorer::SentenceScorer(const AffectiveModel& model, ScoreFlags flags, GrammarConfig grammar,
                               std::shared_ptr<const TokenEmbeddingProvider> provider,
                               std::shared_ptr<const LexiconIndex> index, const LexicalKB* kb,
                               ReasoningConfig reasoning)
    : model_(&model),
      flags_(flags),
      grammar_(std::move(grammar)),
      provider_(std::move(provider)),
      index_(std::move(index)),
      kb_(kb),
      reasoning_(reasoning),
      categories_(model.category_names()) {
  if (flags_.use_reasoning && (!provider_ || !index_)) {
    throw ConfigError("affective reasoning needs an embedding provider and a lexicon index");
  }
  if (index_ && index_->categories() != categories_) throw ConfigError("lexicon index built for another model");
  for (const auto& surface : model.surfaces()) {
    auto words = text::split_whitespace(surface);
    if (words.size() < 2) continue;
    phrases_[words.front()].push_back(std::move(words));
  }
  for (auto& [_, list] : phrases_) {
    std::stable_sort(list.begin(), list.end(), [](const auto& a, const auto& b) {
      if (a.size() != b.size()) return a.size() > b.size();
      return a < b;
    });
  }
}

SentenceScore SentenceScorer::score(const DependencyTree& tree) const {
  SentenceScore out;
  out.id = tree.id();
  out.categories = categories_;
  out.raw.assign(categories_.size(), 0.0);
  const auto& kb = kb_ != nullptr ? *kb_ : empty_kb_;

  const std::size_t n = tree.size();
  std::vector<std::string> keys(n);
  std::vector<std::string> forms(n);
  for (std::size_t i = 0; i < n; ++i) {
    forms[i] = text::to_lower(tree.token(i).form);
    keys[i] = flags_.use_lemmas ? text::to_lower(tree.token(i).lemma) : forms[i];
  }

  auto add = [&](TokenContribution c, std::size_t target) {
    if (flags_.use_grammar) {
      c.negation = negation_factor(tree, target, grammar_);
      c.modifier = modifier_factor(tree, target, grammar_);
    }
    for (std::size_t k = 0; k < categories_.size(); ++k) out.raw[k] += c.modifier * c.negation * c.scores[k];
    out.contributions.push_back(std::move(c));
  };
  auto row_of = [&](const CategoryScores& s) {
    std::vector<double> v;
    v.reserve(categories_.size());
    for (const auto& c : categories_) v.push_back(s.value_or_zero(c));
    return v;
  };

  std::size_t i = 0;
  while (i < n) {
    // longest multi-word lexicon phrase starting here
    std::size_t matched = 0;
    if (const auto it = phrases_.find(keys[i]); it != phrases_.end()) {
      for (const auto& words : it->second) {
        if (i + words.size() > n) continue;
        bool ok = true;
        for (std::size_t w = 1; w < words.size() && ok; ++w) ok = keys[i + w] == words[w];
        if (ok) {
          matched = words.size();
          break;
        }
      }
    }
    if (matched > 0) {
      std::vector<std::string> span(keys.begin() + static_cast<std::ptrdiff_t>(i),
                                    keys.begin() + static_cast<std::ptrdiff_t>(i + matched));
      const auto key = text::join(span, " ");
      // factors attach to the span token whose head lies outside the span
      std::size_t target = i;
      for (std::size_t t = i; t < i + matched; ++t) {
        const auto& h = tree.token(t).head;
        if (!h || *h < i || *h >= i + matched) {
          target = t;
          break;
        }
      }
      add({i, matched, key, "lexicon", row_of(*model_->surface_scores(key)), 1.0, 1.0}, target);
      i += matched;
      continue;
    }

    const auto& tok = tree.token(i);
    if (grammar_.function_upos.contains(tok.upos)) {
      ++i;
      continue;
    }
    if (const auto scores = model_->surface_scores(keys[i])) {
      add({i, 1, keys[i], "lexicon", row_of(*scores), 1.0, 1.0}, i);
    } else if (flags_.use_reasoning && text::is_wordlike(keys[i])) {
      const auto& context = provider_->contextual() ? forms : keys;
      const auto vec = embed_token(*provider_, {context, i});
      if (!vec) {
        add({i, 1, keys[i], "oov", std::vector<double>(categories_.size(), 0.0), 1.0, 1.0}, i);
      } else {
        const auto r = reason_scores(*index_, *vec, keys[i], kb, reasoning_, Execution::serial);
        if (!r.no_evidence) add({i, 1, keys[i], "reasoning", row_of(r.scores), 1.0, 1.0}, i);
      }
    }
    ++i;
  }

  for (std::size_t k = 0; k < categories_.size(); ++k) {
    out.scores.set(categories_[k], std::clamp(out.raw[k], -1.0, 1.0));
  }
  std::vector<double> clamped;
  for (const auto& c : categories_) clamped.push_back(out.scores.value_or_zero(c));
  if (const auto d = dominant_index(clamped, grammar_.neutral_epsilon)) {
    out.dominant_category = categories_[*d];
    out.dominant_positive = clamped[*d] > 0.0;
  }
  return out;
}

SentenceScore score_desirability(const DependencyTree& tree, const SentenceScorer& scorer) {
  const auto names = scorer.model().category_names();
  if (names.size() != 1 || names.front() != desirability_category().name) {
    throw ConfigError("desirability scoring needs a model with the single category 'desirability'");
  }
  return scorer.score(tree);
}

std::vector<SentenceScore> score_corpus_serial(const SentenceScorer& scorer,
                                               const std::vector<DependencyTree>& trees) {
  std::vector<SentenceScore> out;
  out.reserve(trees.size());
  for (const auto& t : trees) out.push_back(scorer.score(t));
  return out;
}

std::vector<SentenceScore> score_corpus_parallel(const SentenceScorer& scorer,
                                                 const std::vector<DependencyTree>& trees) {
  std::vector<SentenceScore> out(trees.size());
  std::vector<std::exception_ptr> errors(trees.size());
  const auto n = static_cast<std::int64_t>(trees.size());
#pragma omp parallel for schedule(dynamic, 4)
  for (std::int64_t i = 0; i < n; ++i) {
    const auto k = static_cast<std::size_t>(i);
    try {
      out[k] = scorer.score(trees[k]);
    } catch (...) {
      errors[k] = std::current_exception();
    }
  }
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return out;
}

nlohmann::ordered_json to_json(const SentenceScore& score, const DependencyTree* tree) {
  nlohmann::ordered_json j;
  j["id"] = score.id;
  // built separately: a reference into j would dangle once a sibling key is added
  nlohmann::ordered_json scores = nlohmann::ordered_json::object();
  nlohmann::ordered_json raw = nlohmann::ordered_json::object();
  for (std::size_t k = 0; k < score.categories.size(); ++k) {
    scores[score.categories[k]] = text::quantize_score(score.scores.value_or_zero(score.categories[k]));
    raw[score.categories[k]] = text::quantize_score(score.raw[k]);
  }
  j["scores"] = std::move(scores);
  j["raw"] = std::move(raw);
  j["dominant"] = score.dominant_label();
  auto& contributions = j["contributions"] = nlohmann::ordered_json::array();
  for (const auto& c : score.contributions) {
    nlohmann::ordered_json cj;
    cj["index"] = c.index;
    if (c.length > 1) cj["length"] = c.length;
    cj["key"] = c.key;
    if (tree != nullptr) cj["form"] = tree->token(c.index).form;
    cj["source"] = c.source;
    cj["n"] = c.negation;
    cj["m"] = c.modifier;
    auto& s = cj["scores"] = nlohmann::ordered_json::object();
    for (std::size_t k = 0; k < score.categories.size(); ++k) s[score.categories[k]] = text::quantize_score(c.scores[k]);
    contributions.push_back(std::move(cj));
  }
  return j;
}

}  // namespace affexp
