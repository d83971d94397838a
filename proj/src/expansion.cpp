#include "affexp/expansion.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <set>

#include "affexp/error.hpp"
#include "affexp/knn_kernels.hpp"
#include "affexp/log.hpp"
#include "affexp/text.hpp"

namespace affexp {

namespace {

// Runs fn(i) for i in [0, n) under OpenMP and rethrows the first failure
// (by index) on the calling thread.
template <typename Fn>
void parallel_for(std::size_t n, Execution exec, Fn&& fn) {
  if (exec == Execution::serial) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::vector<std::exception_ptr> errors(n);
  const auto count = static_cast<std::int64_t>(n);
#pragma omp parallel for schedule(dynamic, 8)
  for (std::int64_t i = 0; i < count; ++i) {
    try {
      fn(static_cast<std::size_t>(i));
    } catch (...) {
      errors[static_cast<std::size_t>(i)] = std::current_exception();
    }
  }
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

CategoryScores zero_scores(const std::vector<std::string>& categories) {
  CategoryScores s;
  for (const auto& c : categories) s.set(c, 0.0);
  return s;
}

bool is_zero(std::span<const double> v) {
  return std::all_of(v.begin(), v.end(), [](double x) { return x == 0.0; });
}

// Mean of the members' score rows; similarity-weighted when requested and
// the weights do not all vanish.
std::vector<double> average_scores(const LexiconIndex& index, const std::vector<kernels::ScoredRow>& members,
                                   bool weighted) {
  const std::size_t nc = index.categories().size();
  std::vector<double> sum(nc, 0.0);
  double total = 0.0;
  if (weighted) {
    for (const auto& m : members) total += std::max(m.similarity, 0.0);
  }
  const bool use_weights = weighted && total > 0.0;
  for (const auto& m : members) {
    const double w = use_weights ? std::max(m.similarity, 0.0) : 1.0;
    const auto s = index.scores_of_row(m.row);
    for (std::size_t c = 0; c < nc; ++c) sum[c] += w * s[c];
  }
  const double denom = use_weights ? total : static_cast<double>(members.size());
  for (double& x : sum) x /= denom;
  return sum;
}

ReasoningResult reason_from_query(const LexiconIndex& index, const kernels::Query& query,
                                 std::optional<std::uint32_t> exclude, const std::optional<std::string>& anchor,
                                 const LexicalKB& kb, const ReasoningConfig& config, Execution exec) {
  if (config.k == 0) throw ConfigError("reasoning k must be at least 1");
  const auto& space = index.space();
  const auto top = kernels::top_k(exec, space, query, index.rows(), config.k, config.min_sim, exclude);

  std::vector<kernels::ScoredRow> sim;
  std::vector<kernels::ScoredRow> ant;
  ReasoningResult result;
  for (const auto& r : top) {
    const auto& term = space.term(r.row);
    if (anchor && kb.is_antonym(*anchor, term)) {
      ant.push_back(r);
      result.antonyms.push_back({term, r.similarity});
    } else {
      sim.push_back(r);
      result.similar.push_back({term, r.similarity});
    }
  }

  const auto& categories = index.categories();
  if (sim.empty() && ant.empty()) {
    result.scores = zero_scores(categories);
    result.no_evidence = true;
    return result;
  }
  std::vector<double> avg_sim;
  std::vector<double> avg_ant;
  if (!sim.empty()) avg_sim = average_scores(index, sim, config.weighted);
  if (!ant.empty()) avg_ant = average_scores(index, ant, config.weighted);
  for (std::size_t c = 0; c < categories.size(); ++c) {
    double s;
    if (ant.empty()) {
      s = avg_sim[c];
    } else if (sim.empty()) {
      s = -avg_ant[c];
    } else {
      s = (avg_sim[c] - avg_ant[c]) / 2.0;
    }
    result.scores.set(categories[c], std::clamp(s, -1.0, 1.0));
  }
  return result;
}

}  // namespace

// ---------------------------------------------------------------------------
// LexiconIndex

LexiconIndex::LexiconIndex(const AffectiveModel& model, std::shared_ptr<const EmbeddingSpace> space)
    : space_(std::move(space)), categories_(model.category_names()) {
  if (!space_) throw ConfigError("lexicon index needs an embedding space");
  std::vector<std::pair<std::uint32_t, std::vector<double>>> members;
  for (const auto& surface : model.surfaces()) {
    const auto row = space_->index_of(surface);
    if (!row || space_->is_degenerate(*row)) continue;
    const auto scores = model.surface_scores(surface);
    std::vector<double> values;
    values.reserve(categories_.size());
    for (const auto& c : categories_) values.push_back(scores->value_or_zero(c));
    members.emplace_back(static_cast<std::uint32_t>(*row), std::move(values));
  }
  std::sort(members.begin(), members.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  rows_.reserve(members.size());
  scores_.reserve(members.size() * categories_.size());
  for (auto& [row, values] : members) {
    rows_.push_back(row);
    scores_.insert(scores_.end(), values.begin(), values.end());
  }
}

std::span<const double> LexiconIndex::scores_of_row(std::uint32_t row) const {
  const auto it = std::lower_bound(rows_.begin(), rows_.end(), row);
  if (it == rows_.end() || *it != row) throw ConfigError("row is not a lexicon member");
  const auto pos = static_cast<std::size_t>(it - rows_.begin());
  return {scores_.data() + pos * categories_.size(), categories_.size()};
}

// ---------------------------------------------------------------------------
// Proximity reasoning

ReasoningResult reason_scores(const LexiconIndex& index, std::string_view term, const LexicalKB& kb,
                              const ReasoningConfig& config, Execution exec) {
  const auto& space = index.space();
  const auto row = space.index_of(term);
  if (!row) throw OutOfVocabularyError(std::string(term));
  const std::optional<std::string> anchor{std::string(term)};
  if (space.is_degenerate(*row)) {
    ReasoningResult r;
    r.scores = zero_scores(index.categories());
    r.no_evidence = true;
    return r;
  }
  const Vector q = space.vector_of(*row);
  return reason_from_query(index, {q, space.norm(*row)}, static_cast<std::uint32_t>(*row), anchor, kb, config, exec);
}

ReasoningResult reason_scores(const LexiconIndex& index, std::span<const double> vector,
                              const std::optional<std::string>& anchor, const LexicalKB& kb,
                              const ReasoningConfig& config, Execution exec) {
  const auto& space = index.space();
  if (vector.size() != space.dimension()) {
    throw ConfigError("query vector has dimension " + std::to_string(vector.size()) + ", lexicon space has " +
                      std::to_string(space.dimension()));
  }
  if (is_zero(vector)) {
    ReasoningResult r;
    r.scores = zero_scores(index.categories());
    r.no_evidence = true;
    return r;
  }
  std::optional<std::uint32_t> exclude;
  if (anchor) {
    if (const auto row = space.index_of(*anchor)) exclude = static_cast<std::uint32_t>(*row);
  }
  return reason_from_query(index, {vector, kernels::vector_norm(vector)}, exclude, anchor, kb, config, exec);
}

// ---------------------------------------------------------------------------
// Sense embedding

namespace {

bool word_matches(std::string_view token, std::string_view word) {
  if (token == word) return true;
  if (token.size() <= word.size() || token.substr(0, word.size()) != word) {
    // stem changes: like -> liking, cry -> cries/cried
    if (word.size() > 2 && word.back() == 'e') {
      const auto stem = word.substr(0, word.size() - 1);
      return token == std::string(stem) + "ing" || token == std::string(stem) + "ed";
    }
    if (word.size() > 2 && word.back() == 'y') {
      const auto stem = std::string(word.substr(0, word.size() - 1));
      return token == stem + "ies" || token == stem + "ied" || token == stem + "ier" || token == stem + "iest";
    }
    return false;
  }
  const auto suffix = token.substr(word.size());
  static constexpr std::string_view kSuffixes[] = {"s", "es", "d", "ed", "ing", "er", "est", "ly"};
  if (std::find(std::begin(kSuffixes), std::end(kSuffixes), suffix) != std::end(kSuffixes)) return true;
  // doubled final consonant: stop -> stopped, stopping
  if (suffix.size() > 1 && suffix[0] == word.back()) {
    const auto rest = suffix.substr(1);
    return rest == "ed" || rest == "ing" || rest == "er" || rest == "est";
  }
  return false;
}

}  // namespace

std::optional<std::size_t> find_lemma(const std::vector<std::string>& tokens, std::string_view lemma) {
  const auto words = text::split_whitespace(text::normalize_surface(lemma));
  if (words.empty() || tokens.size() < words.size()) return std::nullopt;
  for (std::size_t i = 0; i + words.size() <= tokens.size(); ++i) {
    bool ok = true;
    for (std::size_t w = 0; w < words.size() && ok; ++w) ok = word_matches(tokens[i + w], words[w]);
    if (ok) return i;
  }
  return std::nullopt;
}

std::optional<SenseEmbedding> embed_sense(const Sense& sense, const TokenEmbeddingProvider& provider,
                                          SenseEmbeddingReport* report) {
  SenseEmbeddingReport local;
  SenseEmbeddingReport& rep = report != nullptr ? *report : local;
  const auto words = text::split_whitespace(text::normalize_surface(sense.lemma));
  Vector sum;
  std::size_t used = 0;
  for (const auto& example : sense.examples) {
    auto tokens = text::tokenize(example);
    const auto pos = find_lemma(tokens, sense.lemma);
    if (!pos) {
      ++rep.examples_skipped;
      continue;
    }
    if (!provider.contextual()) tokens[*pos] = words.front();
    const auto v = embed_token(provider, {tokens, *pos});
    if (!v) {
      ++rep.examples_skipped;
      continue;
    }
    if (sum.empty()) sum.assign(v->size(), 0.0);
    if (v->size() != sum.size()) throw ProtocolError("provider returned vectors of differing dimension");
    for (std::size_t j = 0; j < sum.size(); ++j) sum[j] += (*v)[j];
    ++used;
  }
  rep.examples_used += used;
  if (used == 0) return std::nullopt;
  for (double& x : sum) x /= static_cast<double>(used);
  return SenseEmbedding{sense.sense_id, std::move(sum), used};
}

// ---------------------------------------------------------------------------
// Disambiguation

std::vector<Sense> corpus_pseudo_senses(std::string_view term, const std::vector<std::string>& corpus,
                                        std::size_t limit) {
  std::vector<Sense> out;
  const auto lemma = text::normalize_surface(term);
  for (std::size_t i = 0; i < corpus.size() && out.size() < limit; ++i) {
    if (!find_lemma(text::tokenize(corpus[i]), lemma)) continue;
    out.push_back({lemma, "corpus:" + std::to_string(i + 1), "", {corpus[i]}});
  }
  return out;
}

DisambiguationResult disambiguate(std::string_view term, const CategoryScores& seed_scores, const LexicalKB& kb,
                                  const TokenEmbeddingProvider& provider, const LexiconIndex* index,
                                  const DisambiguationConfig& config, const std::vector<std::string>* corpus) {
  if (!(config.threshold_multiplier > 0.0)) throw ConfigError("sense threshold multiplier must be positive");
  DisambiguationResult result;
  result.term = text::normalize_surface(term);

  auto embed_all = [&](const std::vector<Sense>& senses) {
    std::vector<SenseEmbedding> out;
    for (const auto& s : senses) {
      if (auto e = embed_sense(s, provider)) {
        out.push_back(std::move(*e));
      } else {
        result.skipped.push_back(s.sense_id);
      }
    }
    return out;
  };

  auto embedded = embed_all(kb.senses(result.term));
  if (embedded.empty() && corpus != nullptr) {
    embedded = embed_all(corpus_pseudo_senses(result.term, *corpus, config.max_corpus_examples));
    result.from_corpus = !embedded.empty();
  }
  if (embedded.empty()) return result;

  const std::size_t dim = embedded.front().vector.size();
  Vector centroid(dim, 0.0);
  for (const auto& e : embedded) {
    for (std::size_t j = 0; j < dim; ++j) centroid[j] += e.vector[j];
  }
  for (double& x : centroid) x /= static_cast<double>(embedded.size());

  double total = 0.0;
  for (const auto& e : embedded) {
    const double d = std::max(0.0, 1.0 - cosine(e.vector, centroid).value);
    result.centroid_distance[e.sense_id] = d;
    total += d;
  }
  result.avg_sense_distance = total / static_cast<double>(embedded.size());
  result.threshold = config.threshold_multiplier * result.avg_sense_distance;

  std::vector<std::string> categories;
  for (const auto& [c, _] : seed_scores.values()) categories.push_back(c);
  for (const auto& e : embedded) {
    // small tolerance so that equal distances always pass their own average
    const bool close = result.centroid_distance[e.sense_id] <= result.threshold + 1e-12;
    result.inherited[e.sense_id] = close;
    if (close) {
      result.per_sense[e.sense_id] = seed_scores;
    } else if (index != nullptr) {
      result.per_sense[e.sense_id] =
          reason_scores(*index, e.vector, result.term, kb, config.reasoning, Execution::serial).scores;
    } else {
      result.per_sense[e.sense_id] = zero_scores(categories);
    }
  }
  return result;
}

std::shared_ptr<const EmbeddingSpace> build_lexicon_space(const AffectiveModel& model,
                                                          const TokenEmbeddingProvider& provider,
                                                          Execution exec) {
  const auto surfaces = model.surfaces();
  std::vector<std::optional<Vector>> vectors(surfaces.size());
  parallel_for(surfaces.size(), exec, [&](std::size_t i) {
    const auto words = text::split_whitespace(surfaces[i]);
    Vector sum;
    for (std::size_t w = 0; w < words.size(); ++w) {
      const auto v = embed_token(provider, {words, w});
      if (!v) return;
      if (sum.empty()) sum.assign(v->size(), 0.0);
      for (std::size_t j = 0; j < sum.size(); ++j) sum[j] += (*v)[j];
    }
    for (double& x : sum) x /= static_cast<double>(words.size());
    vectors[i] = std::move(sum);
  });
  std::vector<std::string> terms;
  std::vector<float> data;
  const std::size_t dim = provider.dimension();
  for (std::size_t i = 0; i < surfaces.size(); ++i) {
    if (!vectors[i]) continue;
    if (vectors[i]->size() != dim) throw ProtocolError("provider vector dimension differs from its declared dimension");
    terms.push_back(surfaces[i]);
    for (double x : *vectors[i]) data.push_back(static_cast<float>(x));
  }
  return std::make_shared<const EmbeddingSpace>(std::move(terms), std::move(data), dim);
}

// ---------------------------------------------------------------------------
// Expansion

namespace {

CandidateScore score_one(const LexiconIndex& index, const LexicalKB& kb, const std::string& candidate,
                         const ReasoningConfig& config) {
  CandidateScore out{candidate, {}};
  if (!index.space().contains(candidate)) {
    out.result.scores = zero_scores(index.categories());
    out.result.no_evidence = true;
    return out;
  }
  out.result = reason_scores(index, candidate, kb, config, Execution::serial);
  return out;
}

std::vector<CandidateScore> score_candidates(const LexiconIndex& index, const LexicalKB& kb,
                                             const std::vector<std::string>& candidates,
                                             const ReasoningConfig& config, Execution exec) {
  std::vector<CandidateScore> out(candidates.size());
  parallel_for(candidates.size(), exec,
               [&](std::size_t i) { out[i] = score_one(index, kb, candidates[i], config); });
  return out;
}

bool usable_candidate(const std::string& term) {
  return term.size() > 1 && text::is_wordlike(term) && term.find(' ') == std::string::npos;
}

struct Admission {
  std::string surface;
  CategoryScores scores;
  Origin origin;
};

}  // namespace

std::vector<CandidateScore> score_candidates_serial(const LexiconIndex& index, const LexicalKB& kb,
                                                    const std::vector<std::string>& candidates,
                                                    const ReasoningConfig& config) {
  return score_candidates(index, kb, candidates, config, Execution::serial);
}

std::vector<CandidateScore> score_candidates_parallel(const LexiconIndex& index, const LexicalKB& kb,
                                                      const std::vector<std::string>& candidates,
                                                      const ReasoningConfig& config) {
  return score_candidates(index, kb, candidates, config, Execution::parallel);
}

std::map<std::string, CategoryMembership> category_membership(const AffectiveModel& model, double threshold) {
  std::map<std::string, CategoryMembership> out;
  for (const auto& c : model.category_names()) out[c] = {};
  for (const auto& surface : model.surfaces()) {
    const auto scores = model.surface_scores(surface);
    for (const auto& [c, v] : scores->values()) {
      if (std::abs(v) < threshold) continue;
      auto& m = out[c];
      (v > 0 ? m.positive : m.negative) += 1;
    }
  }
  return out;
}

ExpansionResult expand(const AffectiveModel& model, const LexicalKB& kb,
                       std::shared_ptr<const EmbeddingSpace> space, const ExpansionConfig& config,
                       const TokenEmbeddingProvider* provider, const std::vector<std::string>* corpus,
                       Execution exec) {
  if (!space) throw ConfigError("expansion needs an embedding space");
  if (config.iterations < 0) throw ConfigError("iterations must be non-negative");
  if (config.candidate_k == 0 || config.reasoning.k == 0) throw ConfigError("k must be at least 1");
  if (!(config.admission_threshold >= 0.0 && config.admission_threshold <= 1.0)) {
    throw ConfigError("admission threshold must lie in [0, 1]");
  }

  ExpansionResult out{model, {}};
  out.report.initial_size = model.size();
  const StaticEmbeddingProvider static_provider(space);
  const TokenEmbeddingProvider& prov = provider != nullptr ? *provider : static_provider;
  const auto categories = model.category_names();

  std::vector<std::string> frontier = model.surfaces();
  for (int it = 1; it <= config.iterations; ++it) {
    const AffectiveModel& current = out.model;
    IterationReport ir;
    ir.iteration = it;
    std::vector<LexiconEntry> entries = current.entries();

    const LexiconIndex index(current, space);

    // Sense disambiguation of seed terms that have not been split yet.
    if (config.disambiguate) {
      std::vector<std::string> pending;
      for (const auto& surface : current.surfaces()) {
        const auto list = current.entries_for(surface);
        const bool has_seed = std::any_of(list.begin(), list.end(), [](const LexiconEntry* e) {
          return e->sense_id.empty() && e->provenance.origin == Origin::seed;
        });
        const bool has_senses =
            std::any_of(list.begin(), list.end(), [](const LexiconEntry* e) { return !e->sense_id.empty(); });
        if (has_seed && !has_senses) pending.push_back(surface);
      }
      std::unique_ptr<LexiconIndex> provider_index;
      const LexiconIndex* sense_index = &index;
      if (prov.contextual()) {
        provider_index = std::make_unique<LexiconIndex>(current, build_lexicon_space(current, prov, exec));
        sense_index = provider_index.get();
      }
      std::vector<DisambiguationResult> results(pending.size());
      parallel_for(pending.size(), exec, [&](std::size_t i) {
        results[i] = disambiguate(pending[i], current.find(pending[i])->scores, kb, prov, sense_index,
                                  config.disambiguation, corpus);
      });
      for (const auto& r : results) {
        if (r.per_sense.empty()) {
          if (!r.skipped.empty()) out.report.skipped[r.term] = "no sense with a usable example";
          continue;
        }
        ++ir.disambiguated_terms;
        for (const auto& [sid, scores] : r.per_sense) {
          entries.push_back({r.term, sid, scores, {Origin::disambiguated, it}});
          ++ir.sense_entries;
        }
      }
    }

    // Candidate gathering.
    std::map<std::string, CategoryScores> rule_scores;  // KB candidates with their relation-derived scores
    {
      const auto enriched = enrich(kb, current, {config.discounts, it});
      for (const auto& e : enriched.entries()) {
        if (!current.contains_surface(e.surface) && text::is_wordlike(e.surface)) {
          rule_scores.emplace(e.surface, e.scores);
        }
      }
    }
    std::vector<std::vector<std::string>> gathered(frontier.size());
    parallel_for(frontier.size(), exec, [&](std::size_t i) {
      if (!space->contains(frontier[i])) return;
      for (auto& n : nearest(*space, NearestQuery::of_term(frontier[i]), config.candidate_k,
                             config.reasoning.min_sim, {}, Execution::serial)) {
        if (!current.contains_surface(n.term) && usable_candidate(n.term)) gathered[i].push_back(std::move(n.term));
      }
    });
    std::set<std::string> pool;
    for (const auto& [s, _] : rule_scores) pool.insert(s);
    for (auto& g : gathered) pool.insert(g.begin(), g.end());
    ir.candidates = pool.size();

    std::vector<std::string> in_vocab;
    for (const auto& s : pool) {
      if (space->contains(s)) in_vocab.push_back(s);
    }
    const auto scored = score_candidates(index, kb, in_vocab, config.reasoning, exec);

    std::vector<Admission> admissions;
    for (const auto& c : scored) {
      if (!c.result.no_evidence) admissions.push_back({c.surface, c.result.scores, Origin::expanded});
    }
    for (const auto& [s, scores] : rule_scores) {
      if (!space->contains(s)) admissions.push_back({s, scores, Origin::enriched});
    }
    for (auto& a : admissions) {
      CategoryScores q;
      for (const auto& [c, v] : a.scores.values()) q.set(c, text::quantize_score(v));
      a.scores = std::move(q);
    }
    const auto before = admissions.size();
    std::erase_if(admissions, [&](const Admission& a) { return a.scores.max_abs() < config.admission_threshold; });
    ir.below_threshold = (pool.size() - before) + (before - admissions.size());
    std::sort(admissions.begin(), admissions.end(), [](const Admission& a, const Admission& b) {
      const double ma = a.scores.max_abs();
      const double mb = b.scores.max_abs();
      if (ma != mb) return ma > mb;
      return a.surface < b.surface;
    });

    std::map<std::string, std::size_t> counts;
    for (const auto& [c, m] : category_membership(current, config.membership_threshold)) counts[c] = m.total();
    std::vector<std::string> next_frontier;
    for (auto& a : admissions) {
      std::vector<std::string> joins;
      for (const auto& [c, v] : a.scores.values()) {
        if (std::abs(v) >= config.membership_threshold) joins.push_back(c);
      }
      if (config.per_category_target > 0 &&
          std::any_of(joins.begin(), joins.end(),
                      [&](const std::string& c) { return counts[c] >= config.per_category_target; })) {
        ++ir.over_target;
        continue;
      }
      for (const auto& c : joins) ++counts[c];
      if (a.origin == Origin::enriched) ++ir.admitted_from_kb_rules;
      ++ir.admitted;
      next_frontier.push_back(a.surface);
      entries.push_back({a.surface, "", std::move(a.scores), {a.origin, it}});
    }

    ModelMetadata meta = current.metadata();
    AffectiveModel next(current.categories(), std::move(entries), std::move(meta));
    out.model = std::move(next);
    out.report.iterations.push_back(ir);
    log::info("expansion iteration", {{"iteration", it},
                                      {"candidates", ir.candidates},
                                      {"admitted", ir.admitted},
                                      {"senses", ir.sense_entries}});
    std::sort(next_frontier.begin(), next_frontier.end());
    frontier = std::move(next_frontier);
    if (frontier.empty() && ir.sense_entries == 0) break;
  }

  out.report.final_size = out.model.size();
  out.report.membership = category_membership(out.model, config.membership_threshold);
  return out;
}

// ---------------------------------------------------------------------------
// Reports

nlohmann::ordered_json to_json(const ExpansionReport& report) {
  nlohmann::ordered_json j;
  j["initial_size"] = report.initial_size;
  j["final_size"] = report.final_size;
  auto& iters = j["iterations"] = nlohmann::ordered_json::array();
  for (const auto& ir : report.iterations) {
    iters.push_back({{"iteration", ir.iteration},
                     {"candidates", ir.candidates},
                     {"admitted", ir.admitted},
                     {"admitted_from_kb_rules", ir.admitted_from_kb_rules},
                     {"below_threshold", ir.below_threshold},
                     {"over_target", ir.over_target},
                     {"disambiguated_terms", ir.disambiguated_terms},
                     {"sense_entries", ir.sense_entries}});
  }
  auto& mem = j["membership"] = nlohmann::ordered_json::object();
  for (const auto& [c, m] : report.membership) {
    mem[c] = {{"positive", m.positive}, {"negative", m.negative}, {"total", m.total()}};
  }
  auto& skipped = j["skipped"] = nlohmann::ordered_json::object();
  for (const auto& [t, reason] : report.skipped) skipped[t] = reason;
  return j;
}

nlohmann::ordered_json to_json(const DisambiguationResult& result) {
  nlohmann::ordered_json j;
  j["term"] = result.term;
  j["from_corpus"] = result.from_corpus;
  j["avg_sense_distance"] = result.avg_sense_distance;
  j["threshold"] = result.threshold;
  auto& senses = j["senses"] = nlohmann::ordered_json::array();
  for (const auto& [sid, scores] : result.per_sense) {
    nlohmann::ordered_json s;
    s["sense_id"] = sid;
    s["distance"] = result.centroid_distance.at(sid);
    s["inherited"] = result.inherited.at(sid);
    auto& sc = s["scores"] = nlohmann::ordered_json::object();
    for (const auto& [c, v] : scores.values()) sc[c] = text::quantize_score(v);
    senses.push_back(std::move(s));
  }
  j["skipped"] = result.skipped;
  return j;
}

}  // namespace affexp
