#include "affexp/cli.hpp"

#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <map>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "affexp/core_model.hpp"
#include "affexp/embedding_store.hpp"
#include "affexp/error.hpp"
#include "affexp/evaluation.hpp"
#include "affexp/execution.hpp"
#include "affexp/expansion.hpp"
#include "affexp/kb_convert.hpp"
#include "affexp/lexical_kb.hpp"
#include "affexp/log.hpp"
#include "affexp/scorer.hpp"
#include "affexp/text.hpp"
#include "json.hpp"

namespace affexp::cli {

namespace {

using Params = std::map<std::string, std::string>;

// Options that do not influence results and are left out of the echoed config.
bool is_operational(const std::string& name) {
  return name == "help" || name == "config" || name == "log-level" || name == "jobs";
}

Params effective_config(const CLI::App& sub) {
  Params p;
  for (const CLI::Option* opt : sub.get_options()) {
    const auto name = opt->get_single_name();
    if (name.empty() || is_operational(name)) continue;
    std::string value;
    if (opt->get_type_size() == 0) {
      value = opt->count() > 0 ? "true" : "false";
    } else if (opt->count() > 0) {
      value = text::join(opt->results(), ",");
    } else {
      value = opt->get_default_str();
    }
    p[name] = value;
  }
  return p;
}

nlohmann::ordered_json to_json(const Params& p) {
  nlohmann::ordered_json j = nlohmann::ordered_json::object();
  for (const auto& [k, v] : p) j[k] = v;
  return j;
}

// Config-file rendering of the effective options (re-usable with --config).
std::string config_text(const std::string& sub, const Params& p) {
  std::ostringstream out;
  out << '[' << sub << "]\n";
  for (const auto& [k, v] : p) {
    if (v.empty()) continue;
    out << k << '=' << std::quoted(v) << '\n';
  }
  return out.str();
}

void write_text_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write '" + path.string() + "'");
  out << content;
  out.flush();
  if (!out) throw IoError("write failed for '" + path.string() + "'");
}

std::ofstream open_out(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write '" + path.string() + "'");
  return out;
}

AffectiveModel with_params(const AffectiveModel& model, const std::string& sub, const Params& params) {
  ModelMetadata meta = model.metadata();
  for (const auto& [k, v] : params) meta.params[sub + "." + k] = v;
  return model.with_metadata(std::move(meta));
}

std::vector<std::string> read_lines(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open '" + path.string() + "'");
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    lines.push_back(line);
  }
  return lines;
}

std::map<std::string, std::string> read_mapping(const std::filesystem::path& path) {
  if (path.empty()) return {};
  std::ifstream in(path);
  if (!in) throw IoError("cannot open mapping file '" + path.string() + "'");
  try {
    const auto j = nlohmann::json::parse(in);
    return j.get<std::map<std::string, std::string>>();
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError("mapping file '" + path.string() + "' must be a JSON object of strings: " + e.what());
  }
}

LexicalKB load_kb_logged(const std::string& senses, const std::string& edges) {
  KbLoadReport rep;
  auto kb = load_kb(senses, edges, &rep);
  log::info("knowledge base loaded", {{"senses", rep.senses_loaded},
                                      {"edges", rep.edges_loaded},
                                      {"edges_rejected", rep.edges_rejected},
                                      {"senses_without_examples", rep.senses_without_examples}});
  return kb;
}

std::shared_ptr<const EmbeddingSpace> load_space(const std::string& path, std::size_t vocab_limit) {
  EmbeddingLoadReport rep;
  auto space = std::make_shared<const EmbeddingSpace>(
      load_embeddings(path, vocab_limit > 0 ? std::optional<std::size_t>(vocab_limit) : std::nullopt, &rep));
  log::info("embeddings loaded", {{"path", path},
                                  {"terms", space->size()},
                                  {"dimension", space->dimension()},
                                  {"duplicates", rep.duplicates},
                                  {"degenerate", rep.degenerate_rows}});
  return space;
}

// --provider value, falling back to AFFEXP_PROVIDER_URL.
std::string provider_spec(const std::string& flag) {
  if (!flag.empty()) return flag;
  if (const char* env = std::getenv("AFFEXP_PROVIDER_URL"); env != nullptr && *env != '\0') return env;
  return "static";
}

struct Common {
  std::string log_level = "warn";
  int jobs = 0;
};

struct ReasoningOpts {
  std::size_t k = 50;
  double min_sim = 0.35;
  bool unweighted = false;

  void add(CLI::App* app) {
    app->add_option("--k", k, "Proximate terms consulted per query")->capture_default_str()->check(CLI::PositiveNumber);
    app->add_option("--min-sim", min_sim, "Minimum cosine similarity of a proximate term")
        ->capture_default_str()
        ->check(CLI::Range(-1.0, 1.0));
    app->add_flag("--unweighted", unweighted, "Plain mean instead of similarity-weighted mean");
  }
  ReasoningConfig config() const { return {k, min_sim, !unweighted}; }
};

struct ProviderOpts {
  std::string provider;
  int timeout_ms = 5000;

  void add(CLI::App* app) {
    app->add_option("--provider", provider, "static or http://host:port (default: $AFFEXP_PROVIDER_URL, else static)");
    app->add_option("--provider-timeout-ms", timeout_ms, "Remote provider timeout")
        ->capture_default_str()
        ->check(CLI::PositiveNumber);
  }
  std::shared_ptr<const TokenEmbeddingProvider> make(std::shared_ptr<const EmbeddingSpace> space) const {
    return make_provider(provider_spec(provider), std::move(space), std::chrono::milliseconds(timeout_ms));
  }
};

// Lexicon members embedded in the provider's space.
std::shared_ptr<const LexiconIndex> reasoning_index(const AffectiveModel& model,
                                                    const std::shared_ptr<const EmbeddingSpace>& space,
                                                    const TokenEmbeddingProvider& provider) {
  if (!provider.contextual()) return std::make_shared<const LexiconIndex>(model, space);
  return std::make_shared<const LexiconIndex>(model, build_lexicon_space(model, provider));
}

// ---------------------------------------------------------------------------
// Subcommands

struct EnrichCmd {
  std::string model, senses, edges, out;
  RelationDiscounts discounts;

  void add(CLI::App& app) {
    auto* c = app.add_subcommand("enrich", "Add KB synonyms, antonyms and related terms of lexicon entries");
    c->add_option("--model", model, "Input lexicon")->required();
    c->add_option("--kb-senses", senses, "senses.jsonl (optional)");
    c->add_option("--kb-edges", edges, "edges.jsonl")->required();
    c->add_option("--out", out, "Output lexicon")->required();
    c->add_option("--synonym-discount", discounts.synonym)->capture_default_str()->check(CLI::Range(0.0, 1.0));
    c->add_option("--related-discount", discounts.related)->capture_default_str()->check(CLI::Range(0.0, 1.0));
    c->add_option("--antonym-discount", discounts.antonym)->capture_default_str()->check(CLI::Range(0.0, 1.0));
    c->callback([this, c] { run(*c); });
  }

  void run(const CLI::App& c) {
    const auto seed = load_model(model);
    const auto kb = load_kb_logged(senses, edges);
    const auto enriched = enrich(kb, seed, {discounts, 1});
    save_model(with_params(enriched, "enrich", effective_config(c)), out);
    std::cout << "enriched " << seed.size() << " -> " << enriched.size() << " entries\n";
  }
};

struct DisambiguateCmd {
  std::string model, senses, edges, embeddings, corpus, out;
  std::vector<std::string> terms;
  std::size_t vocab_limit = 0;
  double multiplier = 1.3;
  std::size_t max_corpus_examples = 5;
  ReasoningOpts reasoning;
  ProviderOpts provider;

  void add(CLI::App& app) {
    auto* c = app.add_subcommand("disambiguate", "Split lexicon terms into senses");
    c->add_option("--model", model, "Input lexicon")->required();
    c->add_option("--kb-senses", senses, "senses.jsonl");
    c->add_option("--kb-edges", edges, "edges.jsonl (antonyms for outlier senses)");
    c->add_option("--embeddings", embeddings, "GloVe-format vectors")->required();
    c->add_option("--vocab-limit", vocab_limit, "Read at most N vectors (0 = all)")->capture_default_str();
    c->add_option("--term", terms, "Terms to disambiguate (default: every seed term)");
    c->add_option("--corpus", corpus, "Domain corpus, one sentence per line");
    c->add_option("--max-corpus-examples", max_corpus_examples)->capture_default_str();
    c->add_option("--threshold-multiplier", multiplier, "Centroid distance multiplier")
        ->capture_default_str()
        ->check(CLI::PositiveNumber);
    c->add_option("--out", out, "Output JSONL")->required();
    reasoning.add(c);
    provider.add(c);
    c->callback([this] { run(); });
  }

  void run() {
    const auto m = load_model(model);
    const auto kb = load_kb_logged(senses, edges);
    const auto space = load_space(embeddings, vocab_limit);
    const auto prov = provider.make(space);
    const auto index = reasoning_index(m, space, *prov);
    std::vector<std::string> corpus_lines;
    if (!corpus.empty()) corpus_lines = read_lines(corpus);
    std::vector<std::string> todo = terms;
    if (todo.empty()) {
      for (const auto& e : m.entries()) {
        if (e.sense_id.empty() && e.provenance.origin == Origin::seed) todo.push_back(e.surface);
      }
    }
    const DisambiguationConfig cfg{multiplier, reasoning.config(), max_corpus_examples};
    auto os = open_out(out);
    std::size_t split = 0;
    for (const auto& t : todo) {
      const auto surface = text::normalize_surface(t);
      const auto scores = m.surface_scores(surface);
      if (!scores) throw ValidationError("term '" + surface + "' is not in the lexicon");
      const auto r = disambiguate(surface, *scores, kb, *prov, index.get(), cfg,
                                  corpus_lines.empty() ? nullptr : &corpus_lines);
      if (!r.per_sense.empty()) ++split;
      os << to_json(r).dump() << '\n';
    }
    if (!os) throw IoError("write failed for '" + out + "'");
    std::cout << "disambiguated " << split << " of " << todo.size() << " terms\n";
  }
};

struct ExpandCmd {
  std::string model, senses, edges, embeddings, corpus, out, report;
  std::size_t vocab_limit = 0;
  ExpansionConfig cfg;
  bool no_disambiguation = false;
  ReasoningOpts reasoning;
  ProviderOpts provider;

  void add(CLI::App& app) {
    auto* c = app.add_subcommand("expand", "Grow a lexicon through KB relations and embedding neighbors");
    c->add_option("--model", model, "Input lexicon")->required();
    c->add_option("--kb-senses", senses, "senses.jsonl");
    c->add_option("--kb-edges", edges, "edges.jsonl");
    c->add_option("--embeddings", embeddings, "GloVe-format vectors")->required();
    c->add_option("--vocab-limit", vocab_limit, "Read at most N vectors (0 = all)")->capture_default_str();
    c->add_option("--corpus", corpus, "Domain corpus for terms without KB senses");
    c->add_option("--iterations", cfg.iterations)->capture_default_str()->check(CLI::NonNegativeNumber);
    c->add_option("--candidate-k", cfg.candidate_k, "Embedding neighbors gathered per frontier term")
        ->capture_default_str()
        ->check(CLI::PositiveNumber);
    c->add_option("--admission-threshold", cfg.admission_threshold)->capture_default_str()->check(CLI::Range(0.0, 1.0));
    c->add_option("--membership-threshold", cfg.membership_threshold)
        ->capture_default_str()
        ->check(CLI::Range(0.0, 1.0));
    c->add_option("--per-category-target", cfg.per_category_target, "Membership cap per category (0 = none)")
        ->capture_default_str();
    c->add_option("--threshold-multiplier", cfg.disambiguation.threshold_multiplier)
        ->capture_default_str()
        ->check(CLI::PositiveNumber);
    c->add_option("--max-corpus-examples", cfg.disambiguation.max_corpus_examples)->capture_default_str();
    c->add_flag("--no-disambiguation", no_disambiguation, "Skip sense disambiguation");
    c->add_option("--synonym-discount", cfg.discounts.synonym)->capture_default_str()->check(CLI::Range(0.0, 1.0));
    c->add_option("--related-discount", cfg.discounts.related)->capture_default_str()->check(CLI::Range(0.0, 1.0));
    c->add_option("--antonym-discount", cfg.discounts.antonym)->capture_default_str()->check(CLI::Range(0.0, 1.0));
    c->add_option("--out", out, "Output lexicon")->required();
    c->add_option("--report", report, "Expansion report JSON");
    reasoning.add(c);
    provider.add(c);
    c->callback([this, c] { run(*c); });
  }

  void run(const CLI::App& c) {
    const auto m = load_model(model);
    const auto kb = load_kb_logged(senses, edges);
    const auto space = load_space(embeddings, vocab_limit);
    const auto prov = provider.make(space);
    std::vector<std::string> corpus_lines;
    if (!corpus.empty()) corpus_lines = read_lines(corpus);
    cfg.reasoning = reasoning.config();
    cfg.disambiguation.reasoning = cfg.reasoning;
    cfg.disambiguate = !no_disambiguation;
    const auto result =
        expand(m, kb, space, cfg, prov.get(), corpus_lines.empty() ? nullptr : &corpus_lines, Execution::parallel);
    const auto params = effective_config(c);
    save_model(with_params(result.model, "expand", params), out);
    if (!report.empty()) {
      auto j = to_json(result.report);
      j["config"] = to_json(params);
      write_text_file(report, j.dump(2) + "\n");
    }
    std::cout << "expanded " << result.report.initial_size << " -> " << result.report.final_size << " entries\n";
    for (const auto& [cat, mem] : result.report.membership) {
      std::cout << "  " << cat << ": " << mem.total() << " (" << mem.positive << "+ / " << mem.negative << "-)\n";
    }
  }
};

// Shared setup of score and evaluate.
struct ScoringOpts {
  std::string embeddings, edges, grammar_config;
  std::size_t vocab_limit = 0;
  ReasoningOpts reasoning;
  ProviderOpts provider;

  void add(CLI::App* c) {
    c->add_option("--embeddings", embeddings, "GloVe-format vectors (needed for +AR)");
    c->add_option("--vocab-limit", vocab_limit, "Read at most N vectors (0 = all)")->capture_default_str();
    c->add_option("--kb-edges", edges, "edges.jsonl (antonyms for proximity reasoning)");
    c->add_option("--grammar-config", grammar_config, "JSON negation/modifier rules");
    reasoning.add(c);
    provider.add(c);
  }

  struct Runtime {
    GrammarConfig grammar;
    LexicalKB kb;
    std::shared_ptr<const TokenEmbeddingProvider> provider;
    std::shared_ptr<const LexiconIndex> index;
  };

  std::unique_ptr<Runtime> load(const AffectiveModel& model, bool need_reasoning) const {
    auto rt = std::make_unique<Runtime>();
    if (!grammar_config.empty()) rt->grammar = load_grammar_config(grammar_config);
    if (!edges.empty()) rt->kb = load_kb_logged("", edges);
    if (need_reasoning) {
      const auto spec = provider_spec(provider.provider);
      if (embeddings.empty() && spec == "static") {
        throw ConfigError("affective reasoning (+AR) needs --embeddings or a remote --provider");
      }
      std::shared_ptr<const EmbeddingSpace> space;
      if (!embeddings.empty()) space = load_space(embeddings, vocab_limit);
      rt->provider = provider.make(space);
      rt->index = reasoning_index(model, space, *rt->provider);
    }
    return rt;
  }

  SentenceScorer scorer(const AffectiveModel& model, const Runtime& rt, ScoreFlags flags) const {
    return SentenceScorer(model, flags, rt.grammar, flags.use_reasoning ? rt.provider : nullptr,
                          flags.use_reasoning ? rt.index : nullptr, &rt.kb, reasoning.config());
  }
};

struct ScoreCmd {
  std::string model, input, out;
  bool no_parse = false, grammar = false, lemmas = false, no_reasoning = false;
  ScoringOpts scoring;

  void add(CLI::App& app) {
    auto* c = app.add_subcommand("score", "Score sentences along the model's categories");
    c->add_option("--model", model, "Lexicon")->required();
    c->add_option("--input", input, "CoNLL-U file, or plain text with --no-parse")->required();
    c->add_flag("--no-parse", no_parse, "Input is plain text, one sentence per line");
    c->add_flag("--grammar", grammar, "Apply negation and modifier factors");
    c->add_flag("--lemmas", lemmas, "Look tokens up by lemma");
    c->add_flag("--no-reasoning", no_reasoning, "Disable proximity reasoning even with embeddings");
    c->add_option("--out", out, "Output JSONL")->required();
    scoring.add(c);
    c->callback([this, c] { run(*c); });
  }

  void run(const CLI::App& c) {
    const auto m = load_model(model);
    ScoreFlags flags;
    flags.use_grammar = grammar;
    flags.use_lemmas = lemmas;
    flags.use_reasoning =
        !no_reasoning && (!scoring.embeddings.empty() || provider_spec(scoring.provider.provider) != "static");
    const auto rt = scoring.load(m, flags.use_reasoning);
    std::vector<DependencyTree> trees;
    if (no_parse) {
      std::ifstream in(input);
      if (!in) throw IoError("cannot open input '" + input + "'");
      trees = read_plain_text(in);
    } else {
      auto doc = load_conllu(input);
      for (const auto& r : doc.rejected) {
        log::warn("sentence rejected", {{"id", r.sentence_id}, {"line", r.line}, {"reason", r.reason}});
      }
      trees = std::move(doc.trees);
    }
    const auto scorer = scoring.scorer(m, *rt, flags);
    const auto scores = score_corpus_parallel(scorer, trees);
    auto os = open_out(out);
    nlohmann::ordered_json header;
    header["affexp"] = "score";
    header["flags"] = flags.label();
    header["config"] = to_json(effective_config(c));
    os << header.dump() << '\n';
    for (std::size_t i = 0; i < scores.size(); ++i) os << to_json(scores[i], &trees[i]).dump() << '\n';
    if (!os) throw IoError("write failed for '" + out + "'");
    std::cout << "scored " << scores.size() << " sentences (" << flags.label() << ")\n";
  }
};

struct EvaluateCmd {
  std::string model, gold, conllu, mapping, out;
  std::string configs = "plain,+AR,+AR+L,+GR,+AR+GR,+AR+L+GR";
  double presence_epsilon = 0.1;
  ScoringOpts scoring;

  void add(CLI::App& app) {
    auto* c = app.add_subcommand("evaluate", "Score the gold standard and report the metrics");
    c->add_option("--model", model, "Lexicon")->required();
    c->add_option("--gold", gold, "Normalized gold TSV")->required();
    c->add_option("--conllu", conllu, "Parses of the gold sentences (matched by sent_id)");
    c->add_option("--configs", configs, "Comma-separated configurations")->capture_default_str();
    c->add_option("--mapping", mapping, "JSON object renaming model categories to gold categories");
    c->add_option("--presence-epsilon", presence_epsilon)->capture_default_str()->check(CLI::Range(0.0, 1.0));
    c->add_option("--out", out, "Output directory")->required();
    scoring.add(c);
    c->callback([this, c] { run(*c); });
  }

  void run(const CLI::App& c) {
    const auto m = load_model(model);
    GoldLoadReport grep;
    const auto gold_rows = load_gold(gold, &grep);
    const auto map = read_mapping(mapping);

    std::vector<ScoreFlags> flag_list;
    std::vector<std::string> labels;
    for (const auto& part : text::split(configs, ',')) {
      if (text::trim(part).empty()) continue;
      flag_list.push_back(parse_flags(part));
      labels.push_back(flag_list.back().label());
    }
    if (flag_list.empty()) throw ConfigError("no configuration selected");
    const bool any_reasoning =
        std::any_of(flag_list.begin(), flag_list.end(), [](const ScoreFlags& f) { return f.use_reasoning; });
    const auto rt = scoring.load(m, any_reasoning);
    if (!map.empty()) {
      for (const auto& [from, _] : map) {
        if (!m.has_category(from)) throw ConfigError("mapping source '" + from + "' is not a model category");
      }
    }

    std::map<std::string, DependencyTree> parsed;
    if (!conllu.empty()) {
      auto doc = load_conllu(conllu);
      for (auto& t : doc.trees) parsed.emplace(t.id(), std::move(t));
      for (const auto& r : doc.rejected) log::warn("sentence rejected", {{"id", r.sentence_id}, {"reason", r.reason}});
    }
    std::vector<DependencyTree> trees;
    trees.reserve(gold_rows.size());
    std::size_t flat = 0;
    for (const auto& g : gold_rows) {
      if (const auto it = parsed.find(g.id); it != parsed.end()) {
        trees.push_back(it->second);
      } else {
        trees.push_back(flat_tree(g.id, g.text));
        ++flat;
      }
    }
    if (!conllu.empty() && flat > 0) log::warn("gold sentences without a parse", {{"count", flat}});

    std::filesystem::create_directories(out);
    std::vector<ConfigResult> results;
    for (const auto& flags : flag_list) {
      const auto scorer = scoring.scorer(m, *rt, flags);
      const auto scores = score_corpus_parallel(scorer, trees);
      std::vector<Prediction> preds;
      preds.reserve(scores.size());
      for (const auto& s : scores) {
        preds.push_back(to_prediction(s, map, presence_epsilon, scorer.grammar().neutral_epsilon));
      }
      results.push_back({flags.label(), dominant_recall(preds, gold_rows), category_prf(preds, gold_rows)});
    }

    const std::filesystem::path dir(out);
    const auto dom = dominant_recall_table(results);
    const auto prf = category_prf_table(results);
    write_text_file(dir / "dominant_recall.csv", render_csv(dom));
    write_text_file(dir / "dominant_recall.md", render_markdown(dom));
    write_text_file(dir / "category_prf.csv", render_csv(prf));
    write_text_file(dir / "category_prf.md", render_markdown(prf));

    const auto params = effective_config(c);
    nlohmann::ordered_json j;
    j["config"] = to_json(params);
    j["gold"] = {{"sentences", gold_rows.size()}, {"rejected", grep.rejected.size()}};
    auto& arr = j["results"] = nlohmann::ordered_json::array();
    for (const auto& r : results) arr.push_back(to_json(r));
    std::vector<std::vector<std::string>> ann;
    for (const auto& g : gold_rows) {
      if (!g.annotator_labels.empty()) ann.push_back(g.annotator_labels);
    }
    if (ann.empty()) {
      j["fleiss_kappa"] = "skipped: the gold file carries no per-annotator labels";
    } else {
      j["fleiss_kappa"] = to_json(fleiss_kappa(ann));
    }
    write_text_file(dir / "results.json", j.dump(2) + "\n");
    write_text_file(dir / "effective-config.ini", config_text("evaluate", params));

    std::cout << render_markdown(dom);
  }
};

struct NeighborsCmd {
  std::string embeddings, term;
  std::size_t vocab_limit = 0;
  std::size_t k = 10;
  double min_sim = -1.0;

  void add(CLI::App& app) {
    auto* c = app.add_subcommand("neighbors", "Print the nearest vocabulary terms of a term");
    c->add_option("--embeddings", embeddings, "GloVe-format vectors")->required();
    c->add_option("--vocab-limit", vocab_limit, "Read at most N vectors (0 = all)")->capture_default_str();
    c->add_option("--term", term, "Query term")->required();
    c->add_option("--k", k)->capture_default_str()->check(CLI::PositiveNumber);
    c->add_option("--min-sim", min_sim)->capture_default_str()->check(CLI::Range(-1.0, 1.0));
    c->callback([this] { run(); });
  }

  void run() {
    const auto space = load_space(embeddings, vocab_limit);
    for (const auto& n : nearest(*space, NearestQuery::of_term(text::to_lower(term)), k, min_sim)) {
      std::cout << n.term << ' ' << text::format_score(n.similarity) << '\n';
    }
  }
};

struct ConvertGoldCmd {
  std::string input, out;

  void add(CLI::App& app) {
    auto* c = app.add_subcommand("convert-gold", "Convert a CSV/TSV gold export to the normalized TSV");
    c->add_option("--input", input, "Export with a header row")->required();
    c->add_option("--out", out, "Normalized gold TSV")->required();
    c->callback([this] { run(); });
  }

  void run() {
    std::ifstream in(input);
    if (!in) throw IoError("cannot open '" + input + "'");
    GoldConversionReport rep;
    const auto gold = convert_gold(in, &rep);
    for (const auto& r : rep.rejected) {
      log::warn("gold row rejected", {{"line", r.line}, {"id", r.id}, {"reason", r.reason}});
    }
    auto os = open_out(out);
    write_gold(gold, os);
    if (!os) throw IoError("write failed for '" + out + "'");
    std::size_t with_annotators = 0;
    for (const auto& g : gold) with_annotators += g.annotator_labels.empty() ? 0 : 1;
    std::cout << "converted " << gold.size() << " of " << rep.rows << " rows (" << rep.rejected.size()
              << " rejected, " << with_annotators << " with annotator labels)\n";
    std::cout << "columns: " << text::join(rep.column_roles, ", ") << '\n';
  }
};

struct ConvertKbCmd {
  std::string wordnet, conceptnet, language = "en", senses_out, edges_out;

  void add(CLI::App& app) {
    auto* c = app.add_subcommand("convert-kb", "Convert WordNet and/or ConceptNet dumps to JSONL");
    c->add_option("--wordnet", wordnet, "WordNet dict directory (index.* and data.*)");
    c->add_option("--conceptnet", conceptnet, "ConceptNet assertions CSV");
    c->add_option("--language", language, "ConceptNet language code")->capture_default_str();
    c->add_option("--senses-out", senses_out, "senses.jsonl")->required();
    c->add_option("--edges-out", edges_out, "edges.jsonl")->required();
    c->callback([this] { run(); });
  }

  void run() {
    if (wordnet.empty() && conceptnet.empty()) throw ConfigError("give --wordnet and/or --conceptnet");
    kbconvert::Conversion all;
    if (!wordnet.empty()) all = kbconvert::convert_wordnet(wordnet);
    if (!conceptnet.empty()) {
      std::ifstream in(conceptnet);
      if (!in) throw IoError("cannot open '" + conceptnet + "'");
      auto cn = kbconvert::convert_conceptnet(in, language);
      all.edges.insert(all.edges.end(), cn.edges.begin(), cn.edges.end());
      all.skipped_lines += cn.skipped_lines;
      std::sort(all.edges.begin(), all.edges.end(), [](const RelationEdge& a, const RelationEdge& b) {
        return std::tie(a.source, a.relation, a.target, b.weight) < std::tie(b.source, b.relation, b.target, a.weight);
      });
      all.edges.erase(std::unique(all.edges.begin(), all.edges.end(),
                                  [](const RelationEdge& a, const RelationEdge& b) {
                                    return a.source == b.source && a.relation == b.relation && a.target == b.target;
                                  }),
                      all.edges.end());
    }
    auto s = open_out(senses_out);
    write_senses_jsonl(all.senses, s);
    auto e = open_out(edges_out);
    write_edges_jsonl(all.edges, e);
    if (!s || !e) throw IoError("write failed");
    std::cout << "wrote " << all.senses.size() << " senses and " << all.edges.size() << " edges ("
              << all.skipped_lines << " source lines skipped)\n";
  }
};

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Affective lexicon expansion and sentence scoring", "affexp"};
  app.require_subcommand(1);
  // subcommands inherit this: global options may follow the subcommand name
  app.fallthrough();
  app.allow_config_extras(false);
  app.set_config("--config", "", "Read options from a config file (command-line flags override it)");
  Common common;
  app.add_option("--log-level", common.log_level, "debug, info, warn, error or off")
      ->capture_default_str()
      ->check(CLI::IsMember({"debug", "info", "warn", "error", "off"}));
  app.add_option("--jobs", common.jobs, "Worker threads (default: logical cores)")->check(CLI::NonNegativeNumber);
  app.parse_complete_callback([&] {
    log::set_level(*log::parse_level(common.log_level));
    if (common.jobs > 0) set_worker_count(common.jobs);
  });

  EnrichCmd enrich_cmd;
  DisambiguateCmd disambiguate_cmd;
  ExpandCmd expand_cmd;
  ScoreCmd score_cmd;
  EvaluateCmd evaluate_cmd;
  NeighborsCmd neighbors_cmd;
  ConvertGoldCmd convert_gold_cmd;
  ConvertKbCmd convert_kb_cmd;
  enrich_cmd.add(app);
  disambiguate_cmd.add(app);
  expand_cmd.add(app);
  score_cmd.add(app);
  evaluate_cmd.add(app);
  neighbors_cmd.add(app);
  convert_gold_cmd.add(app);
  convert_kb_cmd.add(app);

  // human output of the subcommands goes through std::cout; point it at `out`
  auto* old_buf = std::cout.rdbuf(out.rdbuf());
  struct Restore {
    std::streambuf* buf;
    ~Restore() { std::cout.rdbuf(buf); }
  } restore{old_buf};

  try {
    app.parse(argc, argv);
    return 0;
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::FileError& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    const CLI::App* sub = nullptr;
    for (const auto* s : app.get_subcommands()) sub = s;
    err << (sub != nullptr ? sub->help() : app.help());
    return 1;
  } catch (const IoError& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::filesystem::filesystem_error& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  }
}

int run(int argc, const char* const* argv) { return run(argc, argv, std::cout, std::cerr); }

}  // namespace affexp::cli
