#include "affexp/kb_convert.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <istream>
#include <map>
#include <tuple>

#include "affexp/error.hpp"
#include "affexp/log.hpp"
#include "affexp/text.hpp"
#include "json.hpp"

namespace affexp::kbconvert {

namespace {

// WordNet lemmas use underscores for spaces and may carry an adjective
// marker such as "(a)" or "(ip)".
std::string wn_lemma(std::string_view raw) {
  std::string s(raw);
  if (const auto p = s.find('('); p != std::string::npos && !s.empty() && s.back() == ')') s.erase(p);
  std::replace(s.begin(), s.end(), '_', ' ');
  return text::normalize_surface(s);
}

template <typename Int>
Int parse_int(std::string_view tok, int base, std::string_view what) {
  Int v{};
  const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v, base);
  if (ec != std::errc() || ptr != tok.data() + tok.size()) {
    throw ParseError("invalid " + std::string(what) + " '" + std::string(tok) + "'");
  }
  return v;
}

class Fields {
 public:
  explicit Fields(std::vector<std::string> f) : f_(std::move(f)) {}
  const std::string& next(std::string_view what) {
    if (i_ >= f_.size()) throw ParseError("truncated record: missing " + std::string(what));
    return f_[i_++];
  }

 private:
  std::vector<std::string> f_;
  std::size_t i_ = 0;
};

void split_gloss(std::string_view gloss, WndbSynset& out) {
  std::string definition;
  std::size_t i = 0;
  while (i < gloss.size()) {
    const auto q = gloss.find('"', i);
    if (q == std::string_view::npos) {
      definition += gloss.substr(i);
      break;
    }
    definition += gloss.substr(i, q - i);
    const auto end = gloss.find('"', q + 1);
    if (end == std::string_view::npos) {
      definition += gloss.substr(q);
      break;
    }
    out.examples.emplace_back(gloss.substr(q + 1, end - q - 1));
    i = end + 1;
  }
  std::string_view d = text::trim(definition);
  while (!d.empty() && (d.back() == ';' || d.back() == ' ')) d.remove_suffix(1);
  out.gloss = std::string(d);
}

char file_pos(char pos) { return pos == 's' ? 'a' : pos; }

}  // namespace

std::optional<WndbSynset> parse_wndb_data_line(std::string_view line) {
  if (line.empty() || line.front() == ' ') return std::nullopt;
  const auto bar = line.find(" | ");
  const auto head = line.substr(0, bar);
  Fields f(text::split_whitespace(head));

  WndbSynset s;
  s.offset = f.next("offset");
  f.next("lexicographer file");
  const auto& type = f.next("synset type");
  if (type.size() != 1) throw ParseError("invalid synset type '" + type + "'");
  s.pos = type[0];
  const auto w_cnt = parse_int<int>(f.next("word count"), 16, "word count");
  for (int w = 0; w < w_cnt; ++w) {
    s.words.push_back(wn_lemma(f.next("word")));
    f.next("lex id");
  }
  const auto p_cnt = parse_int<int>(f.next("pointer count"), 10, "pointer count");
  for (int p = 0; p < p_cnt; ++p) {
    WndbPointer ptr;
    ptr.symbol = f.next("pointer symbol");
    ptr.offset = f.next("pointer offset");
    const auto& pos = f.next("pointer pos");
    if (pos.size() != 1) throw ParseError("invalid pointer pos '" + pos + "'");
    ptr.pos = pos[0];
    const auto& st = f.next("source/target");
    if (st.size() != 4) throw ParseError("invalid source/target '" + st + "'");
    ptr.source_word = parse_int<int>(std::string_view(st).substr(0, 2), 16, "source word");
    ptr.target_word = parse_int<int>(std::string_view(st).substr(2, 2), 16, "target word");
    s.pointers.push_back(std::move(ptr));
  }
  if (bar != std::string_view::npos) split_gloss(line.substr(bar + 3), s);
  return s;
}

std::optional<WndbIndexEntry> parse_wndb_index_line(std::string_view line) {
  if (line.empty() || line.front() == ' ') return std::nullopt;
  Fields f(text::split_whitespace(line));
  WndbIndexEntry e;
  e.lemma = wn_lemma(f.next("lemma"));
  const auto& pos = f.next("pos");
  if (pos.size() != 1) throw ParseError("invalid pos '" + pos + "'");
  e.pos = pos[0];
  const auto synset_cnt = parse_int<int>(f.next("synset count"), 10, "synset count");
  const auto p_cnt = parse_int<int>(f.next("pointer count"), 10, "pointer count");
  for (int p = 0; p < p_cnt; ++p) f.next("pointer symbol");
  f.next("sense count");
  f.next("tagged sense count");
  for (int i = 0; i < synset_cnt; ++i) e.offsets.push_back(f.next("synset offset"));
  return e;
}

namespace {

void finalize(Conversion& c) {
  std::sort(c.senses.begin(), c.senses.end(),
            [](const Sense& a, const Sense& b) { return a.sense_id < b.sense_id; });
  auto key = [](const RelationEdge& e) { return std::tie(e.source, e.relation, e.target); };
  std::sort(c.edges.begin(), c.edges.end(), [&](const RelationEdge& a, const RelationEdge& b) {
    if (key(a) != key(b)) return key(a) < key(b);
    return a.weight > b.weight;
  });
  c.edges.erase(std::unique(c.edges.begin(), c.edges.end(),
                            [&](const RelationEdge& a, const RelationEdge& b) { return key(a) == key(b); }),
                c.edges.end());
}

std::string two_digits(std::size_t n) { return n < 10 ? "0" + std::to_string(n) : std::to_string(n); }

}  // namespace

Conversion convert_wordnet(const std::filesystem::path& dict_dir) {
  static const std::pair<const char*, char> kParts[] = {{"noun", 'n'}, {"verb", 'v'}, {"adj", 'a'}, {"adv", 'r'}};
  Conversion out;
  std::map<std::pair<char, std::string>, WndbSynset> synsets;  // (file pos, offset)
  std::vector<WndbIndexEntry> index;
  bool any = false;

  for (const auto& [name, pos] : kParts) {
    const auto data_path = dict_dir / (std::string("data.") + name);
    const auto index_path = dict_dir / (std::string("index.") + name);
    std::ifstream data(data_path);
    std::ifstream idx(index_path);
    if (!data || !idx) continue;
    any = true;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(data, line)) {
      ++line_no;
      try {
        if (auto s = parse_wndb_data_line(line)) synsets.emplace(std::make_pair(pos, s->offset), std::move(*s));
      } catch (const ParseError& e) {
        throw ParseError(data_path.string() + ": " + e.what(), line_no);
      }
    }
    line_no = 0;
    while (std::getline(idx, line)) {
      ++line_no;
      try {
        if (auto e = parse_wndb_index_line(line)) index.push_back(std::move(*e));
      } catch (const ParseError& e) {
        throw ParseError(index_path.string() + ": " + e.what(), line_no);
      }
    }
  }
  if (!any) throw IoError("no WordNet index/data pair found in '" + dict_dir.string() + "'");

  for (const auto& e : index) {
    for (std::size_t n = 0; n < e.offsets.size(); ++n) {
      const auto it = synsets.find({file_pos(e.pos), e.offsets[n]});
      if (it == synsets.end()) {
        ++out.skipped_lines;
        continue;
      }
      Sense s;
      s.lemma = e.lemma;
      s.sense_id = e.lemma + "." + std::string(1, e.pos) + "." + two_digits(n + 1);
      std::replace(s.sense_id.begin(), s.sense_id.end(), ' ', '_');
      s.gloss = it->second.gloss;
      s.examples = it->second.examples;
      out.senses.push_back(std::move(s));
    }
  }

  for (const auto& [key, s] : synsets) {
    for (std::size_t a = 0; a < s.words.size(); ++a) {
      for (std::size_t b = a + 1; b < s.words.size(); ++b) {
        if (s.words[a] != s.words[b]) out.edges.push_back({s.words[a], Relation::synonym, s.words[b], 1.0});
      }
    }
    for (const auto& p : s.pointers) {
      Relation rel;
      if (p.symbol == "!") {
        rel = Relation::antonym;
      } else if (p.symbol == "&" || p.symbol == "^") {
        rel = Relation::related;
      } else {
        continue;
      }
      const auto target = synsets.find({file_pos(p.pos), p.offset});
      if (target == synsets.end()) continue;
      const auto& tw = target->second.words;
      auto pick = [](const std::vector<std::string>& words, int n) {
        if (n == 0) return words;
        if (n < 1 || static_cast<std::size_t>(n) > words.size()) return std::vector<std::string>{};
        return std::vector<std::string>{words[static_cast<std::size_t>(n - 1)]};
      };
      for (const auto& src : pick(s.words, p.source_word)) {
        for (const auto& dst : pick(tw, p.target_word)) {
          if (src != dst) out.edges.push_back({src, rel, dst, 1.0});
        }
      }
    }
  }
  finalize(out);
  log::info("converted WordNet", {{"senses", out.senses.size()}, {"edges", out.edges.size()}});
  return out;
}

Conversion convert_conceptnet(std::istream& in, std::string_view language) {
  Conversion out;
  const std::string prefix = "/c/" + std::string(language) + "/";
  auto concept_term = [&](std::string_view uri) -> std::optional<std::string> {
    if (uri.substr(0, prefix.size()) != prefix) return std::nullopt;
    auto rest = uri.substr(prefix.size());
    rest = rest.substr(0, rest.find('/'));
    std::string t(rest);
    std::replace(t.begin(), t.end(), '_', ' ');
    t = text::normalize_surface(t);
    if (t.empty()) return std::nullopt;
    return t;
  };

  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (text::trim(line).empty()) continue;
    const auto cols = text::split(line, '\t');
    if (cols.size() < 4) {
      log::debug("conceptnet line skipped", {{"line", line_no}, {"reason", "fewer than 4 columns"}});
      ++out.skipped_lines;
      continue;
    }
    std::optional<Relation> rel;
    if (cols[1] == "/r/Synonym") rel = Relation::synonym;
    else if (cols[1] == "/r/Antonym") rel = Relation::antonym;
    else if (cols[1] == "/r/RelatedTo" || cols[1] == "/r/SimilarTo") rel = Relation::related;
    const auto start = concept_term(cols[2]);
    const auto end = concept_term(cols[3]);
    if (!rel || !start || !end || *start == *end) {
      ++out.skipped_lines;
      continue;
    }
    double weight = 1.0;
    if (cols.size() > 4 && !cols[4].empty()) {
      try {
        const auto info = nlohmann::json::parse(cols[4]);
        if (info.is_object() && info.contains("weight")) weight = info.at("weight").get<double>();
      } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("invalid JSON info: ") + e.what(), line_no, 5);
      }
    }
    if (!(weight >= 0.0)) weight = 0.0;
    out.edges.push_back({*start, *rel, *end, weight});
  }
  finalize(out);
  return out;
}

}  // namespace affexp::kbconvert
