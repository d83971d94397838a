#include "affexp/dependency_tree.hpp"

#include <charconv>
#include <fstream>
#include <istream>
#include <sstream>

#include "affexp/error.hpp"
#include "affexp/text.hpp"

namespace affexp {

DependencyTree::DependencyTree(std::string id, std::vector<DepToken> tokens, std::string text)
    : id_(std::move(id)), text_(std::move(text)), tokens_(std::move(tokens)), children_(tokens_.size()) {
  for (std::size_t i = 0; i < tokens_.size(); ++i) {
    const auto& head = tokens_[i].head;
    if (!head) {
      if (root_) throw ValidationError("sentence '" + id_ + "' has more than one root");
      root_ = i;
      continue;
    }
    if (*head >= tokens_.size() || *head == i) {
      throw ValidationError("sentence '" + id_ + "': token " + std::to_string(i + 1) + " has an invalid head");
    }
    children_[*head].push_back(i);
  }
  if (!tokens_.empty() && !root_) throw ValidationError("sentence '" + id_ + "' has no root");
  // Every token must reach the root within size() steps.
  for (std::size_t i = 0; i < tokens_.size(); ++i) {
    std::size_t cur = i;
    std::size_t steps = 0;
    while (tokens_[cur].head) {
      cur = *tokens_[cur].head;
      if (++steps > tokens_.size()) throw ValidationError("sentence '" + id_ + "' contains a cycle");
    }
  }
}

namespace {

bool parse_index(std::string_view s, std::size_t& out) {
  const auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc() && p == s.data() + s.size();
}

struct Block {
  std::size_t first_line = 0;
  std::optional<std::string> sent_id;
  std::string text;
  std::vector<std::pair<std::size_t, std::string>> rows;  // (line number, content)
};

void finish_block(Block& b, std::size_t ordinal, ConlluDocument& doc) {
  const std::string id = b.sent_id.value_or("s" + std::to_string(ordinal));
  std::vector<DepToken> tokens;
  try {
    for (const auto& [line_no, row] : b.rows) {
      const auto cols = text::split(row, '\t');
      if (cols.size() != 10) {
        throw ValidationError("line " + std::to_string(line_no) + ": expected 10 columns, found " +
                              std::to_string(cols.size()));
      }
      if (cols[0].find_first_of("-.") != std::string::npos) continue;  // ranges and empty nodes
      std::size_t idx = 0;
      if (!parse_index(cols[0], idx) || idx != tokens.size() + 1) {
        throw ValidationError("line " + std::to_string(line_no) + ": unexpected token id '" + cols[0] + "'");
      }
      std::size_t head = 0;
      if (!parse_index(cols[6], head)) {
        throw ValidationError("line " + std::to_string(line_no) + ": malformed head '" + cols[6] + "'");
      }
      DepToken t;
      t.form = cols[1];
      t.lemma = cols[2] == "_" ? text::to_lower(cols[1]) : cols[2];
      t.upos = cols[3] == "_" ? "" : cols[3];
      if (head > 0) t.head = head - 1;
      t.deprel = cols[7] == "_" ? "" : cols[7];
      tokens.push_back(std::move(t));
    }
    for (const auto& t : tokens) {
      if (t.head && *t.head >= tokens.size()) throw ValidationError("head index out of range");
    }
    if (!tokens.empty()) doc.trees.emplace_back(id, std::move(tokens), b.text);
  } catch (const ValidationError& e) {
    doc.rejected.push_back({id, b.first_line, e.what()});
  }
}

}  // namespace

ConlluDocument parse_conllu(std::istream& in) {
  ConlluDocument doc;
  Block block;
  std::size_t ordinal = 0;
  std::size_t line_no = 0;
  std::string line;
  auto flush = [&] {
    if (!block.rows.empty()) finish_block(block, ++ordinal, doc);
    block = Block{};
  };
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (text::trim(line).empty()) {
      flush();
      continue;
    }
    if (block.first_line == 0) block.first_line = line_no;
    if (line.front() == '#') {
      const auto body = text::trim(std::string_view(line).substr(1));
      const auto eq = body.find('=');
      if (eq != std::string_view::npos) {
        const auto key = text::trim(body.substr(0, eq));
        const auto value = std::string(text::trim(body.substr(eq + 1)));
        if (key == "sent_id") block.sent_id = value;
        if (key == "text") block.text = value;
      }
      continue;
    }
    block.rows.emplace_back(line_no, line);
  }
  flush();
  return doc;
}

ConlluDocument parse_conllu(std::string_view text) {
  std::istringstream in{std::string(text)};
  return parse_conllu(in);
}

ConlluDocument load_conllu(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open CoNLL-U file '" + path.string() + "'");
  return parse_conllu(in);
}

DependencyTree flat_tree(std::string id, std::string_view sentence) {
  std::vector<DepToken> tokens;
  for (auto& w : text::tokenize(sentence)) {
    DepToken t;
    t.form = w;
    t.lemma = std::move(w);
    if (!tokens.empty()) {
      t.head = 0;
      t.deprel = "dep";
    } else {
      t.deprel = "root";
    }
    tokens.push_back(std::move(t));
  }
  return DependencyTree(std::move(id), std::move(tokens), std::string(sentence));
}

std::vector<DependencyTree> read_plain_text(std::istream& in) {
  std::vector<DependencyTree> out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (text::trim(line).empty()) continue;
    auto tree = flat_tree(std::to_string(line_no), line);
    if (!tree.empty()) out.push_back(std::move(tree));
  }
  return out;
}

}  // namespace affexp
