#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace affexp {

struct DepToken {
  std::string form;
  std::string lemma;
  std::string upos;
  std::optional<std::size_t> head;  // 0-based parent, nullopt for the root
  std::string deprel;

  friend bool operator==(const DepToken&, const DepToken&) = default;
};

/// A dependency-parsed sentence. The constructor enforces a single root,
/// in-range heads and acyclicity (ValidationError otherwise).
class DependencyTree {
 public:
  DependencyTree() = default;
  DependencyTree(std::string id, std::vector<DepToken> tokens, std::string text = {});

  const std::string& id() const noexcept { return id_; }
  const std::string& text() const noexcept { return text_; }
  const std::vector<DepToken>& tokens() const noexcept { return tokens_; }
  const DepToken& token(std::size_t i) const { return tokens_.at(i); }
  std::size_t size() const noexcept { return tokens_.size(); }
  bool empty() const noexcept { return tokens_.empty(); }

  std::optional<std::size_t> root() const noexcept { return root_; }
  const std::vector<std::size_t>& children(std::size_t i) const { return children_.at(i); }

 private:
  std::string id_;
  std::string text_;
  std::vector<DepToken> tokens_;
  std::vector<std::vector<std::size_t>> children_;
  std::optional<std::size_t> root_;
};

struct ConlluRejection {
  std::string sentence_id;
  std::size_t line = 0;  // first line of the sentence block
  std::string reason;
};

struct ConlluDocument {
  std::vector<DependencyTree> trees;
  std::vector<ConlluRejection> rejected;
};

/// Reads 10-column CoNLL-U. Multiword-token ranges and empty nodes are
/// skipped; `# sent_id` becomes the tree id (else "s<ordinal>"), `# text`
/// the tree text. Malformed or invalid sentences are rejected by id and the
/// rest of the file is still read.
ConlluDocument parse_conllu(std::istream& in);
ConlluDocument parse_conllu(std::string_view text);
ConlluDocument load_conllu(const std::filesystem::path& path);

/// One sentence per non-empty line, word-tokenized, lemma = form, no
/// syntactic structure (every token attaches to the first). Ids are
/// 1-based line numbers.
std::vector<DependencyTree> read_plain_text(std::istream& in);

/// Builds a flat tree from a raw sentence (same rules as read_plain_text).
DependencyTree flat_tree(std::string id, std::string_view sentence);

}  // namespace affexp
