#pragma once

#include <atomic>
#include <filesystem>
#include <fstream>
#include <memory>
#include <random>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <unistd.h>

#include "affexp/core_model.hpp"
#include "affexp/dependency_tree.hpp"
#include "affexp/embedding_store.hpp"

namespace testsupport {

// Scratch directory removed on destruction.
class TempDir {
 public:
  TempDir() {
    static std::atomic<int> counter{0};
    path_ = std::filesystem::temp_directory_path() /
            ("affexp-test-" + std::to_string(::getpid()) + "-" + std::to_string(counter++));
    std::filesystem::remove_all(path_);
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  const std::filesystem::path& path() const { return path_; }
  std::filesystem::path operator/(const std::string& name) const { return path_ / name; }

 private:
  std::filesystem::path path_;
};

inline void write_file(const std::filesystem::path& p, const std::string& content) {
  std::ofstream out(p, std::ios::binary);
  out << content;
}

inline std::string read_file(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

using Vocab = std::vector<std::pair<std::string, std::vector<double>>>;

inline std::shared_ptr<const affexp::EmbeddingSpace> make_space(const Vocab& vocab) {
  std::vector<std::string> terms;
  std::vector<float> data;
  const std::size_t dim = vocab.empty() ? 1 : vocab.front().second.size();
  for (const auto& [t, v] : vocab) {
    terms.push_back(t);
    for (double x : v) data.push_back(static_cast<float>(x));
  }
  return std::make_shared<const affexp::EmbeddingSpace>(std::move(terms), std::move(data), dim);
}

inline std::string glove_text(const Vocab& vocab) {
  std::ostringstream out;
  out.precision(9);
  for (const auto& [t, v] : vocab) {
    out << t;
    for (double x : v) out << ' ' << x;
    out << '\n';
  }
  return out.str();
}

// Random float-representable vocabulary ("w0", "w1", ...).
inline Vocab random_vocab(std::mt19937_64& rng, std::size_t n, std::size_t dim) {
  std::uniform_real_distribution<float> u(-1.0f, 1.0f);
  Vocab v;
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<double> x(dim);
    for (auto& e : x) e = static_cast<double>(u(rng));
    v.emplace_back("w" + std::to_string(i), std::move(x));
  }
  return v;
}

inline affexp::LexiconEntry entry(const std::string& surface, affexp::CategoryScores scores,
                                  affexp::Origin origin = affexp::Origin::seed, std::string sense = {}) {
  return {surface, std::move(sense), std::move(scores), {origin, 0}};
}

// Token spec for hand-built trees: head -1 marks the root.
struct Tok {
  std::string form;
  int head;
  std::string deprel;
  std::string upos = "ADJ";
  std::string lemma = {};
};

inline affexp::DependencyTree tree(const std::vector<Tok>& toks, std::string id = "t") {
  std::vector<affexp::DepToken> out;
  std::string text;
  for (const auto& t : toks) {
    affexp::DepToken d;
    d.form = t.form;
    d.lemma = t.lemma.empty() ? t.form : t.lemma;
    d.upos = t.upos;
    if (t.head >= 0) d.head = static_cast<std::size_t>(t.head);
    d.deprel = t.deprel;
    out.push_back(std::move(d));
    if (!text.empty()) text += ' ';
    text += t.form;
  }
  return affexp::DependencyTree(std::move(id), std::move(out), std::move(text));
}

}  // namespace testsupport
