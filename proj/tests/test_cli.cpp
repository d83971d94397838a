#include <algorithm>
#include <cstdlib>
#include <sstream>
#include <string>
#include <vector>

#include <sys/wait.h>

#include "affexp/cli.hpp"
#include "affexp/core_model.hpp"
#include "affexp/evaluation.hpp"
#include "doctest.h"
#include "support.hpp"

namespace {

const std::filesystem::path kDemo = std::filesystem::path(AFFEXP_REPO_DATA) / "demo";

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  args.insert(args.begin(), "affexp");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = affexp::cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string demo(const char* name) { return (kDemo / name).string(); }

std::size_t count_lines(const std::string& s) {
  return static_cast<std::size_t>(std::count(s.begin(), s.end(), '\n'));
}

}  // namespace

TEST_CASE("neighbors prints k lines") {
  const auto r = run({"neighbors", "--embeddings", demo("vectors.txt"), "--term", "happy", "--k", "5"});
  REQUIRE(r.code == 0);
  CHECK(count_lines(r.out) == 5);
  CHECK(r.out.find("happy ") == std::string::npos);
}

TEST_CASE("exit codes") {
  SUBCASE("missing model is an I/O error naming the path") {
    const auto r = run({"score", "--model", "/nonexistent/model.lex", "--input", demo("gold.conllu"), "--out",
                        "/tmp/unused.jsonl"});
    CHECK(r.code == 2);
    CHECK(r.err.find("/nonexistent/model.lex") != std::string::npos);
  }
  SUBCASE("unknown flag is a usage error") {
    CHECK(run({"neighbors", "--embeddings", demo("vectors.txt"), "--term", "x", "--bogus"}).code == 1);
  }
  SUBCASE("no subcommand") { CHECK(run({}).code == 1); }
  SUBCASE("help") { CHECK(run({"--help"}).code == 0); }
  SUBCASE("reasoning without embeddings or a provider") {
    testsupport::TempDir dir;
    const auto r = run({"evaluate", "--model", demo("seed.lex"), "--gold", demo("gold.tsv"), "--configs", "+AR",
                        "--out", (dir / "eval").string()});
    CHECK(r.code == 1);
  }
}

TEST_CASE("config file keys are validated") {
  testsupport::TempDir dir;
  testsupport::write_file(dir / "ok.ini", "[neighbors]\nk=3\n");
  testsupport::write_file(dir / "bad.ini", "[neighbors]\nkay=3\n");
  const auto ok = run({"neighbors", "--config", (dir / "ok.ini").string(), "--embeddings", demo("vectors.txt"),
                       "--term", "sad"});
  CHECK(ok.code == 0);
  CHECK(count_lines(ok.out) == 3);
  CHECK(run({"neighbors", "--config", (dir / "bad.ini").string(), "--embeddings", demo("vectors.txt"), "--term",
             "sad"})
            .code == 1);
}

TEST_CASE("enrich, expand, score and evaluate on the demo data") {
  testsupport::TempDir dir;
  const auto enriched = (dir / "enriched.lex").string();
  const auto expanded = (dir / "expanded.lex").string();
  REQUIRE(run({"enrich", "--model", demo("seed.lex"), "--kb-edges", demo("kb_edges.jsonl"), "--out", enriched}).code ==
          0);
  const auto en = affexp::load_model(enriched);
  CHECK(en.find("glad", "") != nullptr);
  CHECK(en.find("unhappy", "")->scores.value_or_zero("introspection") < 0);

  const auto ex = run({"expand", "--model", enriched, "--kb-senses", demo("kb_senses.jsonl"), "--kb-edges",
                       demo("kb_edges.jsonl"), "--embeddings", demo("vectors.txt"), "--out", expanded, "--report",
                       (dir / "report.json").string()});
  REQUIRE(ex.code == 0);
  const auto model = affexp::load_model(expanded);
  CHECK(model.entries().size() > en.entries().size());
  const auto seed = affexp::load_model(demo("seed.lex"));
  for (const auto& e : seed.entries()) CHECK(model.find(e.surface, "") != nullptr);

  const auto sc = run({"score", "--model", expanded, "--input", demo("gold.conllu"), "--grammar", "--out",
                       (dir / "scores.jsonl").string()});
  REQUIRE(sc.code == 0);
  const auto scores = testsupport::read_file(dir / "scores.jsonl");
  CHECK(count_lines(scores) == 9);  // header plus eight sentences

  const auto ev = run({"evaluate", "--model", expanded, "--gold", demo("gold.tsv"), "--conllu", demo("gold.conllu"),
                       "--embeddings", demo("vectors.txt"), "--kb-edges", demo("kb_edges.jsonl"), "--out",
                       (dir / "eval").string()});
  REQUIRE(ev.code == 0);
  for (const char* f : {"dominant_recall.csv", "dominant_recall.md", "category_prf.csv", "category_prf.md",
                        "results.json", "effective-config.ini"})
    CHECK(std::filesystem::exists(dir / "eval" / f));
  const auto csv = testsupport::read_file(dir / "eval" / "dominant_recall.csv");
  CHECK(count_lines(csv) == 10);
  CHECK(csv.rfind("pole,plain,+AR,+AR+L,+GR,+AR+GR,+AR+L+GR\n", 0) == 0);
  CHECK(ev.out.find("| pole |") != std::string::npos);
  const auto results = nlohmann::json::parse(testsupport::read_file(dir / "eval" / "results.json"));
  CHECK(results.contains("fleiss_kappa"));
}

TEST_CASE("convert-gold writes the normalized file") {
  testsupport::TempDir dir;
  testsupport::write_file(dir / "in.csv", "id,text,joy,anger,dominant\n1,Yay,1,0,joy\n2,Grr,0,yes,anger\n");
  const auto r = run({"convert-gold", "--input", (dir / "in.csv").string(), "--out", (dir / "gold.tsv").string()});
  REQUIRE(r.code == 0);
  const auto gold = affexp::load_gold(dir / "gold.tsv");
  REQUIRE(gold.size() == 2);
  CHECK(*gold[1].dominant == "T-");
}

TEST_CASE("the installed binary reports the same exit codes") {
  const std::string bin = AFFEXP_BINARY;
  auto status = [](const std::string& cmd) {
    const int s = std::system((cmd + " >/dev/null 2>&1").c_str());
    return WIFEXITED(s) ? WEXITSTATUS(s) : -1;
  };
  CHECK(status(bin + " --help") == 0);
  CHECK(status(bin + " neighbors --term x") == 1);
  CHECK(status(bin + " neighbors --term x --embeddings /nonexistent/v.txt") == 2);
}
