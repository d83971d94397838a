#include <algorithm>
#include <random>
#include <sstream>

#include "affexp/error.hpp"
#include "affexp/evaluation.hpp"
#include "doctest.h"
#include "oracles.hpp"

using namespace affexp;

namespace {

std::vector<GoldSentence> gold_from(const std::string& s, GoldLoadReport* rep = nullptr) {
  std::istringstream in(s);
  return read_gold(in, rep);
}

GoldSentence g(std::string id, std::optional<std::string> dom, std::map<std::string, double> poles = {}) {
  GoldSentence s;
  s.id = std::move(id);
  s.dominant = std::move(dom);
  for (const auto& p : gold_pole_labels()) s.poles[p] = 0.0;
  for (const auto& [k, v] : poles) s.poles[k] = v;
  return s;
}

Prediction pred(std::string id, std::string dom, std::map<std::string, double> poles = {}) {
  return {std::move(id), std::move(dom), std::move(poles)};
}

const std::string kRow = "s1\tHe was furious.\t0\t0\t0\t0\t0\t0\t0\t1\tT-\t-0.8\n";

}  // namespace

TEST_CASE("gold TSV") {
  SUBCASE("header is optional") {
    CHECK(gold_from(kRow).size() == 1);
    CHECK(gold_from("id\ttext\tA+\tA-\tI+\tI-\tS+\tS-\tT+\tT-\tdominant\tpolarity\n" + kRow).size() == 1);
  }
  SUBCASE("None class with all-zero poles") {
    const auto gs = gold_from("s2\tIt rained.\t0\t0\t0\t0\t0\t0\t0\t0\tNone\t0\n");
    REQUIRE(gs.size() == 1);
    CHECK_FALSE(gs[0].dominant.has_value());
  }
  SUBCASE("unknown dominant label is rejected with the id") {
    GoldLoadReport rep;
    const auto gs = gold_from("s3\tx\t0\t0\t0\t0\t0\t0\t0\t0\tX9\t0\n" + kRow, &rep);
    CHECK(gs.size() == 1);
    REQUIRE(rep.rejected.size() == 1);
    CHECK(rep.rejected[0].id == "s3");
    CHECK(rep.data_rows == 2);
  }
  SUBCASE("typographic minus") {
    const auto gs = gold_from("s4\tx\t0\t0\t0\t0\t0\t0\t0\t1\tT\xE2\x88\x92\t\xE2\x88\x92" "0.5\n");
    REQUIRE(gs.size() == 1);
    CHECK(*gs[0].dominant == "T-");
    CHECK(gs[0].polarity == -0.5);
  }
  SUBCASE("annotator labels") {
    const auto gs = gold_from("s5\tx\t0\t0\t1\t0\t0\t0\t0\t0\tI+\t0.5\tI+\tI+\tNone\n");
    REQUIRE(gs.size() == 1);
    CHECK(gs[0].annotator_labels == std::vector<std::string>{"I+", "I+", "None"});
    GoldLoadReport rep;
    CHECK(gold_from("s6\tx\t0\t0\t1\t0\t0\t0\t0\t0\tI+\t0.5\tI+\n", &rep).empty());
    CHECK(rep.rejected.size() == 1);
  }
  SUBCASE("write/read round trip") {
    const auto gs = gold_from("s5\tx\t0\t0\t1\t0\t0\t0\t0\t0.5\tI+\t0.5\tI+\tA-\n" + kRow);
    std::ostringstream out;
    write_gold(gs, out);
    CHECK(gold_from(out.str()) == gs);
  }
  SUBCASE("missing file") { CHECK_THROWS_AS(load_gold("/nonexistent/gold.tsv"), IoError); }
}

TEST_CASE("convert-gold adapter: named emotion columns and annotators") {
  std::istringstream in(
      "Sentence ID,Sentence,joy,sadness,anger,fear,Dominant Emotion,Polarity,annotator_1,annotator_2,annotator_3\n"
      "1,\"Great, a win\",1,0,0,0,joy,0.9,joy,joy,joy\n"
      "2,Boring day,0,0,0,0,none,0,none,none,sadness\n"
      "3,Broken,0,0,0,0,happiness,0,,,\n");
  GoldConversionReport rep;
  const auto gs = convert_gold(in, &rep);
  CHECK(rep.rows == 3);
  REQUIRE(gs.size() == 2);
  CHECK(gs[0].text == "Great, a win");
  CHECK(*gs[0].dominant == "I+");
  CHECK(gs[0].poles.at("I+") == 1.0);
  CHECK(gs[1].annotator_labels == std::vector<std::string>{"None", "None", "I-"});
  REQUIRE(rep.rejected.size() == 1);
  CHECK(rep.rejected[0].id == "3");
  CHECK(rep.column_roles[2] == "pole:I+");
}

TEST_CASE("convert-gold adapter: emotion list column, dominant derived") {
  std::istringstream in("id\ttext\temotions\n"
                        "a\tx\tanger; fear\n"
                        "b\ty\t\n");
  const auto gs = convert_gold(in);
  REQUIRE(gs.size() == 2);
  CHECK(gs[0].poles.at("T-") == 1.0);
  CHECK(gs[0].poles.at("S-") == 1.0);
  CHECK(*gs[0].dominant == "T-");  // report order breaks the tie
  CHECK_FALSE(gs[1].dominant.has_value());
}

TEST_CASE("dominant recall") {
  SUBCASE("identity gives 1 everywhere") {
    std::vector<GoldSentence> gold{g("a", "I+"), g("b", "T-"), g("c", std::nullopt)};
    std::vector<Prediction> p{pred("a", "I+"), pred("b", "T-"), pred("c", "None")};
    const auto r = dominant_recall(p, gold);
    CHECK(r.overall.recall() == 1.0);
    CHECK(r.per_pole.at("I+").recall() == 1.0);
    CHECK(r.overall.gold == 2);  // None-class sentences are not counted
    CHECK(r.macro == 1.0);
  }
  SUBCASE("7 of 10") {
    std::vector<GoldSentence> gold;
    std::vector<Prediction> p;
    for (int i = 0; i < 10; ++i) {
      gold.push_back(g(std::to_string(i), "I+"));
      p.push_back(pred(std::to_string(i), i < 7 ? "I+" : "I-"));
    }
    CHECK(dominant_recall(p, gold).per_pole.at("I+").recall() == doctest::Approx(0.7));
  }
  SUBCASE("missing predictions count as misses; extra predictions are ignored") {
    const auto r = dominant_recall({pred("a", "I+"), pred("zzz", "T+")}, {g("a", "I+"), g("b", "I+")});
    CHECK(r.missing_predictions == 1);
    CHECK(r.overall.recall() == 0.5);
  }
}

TEST_CASE("property: dominant recall is invariant under sentence order") {
  std::mt19937_64 rng(3);
  const auto& labels = gold_pole_labels();
  for (int t = 0; t < 50; ++t) {
    std::vector<GoldSentence> gold;
    std::vector<Prediction> p;
    for (int i = 0; i < 40; ++i) {
      gold.push_back(g(std::to_string(i), labels[rng() % 8]));
      p.push_back(pred(std::to_string(i), labels[rng() % 8]));
    }
    const auto a = dominant_recall(p, gold);
    std::shuffle(gold.begin(), gold.end(), rng);
    std::shuffle(p.begin(), p.end(), rng);
    const auto b = dominant_recall(p, gold);
    CHECK(a.overall.hit == b.overall.hit);
    CHECK(a.macro == b.macro);
  }
}

TEST_CASE("F1 anchor: P=0.58, R=0.50 -> 0.54") {
  const auto prf = prf_from_counts({29, 21, 29});
  CHECK(prf.precision == doctest::Approx(0.58));
  CHECK(prf.recall == doctest::Approx(0.50));
  CHECK(format_2dp(prf.f1) == "0.54");
  CHECK(format_2dp(f1_score(0.58, 0.50)) == "0.54");
}

TEST_CASE("F1 identities") {
  CHECK(f1_score(0.3, 0.3) == doctest::Approx(0.3));
  CHECK(prf_from_counts({0, 5, 5}).f1 == 0.0);
  CHECK(f1_score(0, 0) == 0.0);
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(0, 1);
  for (int i = 0; i < 1000; ++i) {
    const double p = u(rng), r = u(rng);
    const double f = f1_score(p, r);
    CHECK(std::abs(f - 1.0 / ((1.0 / p + 1.0 / r) / 2.0)) <= 1e-12);
    CHECK(f <= std::max(p, r) + 1e-15);
    CHECK(f >= std::min(p, r) - 1e-15);
  }
}

TEST_CASE("category precision/recall") {
  std::vector<GoldSentence> gold{g("a", "I+", {{"I+", 1}, {"T-", 0.5}}), g("b", std::nullopt)};
  std::vector<Prediction> p{pred("a", "I+", {{"I+", 0.4}, {"A+", 0.2}}), pred("b", "None", {{"S-", 0.3}})};
  const auto r = category_prf(p, gold);
  CHECK(r.counts.at("I+").tp == 1);
  CHECK(r.counts.at("T-").fn == 1);
  CHECK(r.counts.at("A+").fp == 1);
  CHECK(r.counts.at("S-").fp == 1);
  CHECK(r.overall.precision == doctest::Approx(1.0 / 3));
  CHECK(r.overall.recall == doctest::Approx(0.5));
}

TEST_CASE("prediction conversion with mapping and presence threshold") {
  SentenceScore s;
  s.id = "x";
  s.categories = {"temper", "introspection"};
  s.scores.set("temper", -0.3);
  s.scores.set("introspection", 0.05);
  const auto p = to_prediction(s, {}, 0.1, 0.05);
  CHECK(p.dominant == "T-");
  CHECK(p.poles.size() == 1);
  CHECK(p.poles.count("T-") == 1);
  const auto mapped = to_prediction(s, {{"temper", "attention"}}, 0.1, 0.05);
  CHECK(mapped.dominant == "A-");
}

TEST_CASE("Fleiss kappa: worked examples") {
  SUBCASE("two items, two annotators") {
    const auto k = fleiss_kappa({{"A", "A"}, {"A", "B"}});
    REQUIRE(k.overall);
    CHECK(*k.overall == doctest::Approx(-1.0 / 3.0));
  }
  SUBCASE("unanimous items give exactly 1") {
    const auto k = fleiss_kappa({{"A", "A", "A"}, {"B", "B", "B"}, {"C", "C", "C"}});
    REQUIRE(k.overall);
    CHECK(*k.overall == 1.0);
  }
  SUBCASE("a single category everywhere is undefined") {
    CHECK_FALSE(fleiss_kappa({{"A", "A"}, {"A", "A"}}).overall.has_value());
  }
  SUBCASE("shorter rows are excluded and reported") {
    const auto k = fleiss_kappa({{"A", "A", "B"}, {"A", "B"}, {"B", "B", "B"}});
    CHECK(k.items_excluded == 1);
    CHECK(k.items_used == 2);
    CHECK(k.annotators == 3);
  }
}

TEST_CASE("property: Fleiss kappa matches the brute-force oracle") {
  std::mt19937_64 rng(77);
  const std::vector<std::string> classes{"A", "B", "C", "D"};
  for (int t = 0; t < 3000; ++t) {
    const std::size_t items = 1 + rng() % 6;
    const std::size_t raters = 2 + rng() % 4;
    const std::size_t ncls = 1 + rng() % 4;
    std::vector<std::vector<std::string>> m(items);
    for (auto& row : m)
      for (std::size_t a = 0; a < raters; ++a) row.push_back(classes[rng() % ncls]);
    const auto got = fleiss_kappa(m);
    const auto want = oracle::fleiss(m);
    REQUIRE(got.overall.has_value() == want.value.has_value());
    if (want.value) {
      CHECK(std::abs(*got.overall - *want.value) <= 1e-9);
      CHECK(*got.overall <= 1.0);
    }
    // per class: one-vs-rest
    for (const auto& [cls, kv] : got.per_class) {
      std::vector<std::vector<std::string>> bin = m;
      for (auto& row : bin)
        for (auto& l : row) l = (l == cls) ? "in" : "out";
      const auto w = oracle::fleiss(bin);
      REQUIRE(kv.has_value() == w.value.has_value());
      if (w.value) CHECK(std::abs(*kv - *w.value) <= 1e-9);
    }
  }
}

TEST_CASE("property: kappa is 1 exactly when every item is unanimous") {
  std::mt19937_64 rng(5);
  const std::vector<std::string> classes{"A", "B", "C"};
  for (int t = 0; t < 500; ++t) {
    std::vector<std::vector<std::string>> m(2 + rng() % 5);
    bool unanimous = true;
    for (auto& row : m) {
      const auto base = classes[rng() % 3];
      for (int a = 0; a < 3; ++a) row.push_back((rng() % 4 == 0) ? classes[rng() % 3] : base);
      unanimous = unanimous && std::all_of(row.begin(), row.end(), [&](const auto& l) { return l == row[0]; });
    }
    const auto k = fleiss_kappa(m);
    if (!k.overall) continue;
    CHECK((*k.overall == 1.0) == unanimous);
  }
}

TEST_CASE("report tables") {
  ConfigResult r;
  r.label = "plain";
  r.dominant.per_pole["I+"] = {10, 7};
  r.dominant.overall = {10, 7};
  SUBCASE("single config is 9 x 2") {
    const auto t = dominant_recall_table({r});
    CHECK(t.header.size() == 2);
    CHECK(t.rows.size() == 9);
    CHECK(t.rows[2][0] == "I+");
    CHECK(t.rows[2][1] == "0.70");
    CHECK(t.rows.back()[0] == "overall");
  }
  SUBCASE("six configs are 9 x 7") {
    std::vector<ConfigResult> six;
    for (const auto* l : {"plain", "+AR", "+AR+L", "+GR", "+AR+GR", "+AR+L+GR"}) {
      six.push_back(r);
      six.back().label = l;
    }
    const auto t = category_prf_table(six);
    CHECK(t.header.size() == 7);
    CHECK(t.rows.size() == 9);
    CHECK(t.header[6] == "+AR+L+GR");
    CHECK(t.rows[0][1] == "0.00/0.00/0.00");
  }
  SUBCASE("empty results give a header-only file") {
    const auto t = dominant_recall_table({});
    CHECK(t.rows.empty());
    CHECK(render_csv(t) == "pole\n");
  }
  SUBCASE("markdown rendering") {
    const auto md = render_markdown(dominant_recall_table({r}));
    CHECK(md.rfind("| pole | plain |\n|", 0) == 0);
  }
}
