#pragma once

// Brute-force reference implementations written directly from the textbook
// formulas. They share no code with the library and favor clarity over speed.

#include <algorithm>
#include <cmath>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace oracle {

inline double cosine(const std::vector<double>& a, const std::vector<double>& b) {
  double dot = 0, na = 0, nb = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    dot += a[i] * b[i];
    na += a[i] * a[i];
    nb += b[i] * b[i];
  }
  if (na == 0 || nb == 0) return 0.0;
  return dot / (std::sqrt(na) * std::sqrt(nb));
}

struct Ranked {
  std::string term;
  double sim;
};

// Full scan, full sort, then cut.
inline std::vector<Ranked> knn(const std::vector<std::pair<std::string, std::vector<double>>>& vocab,
                               const std::vector<double>& query, const std::optional<std::string>& exclude,
                               std::size_t k, double min_sim) {
  std::vector<Ranked> all;
  for (const auto& [t, v] : vocab) {
    if (exclude && t == *exclude) continue;
    bool zero = true;
    for (double x : v) zero = zero && x == 0.0;
    if (zero) continue;
    const double s = cosine(query, v);
    if (s >= min_sim) all.push_back({t, s});
  }
  std::sort(all.begin(), all.end(), [](const Ranked& a, const Ranked& b) {
    if (a.sim != b.sim) return a.sim > b.sim;
    return a.term < b.term;
  });
  if (all.size() > k) all.resize(k);
  return all;
}

// Proximity lookup and antonym-aware averaging, plain means:
//   pt  = k nearest lexicon members of the query (not the query itself)
//   ant = members of pt that are antonyms of the query term
//   sim = pt minus ant
//   s   = avg(avg_similar, -avg_antonyms), or the single available side
struct ReasoningOut {
  std::vector<double> scores;
  bool no_evidence = false;
};

inline ReasoningOut proximity_reasoning(const std::vector<std::pair<std::string, std::vector<double>>>& vocab,
                                        const std::map<std::string, std::vector<double>>& lexicon,
                                        const std::set<std::pair<std::string, std::string>>& antonym_pairs,
                                        const std::vector<double>& query, const std::optional<std::string>& query_term,
                                        std::size_t categories, std::size_t k, double min_sim) {
  std::vector<std::pair<std::string, std::vector<double>>> members;
  for (const auto& [t, v] : vocab) {
    if (lexicon.count(t) != 0) members.emplace_back(t, v);
  }
  const auto pt = knn(members, query, query_term, k, min_sim);
  std::vector<std::string> sim, ant;
  for (const auto& r : pt) {
    const bool is_ant = query_term && (antonym_pairs.count({*query_term, r.term}) != 0 ||
                                       antonym_pairs.count({r.term, *query_term}) != 0);
    (is_ant ? ant : sim).push_back(r.term);
  }
  auto avg = [&](const std::vector<std::string>& terms, std::size_t c) {
    double total = 0;
    for (const auto& t : terms) total += lexicon.at(t)[c];
    return total / static_cast<double>(terms.size());
  };
  ReasoningOut out;
  out.scores.assign(categories, 0.0);
  if (sim.empty() && ant.empty()) {
    out.no_evidence = true;
    return out;
  }
  for (std::size_t c = 0; c < categories; ++c) {
    double s;
    if (ant.empty()) {
      s = avg(sim, c);
    } else if (sim.empty()) {
      s = -avg(ant, c);
    } else {
      s = (avg(sim, c) + -avg(ant, c)) / 2.0;
    }
    out.scores[c] = std::clamp(s, -1.0, 1.0);
  }
  return out;
}

// Fleiss' kappa from the definition, with agreement counted over ordered
// pairs of distinct annotators.
struct Kappa {
  std::optional<double> value;
};

inline Kappa fleiss(const std::vector<std::vector<std::string>>& items) {
  std::set<std::string> classes;
  for (const auto& row : items)
    for (const auto& l : row) classes.insert(l);
  const double N = static_cast<double>(items.size());
  const double n = static_cast<double>(items.front().size());
  double p_bar = 0;
  for (const auto& row : items) {
    double agree = 0;
    for (std::size_t a = 0; a < row.size(); ++a)
      for (std::size_t b = 0; b < row.size(); ++b)
        if (a != b && row[a] == row[b]) agree += 1;
    p_bar += agree / (n * (n - 1));
  }
  p_bar /= N;
  double pe = 0;
  for (const auto& c : classes) {
    double cnt = 0;
    for (const auto& row : items)
      for (const auto& l : row) cnt += (l == c) ? 1 : 0;
    const double p = cnt / (N * n);
    pe += p * p;
  }
  if (std::abs(1 - pe) < 1e-12) return {};
  return {(p_bar - pe) / (1 - pe)};
}

}  // namespace oracle
