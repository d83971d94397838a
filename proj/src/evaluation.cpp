#include "affexp/evaluation.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <istream>
#include <ostream>
#include <set>
#include <sstream>
#include <unordered_map>

#include "affexp/error.hpp"
#include "affexp/log.hpp"
#include "affexp/text.hpp"

namespace affexp {

const std::array<std::string, 8>& gold_pole_labels() {
  static const std::array<std::string, 8> labels{"A+", "A-", "I+", "I-", "S+", "S-", "T+", "T-"};
  return labels;
}

const std::array<std::string, 8>& report_pole_order() {
  static const std::array<std::string, 8> labels{"T+", "T-", "I+", "I-", "A+", "A-", "S+", "S-"};
  return labels;
}

bool is_pole_label(std::string_view label) {
  const auto& l = gold_pole_labels();
  return std::find(l.begin(), l.end(), label) != l.end();
}

namespace {

// Gold files sometimes carry a typographic minus.
std::string normalize_label(std::string_view raw) {
  std::string s(text::trim(raw));
  static const std::string kMinus = "\xE2\x88\x92";  // U+2212
  if (const auto p = s.find(kMinus); p != std::string::npos) s.replace(p, kMinus.size(), "-");
  return s;
}

std::optional<double> parse_number(std::string_view raw) {
  const auto s = normalize_label(raw);
  if (s.empty()) return 0.0;
  double v = 0.0;
  const char* b = s.data();
  const char* e = s.data() + s.size();
  if (*b == '+') ++b;
  const auto [p, ec] = std::from_chars(b, e, v);
  if (ec != std::errc() || p != e || !std::isfinite(v)) return std::nullopt;
  return v;
}

std::optional<std::string> parse_dominant(std::string_view raw, bool& ok) {
  const auto s = normalize_label(raw);
  ok = true;
  if (s.empty() || s == "None" || s == "none") return std::nullopt;
  if (is_pole_label(s)) return s;
  ok = false;
  return std::nullopt;
}

}  // namespace

// ---------------------------------------------------------------------------
// Gold TSV

std::vector<GoldSentence> read_gold(std::istream& in, GoldLoadReport* report) {
  GoldLoadReport local;
  GoldLoadReport& rep = report != nullptr ? *report : local;
  std::vector<GoldSentence> out;
  std::set<std::string> seen;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (text::trim(line).empty()) continue;
    const auto cols = text::split(line, '\t');
    if (line_no == 1 || out.empty()) {
      if (!cols.empty() && text::to_lower(text::trim(cols[0])) == "id") continue;
    }
    ++rep.data_rows;
    const std::string id = cols.empty() ? "" : std::string(text::trim(cols[0]));
    auto reject = [&](const std::string& reason) { rep.rejected.push_back({line_no, id, reason}); };
    if (cols.size() < 12) {
      reject("expected at least 12 columns, found " + std::to_string(cols.size()));
      continue;
    }
    if (id.empty()) {
      reject("empty id");
      continue;
    }
    if (seen.contains(id)) {
      reject("duplicate id");
      continue;
    }
    GoldSentence g;
    g.id = id;
    g.text = cols[1];
    bool ok = true;
    for (std::size_t p = 0; p < 8 && ok; ++p) {
      const auto v = parse_number(cols[2 + p]);
      if (!v || *v < -1.0 || *v > 1.0) {
        reject("invalid value for pole " + gold_pole_labels()[p] + ": '" + cols[2 + p] + "'");
        ok = false;
        break;
      }
      g.poles[gold_pole_labels()[p]] = *v;
    }
    if (!ok) continue;
    bool dom_ok = true;
    g.dominant = parse_dominant(cols[10], dom_ok);
    if (!dom_ok) {
      reject("unknown pole label '" + cols[10] + "'");
      continue;
    }
    const auto pol = parse_number(cols[11]);
    if (!pol || *pol < -1.0 || *pol > 1.0) {
      reject("invalid polarity '" + cols[11] + "'");
      continue;
    }
    g.polarity = *pol;
    for (std::size_t a = 12; a < cols.size() && ok; ++a) {
      bool label_ok = true;
      const auto label = parse_dominant(cols[a], label_ok);
      if (!label_ok) {
        reject("unknown annotator label '" + cols[a] + "'");
        ok = false;
        break;
      }
      g.annotator_labels.push_back(label.value_or("None"));
    }
    if (!ok) continue;
    if (g.annotator_labels.size() == 1) {
      reject("a single annotator label; at least two are required");
      continue;
    }
    seen.insert(id);
    out.push_back(std::move(g));
  }
  for (const auto& r : rep.rejected) log::warn("gold row rejected", {{"line", r.line}, {"id", r.id}, {"reason", r.reason}});
  return out;
}

std::vector<GoldSentence> load_gold(const std::filesystem::path& path, GoldLoadReport* report) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open gold file '" + path.string() + "'");
  return read_gold(in, report);
}

void write_gold(const std::vector<GoldSentence>& gold, std::ostream& out) {
  out << "id\ttext";
  for (const auto& p : gold_pole_labels()) out << '\t' << p;
  out << "\tdominant\tpolarity\n";
  for (const auto& g : gold) {
    std::string txt = g.text;
    std::replace(txt.begin(), txt.end(), '\t', ' ');
    std::replace(txt.begin(), txt.end(), '\n', ' ');
    out << g.id << '\t' << txt;
    for (const auto& p : gold_pole_labels()) {
      const auto it = g.poles.find(p);
      out << '\t' << text::format_score(it == g.poles.end() ? 0.0 : it->second);
    }
    out << '\t' << g.dominant.value_or("None") << '\t' << text::format_score(g.polarity);
    for (const auto& a : g.annotator_labels) out << '\t' << a;
    out << '\n';
  }
}

// ---------------------------------------------------------------------------
// Gold conversion

std::optional<std::string> normalize_pole_name(std::string_view name) {
  const auto label = normalize_label(name);
  if (is_pole_label(label)) return label;
  auto key = text::to_lower(label);
  std::replace(key.begin(), key.end(), '-', '_');
  std::replace(key.begin(), key.end(), ' ', '_');
  static const std::unordered_map<std::string, std::string> kNames{
      {"joy", "I+"},          {"sadness", "I-"},        {"calmness", "T+"},       {"anger", "T-"},
      {"pleasantness", "A+"}, {"disgust", "A-"},        {"eagerness", "S+"},      {"fear", "S-"},
      {"introspection+", "I+"}, {"introspection_", "I-"}, {"temper+", "T+"},    {"temper_", "T-"},
      {"attitude+", "A+"},    {"attitude_", "A-"},      {"sensitivity+", "S+"},   {"sensitivity_", "S-"},
      {"a_plus", "A+"},       {"a_minus", "A-"},        {"i_plus", "I+"},         {"i_minus", "I-"},
      {"s_plus", "S+"},       {"s_minus", "S-"},        {"t_plus", "T+"},         {"t_minus", "T-"},
      {"none", "None"},       {"neutral", "None"},      {"no_emotion", "None"},
  };
  const auto it = kNames.find(key);
  if (it == kNames.end()) return std::nullopt;
  return it->second;
}

std::vector<std::string> split_delimited(std::string_view line, char delim) {
  std::vector<std::string> out;
  std::string cur;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < line.size() && line[i + 1] == '"') {
          cur.push_back('"');
          ++i;
        } else {
          quoted = false;
        }
      } else {
        cur.push_back(c);
      }
    } else if (c == '"' && cur.empty()) {
      quoted = true;
    } else if (c == delim) {
      out.push_back(std::move(cur));
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  out.push_back(std::move(cur));
  return out;
}

namespace {

enum class Role { ignore, id, text, pole, dominant, polarity, annotator, categories };

std::string role_name(Role r, const std::string& pole) {
  switch (r) {
    case Role::id: return "id";
    case Role::text: return "text";
    case Role::pole: return "pole:" + pole;
    case Role::dominant: return "dominant";
    case Role::polarity: return "polarity";
    case Role::annotator: return "annotator";
    case Role::categories: return "categories";
    case Role::ignore: break;
  }
  return "ignored";
}

// Cell of a pole column: numbers are strengths, marks mean presence.
std::optional<double> pole_value(std::string_view raw) {
  const auto s = text::to_lower(text::trim(raw));
  if (s.empty() || s == "0" || s == "no" || s == "n" || s == "false" || s == "-") return 0.0;
  if (s == "x" || s == "yes" || s == "y" || s == "true") return 1.0;
  const auto v = parse_number(s);
  if (!v) return std::nullopt;
  return std::abs(*v) > 1.0 ? std::nullopt : std::optional<double>(std::abs(*v));
}

}  // namespace

std::vector<GoldSentence> convert_gold(std::istream& in, GoldConversionReport* report) {
  GoldConversionReport local;
  GoldConversionReport& rep = report != nullptr ? *report : local;
  std::string header_line;
  while (std::getline(in, header_line) && text::trim(header_line).empty()) {
  }
  if (!header_line.empty() && header_line.back() == '\r') header_line.pop_back();
  if (text::trim(header_line).empty()) return {};
  const char delim = header_line.find('\t') != std::string::npos ? '\t' : ',';
  const auto header = split_delimited(header_line, delim);

  std::vector<Role> roles;
  std::vector<std::string> role_pole;
  for (const auto& h : header) {
    auto key = text::to_lower(text::trim(h));
    std::replace(key.begin(), key.end(), ' ', '_');
    std::replace(key.begin(), key.end(), '-', '_');
    std::string pole;
    Role r = Role::ignore;
    if (key == "id" || key == "sid" || key == "sentence_id" || key == "sent_id" || key == "uid") {
      r = Role::id;
    } else if (key == "text" || key == "sentence" || key == "content") {
      r = Role::text;
    } else if (key == "dominant" || key == "dominant_emotion" || key == "dominant_pole") {
      r = Role::dominant;
    } else if (key == "polarity" || key == "sentiment" || key == "overall_polarity") {
      r = Role::polarity;
    } else if (key == "categories" || key == "emotions" || key == "affective_categories") {
      r = Role::categories;
    } else if (key.rfind("annotator", 0) == 0 || key.rfind("ann_", 0) == 0 || key.rfind("rater", 0) == 0) {
      r = Role::annotator;
    } else if (const auto p = normalize_pole_name(h); p && *p != "None") {
      r = Role::pole;
      pole = *p;
    }
    roles.push_back(r);
    role_pole.push_back(pole);
    rep.column_roles.push_back(role_name(r, pole));
  }
  if (std::find(roles.begin(), roles.end(), Role::id) == roles.end()) {
    throw ParseError("gold export has no id column", 1);
  }

  std::vector<GoldSentence> out;
  std::set<std::string> seen;
  std::string line;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (text::trim(line).empty()) continue;
    ++rep.rows;
    const auto cells = split_delimited(line, delim);
    GoldSentence g;
    for (const auto& p : gold_pole_labels()) g.poles[p] = 0.0;
    std::string error;
    bool have_dominant = false;
    for (std::size_t c = 0; c < roles.size() && error.empty(); ++c) {
      const std::string cell = c < cells.size() ? std::string(text::trim(cells[c])) : "";
      switch (roles[c]) {
        case Role::id: g.id = cell; break;
        case Role::text: g.text = cell; break;
        case Role::pole: {
          const auto v = pole_value(cell);
          if (!v) error = "invalid value '" + cell + "' for " + role_pole[c];
          else g.poles[role_pole[c]] = std::max(g.poles[role_pole[c]], *v);
          break;
        }
        case Role::categories:
          for (auto part : text::split(cell, cell.find(';') != std::string::npos ? ';' : (cell.find('|') != std::string::npos ? '|' : ','))) {
            if (text::trim(part).empty()) continue;
            const auto p = normalize_pole_name(part);
            if (!p) {
              error = "unknown emotion '" + std::string(text::trim(part)) + "'";
              break;
            }
            if (*p != "None") g.poles[*p] = std::max(g.poles[*p], 1.0);
          }
          break;
        case Role::dominant: {
          const auto p = normalize_pole_name(cell.empty() ? "None" : cell);
          if (!p) error = "unknown pole label '" + cell + "'";
          else if (*p != "None") g.dominant = *p;
          have_dominant = true;
          break;
        }
        case Role::polarity: {
          const auto v = parse_number(cell);
          if (!v || *v < -1.0 || *v > 1.0) error = "invalid polarity '" + cell + "'";
          else g.polarity = *v;
          break;
        }
        case Role::annotator: {
          if (cell.empty()) break;  // annotator did not label this item
          const auto p = normalize_pole_name(cell);
          if (!p) error = "unknown annotator label '" + cell + "'";
          else g.annotator_labels.push_back(*p);
          break;
        }
        case Role::ignore: break;
      }
    }
    if (error.empty() && g.id.empty()) error = "empty id";
    if (error.empty() && seen.contains(g.id)) error = "duplicate id";
    if (error.empty() && !have_dominant) {
      // without a dominant column use the strongest pole, None when all zero
      double best = 0.0;
      for (const auto& p : report_pole_order()) {
        if (g.poles[p] > best) {
          best = g.poles[p];
          g.dominant = p;
        }
      }
    }
    if (error.empty() && g.annotator_labels.size() == 1) g.annotator_labels.clear();
    if (!error.empty()) {
      rep.rejected.push_back({line_no, g.id, error});
      continue;
    }
    seen.insert(g.id);
    out.push_back(std::move(g));
  }
  rep.converted = out.size();
  return out;
}

// ---------------------------------------------------------------------------
// Predictions

Prediction to_prediction(const SentenceScore& score, const std::map<std::string, std::string>& mapping,
                         double presence_epsilon, double neutral_epsilon) {
  Prediction p;
  p.id = score.id;
  std::vector<std::string> names;
  std::vector<double> values;
  for (std::size_t k = 0; k < score.categories.size(); ++k) {
    const auto& c = score.categories[k];
    std::string target = c;
    if (!mapping.empty()) {
      const auto it = mapping.find(c);
      if (it == mapping.end()) continue;
      target = it->second;
    }
    names.push_back(target);
    values.push_back(score.scores.value_or_zero(c));
  }
  for (std::size_t k = 0; k < names.size(); ++k) {
    if (std::abs(values[k]) >= presence_epsilon && values[k] != 0.0) {
      p.poles[pole_label(names[k], values[k] > 0.0)] = std::abs(values[k]);
    }
  }
  if (const auto d = dominant_index(values, neutral_epsilon)) p.dominant = pole_label(names[*d], values[*d] > 0.0);
  return p;
}

namespace {

std::map<std::string, const Prediction*> by_id(const std::vector<Prediction>& predictions) {
  std::map<std::string, const Prediction*> m;
  for (const auto& p : predictions) m.emplace(p.id, &p);
  return m;
}

}  // namespace

DominantRecall dominant_recall(const std::vector<Prediction>& predictions, const std::vector<GoldSentence>& gold) {
  DominantRecall r;
  for (const auto& p : gold_pole_labels()) r.per_pole[p] = {};
  const auto preds = by_id(predictions);
  for (const auto& g : gold) {
    const auto it = preds.find(g.id);
    if (it == preds.end()) {
      ++r.missing_predictions;
      log::debug("no prediction for gold sentence", {{"id", g.id}});
    }
    if (!g.dominant) continue;
    auto& pr = r.per_pole[*g.dominant];
    ++pr.gold;
    ++r.overall.gold;
    if (it != preds.end() && it->second->dominant == *g.dominant) {
      ++pr.hit;
      ++r.overall.hit;
    }
  }
  double sum = 0.0;
  std::size_t n = 0;
  for (const auto& [_, pr] : r.per_pole) {
    if (pr.gold == 0) continue;
    sum += pr.recall();
    ++n;
  }
  r.macro = n == 0 ? 0.0 : sum / static_cast<double>(n);
  if (r.missing_predictions > 0) log::warn("gold sentences without prediction", {{"count", r.missing_predictions}});
  return r;
}

double f1_score(double precision, double recall) {
  const double s = precision + recall;
  return s == 0.0 ? 0.0 : 2.0 * precision * recall / s;
}

Prf prf_from_counts(const Counts& c) {
  Prf p;
  p.precision = c.tp + c.fp == 0 ? 0.0 : static_cast<double>(c.tp) / static_cast<double>(c.tp + c.fp);
  p.recall = c.tp + c.fn == 0 ? 0.0 : static_cast<double>(c.tp) / static_cast<double>(c.tp + c.fn);
  p.f1 = f1_score(p.precision, p.recall);
  return p;
}

CategoryPrf category_prf(const std::vector<Prediction>& predictions, const std::vector<GoldSentence>& gold) {
  CategoryPrf r;
  for (const auto& p : gold_pole_labels()) r.counts[p] = {};
  const auto preds = by_id(predictions);
  for (const auto& g : gold) {
    const auto it = preds.find(g.id);
    if (it == preds.end()) ++r.missing_predictions;
    for (const auto& p : gold_pole_labels()) {
      const auto gv = g.poles.find(p);
      const bool in_gold = gv != g.poles.end() && gv->second > 0.0;
      const bool in_pred = it != preds.end() && it->second->poles.contains(p);
      auto& c = r.counts[p];
      if (in_gold && in_pred) ++c.tp;
      else if (in_pred) ++c.fp;
      else if (in_gold) ++c.fn;
    }
  }
  Counts total;
  for (const auto& [p, c] : r.counts) {
    r.per_pole[p] = prf_from_counts(c);
    total.tp += c.tp;
    total.fp += c.fp;
    total.fn += c.fn;
    r.macro.precision += r.per_pole[p].precision / 8.0;
    r.macro.recall += r.per_pole[p].recall / 8.0;
    r.macro.f1 += r.per_pole[p].f1 / 8.0;
  }
  r.overall = prf_from_counts(total);
  return r;
}

// ---------------------------------------------------------------------------
// Fleiss' kappa

namespace {

// counts[i][j]: annotators assigning class j to item i; n per item.
std::optional<double> kappa_from_counts(const std::vector<std::vector<std::size_t>>& counts, std::size_t n) {
  if (counts.empty() || n < 2) return std::nullopt;
  const std::size_t k = counts.front().size();
  const double N = static_cast<double>(counts.size());
  const double dn = static_cast<double>(n);
  double p_bar = 0.0;
  std::vector<double> col(k, 0.0);
  for (const auto& row : counts) {
    double sq = 0.0;
    for (std::size_t j = 0; j < k; ++j) {
      sq += static_cast<double>(row[j]) * static_cast<double>(row[j]);
      col[j] += static_cast<double>(row[j]);
    }
    p_bar += (sq - dn) / (dn * (dn - 1.0));
  }
  p_bar /= N;
  double pe = 0.0;
  for (double c : col) {
    const double pj = c / (N * dn);
    pe += pj * pj;
  }
  if (std::abs(1.0 - pe) < 1e-12) return std::nullopt;
  if (p_bar == 1.0) return 1.0;
  return (p_bar - pe) / (1.0 - pe);
}

}  // namespace

FleissKappa fleiss_kappa(const std::vector<std::vector<std::string>>& labels) {
  FleissKappa out;
  std::size_t n = 0;
  for (const auto& row : labels) n = std::max(n, row.size());
  out.annotators = n;
  std::vector<const std::vector<std::string>*> used;
  for (const auto& row : labels) {
    if (row.size() == n) used.push_back(&row);
    else ++out.items_excluded;
  }
  out.items_used = used.size();
  std::set<std::string> classes;
  for (const auto* row : used) classes.insert(row->begin(), row->end());
  std::vector<std::string> cls(classes.begin(), classes.end());

  std::vector<std::vector<std::size_t>> counts(used.size(), std::vector<std::size_t>(cls.size(), 0));
  for (std::size_t i = 0; i < used.size(); ++i) {
    for (const auto& l : *used[i]) {
      const auto j = static_cast<std::size_t>(std::lower_bound(cls.begin(), cls.end(), l) - cls.begin());
      ++counts[i][j];
    }
  }
  out.overall = kappa_from_counts(counts, n);
  for (std::size_t j = 0; j < cls.size(); ++j) {
    std::vector<std::vector<std::size_t>> bin(used.size(), std::vector<std::size_t>(2, 0));
    for (std::size_t i = 0; i < used.size(); ++i) {
      bin[i][0] = counts[i][j];
      bin[i][1] = n - counts[i][j];
    }
    out.per_class[cls[j]] = kappa_from_counts(bin, n);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Tables

std::string format_2dp(double value) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", value);
  std::string s(buf);
  if (s == "-0.00") s = "0.00";
  return s;
}

namespace {

Table make_table(const std::vector<ConfigResult>& results, bool with_macro,
                 const std::function<std::string(const ConfigResult&, const std::string&)>& cell) {
  Table t;
  t.header.push_back("pole");
  for (const auto& r : results) t.header.push_back(r.label);
  if (results.empty()) return t;
  std::vector<std::string> rows(report_pole_order().begin(), report_pole_order().end());
  rows.push_back("overall");
  if (with_macro) rows.push_back("macro");
  for (const auto& row : rows) {
    std::vector<std::string> line{row};
    for (const auto& r : results) line.push_back(cell(r, row));
    t.rows.push_back(std::move(line));
  }
  return t;
}

std::string prf_cell(const Prf& p) {
  return format_2dp(p.precision) + "/" + format_2dp(p.recall) + "/" + format_2dp(p.f1);
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += "\"\"";
    else out.push_back(c);
  }
  return out + "\"";
}

// Poles without an entry read as zero counts.
template <class V>
V entry_or_zero(const std::map<std::string, V>& m, const std::string& key) {
  const auto it = m.find(key);
  return it == m.end() ? V{} : it->second;
}

}  // namespace

Table dominant_recall_table(const std::vector<ConfigResult>& results, bool with_macro) {
  return make_table(results, with_macro, [](const ConfigResult& r, const std::string& row) {
    if (row == "overall") return format_2dp(r.dominant.overall.recall());
    if (row == "macro") return format_2dp(r.dominant.macro);
    return format_2dp(entry_or_zero(r.dominant.per_pole, row).recall());
  });
}

Table category_prf_table(const std::vector<ConfigResult>& results, bool with_macro) {
  return make_table(results, with_macro, [](const ConfigResult& r, const std::string& row) {
    if (row == "overall") return prf_cell(r.categories.overall);
    if (row == "macro") return prf_cell(r.categories.macro);
    return prf_cell(entry_or_zero(r.categories.per_pole, row));
  });
}

std::string render_csv(const Table& table) {
  std::ostringstream out;
  auto line = [&](const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) out << (i ? "," : "") << csv_field(cells[i]);
    out << '\n';
  };
  line(table.header);
  for (const auto& r : table.rows) line(r);
  return out.str();
}

std::string render_markdown(const Table& table) {
  std::ostringstream out;
  auto line = [&](const std::vector<std::string>& cells) {
    out << '|';
    for (const auto& c : cells) out << ' ' << c << " |";
    out << '\n';
  };
  line(table.header);
  out << '|';
  for (std::size_t i = 0; i < table.header.size(); ++i) out << (i == 0 ? " --- |" : " ---: |");
  out << '\n';
  for (const auto& r : table.rows) line(r);
  return out.str();
}

nlohmann::ordered_json to_json(const ConfigResult& result) {
  nlohmann::ordered_json j;
  j["label"] = result.label;
  auto& dom = j["dominant_recall"];
  for (const auto& p : report_pole_order()) {
    const auto pr = entry_or_zero(result.dominant.per_pole, p);
    dom["per_pole"][p] = {{"gold", pr.gold}, {"hit", pr.hit}, {"recall", pr.recall()}};
  }
  dom["overall"] = {{"gold", result.dominant.overall.gold},
                    {"hit", result.dominant.overall.hit},
                    {"recall", result.dominant.overall.recall()}};
  dom["macro"] = result.dominant.macro;
  dom["missing_predictions"] = result.dominant.missing_predictions;
  auto& cat = j["category_prf"];
  for (const auto& p : report_pole_order()) {
    const auto c = entry_or_zero(result.categories.counts, p);
    const auto v = entry_or_zero(result.categories.per_pole, p);
    cat["per_pole"][p] = {{"tp", c.tp},          {"fp", c.fp},         {"fn", c.fn},
                          {"precision", v.precision}, {"recall", v.recall}, {"f1", v.f1}};
  }
  const auto& o = result.categories.overall;
  const auto& m = result.categories.macro;
  cat["overall"] = {{"precision", o.precision}, {"recall", o.recall}, {"f1", o.f1}};
  cat["macro"] = {{"precision", m.precision}, {"recall", m.recall}, {"f1", m.f1}};
  return j;
}

nlohmann::ordered_json to_json(const FleissKappa& kappa) {
  nlohmann::ordered_json j;
  j["annotators"] = kappa.annotators;
  j["items_used"] = kappa.items_used;
  j["items_excluded"] = kappa.items_excluded;
  j["overall"] = kappa.overall ? nlohmann::ordered_json(*kappa.overall) : nlohmann::ordered_json("undefined");
  auto& per = j["per_class"] = nlohmann::ordered_json::object();
  for (const auto& [c, v] : kappa.per_class) per[c] = v ? nlohmann::ordered_json(*v) : nlohmann::ordered_json("undefined");
  return j;
}

}  // namespace affexp
