#include "affexp/text.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>

namespace affexp::text {

namespace {
bool is_space(char c) { return std::isspace(static_cast<unsigned char>(c)) != 0; }

bool is_word_byte(char c) {
  const auto u = static_cast<unsigned char>(c);
  return u >= 0x80 || std::isalnum(u) != 0;
}

bool ends_with(std::string_view s, std::string_view suffix) {
  return s.size() > suffix.size() && s.substr(s.size() - suffix.size()) == suffix;
}
}  // namespace

std::string to_lower(std::string_view s) {
  std::string out(s);
  for (char& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && is_space(s.front())) s.remove_prefix(1);
  while (!s.empty() && is_space(s.back())) s.remove_suffix(1);
  return s;
}

std::vector<std::string> split(std::string_view s, char delim) {
  std::vector<std::string> out;
  std::size_t start = 0;
  for (;;) {
    const auto pos = s.find(delim, start);
    if (pos == std::string_view::npos) {
      out.emplace_back(s.substr(start));
      return out;
    }
    out.emplace_back(s.substr(start, pos - start));
    start = pos + 1;
  }
}

std::vector<std::string> split_whitespace(std::string_view s) {
  std::vector<std::string> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && is_space(s[i])) ++i;
    const std::size_t start = i;
    while (i < s.size() && !is_space(s[i])) ++i;
    if (i > start) out.emplace_back(s.substr(start, i - start));
  }
  return out;
}

std::string normalize_surface(std::string_view s) {
  return join(split_whitespace(to_lower(s)), " ");
}

std::vector<std::string> tokenize(std::string_view sentence) {
  const std::string lower = to_lower(sentence);
  std::vector<std::string> raw;
  std::string current;
  for (std::size_t i = 0; i < lower.size(); ++i) {
    const char c = lower[i];
    if (is_word_byte(c)) {
      current.push_back(c);
      continue;
    }
    const bool inner = (c == '\'' || c == '-') && !current.empty() && i + 1 < lower.size() &&
                       is_word_byte(lower[i + 1]);
    if (inner) {
      current.push_back(c);
      continue;
    }
    if (!current.empty()) raw.push_back(std::move(current));
    current.clear();
  }
  if (!current.empty()) raw.push_back(std::move(current));

  std::vector<std::string> tokens;
  tokens.reserve(raw.size());
  for (auto& tok : raw) {
    if (ends_with(tok, "n't")) {
      tokens.push_back(tok.substr(0, tok.size() - 3));
      tokens.emplace_back("n't");
    } else if (ends_with(tok, "'s")) {
      tokens.push_back(tok.substr(0, tok.size() - 2));
      tokens.emplace_back("'s");
    } else {
      tokens.push_back(std::move(tok));
    }
  }
  return tokens;
}

bool is_wordlike(std::string_view term) {
  if (term.empty()) return false;
  for (std::size_t i = 0; i < term.size(); ++i) {
    const auto u = static_cast<unsigned char>(term[i]);
    if (std::isalpha(u) != 0) continue;
    const bool inner = i > 0 && i + 1 < term.size();
    if (inner && (term[i] == '-' || term[i] == '\'' || term[i] == ' ')) continue;
    return false;
  }
  return true;
}

std::string join(const std::vector<std::string>& parts, std::string_view sep) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i > 0) out.append(sep);
    out.append(parts[i]);
  }
  return out;
}

double quantize_score(double value) {
  const double q = std::round(value * 1e6) / 1e6;
  return q == 0.0 ? 0.0 : q;
}

std::string format_score(double value) {
  double q = quantize_score(value);
  if (q == 0.0) q = 0.0;  // folds -0.0
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", q);
  return buf;
}

}  // namespace affexp::text
