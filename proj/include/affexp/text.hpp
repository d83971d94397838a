#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace affexp::text {

std::string to_lower(std::string_view s);

std::string_view trim(std::string_view s);

/// Splits on a single character; keeps empty fields.
std::vector<std::string> split(std::string_view s, char delim);

/// Splits on runs of ASCII whitespace; drops empty tokens.
std::vector<std::string> split_whitespace(std::string_view s);

/// Lowercases and joins whitespace-separated tokens with a single space.
std::string normalize_surface(std::string_view s);

/// Word tokenizer for example and corpus sentences: lowercases, splits on
/// whitespace and punctuation, keeps intra-word apostrophes and hyphens and
/// splits the clitic "n't" off its host ("don't" -> "do", "n't").
std::vector<std::string> tokenize(std::string_view sentence);

/// True when every byte is an ASCII letter, or an inner hyphen/apostrophe/space.
bool is_wordlike(std::string_view term);

std::string join(const std::vector<std::string>& parts, std::string_view sep);

/// Fixed six-decimal rendering used by every persisted score; never emits "-0.000000".
std::string format_score(double value);

/// Rounds to the persisted precision (1e-6).
double quantize_score(double value);

}  // namespace affexp::text
