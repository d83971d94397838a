#include "affexp/error.hpp"

namespace affexp {

namespace {
std::string located(const std::string& what, std::size_t line, std::size_t column) {
  if (line == 0) return what;
  std::string out = "line " + std::to_string(line);
  if (column != 0) out += ", column " + std::to_string(column);
  return out + ": " + what;
}
}  // namespace

ParseError::ParseError(const std::string& what, std::size_t line, std::size_t column)
    : Error(located(what, line, column)), line_(line), column_(column) {}

OutOfVocabularyError::OutOfVocabularyError(const std::string& term)
    : Error("out-of-vocabulary term: '" + term + "'"), term_(term) {}

}  // namespace affexp
