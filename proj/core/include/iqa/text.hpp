#pragma once

#include <set>
#include <string>
#include <string_view>
#include <vector>

// Small string utilities shared by the KG label index and the linkers.
namespace iqa::text {

std::string to_lower(std::string_view s);

// Padded character 3-grams of the lowercased input. Two start markers and
// two end markers are added, so "ab" yields {"^^a", "^ab", "ab$", "b$$"}
// (with non-printable markers in place of '^' and '$').
std::set<std::string> trigrams(std::string_view s);

// Text after the last '/', '#' or ':' with '_' turned into spaces and
// lowerCamel boundaries split ("programmingLanguage" -> "programming
// language", "Mac_OS" -> "Mac OS").
std::string prettify_local_name(std::string_view id);

struct Token {
  std::string text;  // original casing, surrounding punctuation stripped
  std::size_t begin = 0;
  std::size_t end = 0;  // one past the last byte, offsets into the source
};

// Whitespace tokenizer that trims sentence punctuation from both ends of
// every token but keeps inner symbols ("C++", "Mac_OS").
std::vector<Token> tokenize(std::string_view s);

// Lowercase word list with camelCase split and non-alphanumerics treated as
// separators. Used for word-overlap scoring.
std::vector<std::string> words(std::string_view s);

}  // namespace iqa::text
