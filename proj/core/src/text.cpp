#include "iqa/text.hpp"

#include <cctype>

namespace iqa::text {

namespace {

constexpr char kStart = '\x02';
constexpr char kEnd = '\x03';

bool is_trim_char(char c) {
  switch (c) {
    case '.':
    case ',':
    case '?':
    case '!':
    case ';':
    case ':':
    case '"':
    case '\'':
    case '(':
    case ')':
    case '[':
    case ']':
      return true;
    default:
      return false;
  }
}

bool is_lower(char c) { return std::islower(static_cast<unsigned char>(c)); }
bool is_upper(char c) { return std::isupper(static_cast<unsigned char>(c)); }

}  // namespace

std::string to_lower(std::string_view s) {
  std::string out(s);
  for (auto& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

std::set<std::string> trigrams(std::string_view s) {
  std::string padded;
  padded.reserve(s.size() + 4);
  padded += kStart;
  padded += kStart;
  padded += to_lower(s);
  padded += kEnd;
  padded += kEnd;
  std::set<std::string> grams;
  for (std::size_t i = 0; i + 3 <= padded.size(); ++i) {
    grams.insert(padded.substr(i, 3));
  }
  return grams;
}

std::string prettify_local_name(std::string_view id) {
  auto cut = id.find_last_of("/#:");
  std::string_view local = cut == std::string_view::npos ? id : id.substr(cut + 1);
  if (local.empty()) local = id;

  std::string out;
  out.reserve(local.size() + 4);
  for (std::size_t i = 0; i < local.size(); ++i) {
    char c = local[i];
    if (c == '_') {
      out += ' ';
      continue;
    }
    bool camel_break = i > 0 && is_lower(local[i - 1]) && is_upper(c) &&
                       i + 1 < local.size() && is_lower(local[i + 1]);
    if (camel_break) {
      out += ' ';
      out += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    } else {
      out += c;
    }
  }
  return out;
}

std::vector<Token> tokenize(std::string_view s) {
  std::vector<Token> tokens;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    std::size_t begin = i;
    while (i < s.size() && !std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    std::size_t end = i;
    while (begin < end && is_trim_char(s[begin])) ++begin;
    while (end > begin && is_trim_char(s[end - 1])) --end;
    if (begin < end) {
      tokens.push_back({std::string(s.substr(begin, end - begin)), begin, end});
    }
  }
  return tokens;
}

std::vector<std::string> words(std::string_view s) {
  std::vector<std::string> out;
  std::string current;
  auto flush = [&] {
    if (!current.empty()) out.push_back(to_lower(current));
    current.clear();
  };
  for (std::size_t i = 0; i < s.size(); ++i) {
    char c = s[i];
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '+') {
      flush();
      continue;
    }
    if (i > 0 && is_lower(s[i - 1]) && is_upper(c)) flush();
    current += c;
  }
  flush();
  return out;
}

}  // namespace iqa::text
