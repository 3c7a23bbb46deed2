#pragma once

#include <charconv>
#include <cstdint>
#include <istream>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <rfm/error.hpp>

namespace rfm::detail {

struct Token {
  std::string text;
  int column = 1;
};

struct Line {
  int number = 0;
  std::vector<Token> tokens;

  [[noreturn]] void fail(std::size_t token_index, const std::string& message) const {
    const int column = token_index < tokens.size()
                           ? tokens[token_index].column
                           : (tokens.empty() ? 1 : tokens.back().column +
                                                       static_cast<int>(tokens.back().text.size()));
    throw ParseError(number, column, message);
  }

  const Token& at(std::size_t i, const char* what) const {
    if (i >= tokens.size()) fail(i, std::string("expected ") + what);
    return tokens[i];
  }

  void expect_size(std::size_t n) const {
    if (tokens.size() > n) fail(n, "unexpected token '" + tokens[n].text + "'");
    if (tokens.size() < n) fail(tokens.size(), "missing operand");
  }
};

/// Splits text into non-empty lines of whitespace-separated tokens.
/// '#' starts a comment that runs to the end of the line.
inline std::vector<Line> tokenize(std::string_view text) {
  std::vector<Line> lines;
  int number = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t end = std::min(text.find('\n', pos), text.size());
    std::string_view raw = text.substr(pos, end - pos);
    ++number;
    if (const auto hash = raw.find('#'); hash != std::string_view::npos) raw = raw.substr(0, hash);
    Line line{number, {}};
    std::size_t i = 0;
    while (i < raw.size()) {
      while (i < raw.size() && (raw[i] == ' ' || raw[i] == '\t' || raw[i] == '\r')) ++i;
      if (i >= raw.size()) break;
      const std::size_t start = i;
      while (i < raw.size() && raw[i] != ' ' && raw[i] != '\t' && raw[i] != '\r') ++i;
      line.tokens.push_back({std::string(raw.substr(start, i - start)), static_cast<int>(start) + 1});
    }
    if (!line.tokens.empty()) lines.push_back(std::move(line));
    if (end == text.size()) break;
    pos = end + 1;
  }
  return lines;
}

template <typename Int>
std::optional<Int> to_int(std::string_view s) {
  Int value{};
  const auto* first = s.data();
  const auto* last = s.data() + s.size();
  if (!s.empty() && s.front() == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc{} || ptr != last || first == last) return std::nullopt;
  return value;
}

template <typename Int>
Int parse_int(const Line& line, std::size_t i, const char* what) {
  const auto& tok = line.at(i, what);
  auto v = to_int<Int>(tok.text);
  if (!v) line.fail(i, std::string("expected ") + what + ", got '" + tok.text + "'");
  return *v;
}

inline std::string read_all(std::istream& in) {
  return std::string(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
}

}  // namespace rfm::detail
