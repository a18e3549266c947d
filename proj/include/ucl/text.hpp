#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "ucl/error.hpp"

namespace ucl::text {

/// One logical line of a line-based input format, with comments removed
/// and backslash continuations joined.
struct Line {
  std::size_t number = 0;  // 1-based physical line where the logical line starts
  std::string text;
};

struct Token {
  enum class Kind { Word, Group, Star };
  Kind kind = Kind::Word;
  std::string word;                // Word
  std::vector<std::string> group;  // Group: members between braces
  SourcePos pos;
};

std::vector<Line> split_lines(std::string_view input);

/// Splits on whitespace; "{a b}" becomes one Group token, "*" a Star token.
std::vector<Token> tokenize(const Line& line);

/// Text following the first `skip_words` whitespace-separated words, trimmed.
/// `column` receives the 1-based column where the returned text starts.
std::string rest_after_words(const Line& line, std::size_t skip_words, std::size_t& column);

std::string read_file(const std::string& path);
void write_file(const std::string& path, std::string_view content);

}  // namespace ucl::text
