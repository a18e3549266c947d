#include "ucl/text.hpp"

#include <cctype>
#include <fstream>
#include <sstream>

namespace ucl::text {

std::vector<Line> split_lines(std::string_view input) {
  std::vector<Line> out;
  std::size_t number = 0;
  std::size_t pos = 0;
  Line pending;
  bool continuing = false;
  while (pos <= input.size()) {
    std::size_t end = input.find('\n', pos);
    if (end == std::string_view::npos) end = input.size();
    std::string_view raw = input.substr(pos, end - pos);
    ++number;
    pos = end + 1;
    if (!raw.empty() && raw.back() == '\r') raw.remove_suffix(1);
    if (auto hash = raw.find('#'); hash != std::string_view::npos) raw = raw.substr(0, hash);
    while (!raw.empty() && std::isspace(static_cast<unsigned char>(raw.back()))) raw.remove_suffix(1);
    bool more = !raw.empty() && raw.back() == '\\';
    if (more) raw.remove_suffix(1);
    if (!continuing) {
      pending = Line{number, std::string(raw)};
    } else {
      pending.text += ' ';
      pending.text += raw;
    }
    continuing = more;
    if (!continuing) {
      bool blank = true;
      for (char c : pending.text) {
        if (!std::isspace(static_cast<unsigned char>(c))) blank = false;
      }
      if (!blank) out.push_back(pending);
    }
    if (end == input.size()) break;
  }
  if (continuing) {
    throw SyntaxError({pending.number, 1}, "line continuation at end of input");
  }
  return out;
}

std::vector<Token> tokenize(const Line& line) {
  std::vector<Token> out;
  const std::string& s = line.text;
  std::size_t i = 0;
  auto at = [&](std::size_t col) { return SourcePos{line.number, col + 1}; };
  while (i < s.size()) {
    if (std::isspace(static_cast<unsigned char>(s[i]))) {
      ++i;
      continue;
    }
    Token t;
    t.pos = at(i);
    if (s[i] == '{') {
      t.kind = Token::Kind::Group;
      std::size_t close = s.find('}', i);
      if (close == std::string::npos) throw SyntaxError(at(i), "unterminated '{'");
      std::istringstream members(s.substr(i + 1, close - i - 1));
      std::string m;
      while (members >> m) {
        if (m.find('{') != std::string::npos) throw SyntaxError(at(i), "nested '{'");
        t.group.push_back(m);
      }
      i = close + 1;
    } else if (s[i] == '}') {
      throw SyntaxError(at(i), "unexpected '}'");
    } else {
      std::size_t j = i;
      while (j < s.size() && !std::isspace(static_cast<unsigned char>(s[j])) && s[j] != '{' && s[j] != '}') ++j;
      t.word = s.substr(i, j - i);
      if (t.word == "*") t.kind = Token::Kind::Star;
      i = j;
    }
    out.push_back(std::move(t));
  }
  return out;
}

std::string rest_after_words(const Line& line, std::size_t skip_words, std::size_t& column) {
  const std::string& s = line.text;
  std::size_t i = 0;
  for (std::size_t w = 0; w < skip_words; ++w) {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    while (i < s.size() && !std::isspace(static_cast<unsigned char>(s[i]))) ++i;
  }
  while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
  column = i + 1;
  std::string r = s.substr(i);
  while (!r.empty() && std::isspace(static_cast<unsigned char>(r.back()))) r.pop_back();
  return r;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read '" + path + "'");
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void write_file(const std::string& path, std::string_view content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write '" + path + "'");
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  if (!out) throw IoError("short write to '" + path + "'");
}

}  // namespace ucl::text
