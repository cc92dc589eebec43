#include "rootbar/text_io.hpp"

#include <charconv>
#include <cstdlib>
#include <stdexcept>
#include <system_error>

namespace rootbar::text {

std::string format_double(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

double parse_double(std::string_view tok) {
  tok = trim(tok);
  double v = 0.0;
  const char* first = tok.data();
  const char* last = tok.data() + tok.size();
  if (!tok.empty() && tok.front() == '+') ++first;  // from_chars rejects '+'
  auto res = std::from_chars(first, last, v);
  if (res.ec != std::errc{} || res.ptr != last)
    throw std::invalid_argument("bad number: '" + std::string(tok) + "'");
  return v;
}

long parse_long(std::string_view tok) {
  tok = trim(tok);
  long v = 0;
  const char* first = tok.data();
  const char* last = tok.data() + tok.size();
  if (!tok.empty() && tok.front() == '+') ++first;
  auto res = std::from_chars(first, last, v);
  if (res.ec != std::errc{} || res.ptr != last)
    throw std::invalid_argument("bad integer: '" + std::string(tok) + "'");
  return v;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r' || s.front() == '\n'))
    s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r' || s.back() == '\n'))
    s.remove_suffix(1);
  return s;
}

std::vector<std::string> split(std::string_view s, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= s.size(); ++i) {
    if (i == s.size() || s[i] == sep) {
      out.emplace_back(trim(s.substr(start, i - start)));
      start = i + 1;
    }
  }
  if (!out.empty() && out.back().empty()) out.pop_back();
  return out;
}

namespace {

ListNode parse_node(std::string_view s, std::size_t& pos) {
  while (pos < s.size() && (s[pos] == ' ' || s[pos] == '\t')) ++pos;
  if (pos >= s.size()) throw std::invalid_argument("unexpected end of list");
  ListNode node;
  if (s[pos] == '[') {
    ++pos;
    while (true) {
      while (pos < s.size() && (s[pos] == ' ' || s[pos] == '\t')) ++pos;
      if (pos >= s.size()) throw std::invalid_argument("unterminated list");
      if (s[pos] == ']') {
        ++pos;
        break;
      }
      node.items.push_back(parse_node(s, pos));
      while (pos < s.size() && (s[pos] == ' ' || s[pos] == '\t')) ++pos;
      if (pos < s.size() && s[pos] == ',') ++pos;
    }
    return node;
  }
  std::size_t end = pos;
  while (end < s.size() && s[end] != ',' && s[end] != ']') ++end;
  node.is_number = true;
  node.number = parse_double(s.substr(pos, end - pos));
  pos = end;
  return node;
}

}  // namespace

ListNode parse_list(std::string_view s) {
  std::size_t pos = 0;
  ListNode n = parse_node(s, pos);
  while (pos < s.size() && (s[pos] == ' ' || s[pos] == '\t')) ++pos;
  if (pos != s.size()) throw std::invalid_argument("trailing characters in list");
  return n;
}

std::map<std::string, std::string> read_keyvalue(std::string_view doc) {
  std::map<std::string, std::string> out;
  std::string section;
  std::size_t line_start = 0;
  while (line_start <= doc.size()) {
    std::size_t nl = doc.find('\n', line_start);
    if (nl == std::string_view::npos) nl = doc.size();
    std::string_view line = doc.substr(line_start, nl - line_start);
    line_start = nl + 1;
    if (auto hash = line.find('#'); hash != std::string_view::npos)
      line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[' && line.back() == ']') {
      section = std::string(trim(line.substr(1, line.size() - 2)));
      continue;
    }
    auto eq = line.find('=');
    if (eq == std::string_view::npos)
      throw std::invalid_argument("expected 'key = value': '" + std::string(line) + "'");
    std::string key(trim(line.substr(0, eq)));
    std::string val(trim(line.substr(eq + 1)));
    if (key.empty()) throw std::invalid_argument("empty key in config line");
    out[section.empty() ? key : section + "." + key] = val;
    if (line_start > doc.size()) break;
  }
  return out;
}

}  // namespace rootbar::text
