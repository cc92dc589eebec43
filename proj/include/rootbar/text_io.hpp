#pragma once

#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace rootbar::text {

// Shortest decimal form that parses back to the identical double.
std::string format_double(double v);
// Strict parse of a full token; throws std::invalid_argument on junk.
double parse_double(std::string_view tok);
long parse_long(std::string_view tok);

std::string_view trim(std::string_view s);
std::vector<std::string> split(std::string_view s, char sep);

// Nested numeric bracket lists: "[[a, b], [c, d, [e, f]]]".
struct ListNode {
  bool is_number = false;
  double number = 0.0;
  std::vector<ListNode> items;
};
ListNode parse_list(std::string_view s);

// Flat "key = value" documents with optional [section] headers. Keys are
// returned as "section.key" ("" section gives bare keys). Later duplicates
// overwrite. '#' starts a comment.
std::map<std::string, std::string> read_keyvalue(std::string_view doc);

}  // namespace rootbar::text
