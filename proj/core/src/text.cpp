#include "kgsim/text.hpp"

#include <array>
#include <charconv>
#include <system_error>

namespace kgsim {
namespace {

bool is_token_byte(unsigned char c) {
  return c >= 0x80 || (c >= '0' && c <= '9') || (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z');
}

char fold(char c) {
  return (c >= 'A' && c <= 'Z') ? static_cast<char>(c - 'A' + 'a') : c;
}

}  // namespace

std::string case_fold(std::string_view text) {
  std::string out(text);
  for (char& c : out) c = fold(c);
  return out;
}

std::vector<std::string> tokenize(std::string_view text) {
  std::vector<std::string> tokens;
  std::string current;
  for (char c : text) {
    if (is_token_byte(static_cast<unsigned char>(c))) {
      current.push_back(fold(c));
    } else if (!current.empty()) {
      tokens.push_back(std::move(current));
      current.clear();
    }
  }
  if (!current.empty()) tokens.push_back(std::move(current));
  return tokens;
}

std::vector<std::string_view> split_tabs(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  while (true) {
    const auto tab = line.find('\t', start);
    if (tab == std::string_view::npos) {
      fields.push_back(line.substr(start));
      return fields;
    }
    fields.push_back(line.substr(start, tab - start));
    start = tab + 1;
  }
}

bool is_quoted_literal(std::string_view value) {
  if (value.size() < 2) return false;
  const char q = value.front();
  if (q != '"' && q != '\'') return false;
  if (value.back() == q) return true;
  // 'text'@lang
  const auto at = value.rfind('@');
  return at != std::string_view::npos && at >= 2 && value[at - 1] == q;
}

std::string strip_literal(std::string_view value) {
  if (!is_quoted_literal(value)) return std::string(value);
  const char q = value.front();
  if (value.back() != q) value = value.substr(0, value.rfind('@'));
  return std::string(value.substr(1, value.size() - 2));
}

std::string format_double(double value) {
  std::array<char, 32> buf{};
  const auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value);
  if (ec != std::errc{}) return "nan";
  return std::string(buf.data(), end);
}

}  // namespace kgsim
