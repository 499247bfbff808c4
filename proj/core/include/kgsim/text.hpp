#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace kgsim {

/// ASCII case folding; bytes >= 0x80 pass through untouched.
std::string case_fold(std::string_view text);

/// Splits on whitespace and ASCII punctuation, then case-folds each token.
/// Non-ASCII bytes are kept inside tokens.
std::vector<std::string> tokenize(std::string_view text);

/// Splits a line on tabs. Empty fields are preserved.
std::vector<std::string_view> split_tabs(std::string_view line);

/// Strips one pair of surrounding quotes ("x" or 'x') and a trailing
/// language tag ('x'@en). Returns the input unchanged when it is not quoted.
std::string strip_literal(std::string_view value);

/// True when the raw field is a quoted literal rather than a node id.
bool is_quoted_literal(std::string_view value);

/// Shortest decimal representation that parses back to the same double.
std::string format_double(double value);

}  // namespace kgsim
