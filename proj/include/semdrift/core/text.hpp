#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace semdrift::core {

std::string_view trim(std::string_view s);

// Collapses runs of whitespace to a single space and trims both ends.
std::string collapse_whitespace(std::string_view s);

// Case-folded (ASCII), punctuation-stripped, whitespace-collapsed form used
// for "has this sentence appeared before" checks.
std::string normalize_for_match(std::string_view s);

// Lower-cased alphanumeric word tokens; punctuation is dropped. Bytes >= 0x80
// are treated as word characters so UTF-8 text stays intact.
std::vector<std::string> word_tokens(std::string_view s);

// Like word_tokens but keeps every punctuation character as its own token.
std::vector<std::string> word_and_punct_tokens(std::string_view s);

}  // namespace semdrift::core
