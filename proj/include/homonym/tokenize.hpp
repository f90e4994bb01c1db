#pragma once
// Field text normalization: case folding, diacritic stripping and the
// per-field word rules used before any coincidence is counted.

#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

#include "homonym/record.hpp"
#include "homonym/word_set.hpp"

namespace homonym {

using StopwordList = std::unordered_set<std::string>;

// Built-in English articles, prepositions and conjunctions (title words only).
const StopwordList& default_stopwords();

// Whitespace- or comma-separated word list, folded like title words.
StopwordList parse_stopwords(std::string_view text);

// Lowercases ASCII, folds Latin-1 / Latin Extended-A letters to their ASCII
// base, maps Unicode spaces and punctuation to ' '. Other non-ASCII code
// points pass through unchanged and count as word characters.
std::string fold_text(std::string_view utf8);

// "Soler, JM" / "Soler JM" / "soler_jm" -> "soler_jm"; "" when no surname.
std::string normalize_author(std::string_view name);

// Splits raw field text into the deduplicated word set for `field`.
// Multi-valued fields (authors, email, keywords, research field) accept
// ';' or newline separated entries.
WordSet tokenize_field(std::string_view raw, Field field,
                       const StopwordList& stopwords = default_stopwords());

// Address words in first-appearance order, uppercased, in their original
// spelling ("E-28049"), restricted to words that survive address tokenization.
std::vector<std::string> address_display_words(std::string_view raw);
// Same, over all affiliations of a record; each word appears once.
std::vector<std::string> address_display_words(const std::vector<std::string>& addresses);

} // namespace homonym
