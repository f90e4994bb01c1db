#include "homonym/tokenize.hpp"

#include <algorithm>
#include <cctype>
#include <cstdint>

namespace homonym {

namespace {

// ASCII folds for U+00C0..U+00FF; "" marks a separator (multiplication and
// division signs).
constexpr std::string_view kLatin1Fold[64] = {
    "a", "a", "a", "a", "a", "a", "ae", "c", "e", "e", "e", "e", "i", "i", "i", "i",
    "d", "n", "o", "o", "o", "o", "o",  "",  "o", "u", "u", "u", "u", "y", "th", "ss",
    "a", "a", "a", "a", "a", "a", "ae", "c", "e", "e", "e", "e", "i", "i", "i", "i",
    "d", "n", "o", "o", "o", "o", "o",  "",  "o", "u", "u", "u", "u", "y", "th", "y",
};

// Run-length table for U+0100..U+017F.
struct FoldRun {
    int count;
    std::string_view base;
};
constexpr FoldRun kExtendedAFold[] = {
    {6, "a"},  {8, "c"},  {4, "d"},  {10, "e"}, {8, "g"}, {4, "h"},  {10, "i"}, {2, "ij"},
    {2, "j"},  {3, "k"},  {10, "l"}, {9, "n"},  {6, "o"}, {2, "oe"}, {6, "r"},  {8, "s"},
    {6, "t"},  {12, "u"}, {2, "w"},  {3, "y"},  {6, "z"}, {1, "s"},
};

std::string_view fold_extended_a(char32_t cp) {
    int offset = static_cast<int>(cp - 0x100);
    for (const auto& run : kExtendedAFold) {
        if (offset < run.count) return run.base;
        offset -= run.count;
    }
    return {};
}

// Decodes one UTF-8 sequence at s[i]; invalid bytes decode as themselves.
char32_t decode_utf8(std::string_view s, std::size_t& i) {
    const auto b0 = static_cast<unsigned char>(s[i]);
    auto cont = [&](std::size_t k) -> int {
        if (i + k >= s.size()) return -1;
        const auto b = static_cast<unsigned char>(s[i + k]);
        return (b & 0xC0) == 0x80 ? (b & 0x3F) : -1;
    };
    if (b0 < 0x80) {
        ++i;
        return b0;
    }
    if ((b0 & 0xE0) == 0xC0) {
        const int c1 = cont(1);
        if (c1 >= 0) {
            i += 2;
            return (char32_t(b0 & 0x1F) << 6) | char32_t(c1);
        }
    } else if ((b0 & 0xF0) == 0xE0) {
        const int c1 = cont(1), c2 = cont(2);
        if (c1 >= 0 && c2 >= 0) {
            i += 3;
            return (char32_t(b0 & 0x0F) << 12) | (char32_t(c1) << 6) | char32_t(c2);
        }
    } else if ((b0 & 0xF8) == 0xF0) {
        const int c1 = cont(1), c2 = cont(2), c3 = cont(3);
        if (c1 >= 0 && c2 >= 0 && c3 >= 0) {
            i += 4;
            return (char32_t(b0 & 0x07) << 18) | (char32_t(c1) << 12) | (char32_t(c2) << 6) |
                   char32_t(c3);
        }
    }
    ++i;
    return b0;
}

bool is_unicode_separator(char32_t cp) {
    return (cp >= 0x80 && cp <= 0xBF) || cp == 0xD7 || cp == 0xF7 ||
           (cp >= 0x2000 && cp <= 0x206F) || (cp >= 0x3000 && cp <= 0x303F) || cp == 0xFEFF;
}

bool is_word_byte(char c) {
    const auto u = static_cast<unsigned char>(c);
    return u >= 0x80 || std::isalnum(u);
}

bool is_digits(std::string_view s) {
    return !s.empty() && std::all_of(s.begin(), s.end(), [](char c) {
        return std::isdigit(static_cast<unsigned char>(c));
    });
}

std::string_view trim(std::string_view s) {
    const auto ws = " \t\r\n";
    const auto b = s.find_first_not_of(ws);
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(ws);
    return s.substr(b, e - b + 1);
}

// Maximal runs of word bytes.
std::vector<std::string> word_runs(std::string_view folded) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : folded) {
        if (is_word_byte(c)) {
            cur += c;
        } else if (!cur.empty()) {
            out.push_back(std::move(cur));
            cur.clear();
        }
    }
    if (!cur.empty()) out.push_back(std::move(cur));
    return out;
}

std::string keep_word_bytes(std::string_view s) {
    std::string out;
    for (char c : s) {
        if (is_word_byte(c)) out += c;
    }
    return out;
}

std::vector<std::string_view> split_any(std::string_view s, std::string_view seps) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    for (std::size_t i = 0; i <= s.size(); ++i) {
        if (i == s.size() || seps.find(s[i]) != std::string_view::npos) {
            if (i > start) out.push_back(s.substr(start, i - start));
            start = i + 1;
        }
    }
    return out;
}

// Whole phrase as one token: "Int. J. Quantum Chem." -> "int_j_quantum_chem".
std::string phrase_token(std::string_view raw) {
    const auto runs = word_runs(fold_text(raw));
    std::string out;
    for (const auto& r : runs) {
        if (!out.empty()) out += '_';
        out += r;
    }
    return out;
}

constexpr std::string_view kAddressSeparators = " \t\r\n,;:()[]/\"";

bool keep_address_word(std::string_view token) {
    return token.size() >= 2 && !is_digits(token);
}

// True when a word carries no lowercase letters (e.g. "JM", "J.").
bool is_all_caps(std::string_view word) {
    for (std::size_t i = 0; i < word.size();) {
        const char32_t cp = decode_utf8(word, i);
        if (cp >= 'a' && cp <= 'z') return false;
        if (cp >= 0xDF && cp <= 0xFF) return false;
        if (cp >= 0x100 && cp <= 0x17F && (cp & 1) == 1) return false;
    }
    return true;
}

std::string first_word_char(std::string_view folded) {
    for (std::size_t i = 0; i < folded.size();) {
        const std::size_t start = i;
        decode_utf8(folded, i);
        if (is_word_byte(folded[start])) return std::string(folded.substr(start, i - start));
    }
    return {};
}

} // namespace

const StopwordList& default_stopwords() {
    static const StopwordList words = {
        "a",       "an",      "the",    "and",     "or",      "but",    "nor",   "yet",
        "so",      "of",      "in",     "on",      "at",      "to",     "for",   "with",
        "by",      "from",    "into",   "onto",    "upon",    "as",     "about", "above",
        "across",  "after",   "against", "along",  "among",   "around", "before", "behind",
        "below",   "beneath", "beside", "between", "beyond",  "during", "except", "inside",
        "near",    "off",     "out",    "over",    "through", "toward", "towards", "under",
        "until",   "via",     "within", "without", "versus",  "vs",     "than",  "if",
        "whether", "while",   "both",   "either",  "neither",
    };
    return words;
}

StopwordList parse_stopwords(std::string_view text) {
    StopwordList out;
    for (auto& w : word_runs(fold_text(text))) out.insert(std::move(w));
    return out;
}

std::string fold_text(std::string_view utf8) {
    std::string out;
    out.reserve(utf8.size());
    for (std::size_t i = 0; i < utf8.size();) {
        const std::size_t start = i;
        const char32_t cp = decode_utf8(utf8, i);
        if (cp < 0x80) {
            out += static_cast<char>(std::tolower(static_cast<int>(cp)));
        } else if (is_unicode_separator(cp)) {
            out += ' ';
        } else if (cp >= 0xC0 && cp <= 0xFF) {
            const auto f = kLatin1Fold[cp - 0xC0];
            out += f.empty() ? std::string_view(" ") : f;
        } else if (cp >= 0x100 && cp <= 0x17F) {
            out += fold_extended_a(cp);
        } else {
            out += utf8.substr(start, i - start);
        }
    }
    return out;
}

std::string normalize_author(std::string_view name) {
    name = trim(name);
    std::string_view surname;
    std::string_view given;
    bool canonical = false;
    if (const auto comma = name.find(','); comma != std::string_view::npos) {
        surname = name.substr(0, comma);
        given = name.substr(comma + 1);
    } else if (const auto us = name.find('_'); us != std::string_view::npos) {
        surname = name.substr(0, us);
        given = name.substr(us + 1);
        canonical = true;
    } else {
        const auto parts = split_any(name, " \t");
        if (parts.size() > 1) {
            surname = name.substr(0, static_cast<std::size_t>(parts.back().data() - name.data()));
            given = parts.back();
        } else {
            surname = name;
        }
    }

    std::string token = keep_word_bytes(fold_text(surname));
    if (token.empty()) return {};

    std::string initials;
    if (canonical) {
        initials = keep_word_bytes(fold_text(given));
    } else {
        for (auto word : split_any(given, " \t.-")) {
            const std::string folded = keep_word_bytes(fold_text(word));
            if (folded.empty()) continue;
            initials += is_all_caps(word) ? folded : first_word_char(folded);
        }
    }
    if (!initials.empty()) {
        token += '_';
        token += initials;
    }
    return token;
}

WordSet tokenize_field(std::string_view raw, Field field, const StopwordList& stopwords) {
    WordSet out;
    switch (field) {
        case Field::title:
            for (auto& w : word_runs(fold_text(raw))) {
                if (!stopwords.contains(w)) out.insert(std::move(w));
            }
            break;
        case Field::address:
            for (auto piece : split_any(raw, kAddressSeparators)) {
                std::string token = keep_word_bytes(fold_text(piece));
                if (keep_address_word(token)) out.insert(std::move(token));
            }
            break;
        case Field::authors:
            for (auto entry : split_any(raw, ";\n")) out.insert(normalize_author(entry));
            break;
        case Field::email:
            for (auto entry : split_any(raw, " \t\r\n;,")) {
                std::string e;
                for (char c : entry) e += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
                while (!e.empty() && (e.back() == '.')) e.pop_back();
                out.insert(std::move(e));
            }
            break;
        case Field::keywords:
        case Field::research_field:
            for (auto entry : split_any(raw, ";\n")) out.insert(phrase_token(entry));
            break;
        case Field::journal:
            out.insert(phrase_token(raw));
            break;
        case Field::year: {
            const std::string folded(raw);
            for (std::size_t i = 0; i < folded.size();) {
                if (!std::isdigit(static_cast<unsigned char>(folded[i]))) {
                    ++i;
                    continue;
                }
                std::size_t j = i;
                while (j < folded.size() && std::isdigit(static_cast<unsigned char>(folded[j]))) ++j;
                if (j - i == 4) {
                    out.insert(folded.substr(i, 4));
                    break;
                }
                i = j;
            }
            break;
        }
    }
    return out;
}

std::vector<std::string> address_display_words(std::string_view raw) {
    std::vector<std::string> out;
    WordSet seen;
    for (auto piece : split_any(raw, kAddressSeparators)) {
        const std::string token = keep_word_bytes(fold_text(piece));
        if (!keep_address_word(token) || seen.contains(token)) continue;
        seen.insert(token);
        while (!piece.empty() && !is_word_byte(piece.front())) piece.remove_prefix(1);
        while (!piece.empty() && !is_word_byte(piece.back())) piece.remove_suffix(1);
        std::string shown(piece);
        for (char& c : shown) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
        out.push_back(std::move(shown));
    }
    return out;
}

std::vector<std::string> address_display_words(const std::vector<std::string>& addresses) {
    std::string joined;
    for (const auto& a : addresses) {
        if (!joined.empty()) joined += "; ";
        joined += a;
    }
    return address_display_words(joined);
}

} // namespace homonym
