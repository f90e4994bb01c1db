#pragma once
// Parsed bibliographic records and the per-name corpus they form.

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "homonym/word_set.hpp"

namespace homonym {

// Record fields that take part in the coincidence distance, in the order
// of the field-size table.
enum class Field : std::uint8_t {
    authors,
    email,
    address,
    title,
    keywords,
    research_field,
    journal,
    year,
};

inline constexpr std::size_t kFieldCount = 8;
inline constexpr std::array<Field, kFieldCount> kAllFields{
    Field::authors, Field::email,          Field::address, Field::title,
    Field::keywords, Field::research_field, Field::journal, Field::year,
};

std::string_view field_name(Field field);
std::optional<Field> field_from_name(std::string_view name);

enum class ExportFormat { tagged, tsv };

std::string_view format_name(ExportFormat format);

// Human-readable field text, kept for display and for re-rendering a record
// in the other export format.
struct RecordText {
    std::string title;
    std::vector<std::string> authors;   // "Soler, JM"
    std::string source;                 // abbreviated source title
    std::string volume;
    std::string pages;                  // "453:461"
    std::string year;
    std::vector<std::string> addresses; // one entry per affiliation
    std::vector<std::string> emails;
    std::vector<std::string> keywords;
    std::vector<std::string> subjects;
    std::uint32_t citations = 0;
};

struct PublicationRecord {
    std::size_t id = 0;
    WordSet authors;
    WordSet emails;
    WordSet address_words;
    WordSet title_words;
    WordSet keywords;
    WordSet research_fields;
    WordSet journal; // at most one token
    WordSet year;    // at most one token
    std::uint32_t citations = 0;

    // Source lines of the record exactly as read (line terminators removed).
    std::vector<std::string> raw;
    ExportFormat source_format = ExportFormat::tagged;
    // TSV header row the raw line belongs to; empty for tagged records.
    std::string layout;
    std::size_t source_line = 0; // 1-based line of the first raw line
    RecordText text;

    const WordSet& words(Field field) const;
    std::optional<int> year_value() const;
};

struct Corpus {
    std::vector<PublicationRecord> records;
    std::string query_name;

    // Format used when writing the corpus (or a subset) back out, and the
    // lines that precede the first record (tagged header or TSV header row).
    ExportFormat format = ExportFormat::tagged;
    std::vector<std::string> preamble;

    // Non-fatal ingest diagnostics.
    std::vector<std::string> warnings;

    std::size_t size() const { return records.size(); }
    bool empty() const { return records.empty(); }
};

// Stable 64-bit FNV-1a digest of the corpus content (raw lines and query
// name), rendered as 16 hex digits.
std::string corpus_digest(const Corpus& corpus);

std::uint64_t fnv1a(std::string_view bytes, std::uint64_t seed = 14695981039346656037ULL);
std::string to_hex(std::uint64_t value);

} // namespace homonym
