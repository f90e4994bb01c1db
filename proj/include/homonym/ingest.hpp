#pragma once
// Reading and writing bibliographic export files.
//
// Two input layouts are supported:
//  - tagged: two-letter field tags at line start, continuation lines indented
//    by three spaces, each record closed by "ER", the file closed by "EF";
//  - tsv: a header row of canonical column names followed by one record per
//    row, multi-valued cells separated by "; ".

#include <array>
#include <cstddef>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "homonym/record.hpp"
#include "homonym/tokenize.hpp"

namespace homonym {

class ParseError : public std::runtime_error {
public:
    ParseError(std::size_t line, const std::string& message);
    std::size_t line() const { return line_; }
    const std::string& message() const { return message_; }

private:
    std::size_t line_;
    std::string message_;
};

enum class TagRole {
    authors,
    title,
    source_full,
    journal_abbrev,
    source_abbrev,
    author_keywords,
    keywords_plus,
    addresses,
    email,
    subject,
    subject_fallback,
    year,
    volume,
    begin_page,
    end_page,
    times_cited,
};

struct TagMapping {
    std::string_view tag;
    TagRole role;
};

// Tag-to-field mapping for tagged exports. Tags not listed are kept in the
// raw lines but do not contribute words.
inline constexpr std::array<TagMapping, 16> kTagMap{{
    {"AU", TagRole::authors},
    {"TI", TagRole::title},
    {"SO", TagRole::source_full},
    {"J9", TagRole::journal_abbrev},
    {"JI", TagRole::source_abbrev},
    {"DE", TagRole::author_keywords},
    {"ID", TagRole::keywords_plus},
    {"C1", TagRole::addresses},
    {"EM", TagRole::email},
    {"SC", TagRole::subject},
    {"WC", TagRole::subject_fallback},
    {"PY", TagRole::year},
    {"VL", TagRole::volume},
    {"BP", TagRole::begin_page},
    {"EP", TagRole::end_page},
    {"TC", TagRole::times_cited},
}};

// Canonical TSV column names; "volume" and "pages" are optional extras.
inline constexpr std::array<std::string_view, 11> kTsvColumns{
    "authors", "title", "source", "keywords", "addresses", "email",
    "subject", "year", "times_cited", "volume", "pages",
};

// UTF-8 passes through (BOM stripped); anything that fails UTF-8 validation
// is read as Latin-1 and transcoded.
std::string decode_text(std::string_view bytes);

// A header row naming at least one canonical column means TSV; otherwise tagged.
ExportFormat detect_format(std::string_view text);

struct ParsedExport {
    ExportFormat format = ExportFormat::tagged;
    std::vector<std::string> preamble;
    std::vector<PublicationRecord> records;
};

ParsedExport parse_records(std::string_view bytes, ExportFormat format,
                           const StopwordList& stopwords = default_stopwords());

// Concatenates parsed files, assigns dense ids, resolves the query name
// (normalized; inferred as the most frequent author token when absent) and
// records a warning for every record that lacks it.
Corpus assemble_corpus(std::vector<ParsedExport> parts,
                       std::optional<std::string> query_name = std::nullopt);

Corpus parse_export(std::string_view bytes, ExportFormat format,
                    std::optional<std::string> query_name = std::nullopt,
                    const StopwordList& stopwords = default_stopwords());

// Builds word sets from display text; shared by both input layouts.
PublicationRecord index_record(RecordText text,
                               const StopwordList& stopwords = default_stopwords());

std::vector<std::string> render_tagged(const RecordText& text);
std::string render_tsv_row(const RecordText& text);
std::string default_tsv_header();

// Writes the selected records (in the given order) in the corpus format.
// Records read in that same layout are written from their raw lines.
std::string write_export(const Corpus& corpus, std::span<const std::size_t> ids);
std::string write_export(const Corpus& corpus);

} // namespace homonym
