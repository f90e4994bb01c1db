#include "homonym/record.hpp"

#include <charconv>
#include <cstdio>

namespace homonym {

namespace {

constexpr std::array<std::string_view, kFieldCount> kFieldNames{
    "authors", "email", "address", "title", "keywords", "research_field", "journal", "year",
};

} // namespace

std::string_view field_name(Field field) {
    return kFieldNames[static_cast<std::size_t>(field)];
}

std::optional<Field> field_from_name(std::string_view name) {
    for (Field f : kAllFields) {
        if (field_name(f) == name) return f;
    }
    return std::nullopt;
}

std::string_view format_name(ExportFormat format) {
    return format == ExportFormat::tagged ? "tagged" : "tsv";
}

const WordSet& PublicationRecord::words(Field field) const {
    switch (field) {
        case Field::authors: return authors;
        case Field::email: return emails;
        case Field::address: return address_words;
        case Field::title: return title_words;
        case Field::keywords: return keywords;
        case Field::research_field: return research_fields;
        case Field::journal: return journal;
        case Field::year: return year;
    }
    return authors;
}

std::optional<int> PublicationRecord::year_value() const {
    if (year.empty()) return std::nullopt;
    const std::string& y = *year.begin();
    int value = 0;
    auto [ptr, ec] = std::from_chars(y.data(), y.data() + y.size(), value);
    if (ec != std::errc{} || ptr != y.data() + y.size()) return std::nullopt;
    return value;
}

std::uint64_t fnv1a(std::string_view bytes, std::uint64_t seed) {
    std::uint64_t h = seed;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return h;
}

std::string to_hex(std::uint64_t value) {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(value));
    return buf;
}

std::string corpus_digest(const Corpus& corpus) {
    std::uint64_t h = fnv1a(corpus.query_name);
    h = fnv1a("\x1e", h);
    for (const auto& rec : corpus.records) {
        for (const auto& line : rec.raw) {
            h = fnv1a(line, h);
            h = fnv1a("\n", h);
        }
        h = fnv1a("\x1d", h);
    }
    return to_hex(h);
}

} // namespace homonym
