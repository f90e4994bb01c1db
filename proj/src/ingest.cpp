#include "homonym/ingest.hpp"

#include <algorithm>
#include <charconv>
#include <map>
#include <unordered_map>

namespace homonym {

namespace {

bool valid_utf8(std::string_view s) {
    std::size_t i = 0;
    while (i < s.size()) {
        const auto b = static_cast<unsigned char>(s[i]);
        std::size_t len = 0;
        if (b < 0x80) len = 1;
        else if ((b & 0xE0) == 0xC0 && b >= 0xC2) len = 2;
        else if ((b & 0xF0) == 0xE0) len = 3;
        else if ((b & 0xF8) == 0xF0 && b <= 0xF4) len = 4;
        else return false;
        if (i + len > s.size()) return false;
        for (std::size_t k = 1; k < len; ++k) {
            if ((static_cast<unsigned char>(s[i + k]) & 0xC0) != 0x80) return false;
        }
        i += len;
    }
    return true;
}

std::vector<std::string_view> split_lines(std::string_view text) {
    std::vector<std::string_view> lines;
    std::size_t start = 0;
    while (start < text.size()) {
        auto end = text.find('\n', start);
        if (end == std::string_view::npos) end = text.size();
        auto line = text.substr(start, end - start);
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        lines.push_back(line);
        start = end + 1;
    }
    return lines;
}

std::string_view trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t");
    if (b == std::string_view::npos) return {};
    return s.substr(b, s.find_last_not_of(" \t") - b + 1);
}

bool blank(std::string_view line) { return trim(line).empty(); }

std::vector<std::string> split_values(std::string_view s, char sep) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (start <= s.size()) {
        auto end = s.find(sep, start);
        if (end == std::string_view::npos) end = s.size();
        auto v = trim(s.substr(start, end - start));
        if (!v.empty()) out.emplace_back(v);
        start = end + 1;
    }
    return out;
}

std::string join(const std::vector<std::string>& items, std::string_view sep) {
    std::string out;
    for (std::size_t i = 0; i < items.size(); ++i) {
        if (i) out += sep;
        out += items[i];
    }
    return out;
}

std::uint32_t parse_count(std::string_view s) {
    s = trim(s);
    std::uint32_t v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size()) return 0;
    return v;
}

bool is_tag_line(std::string_view line) {
    if (line.size() < 2) return false;
    auto up = [](char c) { return (c >= 'A' && c <= 'Z'); };
    auto upnum = [](char c) { return (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9'); };
    if (!up(line[0]) || !upnum(line[1])) return false;
    return line.size() == 2 || line[2] == ' ';
}

bool is_continuation(std::string_view line) { return line.starts_with("   "); }

// Newer exports prefix affiliations with "[Author; Author] ".
std::string strip_author_prefix(std::string_view address) {
    address = trim(address);
    if (address.starts_with('[')) {
        const auto close = address.find(']');
        if (close != std::string_view::npos) address = trim(address.substr(close + 1));
    }
    return std::string(address);
}

std::optional<TagRole> role_of(std::string_view tag) {
    for (const auto& m : kTagMap) {
        if (m.tag == tag) return m.role;
    }
    return std::nullopt;
}

RecordText text_from_tags(const std::map<TagRole, std::vector<std::string>>& values) {
    auto lines = [&](TagRole r) -> const std::vector<std::string>& {
        static const std::vector<std::string> none;
        auto it = values.find(r);
        return it == values.end() ? none : it->second;
    };
    auto joined = [&](TagRole r) { return join(lines(r), " "); };

    RecordText t;
    for (const auto& line : lines(TagRole::authors)) {
        for (auto& a : split_values(line, ';')) t.authors.push_back(std::move(a));
    }
    t.title = joined(TagRole::title);
    if (!lines(TagRole::source_abbrev).empty()) t.source = joined(TagRole::source_abbrev);
    else if (!lines(TagRole::journal_abbrev).empty()) t.source = joined(TagRole::journal_abbrev);
    else t.source = joined(TagRole::source_full);
    t.volume = joined(TagRole::volume);
    const std::string bp = joined(TagRole::begin_page);
    const std::string ep = joined(TagRole::end_page);
    t.pages = ep.empty() ? bp : bp + ":" + ep;
    t.year = joined(TagRole::year);
    for (const auto& line : lines(TagRole::addresses)) {
        auto a = strip_author_prefix(line);
        if (!a.empty()) t.addresses.push_back(std::move(a));
    }
    for (auto& e : split_values(joined(TagRole::email), ';')) t.emails.push_back(std::move(e));
    for (auto r : {TagRole::author_keywords, TagRole::keywords_plus}) {
        for (auto& k : split_values(joined(r), ';')) t.keywords.push_back(std::move(k));
    }
    const TagRole subj = lines(TagRole::subject).empty() ? TagRole::subject_fallback : TagRole::subject;
    for (auto& s : split_values(joined(subj), ';')) t.subjects.push_back(std::move(s));
    t.citations = parse_count(joined(TagRole::times_cited));
    return t;
}

ParsedExport parse_tagged(std::string_view text, const StopwordList& stopwords) {
    ParsedExport out;
    out.format = ExportFormat::tagged;
    const auto lines = split_lines(text);

    bool in_record = false;
    bool seen_record = false;
    bool ended = false;
    std::size_t record_start = 0;
    std::vector<std::string> raw;
    std::map<TagRole, std::vector<std::string>> values;
    std::optional<TagRole> current;

    auto lineno = [](std::size_t idx) { return idx + 1; };

    for (std::size_t i = 0; i < lines.size(); ++i) {
        const auto line = lines[i];
        if (ended) {
            if (!blank(line)) throw ParseError(lineno(i), "content after end-of-file tag");
            continue;
        }
        if (!in_record) {
            if (blank(line)) {
                if (!seen_record) out.preamble.emplace_back(line);
                continue;
            }
            if (!is_tag_line(line)) throw ParseError(lineno(i), "expected a field tag outside a record");
            const auto tag = line.substr(0, 2);
            if (tag == "EF") {
                ended = true;
                continue;
            }
            if (tag == "FN" || tag == "VR") {
                if (seen_record) throw ParseError(lineno(i), "file header tag after the first record");
                out.preamble.emplace_back(line);
                continue;
            }
            if (tag == "ER") throw ParseError(lineno(i), "end-of-record tag outside a record");
            in_record = true;
            seen_record = true;
            record_start = i;
            raw.clear();
            values.clear();
            current.reset();
        }

        if (blank(line)) {
            raw.emplace_back(line);
            continue;
        }
        if (is_tag_line(line)) {
            const auto tag = line.substr(0, 2);
            if (tag == "EF") {
                throw ParseError(lineno(record_start),
                                 "record has no end-of-record tag before end of file");
            }
            if (tag == "FN" || tag == "VR") {
                throw ParseError(lineno(record_start),
                                 "record has no end-of-record tag before file header");
            }
            raw.emplace_back(line);
            if (tag == "ER") {
                PublicationRecord rec = index_record(text_from_tags(values), stopwords);
                rec.raw = std::move(raw);
                raw = {};
                rec.source_format = ExportFormat::tagged;
                rec.source_line = lineno(record_start);
                out.records.push_back(std::move(rec));
                in_record = false;
                continue;
            }
            if (tag == "PT" && raw.size() > 1) {
                throw ParseError(lineno(record_start),
                                 "record has no end-of-record tag before the next record");
            }
            current = role_of(tag);
            if (current) values[*current].emplace_back(trim(line.substr(2)));
            continue;
        }
        if (is_continuation(line)) {
            raw.emplace_back(line);
            if (current) values[*current].emplace_back(trim(line));
            continue;
        }
        throw ParseError(lineno(i), "unrecognized line inside a record");
    }
    if (in_record) {
        throw ParseError(lineno(record_start), "record has no end-of-record tag");
    }
    if (std::all_of(out.preamble.begin(), out.preamble.end(), [](const std::string& l) { return blank(l); })) {
        out.preamble.clear();
    }
    return out;
}

std::string lower_ascii(std::string_view s) {
    std::string out(s);
    for (char& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return out;
}

std::vector<std::string_view> split_tabs(std::string_view line) {
    std::vector<std::string_view> cells;
    std::size_t start = 0;
    while (true) {
        const auto tab = line.find('\t', start);
        if (tab == std::string_view::npos) {
            cells.push_back(line.substr(start));
            break;
        }
        cells.push_back(line.substr(start, tab - start));
        start = tab + 1;
    }
    return cells;
}

ParsedExport parse_tsv(std::string_view text, const StopwordList& stopwords) {
    ParsedExport out;
    out.format = ExportFormat::tsv;
    const auto lines = split_lines(text);

    std::size_t i = 0;
    while (i < lines.size() && blank(lines[i])) ++i;
    if (i == lines.size()) return out;

    const std::string header(lines[i]);
    std::vector<std::string> columns;
    bool any_known = false;
    for (auto cell : split_tabs(lines[i])) {
        columns.push_back(lower_ascii(trim(cell)));
        if (std::find(kTsvColumns.begin(), kTsvColumns.end(), columns.back()) != kTsvColumns.end()) {
            any_known = true;
        }
    }
    if (!any_known) throw ParseError(i + 1, "TSV header names no known column");
    out.preamble.push_back(header);

    for (++i; i < lines.size(); ++i) {
        const auto line = lines[i];
        if (blank(line)) continue;
        const auto cells = split_tabs(line);
        if (cells.size() > columns.size()) {
            throw ParseError(i + 1, "expected at most " + std::to_string(columns.size()) +
                                        " columns, found " + std::to_string(cells.size()));
        }
        RecordText t;
        for (std::size_t c = 0; c < cells.size(); ++c) {
            const auto& col = columns[c];
            const auto cell = trim(cells[c]);
            if (col == "authors") t.authors = split_values(cell, ';');
            else if (col == "title") t.title = std::string(cell);
            else if (col == "source") t.source = std::string(cell);
            else if (col == "keywords") t.keywords = split_values(cell, ';');
            else if (col == "addresses") t.addresses = split_values(cell, ';');
            else if (col == "email") t.emails = split_values(cell, ';');
            else if (col == "subject") t.subjects = split_values(cell, ';');
            else if (col == "year") t.year = std::string(cell);
            else if (col == "times_cited") t.citations = parse_count(cell);
            else if (col == "volume") t.volume = std::string(cell);
            else if (col == "pages") t.pages = std::string(cell);
        }
        PublicationRecord rec = index_record(std::move(t), stopwords);
        rec.raw.emplace_back(line);
        rec.source_format = ExportFormat::tsv;
        rec.layout = header;
        rec.source_line = i + 1;
        out.records.push_back(std::move(rec));
    }
    return out;
}

std::string clean_cell(std::string_view s) {
    std::string out(s);
    for (char& c : out) {
        if (c == '\t' || c == '\n' || c == '\r') c = ' ';
    }
    return out;
}

} // namespace

ParseError::ParseError(std::size_t line, const std::string& message)
    : std::runtime_error("line " + std::to_string(line) + ": " + message), line_(line), message_(message) {}

std::string decode_text(std::string_view bytes) {
    if (bytes.starts_with("\xEF\xBB\xBF")) bytes.remove_prefix(3);
    if (valid_utf8(bytes)) return std::string(bytes);
    std::string out;
    out.reserve(bytes.size() + bytes.size() / 8);
    for (unsigned char c : bytes) {
        if (c < 0x80) {
            out += static_cast<char>(c);
        } else {
            out += static_cast<char>(0xC0 | (c >> 6));
            out += static_cast<char>(0x80 | (c & 0x3F));
        }
    }
    return out;
}

ExportFormat detect_format(std::string_view text) {
    for (auto line : split_lines(text)) {
        if (blank(line)) continue;
        if (line.find('\t') == std::string_view::npos) return ExportFormat::tagged;
        for (auto cell : split_tabs(line)) {
            const auto name = lower_ascii(trim(cell));
            if (std::find(kTsvColumns.begin(), kTsvColumns.end(), name) != kTsvColumns.end()) {
                return ExportFormat::tsv;
            }
        }
        return ExportFormat::tagged;
    }
    return ExportFormat::tagged;
}

PublicationRecord index_record(RecordText text, const StopwordList& stopwords) {
    PublicationRecord rec;
    rec.authors = tokenize_field(join(text.authors, "\n"), Field::authors, stopwords);
    rec.emails = tokenize_field(join(text.emails, "; "), Field::email, stopwords);
    rec.address_words = tokenize_field(join(text.addresses, "; "), Field::address, stopwords);
    rec.title_words = tokenize_field(text.title, Field::title, stopwords);
    rec.keywords = tokenize_field(join(text.keywords, "; "), Field::keywords, stopwords);
    rec.research_fields = tokenize_field(join(text.subjects, "; "), Field::research_field, stopwords);
    rec.journal = tokenize_field(text.source, Field::journal, stopwords);
    rec.year = tokenize_field(text.year, Field::year, stopwords);
    rec.citations = text.citations;
    rec.text = std::move(text);
    return rec;
}

ParsedExport parse_records(std::string_view bytes, ExportFormat format, const StopwordList& stopwords) {
    const std::string text = decode_text(bytes);
    return format == ExportFormat::tagged ? parse_tagged(text, stopwords) : parse_tsv(text, stopwords);
}

Corpus assemble_corpus(std::vector<ParsedExport> parts, std::optional<std::string> query_name) {
    Corpus corpus;
    for (const auto& part : parts) {
        if (!part.records.empty() || !part.preamble.empty()) {
            corpus.format = part.format;
            corpus.preamble = part.preamble;
            break;
        }
    }
    for (auto& part : parts) {
        for (auto& rec : part.records) {
            rec.id = corpus.records.size();
            corpus.records.push_back(std::move(rec));
        }
    }

    if (query_name) {
        corpus.query_name = normalize_author(*query_name);
    } else {
        std::unordered_map<std::string, std::size_t> counts;
        for (const auto& rec : corpus.records) {
            for (const auto& a : rec.authors) ++counts[a];
        }
        std::size_t best = 0;
        for (const auto& [name, n] : counts) {
            if (n > best || (n == best && name < corpus.query_name)) {
                best = n;
                corpus.query_name = name;
            }
        }
    }

    for (const auto& rec : corpus.records) {
        if (!corpus.query_name.empty() && !rec.authors.contains(corpus.query_name)) {
            corpus.warnings.push_back("record " + std::to_string(rec.id) + " (line " +
                                      std::to_string(rec.source_line) + ") does not list author " +
                                      corpus.query_name);
        }
    }
    return corpus;
}

Corpus parse_export(std::string_view bytes, ExportFormat format, std::optional<std::string> query_name,
                    const StopwordList& stopwords) {
    std::vector<ParsedExport> parts;
    parts.push_back(parse_records(bytes, format, stopwords));
    return assemble_corpus(std::move(parts), std::move(query_name));
}

std::vector<std::string> render_tagged(const RecordText& t) {
    std::vector<std::string> out;
    auto multi = [&](std::string_view tag, const std::vector<std::string>& items) {
        for (std::size_t i = 0; i < items.size(); ++i) {
            out.push_back((i == 0 ? std::string(tag) + " " : std::string("   ")) + clean_cell(items[i]));
        }
    };
    auto single = [&](std::string_view tag, const std::string& value) {
        if (!value.empty()) out.push_back(std::string(tag) + " " + clean_cell(value));
    };
    out.emplace_back("PT J");
    multi("AU", t.authors);
    single("TI", t.title);
    single("JI", t.source);
    if (!t.keywords.empty()) single("DE", join(t.keywords, "; "));
    multi("C1", t.addresses);
    if (!t.emails.empty()) single("EM", join(t.emails, "; "));
    if (!t.subjects.empty()) single("SC", join(t.subjects, "; "));
    single("PY", t.year);
    single("VL", t.volume);
    if (!t.pages.empty()) {
        const auto colon = t.pages.find(':');
        single("BP", t.pages.substr(0, colon));
        if (colon != std::string::npos) single("EP", t.pages.substr(colon + 1));
    }
    out.push_back("TC " + std::to_string(t.citations));
    out.emplace_back("ER");
    return out;
}

std::string default_tsv_header() {
    std::string out;
    for (std::size_t i = 0; i < kTsvColumns.size(); ++i) {
        if (i) out += '\t';
        out += kTsvColumns[i];
    }
    return out;
}

std::string render_tsv_row(const RecordText& t) {
    const std::string cells[] = {
        join(t.authors, "; "), t.title, t.source, join(t.keywords, "; "), join(t.addresses, "; "),
        join(t.emails, "; "), join(t.subjects, "; "), t.year, std::to_string(t.citations),
        t.volume, t.pages,
    };
    std::string out;
    for (std::size_t i = 0; i < std::size(cells); ++i) {
        if (i) out += '\t';
        out += clean_cell(cells[i]);
    }
    return out;
}

std::string write_export(const Corpus& corpus, std::span<const std::size_t> ids) {
    std::string out;
    if (corpus.format == ExportFormat::tagged) {
        for (const auto& line : corpus.preamble) out += line + "\n";
        for (std::size_t id : ids) {
            const auto& rec = corpus.records.at(id);
            const auto lines = rec.source_format == ExportFormat::tagged ? rec.raw : render_tagged(rec.text);
            for (const auto& line : lines) out += line + "\n";
            out += "\n";
        }
        out += "EF\n";
    } else {
        std::string header = corpus.preamble.empty() ? default_tsv_header() : corpus.preamble.front();
        const bool uniform = std::all_of(ids.begin(), ids.end(), [&](std::size_t id) {
            const auto& rec = corpus.records.at(id);
            return rec.source_format == ExportFormat::tsv && rec.layout == header;
        });
        if (!uniform) header = default_tsv_header();
        out += header + "\n";
        for (std::size_t id : ids) {
            const auto& rec = corpus.records.at(id);
            if (rec.source_format == ExportFormat::tsv && rec.layout == header) {
                out += rec.raw.front() + "\n";
            } else {
                out += render_tsv_row(rec.text) + "\n";
            }
        }
    }
    return out;
}

std::string write_export(const Corpus& corpus) {
    std::vector<std::size_t> ids(corpus.size());
    for (std::size_t i = 0; i < ids.size(); ++i) ids[i] = i;
    return write_export(corpus, ids);
}

} // namespace homonym
