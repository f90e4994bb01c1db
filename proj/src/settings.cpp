#include "homonym/settings.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <vector>

namespace homonym {

namespace {

std::string_view trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos) return {};
    return s.substr(b, s.find_last_not_of(" \t\r") - b + 1);
}

double parse_double(std::string_view key, std::string_view value) {
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), v);
    if (ec != std::errc{} || ptr != value.data() + value.size()) {
        throw ConfigError("value for '" + std::string(key) + "' is not a number: '" + std::string(value) + "'");
    }
    return v;
}

bool parse_bool(std::string_view key, std::string_view value) {
    if (value == "true" || value == "yes" || value == "1") return true;
    if (value == "false" || value == "no" || value == "0") return false;
    throw ConfigError("value for '" + std::string(key) + "' is not a boolean: '" + std::string(value) + "'");
}

void apply_pair(std::string_view key, std::string_view value, Settings& s) {
    if (key == "documents") {
        s.model.log10_n_docs = parse_double(key, value);
    } else if (auto f = field_from_name(key)) {
        s.model.set_log10_size(*f, parse_double(key, value));
    } else if (key == "include_query_name") {
        s.distance.include_query_name = parse_bool(key, value);
    } else if (key == "tolerance") {
        s.tolerance = parse_double(key, value);
    } else if (key == "cutoff") {
        s.cutoff = parse_double(key, value);
    } else if (key == "query_name") {
        s.query_name = std::string(value);
    } else if (key == "stopwords") {
        s.stopwords = parse_stopwords(value);
    } else {
        throw ConfigError("unknown setting '" + std::string(key) + "'");
    }
}

} // namespace

void Settings::validate() const {
    try {
        model.validate();
    } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
    }
    if (!(tolerance >= 0.0)) throw ConfigError("tolerance must be non-negative");
    if (!(cutoff > 0.0)) throw ConfigError("cutoff must be positive");
}

void apply_config(std::string_view text, Settings& settings) {
    std::size_t lineno = 0;
    std::size_t start = 0;
    while (start <= text.size()) {
        auto end = text.find('\n', start);
        if (end == std::string_view::npos) end = text.size();
        ++lineno;
        auto line = text.substr(start, end - start);
        start = end + 1;
        if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string_view::npos) {
            throw ConfigError("config line " + std::to_string(lineno) + ": expected key = value");
        }
        try {
            apply_pair(trim(line.substr(0, eq)), trim(line.substr(eq + 1)), settings);
        } catch (const ConfigError& e) {
            throw ConfigError("config line " + std::to_string(lineno) + ": " + e.what());
        }
    }
    settings.validate();
}

void apply_config_file(const std::filesystem::path& path, Settings& settings) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot read config file " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    apply_config(ss.str(), settings);
}

void apply_override(std::string_view assignment, Settings& settings) {
    const auto eq = assignment.find('=');
    if (eq == std::string_view::npos) throw ConfigError("expected field=value, got '" + std::string(assignment) + "'");
    apply_pair(trim(assignment.substr(0, eq)), trim(assignment.substr(eq + 1)), settings);
    settings.validate();
}

nlohmann::json settings_to_json(const Settings& s) {
    nlohmann::json sizes = nlohmann::json::object();
    for (Field f : kAllFields) sizes[std::string(field_name(f))] = s.model.log10_size(f);
    nlohmann::json doc{
        {"documents", s.model.log10_n_docs},
        {"field_sizes", sizes},
        {"include_query_name", s.distance.include_query_name},
        {"tolerance", s.tolerance},
        {"cutoff", s.cutoff},
    };
    if (s.query_name) doc["query_name"] = *s.query_name;
    if (s.stopwords) {
        std::vector<std::string> words(s.stopwords->begin(), s.stopwords->end());
        std::sort(words.begin(), words.end());
        doc["stopwords"] = words;
    }
    return doc;
}

Settings settings_from_json(const nlohmann::json& doc) {
    Settings s;
    if (!doc.is_object()) return s;
    s.model.log10_n_docs = doc.value("documents", s.model.log10_n_docs);
    if (doc.contains("field_sizes")) {
        for (Field f : kAllFields) {
            s.model.set_log10_size(f, doc["field_sizes"].value(std::string(field_name(f)), s.model.log10_size(f)));
        }
    }
    s.distance.include_query_name = doc.value("include_query_name", false);
    s.tolerance = doc.value("tolerance", s.tolerance);
    s.cutoff = doc.value("cutoff", s.cutoff);
    if (doc.contains("query_name")) s.query_name = doc["query_name"].get<std::string>();
    if (doc.contains("stopwords")) {
        StopwordList words;
        for (const auto& w : doc["stopwords"]) words.insert(w.get<std::string>());
        s.stopwords = std::move(words);
    }
    s.validate();
    return s;
}

std::string settings_fingerprint(const Settings& s) {
    auto doc = settings_to_json(s);
    doc.erase("cutoff"); // changes presentation only
    if (!s.stopwords) {
        std::vector<std::string> words(default_stopwords().begin(), default_stopwords().end());
        std::sort(words.begin(), words.end());
        doc["stopwords"] = words;
    }
    return to_hex(fnv1a(doc.dump()));
}

} // namespace homonym
