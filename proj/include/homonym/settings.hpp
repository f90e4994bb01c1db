#pragma once
// Analysis settings and the key = value config file that overrides them.
//
//   # log10 of assumed value-space sizes
//   documents = 8.0
//   authors = 4.0
//   address = 2.0
//   include_query_name = false
//   cutoff = 3.0
//   stopwords = a an the of ...
//
// Field keys are the field names (authors, email, address, title, keywords,
// research_field, journal, year); "documents" is log10 N_D.

#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

#include "json.hpp"

#include "homonym/cluster.hpp"
#include "homonym/coincidence.hpp"
#include "homonym/distance.hpp"
#include "homonym/session.hpp"
#include "homonym/tokenize.hpp"

namespace homonym {

class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct Settings {
    FieldModel model;
    DistanceOptions distance;
    double tolerance = kDefaultTolerance;
    double cutoff = kDefaultCutoff;
    std::optional<std::string> query_name;
    std::optional<StopwordList> stopwords; // nullopt: built-in list

    const StopwordList& stopword_list() const { return stopwords ? *stopwords : default_stopwords(); }
    void validate() const;
};

// Applies `key = value` lines; '#' starts a comment. Throws ConfigError
// naming the line for unknown keys or bad values.
void apply_config(std::string_view text, Settings& settings);
void apply_config_file(const std::filesystem::path& path, Settings& settings);

// Applies "field=value" (CLI form of a single config line).
void apply_override(std::string_view assignment, Settings& settings);

nlohmann::json settings_to_json(const Settings& settings);
Settings settings_from_json(const nlohmann::json& doc);

// Digest of everything that changes tokens, distances or cluster ids.
std::string settings_fingerprint(const Settings& settings);

} // namespace homonym
