#pragma once
// End-to-end analysis of one author name: load exports, build and close the
// distance matrix, form clusters.

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "homonym/cluster.hpp"
#include "homonym/distance.hpp"
#include "homonym/ingest.hpp"
#include "homonym/settings.hpp"

namespace homonym {

struct Analysis {
    Settings settings;
    Corpus corpus;
    DistanceMatrix matrix;
    ClusterSet clusters;
    // Identifies corpus content together with every setting that affects
    // cluster ids; sessions refuse to load against a different value.
    std::string hash;
};

// Reads and parses every file (format auto-detected when not given).
// Throws std::runtime_error ("file:line: message" for parse failures).
Corpus load_corpus(const std::vector<std::filesystem::path>& files, const Settings& settings,
                   std::optional<ExportFormat> format = std::nullopt);

Analysis analyze(Corpus corpus, const Settings& settings);

std::string analysis_hash(const Corpus& corpus, const Settings& settings);

} // namespace homonym
