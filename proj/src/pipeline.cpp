#include "homonym/pipeline.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

namespace homonym {

Corpus load_corpus(const std::vector<std::filesystem::path>& files, const Settings& settings,
                   std::optional<ExportFormat> format) {
    std::vector<ParsedExport> parts;
    for (const auto& path : files) {
        std::ifstream in(path, std::ios::binary);
        if (!in) throw std::runtime_error("cannot read " + path.string());
        std::ostringstream ss;
        ss << in.rdbuf();
        const std::string bytes = ss.str();
        const ExportFormat fmt = format.value_or(detect_format(decode_text(bytes)));
        try {
            parts.push_back(parse_records(bytes, fmt, settings.stopword_list()));
        } catch (const ParseError& e) {
            throw std::runtime_error(path.string() + ":" + std::to_string(e.line()) + ": " + e.message());
        }
    }
    return assemble_corpus(std::move(parts), settings.query_name);
}

std::string analysis_hash(const Corpus& corpus, const Settings& settings) {
    return to_hex(fnv1a(corpus_digest(corpus) + ":" + settings_fingerprint(settings)));
}

Analysis analyze(Corpus corpus, const Settings& settings) {
    settings.validate();
    Analysis a;
    a.settings = settings;
    a.corpus = std::move(corpus);
    a.matrix = close_distances(build_matrix(a.corpus, settings.model, settings.distance));
    a.clusters = build_cluster_set(a.matrix, a.corpus, settings.tolerance);
    a.hash = analysis_hash(a.corpus, settings);
    return a;
}

} // namespace homonym
