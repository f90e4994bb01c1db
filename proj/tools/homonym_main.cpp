// homonym: separate the papers of one author from those of namesakes.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "homonym/dialog.hpp"
#include "homonym/ingest.hpp"
#include "homonym/pipeline.hpp"
#include "homonym/service.hpp"
#include "homonym/session.hpp"
#include "homonym/settings.hpp"
#include "homonym/synth.hpp"

namespace fs = std::filesystem;
using namespace homonym;

namespace {

struct AnalysisOptions {
    std::vector<std::string> inputs;
    std::string config;
    std::string format = "auto";
    std::string name;
    std::optional<double> n_docs;
    std::vector<std::string> field_sizes;
    std::optional<double> cutoff;
    std::optional<double> tolerance;
    bool include_query_name = false;
    std::string dump_matrix;
    std::string dump_layer = "closed";
};

void add_analysis_options(CLI::App& app, AnalysisOptions& o, bool inputs_required) {
    auto* in = app.add_option("inputs", o.inputs, "Exported records (tagged or TSV)")->check(CLI::ExistingFile);
    if (inputs_required) in->required();
    app.add_option("--config", o.config, "key = value settings file")->check(CLI::ExistingFile);
    app.add_option("--format", o.format, "Input format")->check(CLI::IsMember({"auto", "tagged", "tsv"}));
    app.add_option("--name", o.name, "Author name being disambiguated (default: most frequent author)");
    app.add_option("--n-docs", o.n_docs, "log10 of the number of documents in the database");
    app.add_option("--field-size", o.field_sizes, "log10 size of a field's value space, as field=value");
    app.add_option("--cutoff", o.cutoff, "Distance beyond which groups are auto-rejected");
    app.add_option("--tol", o.tolerance, "Closed distances at or below this join a group");
    app.add_flag("--include-query-name", o.include_query_name, "Count the queried name as a shared author");
    app.add_option("--dump-matrix", o.dump_matrix, "Write the distance matrix as CSV");
    app.add_option("--dump-layer", o.dump_layer, "Matrix layer to dump")
        ->check(CLI::IsMember({"raw", "clamped", "closed"}));
}

Settings settings_from(const AnalysisOptions& o) {
    Settings s;
    if (!o.config.empty()) apply_config_file(o.config, s);
    if (o.n_docs) apply_override("documents=" + std::to_string(*o.n_docs), s);
    for (const auto& f : o.field_sizes) apply_override(f, s);
    if (o.cutoff) s.cutoff = *o.cutoff;
    if (o.tolerance) s.tolerance = *o.tolerance;
    if (o.include_query_name) s.distance.include_query_name = true;
    if (!o.name.empty()) s.query_name = o.name;
    s.validate();
    return s;
}

std::optional<ExportFormat> format_from(const std::string& f) {
    if (f == "tagged") return ExportFormat::tagged;
    if (f == "tsv") return ExportFormat::tsv;
    return std::nullopt;
}

std::vector<fs::path> absolute_paths(const std::vector<std::string>& files) {
    std::vector<fs::path> out;
    for (const auto& f : files) out.push_back(fs::absolute(f).lexically_normal());
    return out;
}

std::vector<std::string> path_strings(const std::vector<fs::path>& paths) {
    std::vector<std::string> out;
    for (const auto& p : paths) out.push_back(p.string());
    return out;
}

Analysis run_analysis(const std::vector<fs::path>& files, const Settings& settings,
                      std::optional<ExportFormat> format) {
    Corpus corpus = load_corpus(files, settings, format);
    for (const auto& w : corpus.warnings) std::cerr << "warning: " << w << "\n";
    return analyze(std::move(corpus), settings);
}

void maybe_dump(const AnalysisOptions& o, const Analysis& a) {
    if (o.dump_matrix.empty()) return;
    std::ofstream out(o.dump_matrix, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + o.dump_matrix);
    const MatrixLayer layer = o.dump_layer == "raw"       ? MatrixLayer::raw
                              : o.dump_layer == "clamped" ? MatrixLayer::clamped
                                                          : MatrixLayer::closed;
    write_matrix_csv(out, a.matrix, layer);
}

// Analysis plus a session: resumed from `session_path` when it exists,
// otherwise fresh. Without inputs, sources and settings come from the file.
struct Workspace {
    Analysis analysis;
    SessionFile file;
};

Workspace open_workspace(const AnalysisOptions& o, const fs::path& session_path, const std::string& timestamp) {
    const bool resume = fs::exists(session_path);
    std::vector<fs::path> sources;
    Settings settings;
    if (o.inputs.empty()) {
        if (!resume) throw std::runtime_error("no input files and no session to resume");
        const SessionHeader header = read_session_header(session_path);
        for (const auto& s : header.sources) sources.emplace_back(s);
        settings = settings_from_json(header.settings);
    } else {
        sources = absolute_paths(o.inputs);
        settings = settings_from(o);
    }
    Analysis analysis = run_analysis(sources, settings, format_from(o.format));
    maybe_dump(o, analysis);

    auto make = [&](SessionFile f) {
        if (!timestamp.empty()) f.session.set_clock([timestamp] { return timestamp; });
        return Workspace{std::move(analysis), std::move(f)};
    };
    if (resume) {
        SessionFile f = load_session(session_path, analysis.hash, analysis.clusters);
        f.sources = path_strings(sources);
        f.settings = settings_to_json(settings);
        return make(std::move(f));
    }
    SessionFile f{SelectionSession(analysis.hash, analysis.clusters.size(), settings.cutoff), path_strings(sources),
                  settings_to_json(settings)};
    return make(std::move(f));
}

fs::path selection_path(const fs::path& session, ExportFormat format) {
    fs::path p = session;
    p += format == ExportFormat::tsv ? ".selected.tsv" : ".selected.txt";
    return p;
}

int cmd_dialog(const AnalysisOptions& o, const fs::path& session_path, const std::string& timestamp) {
    Workspace ws = open_workspace(o, session_path, timestamp);
    auto save = [&](const SessionFile& f) { save_session(session_path, f); };
    save(ws.file);
    const int status = run_filter_dialog(ws.analysis, ws.file, std::cin, std::cout, save);
    std::cerr << "session saved to " << session_path.string() << "\n";
    return status;
}

int cmd_batch(const AnalysisOptions& o, const std::string& clusters_csv) {
    const Analysis a = run_analysis(absolute_paths(o.inputs), settings_from(o), format_from(o.format));
    maybe_dump(o, a);
    std::cout << format_cluster_table(a);
    if (!clusters_csv.empty()) {
        std::ofstream out(clusters_csv, std::ios::binary);
        if (!out) throw std::runtime_error("cannot write " + clusters_csv);
        out << "record_id,cluster\n";
        std::vector<int> of(a.corpus.size(), 0);
        for (const auto& c : a.clusters.clusters) {
            for (std::size_t r : c.member_ids) of[r] = c.id;
        }
        for (std::size_t r = 0; r < of.size(); ++r) out << r << "," << of[r] << "\n";
    }
    return 0;
}

int cmd_merit(const fs::path& session_path) {
    const SessionHeader header = read_session_header(session_path);
    std::vector<fs::path> sources(header.sources.begin(), header.sources.end());
    const Settings settings = settings_from_json(header.settings);
    const Analysis a = run_analysis(sources, settings, std::nullopt);
    const SessionFile f = load_session(session_path, a.hash, a.clusters);
    const Selection sel = export_selection(f.session, a.corpus, a.clusters);
    std::cout << format_merit(sel.summary);
    const fs::path out_path = selection_path(session_path, a.corpus.format);
    std::ofstream out(out_path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + out_path.string());
    out << write_export(a.corpus, sel.record_ids);
    std::cout << "Selected papers written to " << out_path.string() << "\n";
    return 0;
}

struct BenchOptions {
    std::size_t authors = GeneratorParams{}.n_authors;
    std::size_t papers_min = GeneratorParams{}.papers_min;
    std::size_t papers_max = GeneratorParams{}.papers_max;
    std::uint64_t seed = GeneratorParams{}.seed;
    std::string out_dir = ".";
};

int cmd_bench(const AnalysisOptions& o, const BenchOptions& b) {
    GeneratorParams params;
    params.n_authors = b.authors;
    params.papers_min = b.papers_min;
    params.papers_max = std::max(b.papers_min, b.papers_max);
    params.seed = b.seed;
    params.validate();
    const SyntheticCorpus synth = generate(params);
    const Analysis a = analyze(synth.corpus, settings_from(o));
    maybe_dump(o, a);
    const QualityMetrics m = evaluate(a.clusters.clusters, synth.truth);

    const fs::path dir(b.out_dir);
    fs::create_directories(dir);
    std::ofstream(dir / "corpus.tsv", std::ios::binary) << synth.tsv;
    {
        std::ofstream truth(dir / "truth.csv", std::ios::binary);
        write_truth_csv(truth, synth.truth);
    }
    {
        std::ofstream metrics(dir / "metrics.csv", std::ios::binary);
        write_metrics_csv(metrics, m);
    }
    write_metrics_csv(std::cout, m);
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Author-name disambiguation by coincidence distances"};
    app.require_subcommand(1);

    AnalysisOptions dialog_opts;
    std::string session_path = "homonym-session.json";
    std::string timestamp;
    auto* dialog = app.add_subcommand("dialog", "Interactive group selection");
    dialog->alias("filter");
    add_analysis_options(*dialog, dialog_opts, false);
    dialog->add_option("--session", session_path, "Session file (resumed when it exists)");
    dialog->add_option("--timestamp", timestamp, "Fixed log timestamp, for reproducible session files");

    AnalysisOptions batch_opts;
    std::string clusters_csv;
    auto* batch = app.add_subcommand("batch-cluster", "Print the group table without prompting");
    add_analysis_options(*batch, batch_opts, true);
    batch->add_option("--clusters-csv", clusters_csv, "Write record_id,cluster assignments");

    AnalysisOptions bench_opts;
    BenchOptions bench_params;
    auto* bench = app.add_subcommand("bench", "Cluster a synthetic corpus and score it against its ground truth");
    add_analysis_options(*bench, bench_opts, false);
    bench->add_option("--authors", bench_params.authors, "Synthetic authors sharing the name");
    bench->add_option("--papers-min", bench_params.papers_min, "Fewest papers per author");
    bench->add_option("--papers-max", bench_params.papers_max, "Most papers per author");
    bench->add_option("--seed", bench_params.seed, "Generator seed");
    bench->add_option("--out-dir", bench_params.out_dir, "Directory for corpus.tsv, truth.csv, metrics.csv");

    std::string merit_session;
    auto* merit = app.add_subcommand("merit", "Summarize the accepted papers of a session");
    merit->add_option("session", merit_session, "Session file")->required()->check(CLI::ExistingFile);

    AnalysisOptions serve_opts;
    std::string serve_session = "homonym-session.json";
    std::string bind = "127.0.0.1";
    int port = 8080;
    auto* serve_cmd = app.add_subcommand("serve", "Serve the review API over HTTP");
    add_analysis_options(*serve_cmd, serve_opts, false);
    serve_cmd->add_option("--session", serve_session, "Session file (resumed when it exists)");
    serve_cmd->add_option("--timestamp", timestamp, "Fixed log timestamp, for reproducible session files");
    serve_cmd->add_option("--bind", bind, "Listen address");
    serve_cmd->add_option("--port", port, "Listen port")->check(CLI::Range(1, 65535));

    CLI11_PARSE(app, argc, argv);

    try {
        if (*dialog) return cmd_dialog(dialog_opts, session_path, timestamp);
        if (*batch) return cmd_batch(batch_opts, clusters_csv);
        if (*bench) return cmd_bench(bench_opts, bench_params);
        if (*merit) return cmd_merit(merit_session);
        if (*serve_cmd) {
            Workspace ws = open_workspace(serve_opts, serve_session, timestamp);
            save_session(serve_session, ws.file);
            ReviewService service(ws.analysis, std::move(ws.file), fs::path(serve_session));
            std::cerr << "listening on http://" << bind << ":" << port << "/api/v1/\n";
            if (!serve(service, bind, port)) {
                std::cerr << "error: cannot listen on " << bind << ":" << port << "\n";
                return 1;
            }
            return 0;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
